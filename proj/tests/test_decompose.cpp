#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "qalg/decompose.hpp"

using namespace qalg;

template <class F>
static AlgebraPtr<F> share(GradedAlgebra<F> a)
{
    return std::make_shared<const GradedAlgebra<F>>(std::move(a));
}

TEST_CASE_TEMPLATE_DEFINE("P + P decomposes as (P, 2)", F, pp_case)
{
    F f = []() {
        if constexpr (std::is_same_v<F, Fp>)
            return Fp(101);
        else
            return Rationals{};
    }();
    auto A = share(fixtures::nakayama_line(f, 4));
    auto P = projective_module(A, 0, 0);
    auto M = std::make_shared<const GradedModule<F>>(direct_sum(A, {&P, &P}));
    auto classes = decompose_classes<F>(M);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].second == 2);
    CHECK(classes[0].first->dim_table() == P.dim_table());
}
TEST_CASE_TEMPLATE_INVOKE(pp_case, Fp, Rationals);

TEST_CASE("regular module of A2 splits into the two projectives")
{
    Fp f(101);
    auto A = share(fixtures::path_linear_a(f, 2));
    auto P1 = projective_module(A, 0, 0);
    auto P2 = projective_module(A, 1, 0);
    auto M = std::make_shared<const GradedModule<Fp>>(direct_sum(A, {&P2, &P1}));
    auto classes = decompose_classes<Fp>(M);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].second == 1);
    CHECK(classes[1].second == 1);
}

TEST_CASE("regular module of k[x]/(x^4) is indecomposable")
{
    Fp f(101);
    auto A = share(fixtures::nakayama_line(f, 4));
    auto P = std::make_shared<const GradedModule<Fp>>(projective_module(A, 0, 0));
    auto pieces = decompose<Fp>(P);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].module->total_dim() == 4);
}

TEST_CASE("semisimple pile S^3 over the rationals")
{
    Rationals f;
    auto A = share(fixtures::path_linear_a(f, 2));
    auto S = simple_module(A, 0, 0);
    auto M = std::make_shared<const GradedModule<Rationals>>(direct_sum(A, {&S, &S, &S}));
    auto classes = decompose_classes<Rationals>(M);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].second == 3);
}

TEST_CASE("mixed sum hits the center-splitting path")
{
    Fp f(101);
    auto A = share(fixtures::nakayama_line(f, 4));
    auto P = projective_module(A, 0, 0);
    auto Pp = std::make_shared<const GradedModule<Fp>>(P);
    auto R = radical_submodule(Pp);
    auto M = std::make_shared<const GradedModule<Fp>>(direct_sum(A, {&P, R.module.get()}));
    auto classes = decompose_classes<Fp>(M);
    REQUIRE(classes.size() == 2);
    // pieces come back with inclusion/projection that compose to the identity
    auto pieces = decompose<Fp>(M);
    for (auto& p : pieces) {
        auto idp = compose(p.incl, p.proj);
        CHECK(idp.is_isomorphism());
    }
}

TEST_CASE("module_isomorphism")
{
    Fp f(101);
    auto A = share(fixtures::nakayama_line(f, 4));
    auto P = projective_module(A, 0, 0);
    auto S0 = std::make_shared<const GradedModule<Fp>>(simple_module(A, 0, 0));
    auto S1 = std::make_shared<const GradedModule<Fp>>(simple_module(A, 0, 1));

    // m vs m(0)
    auto Pp = std::make_shared<const GradedModule<Fp>>(P);
    auto Psame = std::make_shared<const GradedModule<Fp>>(shift_module(P, 0));
    auto w = module_isomorphism<Fp>(Pp, Psame);
    REQUIRE(w.has_value());
    CHECK(w->is_isomorphism());

    // S(v,0) vs S(v,1): different degree support
    CHECK(!module_isomorphism<Fp>(S0, S1).has_value());

    // order of summands does not matter
    auto S = simple_module(A, 0, 0);
    auto M1 = std::make_shared<const GradedModule<Fp>>(direct_sum(A, {&P, &S}));
    auto M2 = std::make_shared<const GradedModule<Fp>>(direct_sum(A, {&S, &P}));
    auto w2 = module_isomorphism<Fp>(M1, M2);
    REQUIRE(w2.has_value());
    CHECK(w2->is_isomorphism());
    CHECK(w2->commutes());
}

TEST_CASE("decompose is idempotent on indecomposables")
{
    Fp f(101);
    auto A = share(fixtures::preprojective6(f));
    auto P = std::make_shared<const GradedModule<Fp>>(projective_module(A, 5, 0));
    auto classes = decompose_classes<Fp>(P);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].second == 1);
    CHECK(classes[0].first->total_dim() == P->total_dim());
}

TEST_CASE("small primes are rejected when End is too big")
{
    Fp f(3);
    auto A = share(fixtures::path_linear_a(f, 2));
    auto S = simple_module(A, 0, 0);
    auto M = std::make_shared<const GradedModule<Fp>>(direct_sum(A, {&S, &S, &S}));
    CHECK_THROWS_AS(decompose<Fp>(M), field_too_small);
}
