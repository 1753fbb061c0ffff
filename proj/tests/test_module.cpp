#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "qalg/homology.hpp"
#include "qalg/morphism.hpp"

using namespace qalg;

template <class F>
static AlgebraPtr<F> share(GradedAlgebra<F> a)
{
    return std::make_shared<const GradedAlgebra<F>>(std::move(a));
}

TEST_CASE("projectives and simples over k[x]/(x^4)")
{
    Fp f(101);
    auto A = share(fixtures::nakayama_line(f, 4));
    auto P = projective_module(A, 0, 0);
    CHECK(P.total_dim() == 4);
    for (long d = 0; d < 4; ++d) CHECK(P.block_dim(0, d) == 1);
    P.validate_action();

    // simple(v,3) is simple(v,0) shifted by (-3): M(a)_n = M_{n+a}
    auto S3 = simple_module(A, 0, 3);
    auto S0s = shift_module(simple_module(A, 0, 0), -3);
    CHECK(S3.dim_table() == S0s.dim_table());

    // radical of P has dims 3 with support {1,2,3}
    auto Pp = std::make_shared<const GradedModule<Fp>>(P);
    auto rad = radical_submodule(Pp);
    CHECK(rad.module->total_dim() == 3);
    CHECK(rad.module->block_dim(0, 0) == 0);
    CHECK(rad.module->block_dim(0, 1) == 1);
}

TEST_CASE("semisimple algebra: projective equals simple")
{
    Fp f(101);
    Quiver q;
    q.vertices = {"1", "2"};
    auto A = share(GradedAlgebra<Fp>::build(f, q, {}));
    CHECK(projective_module(A, 0, 0).dim_table() == simple_module(A, 0, 0).dim_table());
    CHECK(injective_module(A, share(A->opposite()), 1, 0).dim_table() ==
          simple_module(A, 1, 0).dim_table());
}

TEST_CASE("hom spaces: covers, graded Yoneda")
{
    Fp f(101);
    auto A = share(fixtures::nakayama_line(f, 4));
    auto P = projective_module(A, 0, 0);
    auto S = simple_module(A, 0, 0);
    CHECK(hom_dim(P, S) == 1);  // projective cover
    CHECK(hom_dim(S, P) == 0);  // socle sits in degree 3

    // graded Yoneda: dim Hom(P(v,d), M) = dim M_{(v,d)}
    auto P1 = projective_module(A, 0, 1);
    CHECK(hom_dim(P1, P) == P.block_dim(0, 1));
    auto Psh = shift_module(P, 1);  // Λ(1), support {-1,...,2}
    CHECK(hom_dim(P, Psh) == Psh.block_dim(0, 0));
    // multiplication by x is the only degree-0 map Λ -> Λ(1)
    CHECK(hom_dim(P, Psh) == 1);
}

TEST_CASE("A2 path algebra homs")
{
    Rationals f;
    auto A = share(fixtures::path_linear_a(f, 2));
    auto P2 = projective_module(A, 1, 0);  // vertex "2"
    auto S1 = simple_module(A, 0, 0);
    auto S2 = simple_module(A, 1, 0);
    CHECK(P2.total_dim() == 2);
    CHECK(hom_dim(S1, P2) == 1);  // S1 = P1 embeds as the socle
    CHECK(hom_dim(P2, S1) == 0);
    CHECK(hom_dim(P2, S2) == 1);
}

TEST_CASE("syzygies over k[x]/(x^4)")
{
    Fp f(101);
    auto A = share(fixtures::nakayama_line(f, 4));
    auto S = std::make_shared<const GradedModule<Fp>>(simple_module(A, 0, 0));
    auto O1 = syzygy<Fp>(S, 1);
    CHECK(O1->total_dim() == 3);
    CHECK(O1->block_dim(0, 1) == 1);  // top of the radical sits in degree 1
    CHECK(O1->block_dim(0, 3) == 1);

    auto P = std::make_shared<const GradedModule<Fp>>(projective_module(A, 0, 0));
    CHECK(syzygy<Fp>(P, 1)->is_zero_module());

    // Omega commutes with shift on dimension tables
    auto Ssh = std::make_shared<const GradedModule<Fp>>(shift_module(*S, 2));
    CHECK(syzygy<Fp>(Ssh, 1)->dim_table() == shift_module(*syzygy<Fp>(S, 1), 2).dim_table());

    // Omega^2 S = S(-4) for n = 4: support check
    auto O2 = syzygy<Fp>(S, 2);
    CHECK(O2->total_dim() == 1);
    CHECK(O2->block_dim(0, 4) == 1);
}

TEST_CASE("ext over A2 and k[x]/(x^4)")
{
    Rationals f;
    auto A = share(fixtures::path_linear_a(f, 2));
    auto S2 = std::make_shared<const GradedModule<Rationals>>(simple_module(A, 1, 0));
    auto S1 = simple_module(A, 0, 0);
    CHECK(ext_dim<Rationals>(S2, S1, 1) == 1);  // the AR sequence 0->S1->P2->S2->0
    auto P2 = std::make_shared<const GradedModule<Rationals>>(projective_module(A, 1, 0));
    CHECK(ext_dim<Rationals>(P2, S1, 1) == 0);

    Fp fp(101);
    auto L = share(fixtures::nakayama_line(fp, 4));
    auto S = std::make_shared<const GradedModule<Fp>>(simple_module(L, 0, 0));
    CHECK(ext_dim<Fp>(S, simple_module(L, 0, 1), 1) == 1);  // Ext^1(S, S(-1)) != 0
    CHECK(ext_dim<Fp>(S, simple_module(L, 0, 0), 1) == 0);
}

TEST_CASE("injectives and envelopes")
{
    Fp f(101);
    auto A = share(fixtures::nakayama_line(f, 4));
    auto Aop = share(A->opposite());
    auto I = injective_module(A, Aop, 0, 0);
    CHECK(I.total_dim() == 4);
    for (long d = -3; d <= 0; ++d) CHECK(I.block_dim(0, d) == 1);
    I.validate_action();

    auto S = std::make_shared<const GradedModule<Fp>>(simple_module(A, 0, 0));
    auto env = injective_envelope(S, A, Aop);
    CHECK(env.E->total_dim() == 4);
    CHECK(env.summands == std::vector<std::pair<int, long>>{{0, 0}});
    auto C = cosyzygy(S, A, Aop);
    CHECK(C->total_dim() == 3);
    CHECK(C->block_dim(0, -1) == 1);
}

TEST_CASE("duality: dim Hom(M,N) = dim Hom(DN, DM)")
{
    Fp f(101);
    auto A = share(fixtures::preprojective6(f));
    auto Aop = share(A->opposite());
    auto M = projective_module(A, 1, 0);
    auto N = projective_module(A, 4, 0);
    auto DM = dual_module(M, Aop);
    auto DN = dual_module(N, Aop);
    DM.validate_action();
    CHECK(hom_dim(M, N) == hom_dim(DN, DM));
    CHECK(hom_dim(N, M) == hom_dim(DM, DN));
}

TEST_CASE("twist by identity and morphism checks")
{
    Fp f(101);
    auto A = share(fixtures::ca2_by_hand(f));
    auto id = identity_morphism(A);
    CHECK(id.is_isomorphism());
    auto P = projective_module(A, 0, 0);
    auto T = twist_module(P, id);
    CHECK(T.dim_table() == P.dim_table());
    for (std::size_t g = 0; g < A->generators().size(); ++g)
        CHECK(T.gen_matrix(static_cast<int>(g)) == P.gen_matrix(static_cast<int>(g)));
}

TEST_CASE("automorphism search on small algebras")
{
    Fp f(101);
    auto A = share(fixtures::nakayama_line(f, 4));
    auto m = find_isomorphism_for_vertex_map<Fp>(A, A, {0}, true);
    REQUIRE(m.has_value());
    CHECK(m->is_isomorphism());

    // C(A2) by hand: identity vertex map admits a graded automorphism,
    // the Nakayama 3-cycle is blocked by the arrow degrees
    auto C = share(fixtures::ca2_by_hand(f));
    CHECK(find_isomorphism_for_vertex_map<Fp>(C, C, {0, 1, 2}, true).has_value());
    CHECK(!find_isomorphism_for_vertex_map<Fp>(C, C, {2, 0, 1}, true).has_value());
    CHECK(!find_isomorphism_for_vertex_map<Fp>(C, C, {1, 2, 0}, true).has_value());
    // forgetting the grading, the rotation is an automorphism
    auto Cu = share(C->forget_grading());
    CHECK(find_isomorphism_for_vertex_map<Fp>(Cu, Cu, {1, 2, 0}, false).has_value());
}

TEST_CASE("module validation catches bad actions")
{
    Fp f(101);
    auto A = share(fixtures::nakayama_line(f, 2));
    GradedModule<Fp> M(A, {{{0, 0}, 1}, {{0, 1}, 1}, {{0, 2}, 1}});
    // x acts 0->1 and 1->2; set both to 1 so x^2 acts nonzero: invalid
    M.act(0, 0).at(0, 0) = f.one();
    M.act(0, 1).at(0, 0) = f.one();
    CHECK_THROWS_AS(M.validate_action(), error);
    // fixing the second block to 0 makes it the valid module P + S-ish
    M.act(0, 1).at(0, 0) = f.zero();
    M.validate_action();
}
