#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qalg/matrix.hpp"

using namespace qalg;

template <class F>
Matrix<F> from_ints(const F& f, int r, int c, std::initializer_list<std::int64_t> xs)
{
    Matrix<F> m(f, r, c);
    auto it = xs.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = f.from_int(*it++);
    return m;
}

TEST_CASE_TEMPLATE_DEFINE("rank and kernel", F, rk_kernel)
{
    F f = []() {
        if constexpr (std::is_same_v<F, Fp>)
            return Fp(101);
        else
            return Rationals{};
    }();

    auto id3 = Matrix<F>::identity(f, 3);
    auto [r1, k1] = id3.rank_and_kernel();
    CHECK(r1 == 3);
    CHECK(k1.cols() == 0);

    Matrix<F> z(f, 2, 4);
    auto [r2, k2] = z.rank_and_kernel();
    CHECK(r2 == 0);
    CHECK(k2.cols() == 4);

    auto m = from_ints(f, 2, 2, {1, 2, 2, 4});
    auto [r3, k3] = m.rank_and_kernel();
    CHECK(r3 == 1);
    REQUIRE(k3.cols() == 1);
    CHECK(f.eq(k3.at(0, 0), f.from_int(-2)));
    CHECK(f.eq(k3.at(1, 0), f.one()));
    // m annihilates its kernel
    CHECK(m.mul(k3).is_zero());

    // rank equals rank of transpose on a few fixed samples
    auto s = from_ints(f, 3, 4, {1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 0});
    CHECK(s.rank() == s.transpose().rank());
    CHECK(s.mul(s.rank_and_kernel().second).is_zero());
}
TEST_CASE_TEMPLATE_INVOKE(rk_kernel, Fp, Rationals);

TEST_CASE_TEMPLATE_DEFINE("solve", F, solve_case)
{
    F f = []() {
        if constexpr (std::is_same_v<F, Fp>)
            return Fp(101);
        else
            return Rationals{};
    }();

    auto id2 = Matrix<F>::identity(f, 2);
    auto s1 = id2.solve({f.from_int(3), f.from_int(5)});
    REQUIRE(s1.solution.has_value());
    CHECK(f.eq((*s1.solution)[0], f.from_int(3)));
    CHECK(f.eq((*s1.solution)[1], f.from_int(5)));

    // underdetermined: canonical choice puts free variables at zero
    auto m = from_ints(f, 1, 2, {1, 1});
    auto s2 = m.solve({f.from_int(7)});
    REQUIRE(s2.solution.has_value());
    CHECK(f.eq((*s2.solution)[0], f.from_int(7)));
    CHECK(f.eq((*s2.solution)[1], f.zero()));

    // inconsistent, with a certifying left null vector
    auto n = from_ints(f, 2, 1, {1, 1});
    auto s3 = n.solve({f.zero(), f.one()});
    REQUIRE(!s3.solution.has_value());
    REQUIRE(s3.inconsistency.has_value());
    auto y = *s3.inconsistency;
    // y·n = 0
    CHECK(f.is_zero(f.add(f.mul(y[0], n.at(0, 0)), f.mul(y[1], n.at(1, 0)))));
    // y·b ≠ 0
    CHECK(!f.is_zero(y[1]));
}
TEST_CASE_TEMPLATE_INVOKE(solve_case, Fp, Rationals);

TEST_CASE("rref is canonical and deterministic")
{
    Rationals f;
    auto m = from_ints(f, 3, 3, {2, 4, 6, 1, 2, 3, 0, 0, 5});
    auto a = m, b = m;
    a.rref_inplace();
    b.rref_inplace();
    CHECK(a == b);
    // reduced echelon: pivot entries 1, pivot columns cleared elsewhere
    CHECK(f.eq(a.at(0, 0), f.one()));
    CHECK(f.eq(a.at(0, 1), f.from_int(2)));
    CHECK(f.is_zero(a.at(0, 2)));
    CHECK(f.eq(a.at(1, 2), f.one()));
}

TEST_CASE("Fp arithmetic")
{
    Fp f(101);
    CHECK(f.eq(f.from_int(-1), f.from_int(100)));
    CHECK(f.eq(f.mul(f.from_int(51), f.from_int(2)), f.one()));
    CHECK(f.eq(f.from_string("1/2"), f.from_int(51)));
    CHECK_THROWS_AS(Fp(100), error);
}

TEST_CASE("rational parsing stays exact")
{
    Rationals f;
    auto x = f.from_string("-3/6");
    CHECK(f.to_string(x) == "-1/2");
    CHECK(f.eq(f.add(x, f.from_string("1/2")), f.zero()));
}
