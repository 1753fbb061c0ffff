#pragma once

#include <sstream>

#include "qalg/algebra.hpp"

namespace qalg::fixtures {

inline Path parse_path(const Quiver& q, const std::string& names)
{
    Path p;
    std::istringstream in(names);
    std::string w;
    while (in >> w) p.push_back(q.arrow_index(w));
    return p;
}

template <class F>
Relation<F> rel(const F& f, const Quiver& q,
                std::initializer_list<std::pair<std::int64_t, const char*>> terms)
{
    Relation<F> r;
    for (const auto& [c, s] : terms) r.terms.emplace_back(f.from_int(c), parse_path(q, s));
    return r;
}

// k[x]/(x^n) with deg x = 1
template <class F>
GradedAlgebra<F> nakayama_line(const F& f, int n)
{
    Quiver q;
    q.vertices = {"v"};
    q.arrows = {{"x", 0, 0, 1}};
    Relation<F> r;
    r.terms.emplace_back(f.one(), Path(static_cast<std::size_t>(n), 0));
    return GradedAlgebra<F>::build(f, q, {r}, {}, "k[x]/(x^" + std::to_string(n) + ")");
}

// path algebra of linear A_n:  1 <- 2 <- ... <- n, arrows a1: 2->1, ...
template <class F>
GradedAlgebra<F> path_linear_a(const F& f, int n)
{
    Quiver q;
    for (int i = 1; i <= n; ++i) q.vertices.push_back(std::to_string(i));
    for (int i = 2; i <= n; ++i) q.arrows.push_back({"a" + std::to_string(i - 1), i - 1, i - 2, 0});
    return GradedAlgebra<F>::build(f, q, {}, {}, "kA" + std::to_string(n));
}

/* The 6-vertex 3-preprojective algebra:
 *   1 <-a- 2 <-b- 3,  4 <-f- 5 <-g- 6,  c: 4->1, d: 5->2, e: 6->3,
 *   x: 1->5, y: 2->6 (degree 1), relations
 *   da=fc, eb=gd, ax=yg, cx=0, xd=0, xf=0, dy=0, by=0, ye=0. */
template <class F>
GradedAlgebra<F> preprojective6(const F& f)
{
    Quiver q;
    q.vertices = {"1", "2", "3", "4", "5", "6"};
    q.arrows = {
        {"a", 1, 0, 0}, {"b", 2, 1, 0}, {"c", 3, 0, 0}, {"d", 4, 1, 0}, {"e", 5, 2, 0},
        {"f", 4, 3, 0}, {"g", 5, 4, 0}, {"x", 0, 4, 1}, {"y", 1, 5, 1},
    };
    RelationSet<F> rels = {
        rel(f, q, {{1, "d a"}, {-1, "f c"}}),
        rel(f, q, {{1, "e b"}, {-1, "g d"}}),
        rel(f, q, {{1, "a x"}, {-1, "y g"}}),
        rel(f, q, {{1, "c x"}}),
        rel(f, q, {{1, "x d"}}),
        rel(f, q, {{1, "x f"}}),
        rel(f, q, {{1, "d y"}}),
        rel(f, q, {{1, "b y"}}),
        rel(f, q, {{1, "y e"}}),
    };
    return GradedAlgebra<F>::build(f, q, rels, {}, "preprojective6");
}

/* C(A2) by hand: cyclic 3-quiver with rad^2 = 0, one arrow of degree 1. */
template <class F>
GradedAlgebra<F> ca2_by_hand(const F& f)
{
    Quiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"u", 0, 1, 0}, {"v", 1, 2, 0}, {"w", 2, 0, 1}};
    RelationSet<F> rels = {
        rel(f, q, {{1, "u v"}}),
        rel(f, q, {{1, "v w"}}),
        rel(f, q, {{1, "w u"}}),
    };
    return GradedAlgebra<F>::build(f, q, rels, {}, "C(A2)-hand");
}

}  // namespace qalg::fixtures
