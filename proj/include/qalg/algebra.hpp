#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qalg/matrix.hpp"
#include "qalg/quiver.hpp"

namespace qalg {

struct BuildOptions {
    int n_max = 64;          // arrow-ideal powers must vanish by this length
    bool keep_presentation = true;
};

/* Basic graded algebra with a fixed k-basis and sparse structure constants.
 * The first num_vertices() basis elements are the trivial idempotents e_v, and
 * every other basis element lies in the arrow ideal J. Instances are either
 * presented (path algebra modulo homogeneous admissible relations) or abstract
 * (enveloping and endomorphism algebras); both carry, for every basis element,
 * an expression as a combination of products of a fixed generating set of J,
 * which is what lets modules be described by generator actions alone. */
template <class F>
class GradedAlgebra {
public:
    using Elem = typename F::Elem;

    struct Term {
        int idx;
        Elem c;
    };
    using Combo = std::vector<Term>;  // sorted by idx, coefficients nonzero

    struct BasisElem {
        int source = 0, target = 0;
        long degree = 0;
        int length = 0;   // radical filtration level
        Path path;        // arrow indices for presented algebras
        std::string label;
    };

    // expression of a basis element as sum of coef * (product of generators)
    struct GenExpr {
        std::vector<std::pair<Elem, std::vector<int>>> terms;  // generator positions
    };

    const F& field() const { return f_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    const std::vector<std::string>& vertex_names() const { return vertices_; }
    const std::string& vertex_name(int v) const { return vertices_[v]; }
    const BasisElem& basis(int i) const { return basis_[i]; }
    int idempotent(int v) const { return v; }
    bool is_idempotent(int i) const { return i < num_vertices(); }
    const Combo& mult(int i, int j) const { return mult_[i][j]; }
    const std::vector<int>& generators() const { return generators_; }
    const GenExpr& gen_expr(int i) const { return gen_expr_[i]; }
    const std::string& name() const { return name_; }
    bool has_presentation() const { return presentation_.has_value(); }
    const Quiver& quiver() const { return presentation_->first; }
    const RelationSet<F>& relations() const { return presentation_->second; }

    bool is_semisimple() const { return dim() == num_vertices(); }
    int radical_nilpotency() const { return nilpotency_; }

    // ----- combo helpers -----
    Combo combo_unit(int idx) const { return Combo{{idx, f_.one()}}; }
    void combo_accumulate(Combo& dst, const Combo& src, const Elem& c) const
    {
        if (f_.is_zero(c)) return;
        Combo out;
        out.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            if (j >= src.size() || (i < dst.size() && dst[i].idx < src[j].idx))
                out.push_back(dst[i++]);
            else if (i >= dst.size() || src[j].idx < dst[i].idx) {
                out.push_back({src[j].idx, f_.mul(c, src[j].c)});
                if (f_.is_zero(out.back().c)) out.pop_back();
                ++j;
            } else {
                Elem s = f_.add(dst[i].c, f_.mul(c, src[j].c));
                if (!f_.is_zero(s)) out.push_back({dst[i].idx, s});
                ++i;
                ++j;
            }
        }
        dst = std::move(out);
    }
    Combo combo_mul(const Combo& x, const Combo& y) const
    {
        Combo out;
        for (const Term& a : x)
            for (const Term& b : y) combo_accumulate(out, mult_[a.idx][b.idx], f_.mul(a.c, b.c));
        return out;
    }
    bool combo_eq(const Combo& x, const Combo& y) const
    {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].idx != y[i].idx || !f_.eq(x[i].c, y[i].c)) return false;
        return true;
    }
    std::vector<Elem> combo_to_vec(const Combo& x) const
    {
        std::vector<Elem> v(dim(), f_.zero());
        for (const Term& t : x) v[t.idx] = t.c;
        return v;
    }
    Combo vec_to_combo(const std::vector<Elem>& v) const
    {
        Combo c;
        for (int i = 0; i < dim(); ++i)
            if (!f_.is_zero(v[i])) c.push_back({i, v[i]});
        return c;
    }

    std::string basis_label(int i) const { return basis_[i].label; }

    // ----- constructors -----

    static GradedAlgebra build(const F& f, Quiver quiver, RelationSet<F> relations,
                               const BuildOptions& opt = {}, std::string name = "");

    static GradedAlgebra make_abstract(const F& f, std::vector<std::string> vertices,
                                       std::vector<BasisElem> basis,
                                       std::vector<std::vector<Combo>> mult, std::string name);

    GradedAlgebra opposite() const;
    GradedAlgebra enveloping(int dim_cap) const;
    GradedAlgebra forget_grading() const;

    /* Consistency audit: unit law, associativity on all basis triples, grading
     * multiplicativity. Cheap insurance for abstract constructions; meant for
     * tests and small algebras. */
    void audit() const;

private:
    F f_{fieldctor_()};
    std::vector<std::string> vertices_;
    std::vector<BasisElem> basis_;
    std::vector<std::vector<Combo>> mult_;
    std::vector<int> generators_;
    std::vector<GenExpr> gen_expr_;
    std::optional<std::pair<Quiver, RelationSet<F>>> presentation_;
    std::string name_;
    int nilpotency_ = 1;  // least N with J^N = 0

    static F fieldctor_()
    {
        if constexpr (std::is_same_v<F, Fp>)
            return Fp(2);
        else
            return F{};
    }

    void derive_generators_and_exprs();
    void compute_lengths_and_nilpotency();
};

// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> arrow_rank_by_name(const Quiver& q)
{
    std::vector<int> order(q.arrows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return q.arrows[a].name < q.arrows[b].name; });
    std::vector<int> rank(q.arrows.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    return rank;
}

struct PathLess {
    const std::vector<int>* rank;
    bool operator()(const Path& a, const Path& b) const
    {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if ((*rank)[a[i]] != (*rank)[b[i]]) return (*rank)[a[i]] < (*rank)[b[i]];
        return false;
    }
};

}  // namespace detail

template <class F>
GradedAlgebra<F> GradedAlgebra<F>::build(const F& f, Quiver quiver, RelationSet<F> relations,
                                         const BuildOptions& opt, std::string name)
{
    quiver.validate();
    const int nv = static_cast<int>(quiver.vertices.size());

    // validate relations: parallel, homogeneous in length and degree, length >= 2
    for (auto& rel : relations) {
        std::erase_if(rel.terms, [&](const auto& t) { return f.is_zero(t.first); });
        if (rel.terms.empty()) continue;
        const Path& p0 = rel.terms.front().second;
        if (!path_composable(quiver, p0)) throw error("relation path not composable");
        if (p0.size() < 2) throw error("relation not admissible: path of length < 2");
        for (const auto& [c, p] : rel.terms) {
            if (!path_composable(quiver, p)) throw error("relation path not composable");
            if (p.size() != p0.size())
                throw error("relation not length-homogeneous");
            if (path_source(quiver, p) != path_source(quiver, p0) ||
                path_target(quiver, p) != path_target(quiver, p0))
                throw error("inhomogeneous relation: endpoints differ");
            if (path_degree(quiver, p) != path_degree(quiver, p0))
                throw error("inhomogeneous relation: degrees differ");
        }
    }
    std::erase_if(relations, [](const auto& r) { return r.terms.empty(); });

    std::vector<int> rank = detail::arrow_rank_by_name(quiver);
    detail::PathLess less{&rank};

    // reduce_of[p] for a candidate path p: combination of standard paths of the
    // same length congruent to p modulo the relation ideal
    std::map<Path, std::vector<std::pair<Path, typename F::Elem>>, detail::PathLess> reduce_of(less);

    std::vector<std::vector<Path>> std_paths;  // per length
    std_paths.push_back({});                   // level 0 handled via idempotents

    // multiply a standard path combo by one arrow, reducing at the new level if known
    auto step = [&](const std::vector<std::pair<Path, Elem>>& cur, int arrow, bool reduce_last) {
        std::vector<std::pair<Path, Elem>> out;
        auto acc = [&](const Path& p, const Elem& c) {
            for (auto& [q, d] : out)
                if (q == p) {
                    d = f.add(d, c);
                    return;
                }
            out.emplace_back(p, c);
        };
        for (const auto& [p, c] : cur) {
            if (!p.empty() && quiver.arrows[p.back()].target != quiver.arrows[arrow].source)
                continue;
            Path q = p;
            q.push_back(arrow);
            if (reduce_last) {
                auto it = reduce_of.find(q);
                if (it == reduce_of.end()) throw error("internal: unreduced candidate");
                for (const auto& [sp, sc] : it->second) acc(sp, f.mul(c, sc));
            } else {
                acc(q, c);
            }
        }
        std::erase_if(out, [&](const auto& t) { return f.is_zero(t.second); });
        return out;
    };

    int level = 0;
    while (true) {
        ++level;
        if (level > opt.n_max)
            throw error("not admissible / not finite-dimensional: arrow-ideal powers do not vanish by length " +
                        std::to_string(opt.n_max));
        // candidates: standard paths of level-1 extended by one arrow
        std::vector<Path> candidates;
        if (level == 1) {
            for (int a = 0; a < static_cast<int>(quiver.arrows.size()); ++a) candidates.push_back({a});
        } else {
            for (const Path& s : std_paths[level - 1])
                for (int a = 0; a < static_cast<int>(quiver.arrows.size()); ++a)
                    if (quiver.arrows[s.back()].target == quiver.arrows[a].source) {
                        Path p = s;
                        p.push_back(a);
                        candidates.push_back(std::move(p));
                    }
        }
        std::sort(candidates.begin(), candidates.end(), less);
        std::map<Path, int, detail::PathLess> cand_index(less);
        for (std::size_t i = 0; i < candidates.size(); ++i)
            cand_index[candidates[i]] = static_cast<int>(i);

        // ideal rows at this level: s * r for standard s and relation r at the end
        std::vector<std::vector<Elem>> rows;
        for (const auto& rel : relations) {
            int m = static_cast<int>(rel.terms.front().second.size());
            if (m > level) continue;
            int sl = level - m;
            std::vector<Path> prefixes;
            if (sl == 0) {
                prefixes.push_back({});  // trivial path at the relation's source
            } else {
                for (const Path& s : std_paths[sl]) prefixes.push_back(s);
            }
            int rsrc = path_source(quiver, rel.terms.front().second);
            for (const Path& s : prefixes) {
                if (!s.empty() && quiver.arrows[s.back()].target != rsrc) continue;
                std::vector<Elem> row(candidates.size(), f.zero());
                bool nonzero = false;
                for (const auto& [coef, rp] : rel.terms) {
                    if (s.empty() && path_source(quiver, rp) != rsrc) continue;
                    std::vector<std::pair<Path, Elem>> cur{{s, coef}};
                    for (std::size_t ai = 0; ai < rp.size(); ++ai)
                        cur = step(cur, rp[ai], /*reduce_last=*/ai + 1 < rp.size());
                    for (const auto& [p, c] : cur) {
                        auto it = cand_index.find(p);
                        if (it == cand_index.end()) throw error("internal: non-candidate path");
                        row[it->second] = f.add(row[it->second], c);
                        nonzero = true;
                    }
                }
                if (nonzero) rows.push_back(std::move(row));
            }
        }

        std::vector<int> pivots;
        Matrix<F> rmat(f, static_cast<int>(rows.size()), static_cast<int>(candidates.size()));
        for (int i = 0; i < rmat.rows(); ++i)
            for (int j = 0; j < rmat.cols(); ++j) rmat.at(i, j) = rows[i][j];
        pivots = rmat.rref_inplace();

        std::vector<bool> is_pivot(candidates.size(), false);
        for (int c : pivots) is_pivot[c] = true;

        std::vector<Path> std_here;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (!is_pivot[i]) {
                reduce_of[candidates[i]] = {{candidates[i], f.one()}};
                std_here.push_back(candidates[i]);
            }
        for (int r = 0; r < static_cast<int>(pivots.size()); ++r) {
            std::vector<std::pair<Path, Elem>> red;
            for (std::size_t j = 0; j < candidates.size(); ++j) {
                if (static_cast<int>(j) == pivots[r] || f.is_zero(rmat.at(r, static_cast<int>(j))))
                    continue;
                red.emplace_back(candidates[j], f.neg(rmat.at(r, static_cast<int>(j))));
            }
            reduce_of[candidates[pivots[r]]] = std::move(red);
        }

        std_paths.push_back(std_here);
        if (std_here.empty()) break;
    }

    // assemble basis
    GradedAlgebra A;
    A.f_ = f;
    A.vertices_ = quiver.vertices;
    A.name_ = std::move(name);
    std::map<Path, int, detail::PathLess> index_of(less);
    for (int v = 0; v < nv; ++v) {
        BasisElem e;
        e.source = e.target = v;
        e.degree = 0;
        e.length = 0;
        e.label = "e_" + quiver.vertices[v];
        A.basis_.push_back(e);
    }
    for (int l = 1; l < static_cast<int>(std_paths.size()); ++l)
        for (const Path& p : std_paths[l]) {
            BasisElem b;
            b.source = path_source(quiver, p);
            b.target = path_target(quiver, p);
            b.degree = path_degree(quiver, p);
            b.length = l;
            b.path = p;
            std::string lab;
            for (int a : p) {
                if (!lab.empty()) lab += "*";
                lab += quiver.arrows[a].name;
            }
            b.label = lab;
            index_of[p] = A.dim();
            A.basis_.push_back(b);
        }

    const int d = A.dim();
    A.mult_.assign(d, std::vector<Combo>(d));
    auto reduce_full = [&](int i, int j) {
        const BasisElem& x = A.basis_[i];
        const BasisElem& y = A.basis_[j];
        Combo out;
        if (x.target != y.source) return out;
        if (y.length == 0) return A.combo_unit(i);
        if (x.length == 0) return A.combo_unit(j);
        std::vector<std::pair<Path, Elem>> cur{{x.path, f.one()}};
        for (std::size_t ai = 0; ai < y.path.size() && !cur.empty(); ++ai)
            cur = step(cur, y.path[ai], /*reduce_last=*/true);
        for (const auto& [p, c] : cur) out.push_back({index_of.at(p), c});
        std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.idx < b.idx; });
        return out;
    };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A.mult_[i][j] = reduce_full(i, j);

    // generators = the arrows (all survive: relations have length >= 2)
    A.generators_.clear();
    A.gen_expr_.assign(d, {});
    std::vector<int> arrow_basis(quiver.arrows.size(), -1);
    for (int a = 0; a < static_cast<int>(quiver.arrows.size()); ++a) {
        arrow_basis[a] = index_of.at(Path{a});
    }
    // generator list sorted by basis index for determinism
    {
        std::vector<int> gs = arrow_basis;
        std::sort(gs.begin(), gs.end());
        A.generators_ = gs;
    }
    std::vector<int> gen_pos(d, -1);
    for (int g = 0; g < static_cast<int>(A.generators_.size()); ++g)
        gen_pos[A.generators_[g]] = g;
    for (int i = 0; i < d; ++i) {
        typename GradedAlgebra::GenExpr ex;
        std::vector<int> seq;
        for (int a : A.basis_[i].path) seq.push_back(gen_pos[arrow_basis[a]]);
        ex.terms.emplace_back(f.one(), seq);
        A.gen_expr_[i] = std::move(ex);
    }

    A.nilpotency_ = static_cast<int>(std_paths.size()) - 1;  // first empty level: J^N = 0
    if (opt.keep_presentation) A.presentation_ = std::make_pair(quiver, relations);
    return A;
}

template <class F>
GradedAlgebra<F> GradedAlgebra<F>::make_abstract(const F& f, std::vector<std::string> vertices,
                                                 std::vector<BasisElem> basis,
                                                 std::vector<std::vector<Combo>> mult,
                                                 std::string name)
{
    GradedAlgebra A;
    A.f_ = f;
    A.vertices_ = std::move(vertices);
    A.basis_ = std::move(basis);
    A.mult_ = std::move(mult);
    A.name_ = std::move(name);
    A.compute_lengths_and_nilpotency();
    A.derive_generators_and_exprs();
    return A;
}

template <class F>
void GradedAlgebra<F>::compute_lengths_and_nilpotency()
{
    const int d = dim();
    const int nv = num_vertices();
    // J-filtration: spans of J^m in basis coordinates
    std::vector<int> lvl(d, 0);
    for (int i = nv; i < d; ++i) lvl[i] = 1;
    Matrix<F> span(f_, d - nv, d);
    for (int i = nv; i < d; ++i) span.at(i - nv, i) = f_.one();
    int m = 1;
    Matrix<F> cur = span;  // rows span J^m
    while (cur.rows() > 0) {
        // J^{m+1} = J * J^m
        std::vector<std::vector<Elem>> rows;
        for (int i = nv; i < d; ++i)
            for (int r = 0; r < cur.rows(); ++r) {
                Combo x;
                for (int j = 0; j < d; ++j)
                    if (!f_.is_zero(cur.at(r, j))) combo_accumulate(x, mult_[i][j], cur.at(r, j));
                if (!x.empty()) rows.push_back(combo_to_vec(x));
            }
        Matrix<F> nxt(f_, static_cast<int>(rows.size()), d);
        for (int i = 0; i < nxt.rows(); ++i)
            for (int j = 0; j < d; ++j) nxt.at(i, j) = rows[i][j];
        nxt = row_space(nxt);
        ++m;
        if (nxt.rows() == 0) break;
        if (nxt.rows() == cur.rows())
            throw error("algebra radical is not nilpotent (J^m stabilized nonzero)");
        // mark basis elements lying in J^m
        auto piv = nxt;  // already RREF by row_space
        std::vector<int> pivots;
        for (int r = 0; r < piv.rows(); ++r)
            for (int j = 0; j < d; ++j)
                if (!f_.is_zero(piv.at(r, j))) {
                    pivots.push_back(j);
                    break;
                }
        for (int i = nv; i < d; ++i) {
            std::vector<Elem> v(d, f_.zero());
            v[i] = f_.one();
            if (reduce_against_rref(piv, pivots, v)) lvl[i] = m;
        }
        cur = nxt;
        if (m > d + 1) throw error("radical filtration did not terminate");
    }
    nilpotency_ = m;
    for (int i = 0; i < d; ++i) basis_[i].length = lvl[i];
}

template <class F>
void GradedAlgebra<F>::derive_generators_and_exprs()
{
    const int d = dim();
    const int nv = num_vertices();
    // J^2 span
    std::vector<std::vector<Elem>> rows;
    for (int i = nv; i < d; ++i)
        for (int j = nv; j < d; ++j)
            if (!mult_[i][j].empty()) rows.push_back(combo_to_vec(mult_[i][j]));
    Matrix<F> jj(f_, static_cast<int>(rows.size()), d);
    for (int i = 0; i < jj.rows(); ++i)
        for (int j = 0; j < d; ++j) jj.at(i, j) = rows[i][j];
    jj = row_space(jj);

    // greedy generating set of J modulo J^2
    generators_.clear();
    Matrix<F> acc = jj;
    for (int i = nv; i < d; ++i) {
        Matrix<F> ext(f_, acc.rows() + 1, d);
        for (int r = 0; r < acc.rows(); ++r)
            for (int j = 0; j < d; ++j) ext.at(r, j) = acc.at(r, j);
        ext.at(acc.rows(), i) = f_.one();
        if (ext.rank() > acc.rows()) {
            generators_.push_back(i);
            acc = row_space(ext);
        }
    }

    // express every basis element through generators
    gen_expr_.assign(d, {});
    std::vector<bool> known(d, false);
    for (int v = 0; v < nv; ++v) {
        gen_expr_[v].terms.emplace_back(f_.one(), std::vector<int>{});
        known[v] = true;
    }
    for (int g = 0; g < static_cast<int>(generators_.size()); ++g) {
        gen_expr_[generators_[g]].terms.emplace_back(f_.one(), std::vector<int>{g});
        known[generators_[g]] = true;
    }
    for (int round = 0; round < d + 1; ++round) {
        bool all = true, progress = false;
        // column space: products g * y over known y, plus known elements
        std::vector<std::pair<int, int>> prods;  // (generator pos, basis y)
        std::vector<int> knowns;
        for (int y = 0; y < d; ++y)
            if (known[y]) knowns.push_back(y);
        for (int g = 0; g < static_cast<int>(generators_.size()); ++g)
            for (int y : knowns)
                if (!mult_[generators_[g]][y].empty()) prods.emplace_back(g, y);
        Matrix<F> cols(f_, d, static_cast<int>(prods.size()));
        for (int c = 0; c < static_cast<int>(prods.size()); ++c) {
            auto v = combo_to_vec(mult_[generators_[prods[c].first]][prods[c].second]);
            for (int r = 0; r < d; ++r) cols.at(r, c) = v[r];
        }
        for (int b = 0; b < d; ++b) {
            if (known[b]) continue;
            all = false;
            std::vector<Elem> target(d, f_.zero());
            target[b] = f_.one();
            auto sol = cols.express_in_columns(target);
            if (!sol) continue;
            GenExpr ex;
            for (int c = 0; c < static_cast<int>(prods.size()); ++c) {
                if (f_.is_zero((*sol)[c])) continue;
                auto [g, y] = prods[c];
                for (const auto& [cy, seq] : gen_expr_[y].terms) {
                    std::vector<int> s;
                    s.push_back(g);
                    s.insert(s.end(), seq.begin(), seq.end());
                    ex.terms.emplace_back(f_.mul((*sol)[c], cy), std::move(s));
                }
            }
            gen_expr_[b] = std::move(ex);
            known[b] = true;
            progress = true;
        }
        if (all) break;
        if (!progress) throw error("basis element not generated by idempotents and J/J^2 lifts");
    }
}

template <class F>
GradedAlgebra<F> GradedAlgebra<F>::opposite() const
{
    GradedAlgebra B;
    B.f_ = f_;
    B.vertices_ = vertices_;
    B.name_ = name_.empty() ? "" : name_ + "^op";
    B.basis_ = basis_;
    for (auto& b : B.basis_) std::swap(b.source, b.target);
    const int d = dim();
    B.mult_.assign(d, std::vector<Combo>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) B.mult_[i][j] = mult_[j][i];
    B.generators_ = generators_;
    B.gen_expr_ = gen_expr_;
    for (auto& ex : B.gen_expr_)
        for (auto& [c, seq] : ex.terms) std::reverse(seq.begin(), seq.end());
    B.nilpotency_ = nilpotency_;
    if (presentation_) {
        Quiver q = presentation_->first.opposite();
        RelationSet<F> rels = presentation_->second;
        for (auto& r : rels)
            for (auto& [c, p] : r.terms) std::reverse(p.begin(), p.end());
        B.presentation_ = std::make_pair(q, rels);
    }
    return B;
}

template <class F>
GradedAlgebra<F> GradedAlgebra<F>::enveloping(int dim_cap) const
{
    const int d = dim();
    if (static_cast<long long>(d) * d > dim_cap)
        throw error("enveloping algebra dimension " + std::to_string(static_cast<long long>(d) * d) +
                    " exceeds cap " + std::to_string(dim_cap));
    const int nv = num_vertices();
    GradedAlgebra B;
    B.f_ = f_;
    B.name_ = name_.empty() ? "A^e" : name_ + "^e";
    for (int u = 0; u < nv; ++u)
        for (int v = 0; v < nv; ++v) B.vertices_.push_back(vertices_[u] + "|" + vertices_[v]);

    auto pair_index = [d](int i, int j) { return i * d + j; };
    // basis order: idempotent pairs first, then the rest; keep a map
    std::vector<int> code_to_idx(static_cast<std::size_t>(d) * d, -1);
    auto push = [&](int i, int j) {
        BasisElem b;
        b.source = basis_[i].target * nv + basis_[j].source;
        b.target = basis_[i].source * nv + basis_[j].target;
        b.degree = basis_[i].degree + basis_[j].degree;
        b.length = basis_[i].length + basis_[j].length;
        b.label = basis_[i].label + "(x)" + basis_[j].label;
        code_to_idx[pair_index(i, j)] = B.dim();
        B.basis_.push_back(b);
    };
    for (int u = 0; u < nv; ++u)
        for (int v = 0; v < nv; ++v) push(u, v);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i >= nv || j >= nv) push(i, j);

    const int D = B.dim();
    B.mult_.assign(D, std::vector<Combo>(D));
    for (int i1 = 0; i1 < d; ++i1)
        for (int j1 = 0; j1 < d; ++j1) {
            int x = code_to_idx[pair_index(i1, j1)];
            for (int i2 = 0; i2 < d; ++i2)
                for (int j2 = 0; j2 < d; ++j2) {
                    int y = code_to_idx[pair_index(i2, j2)];
                    // (i1 (x) j1) * (i2 (x) j2) = (i2 *_A i1) (x) (j1 *_A j2)
                    const Combo& left = mult_[i2][i1];
                    const Combo& right = mult_[j1][j2];
                    if (left.empty() || right.empty()) continue;
                    Combo out;
                    for (const Term& a : left)
                        for (const Term& b : right) {
                            Elem c = f_.mul(a.c, b.c);
                            out.push_back({code_to_idx[pair_index(a.idx, b.idx)], c});
                        }
                    std::sort(out.begin(), out.end(),
                              [](const Term& s, const Term& t) { return s.idx < t.idx; });
                    B.mult_[x][y] = std::move(out);
                }
        }

    // generators: g (x) e_v and e_u (x) g over generators g of A
    B.generators_.clear();
    std::vector<std::pair<int, int>> gen_pairs;  // (A-generator pos or -1, ...) bookkeeping below
    std::vector<int> gen_basis;
    for (int gp = 0; gp < static_cast<int>(generators_.size()); ++gp)
        for (int v = 0; v < nv; ++v) gen_basis.push_back(code_to_idx[pair_index(generators_[gp], v)]);
    for (int u = 0; u < nv; ++u)
        for (int gp = 0; gp < static_cast<int>(generators_.size()); ++gp)
            gen_basis.push_back(code_to_idx[pair_index(u, generators_[gp])]);
    std::sort(gen_basis.begin(), gen_basis.end());
    gen_basis.erase(std::unique(gen_basis.begin(), gen_basis.end()), gen_basis.end());
    B.generators_ = gen_basis;
    std::vector<int> gen_pos(D, -1);
    for (int g = 0; g < static_cast<int>(B.generators_.size()); ++g) gen_pos[B.generators_[g]] = g;

    // expressions: b_i (x) b_j = prod (e (x) beta_t) * prod (alpha_s (x) e) with alphas reversed
    B.gen_expr_.assign(D, {});
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            int x = code_to_idx[pair_index(i, j)];
            GenExpr ex;
            for (const auto& [ci, seqi] : gen_expr_[i].terms)
                for (const auto& [cj, seqj] : gen_expr_[j].terms) {
                    /* b_i (x) b_j = (e_u (x) beta_1) ... (e_u (x) beta_s)
                     *             * (alpha_r (x) e_w) ... (alpha_1 (x) e_w)
                     * with u = target(b_i), w = target(b_j): the left slots of a
                     * product chain multiply in reverse. */
                    std::vector<int> s;
                    const int u = basis_[i].target, w = basis_[j].target;
                    for (int gpos : seqj)
                        s.push_back(gen_pos[code_to_idx[pair_index(u, generators_[gpos])]]);
                    for (auto it = seqi.rbegin(); it != seqi.rend(); ++it)
                        s.push_back(gen_pos[code_to_idx[pair_index(generators_[*it], w)]]);
                    ex.terms.emplace_back(f_.mul(ci, cj), std::move(s));
                }
            B.gen_expr_[x] = std::move(ex);
        }
    B.nilpotency_ = 2 * nilpotency_ - 1;
    return B;
}

template <class F>
GradedAlgebra<F> GradedAlgebra<F>::forget_grading() const
{
    GradedAlgebra B = *this;
    for (auto& b : B.basis_) b.degree = 0;
    if (B.presentation_) {
        for (auto& a : B.presentation_->first.arrows) a.degree = 0;
    }
    if (!B.name_.empty()) B.name_ += "_ungraded";
    return B;
}

template <class F>
void GradedAlgebra<F>::audit() const
{
    const int d = dim();
    const int nv = num_vertices();
    for (int i = 0; i < d; ++i) {
        const BasisElem& b = basis_[i];
        if (!combo_eq(mult_[b.source][i], combo_unit(i)) || !combo_eq(mult_[i][b.target], combo_unit(i)))
            throw error("audit: unit law fails at " + basis_label(i));
        for (int v = 0; v < nv; ++v) {
            if (v != b.source && !mult_[v][i].empty()) throw error("audit: idempotent orthogonality");
            if (v != b.target && !mult_[i][v].empty()) throw error("audit: idempotent orthogonality");
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            for (const Term& t : mult_[i][j])
                if (basis_[t.idx].degree != basis_[i].degree + basis_[j].degree)
                    throw error("audit: grading not multiplicative");
            for (int l = 0; l < d; ++l) {
                Combo x = combo_mul(mult_[i][j], combo_unit(l));
                Combo y = combo_mul(combo_unit(i), mult_[j][l]);
                if (!combo_eq(x, y)) throw error("audit: associativity fails");
            }
        }
}

}  // namespace qalg
