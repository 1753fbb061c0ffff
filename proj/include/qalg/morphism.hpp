#pragma once

#include "qalg/module.hpp"

namespace qalg {

/* Degree-preserving algebra morphism determined by a vertex map and images of
 * the source's generators. Images of all basis elements are derived through
 * the generator expressions. */
template <class F>
struct AlgebraMorphism {
    using Combo = typename GradedAlgebra<F>::Combo;

    AlgebraPtr<F> source, target;
    std::vector<int> vertex_map;
    std::vector<Combo> images;  // per source basis element

    Combo apply(const Combo& x) const
    {
        Combo out;
        for (const auto& t : x) target->combo_accumulate(out, images[t.idx], t.c);
        return out;
    }

    Matrix<F> matrix() const
    {
        const F& f = source->field();
        Matrix<F> m(f, source->dim(), target->dim());
        for (int i = 0; i < source->dim(); ++i)
            for (const auto& t : images[i]) m.at(i, t.idx) = t.c;
        return m;
    }

    bool is_bijective() const
    {
        return source->dim() == target->dim() && matrix().rank() == source->dim();
    }

    /* full check: unit alignment, multiplicativity, degree preservation */
    bool is_isomorphism() const
    {
        const F& f = source->field();
        if (!is_bijective()) return false;
        for (int v = 0; v < source->num_vertices(); ++v) {
            const Combo& ev = images[v];
            if (ev.size() != 1 || ev[0].idx != vertex_map[v] || !f.eq(ev[0].c, f.one()))
                return false;
        }
        for (int i = 0; i < source->dim(); ++i) {
            for (const auto& t : images[i])
                if (target->basis(t.idx).degree != source->basis(i).degree) return false;
            for (int j = 0; j < source->dim(); ++j) {
                Combo lhs = target->combo_mul(images[i], images[j]);
                Combo rhs = apply(source->mult(i, j));
                if (!target->combo_eq(lhs, rhs)) return false;
            }
        }
        return true;
    }

    AlgebraMorphism inverse() const
    {
        const F& f = source->field();
        Matrix<F> m = matrix();
        AlgebraMorphism inv;
        inv.source = target;
        inv.target = source;
        inv.vertex_map.assign(target->num_vertices(), -1);
        for (int v = 0; v < source->num_vertices(); ++v) inv.vertex_map[vertex_map[v]] = v;
        Matrix<F> mt = m.transpose();
        for (int i = 0; i < target->dim(); ++i) {
            std::vector<Elem_t<F>> e(target->dim(), f.zero());
            e[i] = f.one();
            auto sol = mt.solve(e);
            if (!sol.solution) throw error("morphism not invertible");
            inv.images.push_back(source->vec_to_combo(*sol.solution));
        }
        return inv;
    }
};

/* Build a morphism from generator images (one combo per generator position). */
template <class F>
AlgebraMorphism<F> morphism_from_generator_images(AlgebraPtr<F> src, AlgebraPtr<F> tgt,
                                                  std::vector<int> vertex_map,
                                                  const std::vector<typename GradedAlgebra<F>::Combo>& gen_images)
{
    const F& f = src->field();
    AlgebraMorphism<F> m;
    m.source = src;
    m.target = tgt;
    m.vertex_map = std::move(vertex_map);
    m.images.resize(src->dim());
    for (int i = 0; i < src->dim(); ++i) {
        typename GradedAlgebra<F>::Combo acc;
        for (const auto& [c, seq] : src->gen_expr(i).terms) {
            auto cur = tgt->combo_unit(m.vertex_map[src->basis(i).source]);
            for (int g : seq) cur = tgt->combo_mul(cur, gen_images[g]);
            tgt->combo_accumulate(acc, cur, c);
        }
        m.images[i] = std::move(acc);
    }
    return m;
}

template <class F>
AlgebraMorphism<F> identity_morphism(AlgebraPtr<F> A)
{
    AlgebraMorphism<F> m;
    m.source = m.target = A;
    for (int v = 0; v < A->num_vertices(); ++v) m.vertex_map.push_back(v);
    for (int i = 0; i < A->dim(); ++i) m.images.push_back(A->combo_unit(i));
    return m;
}

/* Twist of a module by an automorphism: same underlying space, action
 * precomposed with alpha. Block at (v,n) is M's block at (sigma(v), n). */
template <class F>
GradedModule<F> twist_module(const GradedModule<F>& M, const AlgebraMorphism<F>& alpha)
{
    const auto& A = M.algebra();
    const F& f = M.field();
    std::vector<int> sigma = alpha.vertex_map;
    std::vector<std::pair<std::pair<int, long>, int>> dims;
    std::vector<int> inv(sigma.size());
    for (std::size_t v = 0; v < sigma.size(); ++v) inv[sigma[v]] = static_cast<int>(v);
    for (const auto& b : M.blocks()) dims.push_back({{inv[b.vertex], b.degree}, b.dim});
    GradedModule<F> N(M.algebra_ptr(), dims);
    for (std::size_t g = 0; g < A.generators().size(); ++g) {
        const auto& ge = A.basis(A.generators()[g]);
        // act of g on N at block (u,n): action of alpha(g) on M from (sigma(u), n)
        const auto& img = alpha.images[A.generators()[g]];
        for (const auto& nb : N.blocks()) {
            if (nb.vertex != ge.source) continue;
            int nbi = N.block_index(nb.vertex, nb.degree);
            auto [tbi, shape] = N.target_block(static_cast<int>(g), nbi);
            if (tbi < 0) continue;
            // assemble sum of elem actions on M restricted to the source block
            int mb = M.block_index(sigma[ge.source], nb.degree);
            int mtb = M.block_index(sigma[ge.target], nb.degree + ge.degree);
            if (mb < 0 || mtb < 0) continue;
            Matrix<F> full(f, M.total_dim(), M.total_dim());
            for (const auto& t : img) full = full.add(M.elem_matrix(t.idx).scale(t.c));
            const auto& mblk = M.blocks()[mb];
            const auto& mtblk = M.blocks()[mtb];
            Matrix<F> blockm(f, mblk.dim, mtblk.dim);
            for (int i = 0; i < mblk.dim; ++i)
                for (int j = 0; j < mtblk.dim; ++j)
                    blockm.at(i, j) = full.at(mblk.offset + i, mtblk.offset + j);
            N.act(static_cast<int>(g), nbi) = blockm;
        }
    }
    return N;
}

// ---------------------------------------------------------------------------
// isomorphism search between basic algebras with multiplicity-free arrows

namespace detail {

/* lambda-monomial: scalar * product of generator unknowns (by position) */
template <class F>
struct LMono {
    Elem_t<F> c;
    std::vector<int> gens;  // sorted multiset
};

template <class F>
struct LPoly {
    std::vector<LMono<F>> terms;
};

}  // namespace detail

struct IsoSearchOptions {
    bool graded = true;
    int max_vertex_maps = 100000;
};

/* Scalar-ansatz isomorphism search: a vertex bijection plus one scalar per
 * generator, the image of g: u->w being lambda_g times the unique generator
 * sigma(u)->sigma(w) of the same degree. Scalars are pinned on a spanning
 * forest (gauge), propagated through the structure constants, defaulted to 1,
 * and the resulting morphism is verified in full, so the search can only err
 * by reporting "none". Parallel arrows between a vertex pair are rejected. */
template <class F>
std::optional<AlgebraMorphism<F>> find_isomorphism_for_vertex_map(AlgebraPtr<F> Ap,
                                                                  AlgebraPtr<F> Bp,
                                                                  const std::vector<int>& sigma,
                                                                  bool graded)
{
    const auto& A = *Ap;
    const auto& B = *Bp;
    const F& f = A.field();
    if (A.dim() != B.dim() || A.num_vertices() != B.num_vertices()) return std::nullopt;
    const int ng = static_cast<int>(A.generators().size());
    if (ng != static_cast<int>(B.generators().size())) return std::nullopt;

    // match generators
    std::vector<int> mate(ng, -1);  // generator position in B
    for (int g = 0; g < ng; ++g) {
        const auto& ge = A.basis(A.generators()[g]);
        int found = -1;
        for (int h = 0; h < ng; ++h) {
            const auto& he = B.basis(B.generators()[h]);
            if (he.source != sigma[ge.source] || he.target != sigma[ge.target]) continue;
            if (graded && he.degree != ge.degree) continue;
            if (found >= 0) throw error("isomorphism search: parallel arrows not supported");
            found = h;
        }
        if (found < 0) return std::nullopt;
        mate[g] = found;
    }
    std::vector<bool> used(ng, false);
    for (int g = 0; g < ng; ++g) {
        if (used[mate[g]]) return std::nullopt;  // two generators collapsing
        used[mate[g]] = true;
    }

    // gauge: spanning forest over source vertices; one generator per tree edge gets lambda = 1
    std::vector<std::optional<Elem_t<F>>> lambda(ng);
    {
        std::vector<int> comp(A.num_vertices(), -1);
        for (int root = 0; root < A.num_vertices(); ++root) {
            if (comp[root] >= 0) continue;
            comp[root] = root;
            std::vector<int> queue{root};
            while (!queue.empty()) {
                int v = queue.back();
                queue.pop_back();
                for (int g = 0; g < ng; ++g) {
                    const auto& ge = A.basis(A.generators()[g]);
                    int u = -1;
                    if (ge.source == v && comp[ge.target] < 0) u = ge.target;
                    if (ge.target == v && comp[ge.source] < 0) u = ge.source;
                    if (u < 0) continue;
                    comp[u] = root;
                    lambda[g] = f.one();
                    queue.push_back(u);
                }
            }
        }
    }

    /* equations: for every generator pair with g*h nonzero or image nonzero,
     * lambda_g lambda_h (g' * h') = image(g*h), where image(b) expands through
     * gen_expr with lambda-monomials. Iteratively solve the ones that are
     * linear in a single unknown. */
    auto expand_elem = [&](int b) {
        // image of basis element b as lambda-polynomial per B-basis coordinate
        std::map<int, detail::LPoly<F>> out;
        for (const auto& [c, seq] : A.gen_expr(b).terms) {
            // product of mates in B
            auto cur = B.combo_unit(sigma[A.basis(b).source]);
            for (int g : seq) cur = B.combo_mul(cur, B.combo_unit(B.generators()[mate[g]]));
            std::vector<int> gens(seq.begin(), seq.end());
            std::sort(gens.begin(), gens.end());
            for (const auto& t : cur)
                out[t.idx].terms.push_back({f.mul(c, t.c), gens});
        }
        return out;
    };

    struct Eq {
        std::map<int, detail::LPoly<F>> lhs;  // per B-basis coordinate, must vanish
    };
    std::vector<Eq> eqs;
    for (int g = 0; g < ng; ++g)
        for (int h = 0; h < ng; ++h) {
            int gb = A.generators()[g], hb = A.generators()[h];
            if (A.basis(gb).target != A.basis(hb).source) continue;
            Eq e;
            // lambda_g lambda_h * (g' h')
            const auto& prod = B.mult(B.generators()[mate[g]], B.generators()[mate[h]]);
            for (const auto& t : prod) {
                std::vector<int> gens{g, h};
                std::sort(gens.begin(), gens.end());
                e.lhs[t.idx].terms.push_back({t.c, gens});
            }
            // minus image(g*h)
            for (const auto& t : A.mult(gb, hb)) {
                auto img = expand_elem(t.idx);
                for (auto& [coord, poly] : img)
                    for (auto& m : poly.terms)
                        e.lhs[coord].terms.push_back({f.neg(f.mul(t.c, m.c)), m.gens});
            }
            if (!e.lhs.empty()) eqs.push_back(std::move(e));
        }

    auto eval_mono = [&](const detail::LMono<F>& m, int* unknown, int* unknown_count) -> Elem_t<F> {
        Elem_t<F> c = m.c;
        *unknown = -1;
        *unknown_count = 0;
        for (int g : m.gens) {
            if (lambda[g]) {
                c = f.mul(c, *lambda[g]);
            } else {
                ++*unknown_count;
                *unknown = g;
            }
        }
        return c;
    };

    for (int round = 0; round < ng + 2; ++round) {
        bool progress = false;
        for (const Eq& e : eqs) {
            for (const auto& [coord, poly] : e.lhs) {
                Elem_t<F> cst = f.zero();
                Elem_t<F> coef = f.zero();
                int the_unknown = -1;
                bool solvable = true;
                for (const auto& m : poly.terms) {
                    int u, uc;
                    Elem_t<F> c = eval_mono(m, &u, &uc);
                    if (uc == 0)
                        cst = f.add(cst, c);
                    else if (uc == 1 && (the_unknown < 0 || the_unknown == u)) {
                        the_unknown = u;
                        coef = f.add(coef, c);
                    } else {
                        solvable = false;
                        break;
                    }
                }
                if (!solvable || the_unknown < 0 || f.is_zero(coef)) continue;
                lambda[the_unknown] = f.neg(f.div(cst, coef));
                if (f.is_zero(*lambda[the_unknown])) return std::nullopt;  // degenerate image
                progress = true;
            }
        }
        if (!progress) break;
    }
    for (auto& l : lambda)
        if (!l) l = f.one();

    std::vector<typename GradedAlgebra<F>::Combo> gen_images(ng);
    for (int g = 0; g < ng; ++g)
        gen_images[g] = {{B.generators()[mate[g]], *lambda[g]}};
    AlgebraMorphism<F> m = morphism_from_generator_images(Ap, Bp, sigma, gen_images);
    if (!m.is_isomorphism()) return std::nullopt;
    return m;
}

/* Enumerate vertex bijections compatible with simple invariants and try each. */
template <class F>
std::optional<AlgebraMorphism<F>> find_isomorphism(AlgebraPtr<F> Ap, AlgebraPtr<F> Bp,
                                                   const IsoSearchOptions& opt = {})
{
    const auto& A = *Ap;
    const auto& B = *Bp;
    if (A.dim() != B.dim() || A.num_vertices() != B.num_vertices()) return std::nullopt;
    const int nv = A.num_vertices();

    auto profile = [&](const GradedAlgebra<F>& X, int v) {
        // (out, in) arrow degree multisets at v
        std::vector<long> outs, ins;
        for (int g : X.generators()) {
            if (X.basis(g).source == v) outs.push_back(opt.graded ? X.basis(g).degree : 0);
            if (X.basis(g).target == v) ins.push_back(opt.graded ? X.basis(g).degree : 0);
        }
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        return std::make_pair(outs, ins);
    };
    std::vector<std::vector<int>> candidates(nv);
    for (int v = 0; v < nv; ++v) {
        for (int w = 0; w < nv; ++w)
            if (profile(A, v) == profile(B, w)) candidates[v].push_back(w);
        if (candidates[v].empty()) return std::nullopt;
    }

    std::vector<int> sigma(nv, -1);
    std::vector<bool> taken(nv, false);
    long long tried = 0;
    std::optional<AlgebraMorphism<F>> found;
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == nv) {
            ++tried;
            if (tried > opt.max_vertex_maps) throw error("isomorphism search: too many vertex maps");
            auto m = find_isomorphism_for_vertex_map(Ap, Bp, sigma, opt.graded);
            if (m) {
                found = std::move(m);
                return true;
            }
            return false;
        }
        for (int w : candidates[v]) {
            if (taken[w]) continue;
            // partial consistency: arrows among assigned vertices must match
            bool ok = true;
            for (int g : A.generators()) {
                const auto& ge = A.basis(g);
                int su = ge.source == v ? w : (ge.source < v ? sigma[ge.source] : -1);
                int sw = ge.target == v ? w : (ge.target < v ? sigma[ge.target] : -1);
                if ((ge.source == v || ge.source < v) && (ge.target == v || ge.target < v)) {
                    bool foundm = false;
                    for (int h : B.generators()) {
                        const auto& he = B.basis(h);
                        if (he.source == su && he.target == sw &&
                            (!opt.graded || he.degree == ge.degree)) {
                            foundm = true;
                            break;
                        }
                    }
                    if (!foundm) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) continue;
            sigma[v] = w;
            taken[w] = true;
            if (rec(v + 1)) return true;
            sigma[v] = -1;
            taken[w] = false;
        }
        return false;
    };
    rec(0);
    return found;
}

}  // namespace qalg
