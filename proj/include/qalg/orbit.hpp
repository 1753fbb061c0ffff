#pragma once

#include "qalg/mesh.hpp"

namespace qalg {

/* Automorphism of ZQ of the form (n,v) -> (n + s[v], rho[v]) with rho a graph
 * automorphism; covers the suspension and τ-powers. */
struct MeshAutomorphism {
    std::vector<int> rho;
    std::vector<long> s;

    ZCoord apply(const ZCoord& c) const { return {c.first + s[c.second], rho[c.second]}; }
    ZCoord apply_pow(ZCoord c, long k) const
    {
        MeshAutomorphism inv = inverse();
        for (; k > 0; --k) c = apply(c);
        for (; k < 0; ++k) c = inv.apply(c);
        return c;
    }
    MeshAutomorphism inverse() const
    {
        MeshAutomorphism out;
        out.rho.assign(rho.size(), -1);
        out.s.assign(s.size(), 0);
        for (std::size_t v = 0; v < rho.size(); ++v) {
            out.rho[rho[v]] = static_cast<int>(v);
            out.s[rho[v]] = -s[v];
        }
        return out;
    }
};

/* Arrow images: (n,u)->(n,v) maps to an arrow iff either both endpoints stay
 * in one column or they split across consecutive columns the right way. */
inline void validate_mesh_automorphism(const DynkinQuiver& Q, const MeshAutomorphism& phi)
{
    const int nv = Q.graph.rank;
    if (static_cast<int>(phi.rho.size()) != nv || static_cast<int>(phi.s.size()) != nv)
        throw error("mesh automorphism: wrong rank");
    std::vector<bool> seen(nv, false);
    for (int v = 0; v < nv; ++v) {
        if (phi.rho[v] < 0 || phi.rho[v] >= nv || seen[phi.rho[v]])
            throw error("mesh automorphism: rho not a permutation");
        seen[phi.rho[v]] = true;
    }
    auto is_arrow = [&](int u, int v) {
        for (int e = 0; e < Q.num_arrows(); ++e)
            if (Q.arrow(e) == std::make_pair(u, v)) return true;
        return false;
    };
    for (int e = 0; e < Q.num_arrows(); ++e) {
        auto [u, v] = Q.arrow(e);
        // image of (0,u)->(0,v)
        long du = phi.s[u], dv = phi.s[v];
        bool ok1 = (du == dv && is_arrow(phi.rho[u], phi.rho[v])) ||
                   (dv == du + 1 && is_arrow(phi.rho[v], phi.rho[u]));
        // image of (0,v)->(1,u)
        long dv2 = phi.s[v], du2 = 1 + phi.s[u];
        bool ok2 = (dv2 == du2 && is_arrow(phi.rho[v], phi.rho[u])) ||
                   (du2 == dv2 + 1 && is_arrow(phi.rho[u], phi.rho[v]));
        if (!ok1 || !ok2) throw error("mesh automorphism: does not preserve arrows");
    }
    // fixed-point freeness
    for (int v = 0; v < nv; ++v)
        if (phi.rho[v] == v && phi.s[v] == 0) throw error("mesh automorphism has a fixed point");
}

/* τ^{-k} as a mesh automorphism. */
inline MeshAutomorphism tau_power_automorphism(const DynkinQuiver& Q, long k)
{
    MeshAutomorphism phi;
    for (int v = 0; v < Q.graph.rank; ++v) {
        phi.rho.push_back(v);
        phi.s.push_back(k);
    }
    return phi;
}

/* An abstract ZQ arrow between coordinates. */
struct ZArrow {
    ZCoord src, tgt;
    bool operator<(const ZArrow& o) const
    {
        return std::tie(src, tgt) < std::tie(o.src, o.tgt);
    }
    bool operator==(const ZArrow& o) const { return src == o.src && tgt == o.tgt; }
};

inline std::vector<ZArrow> out_arrows_of(const DynkinQuiver& Q, const ZCoord& c)
{
    std::vector<ZArrow> out;
    for (int e = 0; e < Q.num_arrows(); ++e) {
        auto [u, v] = Q.arrow(e);
        if (u == c.second) out.push_back({c, {c.first, v}});
        if (v == c.second) out.push_back({c, {c.first + 1, u}});
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ZArrow apply_automorphism(const MeshAutomorphism& phi, const ZArrow& a)
{
    return {phi.apply(a.src), phi.apply(a.tgt)};
}

/* Orbit data: representatives with minimal column >= 0 (ties by vertex),
 * and the decomposition coord = phi^d(rep). */
struct OrbitStructure {
    MeshAutomorphism phi;
    std::vector<ZCoord> reps;

    std::pair<int, long> locate(const ZCoord& c) const
    {
        // d with phi^{-d}(c) a representative; orbits are finite mod phi
        MeshAutomorphism inv = phi.inverse();
        ZCoord fwd = c, bwd = c;
        for (long d = 0; d < 4096; ++d) {
            for (std::size_t r = 0; r < reps.size(); ++r) {
                if (fwd == reps[r]) return {static_cast<int>(r), -d};
                if (bwd == reps[r]) return {static_cast<int>(r), d};
            }
            fwd = phi.apply(fwd);
            bwd = inv.apply(bwd);
        }
        throw error("orbit locate: representative not found");
    }
};

/* Orbits of phi on Z × Δ₀: a rho-cycle of length c with total shift T
 * contributes |T| orbits, one per column residue mod T. */
inline OrbitStructure orbit_structure(const DynkinQuiver& Q, const MeshAutomorphism& phi)
{
    validate_mesh_automorphism(Q, phi);
    OrbitStructure out;
    out.phi = phi;
    const int nv = Q.graph.rank;
    std::vector<bool> covered(nv, false);
    for (int v = 0; v < nv; ++v) {
        if (covered[v]) continue;
        std::vector<std::pair<long, int>> cycle;  // (cumulative shift, vertex)
        long n = 0;
        int w = v;
        do {
            cycle.push_back({n, w});
            covered[w] = true;
            n += phi.s[w];
            w = phi.rho[w];
        } while (w != v);
        long total = n;  // shift of phi^{cycle length}
        if (total == 0) throw error("mesh automorphism is not admissible (finite order)");
        long T = total > 0 ? total : -total;
        for (long m = 0; m < T; ++m) {
            ZCoord best{0, 0};
            bool have = false;
            for (auto [pi, cv] : cycle) {
                long r = (m + pi) % T;
                if (r < 0) r += T;
                ZCoord cand{r, cv};
                if (!have || cand < best) {
                    best = cand;
                    have = true;
                }
            }
            out.reps.push_back(best);
        }
    }
    std::sort(out.reps.begin(), out.reps.end());
    out.reps.erase(std::unique(out.reps.begin(), out.reps.end()), out.reps.end());
    return out;
}

/* The orbit algebra k(ZQ)/phi: vertices are the phi-orbits, the degree-d part
 * from x to y is Hom_{k(ZQ)}(x, phi^d y), multiplication by translation and
 * composition of reduced paths. */
template <class F>
struct OrbitAlgebraResult {
    AlgebraPtr<F> algebra;                // abstract, via mesh Hom bases
    Quiver presented_quiver;              // mesh presentation of the same algebra
    RelationSet<F> presented_relations;
    OrbitStructure orbits;
    long window_lo = 0, window_hi = 0;
};

template <class F>
OrbitAlgebraResult<F> orbit_algebra(const F& f, const DynkinQuiver& Q, const MeshAutomorphism& phi,
                                    long window_cap = 512)
{
    OrbitAlgebraResult<F> out;
    out.orbits = orbit_structure(Q, phi);
    const auto& reps = out.orbits.reps;
    const int nreps = static_cast<int>(reps.size());

    // auto-extend the window until every representative's Hom support closes
    long lo = 0, hi = 8;
    for (const auto& r : reps) {
        lo = std::min(lo, r.first);
        hi = std::max(hi, r.first + 8);
    }
    TranslationQuiver tq;
    std::vector<MeshHom<F>> homs;
    while (true) {
        if (hi - lo > window_cap) throw error("orbit algebra: window cap exceeded");
        tq = translation_quiver(Q, lo, hi);
        bool closed = true;
        homs.clear();
        for (const auto& r : reps) {
            auto dims = mesh_hom_dims(tq, tq.id(r));
            if (!dims.closed) {
                closed = false;
                break;
            }
        }
        if (closed) break;
        hi += (hi - lo);
    }
    for (const auto& r : reps) homs.push_back(mesh_hom(f, tq, tq.id(r)));
    out.window_lo = lo;
    out.window_hi = hi;

    // basis: (x, y, d) with Hom(x, phi^d y) nonzero
    struct BElem {
        int x, y;
        long d;
        int i;  // index in the mesh Hom basis
    };
    std::vector<BElem> belems;
    std::vector<std::string> vnames;
    for (int r = 0; r < nreps; ++r)
        vnames.push_back("v" + std::to_string(r));
    long dmax = (hi - lo) + 2;
    for (int x = 0; x < nreps; ++x)
        for (int y = 0; y < nreps; ++y)
            for (long d = -dmax; d <= dmax; ++d) {
                ZCoord tgt = out.orbits.phi.apply_pow(reps[y], d);
                if (!tq.in_window(tgt)) continue;
                int dim = homs[x].dim[tq.id(tgt)];
                for (int i = 0; i < dim; ++i) belems.push_back({x, y, d, i});
            }
    // identity elements must be the first per vertex; sort: idempotents first
    std::stable_sort(belems.begin(), belems.end(), [&](const BElem& a, const BElem& b) {
        bool ia = a.x == a.y && a.d == 0 && homs[a.x].basis[tq.id(reps[a.x])][a.i].empty();
        bool ib = b.x == b.y && b.d == 0 && homs[b.x].basis[tq.id(reps[b.x])][b.i].empty();
        if (ia != ib) return ia;
        return std::tie(a.x, a.y, a.d, a.i) < std::tie(b.x, b.y, b.d, b.i);
    });
    using GA = GradedAlgebra<F>;
    std::vector<typename GA::BasisElem> basis;
    std::map<std::tuple<int, int, long, int>, int> index_of;
    for (const auto& b : belems) {
        typename GA::BasisElem e;
        e.source = b.x;
        e.target = b.y;
        e.degree = b.d;
        e.length = 0;  // recomputed by make_abstract
        e.label = "h" + std::to_string(b.x) + "_" + std::to_string(b.y) + "[" +
                  std::to_string(b.d) + "]#" + std::to_string(b.i);
        index_of[{b.x, b.y, b.d, b.i}] = static_cast<int>(basis.size());
        basis.push_back(e);
    }

    /* product of (x -> phi^d y, index i) and (y -> phi^e z, index j):
     * translate the second path by phi^d and extend the first coordinate
     * vector along it. */
    auto arrow_id = [&](const ZArrow& a) {
        if (!tq.in_window(a.src) || !tq.in_window(a.tgt)) throw error("orbit: arrow outside window");
        for (int k : tq.out_arrows[tq.id(a.src)])
            if (tq.arrows[k].tgt == tq.id(a.tgt)) return k;
        throw error("orbit: arrow not found");
    };
    std::vector<std::vector<typename GA::Combo>> mult(basis.size(),
                                                      std::vector<typename GA::Combo>(basis.size()));
    for (std::size_t p = 0; p < belems.size(); ++p)
        for (std::size_t q = 0; q < belems.size(); ++q) {
            const BElem& a = belems[p];
            const BElem& b = belems[q];
            if (a.y != b.x) continue;
            ZCoord end = out.orbits.phi.apply_pow(reps[b.y], a.d + b.d);
            if (!tq.in_window(end)) continue;  // support is closed: the product vanishes
            ZCoord mid = out.orbits.phi.apply_pow(reps[b.x], a.d);
            std::vector<Elem_t<F>> vec(homs[a.x].dim[tq.id(mid)], f.zero());
            {
                // coordinates of the first factor at phi^{a.d}(y)... the basis
                // element is the unit vector i at the vertex phi^{a.d}(rep_y)
                ZCoord tgt = out.orbits.phi.apply_pow(reps[a.y], a.d);
                if (tq.id(tgt) != tq.id(mid)) throw error("orbit: midpoint mismatch");
                vec[a.i] = f.one();
            }
            const Path& second = homs[b.x].basis[tq.id(out.orbits.phi.apply_pow(reps[b.y], b.d))][b.i];
            // walk the translated second path
            ZCoord at = mid;
            for (int arr : second) {
                ZArrow za{tq.coord(tq.arrows[arr].src), tq.coord(tq.arrows[arr].tgt)};
                for (long k = 0; k < a.d; ++k) za = apply_automorphism(out.orbits.phi, za);
                for (long k = 0; k > a.d; --k)
                    za = apply_automorphism(out.orbits.phi.inverse(), za);
                if (za.src != at) throw error("orbit: path does not continue");
                vec = homs[a.x].extend(f, arrow_id(za), vec);
                at = za.tgt;
            }
            typename GA::Combo combo;
            for (int i = 0; i < static_cast<int>(vec.size()); ++i)
                if (!f.is_zero(vec[i])) combo.push_back({index_of.at({a.x, b.y, a.d + b.d, i}), vec[i]});
            mult[index_of.at({a.x, a.y, a.d, a.i})][index_of.at({b.x, b.y, b.d, b.i})] =
                std::move(combo);
        }
    out.algebra = std::make_shared<const GradedAlgebra<F>>(
        GradedAlgebra<F>::make_abstract(f, vnames, basis, mult, "orbit"));

    // mesh presentation: arrows out of representatives, mesh relation per orbit
    Quiver pq;
    pq.vertices = vnames;
    std::map<ZArrow, int> arrow_index;
    auto apply_pow_arrow = [&](ZArrow a, long k) {
        MeshAutomorphism inv = out.orbits.phi.inverse();
        for (; k > 0; --k) a = apply_automorphism(out.orbits.phi, a);
        for (; k < 0; ++k) a = apply_automorphism(inv, a);
        return a;
    };
    auto canonical_arrow = [&](const ZArrow& a) {
        auto [r, d] = out.orbits.locate(a.src);
        (void)r;
        return apply_pow_arrow(a, -d);  // source becomes a representative
    };
    for (int r = 0; r < nreps; ++r)
        for (const ZArrow& a : out_arrows_of(Q, reps[r])) {
            auto [tr, td] = out.orbits.locate(a.tgt);  // tgt = phi^{td}(rep_tr)
            Arrow ar;
            ar.name = "a" + std::to_string(pq.arrows.size());
            ar.source = r;
            ar.target = tr;
            ar.degree = td;
            arrow_index[a] = static_cast<int>(pq.arrows.size());
            pq.arrows.push_back(ar);
        }
    RelationSet<F> rels;
    for (int r = 0; r < nreps; ++r) {
        // mesh ending at the representative z = reps[r]
        ZCoord z = reps[r];
        ZCoord t{z.first - 1, z.second};
        Relation<F> rel;
        for (const ZArrow& a : out_arrows_of(Q, t)) {
            ZArrow b{a.tgt, z};
            // is b an arrow of ZQ?
            auto bs = out_arrows_of(Q, a.tgt);
            if (std::find(bs.begin(), bs.end(), b) == bs.end()) continue;
            int ia = arrow_index.at(canonical_arrow(a));
            int ib = arrow_index.at(canonical_arrow(b));
            rel.terms.emplace_back(f.one(), Path{ia, ib});
        }
        if (!rel.terms.empty()) rels.push_back(std::move(rel));
    }
    out.presented_quiver = pq;
    out.presented_relations = rels;
    return out;
}

}  // namespace qalg
