#pragma once

#include <map>
#include <set>

#include "qalg/dynkin.hpp"
#include "qalg/field.hpp"

namespace qalg {

/* An AR-quiver presented combinatorially: vertices, arrows, and (optionally)
 * the translate. ADE windows have no multiple arrows. */
struct AbstractArQuiver {
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> arrows;
    std::vector<int> tau;  // -1 where unknown; may be empty

    int nv() const { return static_cast<int>(labels.size()); }
};

struct SliceResult {
    bool ok = false;
    std::string reason;
    std::string label;
    std::vector<int> orbit;    // per vertex
    std::vector<long> column;  // per vertex: consistent ZQ column
    std::vector<int> tau;      // the translate used
    std::vector<std::pair<int, int>> section_edges;  // between orbits
};

namespace detail {

struct ColumnData {
    bool ok = false;
    std::string reason;
    std::vector<int> orbit;
    std::vector<long> column;
    std::vector<std::pair<int, int>> section_edges;
    int norb = 0;
};

/* τ-chains, orbit columns and the section graph from a given translate. */
inline ColumnData assign_columns(const AbstractArQuiver& q, const std::vector<int>& tau)
{
    ColumnData out;
    {
        std::set<int> seen;
        for (int z = 0; z < q.nv(); ++z)
            if (tau[z] >= 0 && !seen.insert(tau[z]).second) {
                out.reason = "translate not injective";
                return out;
            }
    }
    std::vector<int> orbit(q.nv(), -1);
    std::vector<long> pos(q.nv(), 0);
    std::vector<int> prev(q.nv(), -1);
    for (int z = 0; z < q.nv(); ++z)
        if (tau[z] >= 0) prev[tau[z]] = z;
    int norb = 0;
    for (int z = 0; z < q.nv(); ++z) {
        if (orbit[z] >= 0) continue;
        int h = z;
        std::set<int> guard;
        while (tau[h] >= 0) {
            if (!guard.insert(h).second) {
                out.reason = "translate has a cycle";
                return out;
            }
            h = tau[h];
        }
        if (orbit[h] >= 0) continue;
        long p = 0;
        for (int cur = h; cur >= 0; cur = prev[cur]) {
            orbit[cur] = norb;
            pos[cur] = p++;
        }
        ++norb;
    }
    // allowed base differences per orbit pair
    std::map<std::pair<int, int>, std::set<long>> allowed;
    for (auto [a, b] : q.arrows) {
        if (orbit[a] == orbit[b]) {
            out.reason = "arrow inside a τ-orbit";
            return out;
        }
        long d = pos[b] - pos[a];
        auto key = std::minmax(orbit[a], orbit[b]);
        std::set<long> here = orbit[a] < orbit[b] ? std::set<long>{-d, 1 - d}
                                                  : std::set<long>{d, d - 1};
        auto it = allowed.find({key.first, key.second});
        if (it == allowed.end()) {
            allowed[{key.first, key.second}] = here;
        } else {
            std::set<long> inter;
            for (long x : it->second)
                if (here.count(x)) inter.insert(x);
            it->second = inter;
            if (inter.empty()) {
                out.reason = "arrows do not fit the ZQ pattern";
                return out;
            }
        }
    }
    std::vector<long> base(norb, 0);
    std::vector<bool> placed(norb, false);
    std::vector<std::vector<int>> og(norb);
    for (const auto& [k, v] : allowed) {
        og[k.first].push_back(k.second);
        og[k.second].push_back(k.first);
    }
    for (int r = 0; r < norb; ++r) {
        if (placed[r]) continue;
        placed[r] = true;
        base[r] = 0;
        std::vector<int> stack{r};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : og[u]) {
                auto key = std::minmax(u, w);
                const auto& al = allowed.at({key.first, key.second});
                if (!placed[w]) {
                    long diff = *al.begin();
                    base[w] = u < w ? base[u] + diff : base[u] - diff;
                    placed[w] = true;
                    stack.push_back(w);
                } else {
                    long diff = u < w ? base[w] - base[u] : base[u] - base[w];
                    if (!al.count(diff)) {
                        out.reason = "orbit graph has an inconsistent cycle";
                        return out;
                    }
                }
            }
        }
    }
    out.ok = true;
    out.orbit = orbit;
    out.column.assign(q.nv(), 0);
    for (int z = 0; z < q.nv(); ++z) out.column[z] = base[orbit[z]] + pos[z];
    for (const auto& [k, v] : allowed) out.section_edges.push_back(k);
    out.norb = norb;
    return out;
}

}  // namespace detail

/* Candidate translates by profile matching: τz must satisfy
 * out-neighbours(τz) = in-neighbours(z) as sets. */
inline std::vector<std::vector<int>> tau_candidates(const AbstractArQuiver& q)
{
    std::vector<std::set<int>> ins(q.nv()), outs(q.nv());
    for (auto [a, b] : q.arrows) {
        outs[a].insert(b);
        ins[b].insert(a);
    }
    std::vector<std::vector<int>> cand(q.nv());
    for (int z = 0; z < q.nv(); ++z) {
        if (ins[z].empty()) continue;
        for (int t = 0; t < q.nv(); ++t)
            if (t != z && !outs[t].empty() && outs[t] == ins[z]) cand[z].push_back(t);
    }
    return cand;
}

/* Mutually unique matches only; window boundaries stay unassigned. */
inline std::vector<int> infer_tau(const AbstractArQuiver& q)
{
    auto cand = tau_candidates(q);
    std::vector<int> hits(q.nv(), 0);
    for (int z = 0; z < q.nv(); ++z)
        if (cand[z].size() == 1) ++hits[cand[z][0]];
    std::vector<int> tau(q.nv(), -1);
    for (int z = 0; z < q.nv(); ++z)
        if (cand[z].size() == 1 && hits[cand[z][0]] == 1) tau[z] = cand[z][0];
    return tau;
}

/* Extract the tree type of a stable translation quiver. τ is taken from the
 * quiver if present; otherwise safe profile matches are used and the
 * remaining boundary matches are committed greedily, each validated against
 * the global column constraints. */
inline SliceResult slice_type(const AbstractArQuiver& q)
{
    SliceResult out;
    if (q.nv() == 0) {
        out.reason = "empty quiver";
        return out;
    }
    if (q.arrows.empty()) {
        out.reason = "no arrows: slice type undetermined (A1 components are handled upstream)";
        return out;
    }
    std::vector<int> tau = q.tau.empty() ? infer_tau(q) : q.tau;
    if (q.tau.empty()) {
        auto cand = tau_candidates(q);
        std::vector<bool> taken(q.nv(), false);
        for (int z = 0; z < q.nv(); ++z)
            if (tau[z] >= 0) taken[tau[z]] = true;
        bool progress = true;
        while (progress) {
            progress = false;
            for (int z = 0; z < q.nv(); ++z) {
                if (tau[z] >= 0) continue;
                for (int t : cand[z]) {
                    if (taken[t]) continue;
                    std::vector<int> trial = tau;
                    trial[z] = t;
                    if (detail::assign_columns(q, trial).ok) {
                        tau = trial;
                        taken[t] = true;
                        progress = true;
                        break;
                    }
                }
            }
        }
    }
    out.tau = tau;
    auto cd = detail::assign_columns(q, tau);
    if (!cd.ok) {
        out.reason = cd.reason;
        return out;
    }
    auto ade = identify_ade(cd.norb, cd.section_edges);
    if (!ade) {
        out.reason = "section is not a disjoint union of ADE trees";
        return out;
    }
    out.ok = true;
    out.label = *ade;
    out.orbit = cd.orbit;
    out.column = cd.column;
    out.section_edges = cd.section_edges;
    return out;
}

}  // namespace qalg
