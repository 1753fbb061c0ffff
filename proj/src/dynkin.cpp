#include "qalg/dynkin.hpp"

#include <algorithm>
#include <map>

#include "qalg/field.hpp"

namespace qalg {

int DynkinGraph::positive_roots() const
{
    switch (family) {
        case 'A': return rank * (rank + 1) / 2;
        case 'D': return rank * (rank - 1);
        case 'E':
            if (rank == 6) return 36;
            if (rank == 7) return 63;
            return 120;
    }
    throw error("unknown Dynkin family");
}

DynkinGraph dynkin_graph(char family, int rank)
{
    DynkinGraph g;
    g.family = family;
    g.rank = rank;
    switch (family) {
        case 'A':
            if (rank < 1) throw error("A_n needs n >= 1");
            for (int i = 0; i + 1 < rank; ++i) g.edges.push_back({i, i + 1});
            return g;
        case 'D':
            if (rank < 4) throw error("D_n needs n >= 4");
            g.edges.push_back({0, 2});
            g.edges.push_back({1, 2});
            for (int i = 2; i + 1 < rank; ++i) g.edges.push_back({i, i + 1});
            return g;
        case 'E':
            if (rank < 6 || rank > 8) throw error("E_n needs n in {6,7,8}");
            for (int i = 0; i + 2 < rank; ++i) g.edges.push_back({i, i + 1});
            g.edges.push_back({2, rank - 1});
            return g;
    }
    throw error("unknown Dynkin family");
}

DynkinGraph dynkin_graph(const std::string& label)
{
    if (label.size() < 2) throw error("bad Dynkin label: " + label);
    return dynkin_graph(label[0], std::stoi(label.substr(1)));
}

std::optional<std::string> identify_ade(int nv, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<std::vector<int>> adj(nv);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= nv || b >= nv || a == b) return std::nullopt;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> comp(nv, -1);
    int ncomp = 0;
    for (int v = 0; v < nv; ++v) {
        if (comp[v] >= 0) continue;
        std::vector<int> stack{v};
        comp[v] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[u])
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }
    // per component: must be a tree of ADE shape
    std::vector<std::string> labels;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> verts;
        for (int v = 0; v < nv; ++v)
            if (comp[v] == c) verts.push_back(v);
        int ne = 0;
        for (auto [a, b] : edges)
            if (comp[a] == c) ++ne;
        if (ne != static_cast<int>(verts.size()) - 1) return std::nullopt;  // not a tree
        std::vector<int> deg3;
        for (int v : verts) {
            if (adj[v].size() > 3) return std::nullopt;
            if (adj[v].size() == 3) deg3.push_back(v);
        }
        int n = static_cast<int>(verts.size());
        if (deg3.empty()) {
            labels.push_back("A" + std::to_string(n));
            continue;
        }
        if (deg3.size() > 1) return std::nullopt;
        // arm lengths from the branch vertex
        int b = deg3[0];
        std::vector<int> arms;
        for (int s : adj[b]) {
            int len = 1, prev = b, cur = s;
            while (true) {
                int nxt = -1;
                for (int w : adj[cur])
                    if (w != prev) nxt = w;
                if (nxt < 0) break;
                prev = cur;
                cur = nxt;
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms[0] == 1 && arms[1] == 1)
            labels.push_back("D" + std::to_string(arms[2] + 3));
        else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
            labels.push_back("E" + std::to_string(arms[2] + 4));
        else
            return std::nullopt;
    }
    std::sort(labels.begin(), labels.end());
    std::string out;
    for (const auto& l : labels) {
        if (!out.empty()) out += "+";
        out += l;
    }
    return out;
}

DynkinQuiver dynkin_quiver(const DynkinGraph& g)
{
    DynkinQuiver q;
    q.graph = g;
    for (auto [a, b] : g.edges) q.forward.push_back(b < a);  // toward the smaller vertex
    return q;
}

DynkinQuiver dynkin_quiver(const DynkinGraph& g, const std::string& bits)
{
    if (bits.size() != g.edges.size())
        throw error("orientation needs one bit per edge (" + std::to_string(g.edges.size()) + ")");
    DynkinQuiver q;
    q.graph = g;
    for (char c : bits) q.forward.push_back(c == '1');
    return q;
}

std::vector<int> topological_order(const DynkinQuiver& q)
{
    int nv = q.graph.rank;
    std::vector<int> indeg(nv, 0);
    for (int e = 0; e < q.num_arrows(); ++e) ++indeg[q.arrow(e).second];
    std::vector<int> order, stack;
    for (int v = 0; v < nv; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int e = 0; e < q.num_arrows(); ++e)
            if (q.arrow(e).first == v && --indeg[q.arrow(e).second] == 0)
                stack.push_back(q.arrow(e).second);
    }
    if (static_cast<int>(order.size()) != nv) throw error("quiver has an oriented cycle");
    return order;
}

}  // namespace qalg
