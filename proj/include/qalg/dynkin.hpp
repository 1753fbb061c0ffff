#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qalg {

/* Simply-laced Dynkin tree. Vertices 0..rank-1; A_n a path, D_n forked at
 * vertex 2, E_n a path with one vertex hanging off position 2. */
struct DynkinGraph {
    char family = 'A';
    int rank = 0;
    std::vector<std::pair<int, int>> edges;

    std::string label() const { return std::string(1, family) + std::to_string(rank); }
    int positive_roots() const;
};

DynkinGraph dynkin_graph(char family, int rank);
DynkinGraph dynkin_graph(const std::string& label);

/* Identify a forest as a disjoint union of ADE trees; returns labels like
 * "A3" or "A2+D4" (sorted), or nullopt if some component is not ADE. */
std::optional<std::string> identify_ade(int nv, const std::vector<std::pair<int, int>>& edges);

/* A fixed orientation of a Dynkin graph: arrows[i] tells whether edge i runs
 * from .first to .second (true) or the other way (false). The default
 * orientation points every edge toward the smaller endpoint. */
struct DynkinQuiver {
    DynkinGraph graph;
    std::vector<bool> forward;  // per edge

    std::pair<int, int> arrow(int e) const
    {
        auto [a, b] = graph.edges[e];
        return forward[e] ? std::make_pair(a, b) : std::make_pair(b, a);
    }
    int num_arrows() const { return static_cast<int>(graph.edges.size()); }
};

DynkinQuiver dynkin_quiver(const DynkinGraph& g);                       // default orientation
DynkinQuiver dynkin_quiver(const DynkinGraph& g, const std::string& orientation_bits);

/* topological order of the quiver's vertices (sources first) */
std::vector<int> topological_order(const DynkinQuiver& q);

}  // namespace qalg
