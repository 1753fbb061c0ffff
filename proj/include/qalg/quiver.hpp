#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qalg/field.hpp"

namespace qalg {

struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
    long degree = 0;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_index(const std::string& name) const
    {
        for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
            if (vertices[i] == name) return i;
        throw error("unknown vertex: " + name);
    }
    int arrow_index(const std::string& name) const
    {
        for (int i = 0; i < static_cast<int>(arrows.size()); ++i)
            if (arrows[i].name == name) return i;
        throw error("unknown arrow: " + name);
    }

    void validate() const
    {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                if (vertices[i] == vertices[j]) throw error("duplicate vertex: " + vertices[i]);
        int nv = static_cast<int>(vertices.size());
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            const Arrow& a = arrows[i];
            if (a.source < 0 || a.source >= nv || a.target < 0 || a.target >= nv)
                throw error("arrow endpoint out of range: " + a.name);
            for (std::size_t j = i + 1; j < arrows.size(); ++j)
                if (arrows[j].name == a.name) throw error("duplicate arrow: " + a.name);
        }
    }

    // reversed-arrow quiver, same names
    Quiver opposite() const
    {
        Quiver q = *this;
        for (Arrow& a : q.arrows) std::swap(a.source, a.target);
        return q;
    }
};

/* A path is the ordered list of arrows traversed, source to target:
 * path {d, a} means "d then a". This matches the composition the relations
 * in input files are written in (e.g. "da = fc" with a: 2→1, d: 5→2). */
using Path = std::vector<int>;

inline bool path_composable(const Quiver& q, const Path& p)
{
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (q.arrows[p[i]].target != q.arrows[p[i + 1]].source) return false;
    return true;
}

inline int path_source(const Quiver& q, const Path& p) { return q.arrows[p.front()].source; }
inline int path_target(const Quiver& q, const Path& p) { return q.arrows[p.back()].target; }

inline long path_degree(const Quiver& q, const Path& p)
{
    long d = 0;
    for (int a : p) d += q.arrows[a].degree;
    return d;
}

template <class F>
struct Relation {
    // terms share source, target, length and total degree
    std::vector<std::pair<typename F::Elem, Path>> terms;
};

template <class F>
using RelationSet = std::vector<Relation<F>>;

}  // namespace qalg
