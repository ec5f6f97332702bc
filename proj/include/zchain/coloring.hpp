#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "zchain/error.hpp"
#include "zchain/surface.hpp"
#include "zchain/zigzag.hpp"

namespace zchain {

/// color per vertex id, values 0..2
using Coloring = std::vector<int>;

inline bool is_proper(const Triangulation& t, const Coloring& c) {
    for (const auto& e : t.edges())
        if (c[static_cast<size_t>(e[0])] == c[static_cast<size_t>(e[1])]) return false;
    return true;
}

/// Exact backtracking 3-coloring in vertex id order. Symmetry is broken by
/// fixing vertex 0 to color 0 and its least neighbor to color 1, so the first
/// solution found is deterministic.
inline std::optional<Coloring> three_color(const Triangulation& t) {
    int n = t.vertex_count();
    Coloring color(static_cast<size_t>(n), -1);
    int pinned = t.neighbors(0).empty() ? -1 : t.neighbors(0)[0];

    auto admissible = [&](int v, int c) {
        for (int u : t.neighbors(v))
            if (color[static_cast<size_t>(u)] == c) return false;
        return true;
    };
    auto dfs = [&](auto&& self, int v) -> bool {
        if (v == n) return true;
        int lo = 0, hi = 2;
        if (v == 0) lo = hi = 0;
        if (v == pinned) lo = hi = 1;
        for (int c = lo; c <= hi; ++c) {
            if (!admissible(v, c)) continue;
            color[static_cast<size_t>(v)] = c;
            if (self(self, v + 1)) return true;
            color[static_cast<size_t>(v)] = -1;
        }
        return false;
    };
    if (!dfs(dfs, 0)) return std::nullopt;
    return color;
}

/// Mod-3 potential for an all-type-II classification: propagate
/// phi(head) = phi(tail) + 1 along every type II direction from the least
/// vertex. A globally consistent potential is a proper 3-coloring; a
/// contradiction means none exists.
inline std::optional<Coloring> mod3_potential(const Triangulation& t, const Classification& cls) {
    if (!cls.all_faces_type2())
        fail("NotAllTypeII", "mod-3 potential requires every face to be of type II");
    int n = t.vertex_count();
    Coloring phi(static_cast<size_t>(n), -1);
    phi[0] = 0;
    std::vector<int> queue{0};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (int v : t.neighbors(u)) {
            const auto& ec = cls.edges[static_cast<size_t>(t.edge_id(u, v))];
            int want = ec.tail == u ? (phi[static_cast<size_t>(u)] + 1) % 3
                                    : (phi[static_cast<size_t>(u)] + 2) % 3;
            if (phi[static_cast<size_t>(v)] < 0) {
                phi[static_cast<size_t>(v)] = want;
                queue.push_back(v);
            } else if (phi[static_cast<size_t>(v)] != want) {
                return std::nullopt;
            }
        }
    }
    return phi;
}

/// Vertex subset meeting every face in exactly one vertex, or nullopt.
/// Include-first search in id order returns the lexicographically least
/// factor.
inline std::optional<std::vector<int>> color_factor(const Triangulation& t) {
    int n = t.vertex_count();
    std::vector<int> hits(static_cast<size_t>(t.face_count()), 0);
    std::vector<int> undecided(static_cast<size_t>(t.face_count()), 3);
    std::vector<int> chosen;

    auto dfs = [&](auto&& self, int v) -> bool {
        if (v == n)
            return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
        // include v
        bool ok = true;
        for (int f : t.vertex_faces(v))
            if (hits[static_cast<size_t>(f)] == 1) ok = false;
        if (ok) {
            for (int f : t.vertex_faces(v)) {
                ++hits[static_cast<size_t>(f)];
                --undecided[static_cast<size_t>(f)];
            }
            chosen.push_back(v);
            if (self(self, v + 1)) return true;
            chosen.pop_back();
            for (int f : t.vertex_faces(v)) {
                --hits[static_cast<size_t>(f)];
                ++undecided[static_cast<size_t>(f)];
            }
        }
        // exclude v
        ok = true;
        for (int f : t.vertex_faces(v))
            if (hits[static_cast<size_t>(f)] == 0 && undecided[static_cast<size_t>(f)] == 1) ok = false;
        if (ok) {
            for (int f : t.vertex_faces(v)) --undecided[static_cast<size_t>(f)];
            if (self(self, v + 1)) return true;
            for (int f : t.vertex_faces(v)) ++undecided[static_cast<size_t>(f)];
        }
        return false;
    };
    if (!dfs(dfs, 0)) return std::nullopt;
    return chosen;
}

/// Whether the graph minus the factor (and incident edges) is bipartite.
inline bool bipartite_without(const Triangulation& t, const std::vector<int>& factor) {
    std::vector<char> in_factor(static_cast<size_t>(t.vertex_count()), 0);
    for (int v : factor) {
        if (v < 0 || v >= t.vertex_count())
            fail("InvalidFactor", "vertex id " + std::to_string(v) + " out of range");
        in_factor[static_cast<size_t>(v)] = 1;
    }
    for (int f = 0; f < t.face_count(); ++f) {
        int n = 0;
        for (int v : t.faces()[static_cast<size_t>(f)])
            if (in_factor[static_cast<size_t>(v)]) ++n;
        if (n != 1)
            fail("InvalidFactor", "face " + t.face_name(f) + " has " + std::to_string(n) +
                                      " factor vertices, expected 1");
    }
    std::vector<int> side(static_cast<size_t>(t.vertex_count()), -1);
    for (int s = 0; s < t.vertex_count(); ++s) {
        if (in_factor[static_cast<size_t>(s)] || side[static_cast<size_t>(s)] >= 0) continue;
        side[static_cast<size_t>(s)] = 0;
        std::vector<int> queue{s};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (int v : t.neighbors(u)) {
                if (in_factor[static_cast<size_t>(v)]) continue;
                if (side[static_cast<size_t>(v)] < 0) {
                    side[static_cast<size_t>(v)] = 1 - side[static_cast<size_t>(u)];
                    queue.push_back(v);
                } else if (side[static_cast<size_t>(v)] == side[static_cast<size_t>(u)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool bipartite_without(const Triangulation& t, const std::vector<std::string>& factor) {
    std::vector<int> ids;
    ids.reserve(factor.size());
    for (const auto& l : factor) ids.push_back(t.require_vertex(l));
    return bipartite_without(t, ids);
}

}  // namespace zchain
