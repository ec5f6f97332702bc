#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zchain/error.hpp"
#include "zchain/surface.hpp"

namespace zchain {

/// A zigzag as a directed cyclic vertex sequence; consecutive vertices span
/// the traversed edges, so the sequence determines the edge traversals.
struct Zigzag {
    std::vector<int> verts;
    int length() const { return static_cast<int>(verts.size()); }
};

/// Lexicographically least rotation of a cyclic sequence.
inline std::vector<int> least_rotation(const std::vector<int>& c) {
    size_t n = c.size(), best = 0;
    for (size_t s = 1; s < n; ++s) {
        for (size_t i = 0; i < n; ++i) {
            int x = c[(s + i) % n], y = c[(best + i) % n];
            if (x != y) {
                if (x < y) best = s;
                break;
            }
        }
    }
    std::vector<int> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = c[(best + i) % n];
    return out;
}

/// The reversed cyclic sequence (same start vertex).
inline std::vector<int> reversed_cycle(const std::vector<int>& c) {
    std::vector<int> out(c);
    std::reverse(out.begin() + 1, out.end());
    return out;
}

inline bool rotation_equal(const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() == b.size() && least_rotation(a) == least_rotation(b);
}

namespace detail {

// A trace state is an ordered pair of adjacent edges: the previous edge
// traversed x->v followed by the edge {v,w}. In a simple triangulation the
// common face {x,v,w} is unique, so the state is just the ordered triple
// (x,v,w). There are 6 states per face; the successor rule below is a
// permutation of them and its cycles are exactly the zigzags.
struct TraceStates {
    const Triangulation& t;

    explicit TraceStates(const Triangulation& tri) : t(tri) {}

    int count() const { return 6 * t.face_count(); }

    // Triples of face f's sorted vertices (a,b,c), indexed 0..5.
    std::array<int, 3> triple(int f, int p) const {
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        static constexpr int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        return {fc[perm[p][0]], fc[perm[p][1]], fc[perm[p][2]]};
    }

    int id_of(int x, int v, int w) const {
        int f = t.face_id({x, v, w});
        if (f < 0) fail("InternalError", "trace state without a common face");
        for (int p = 0; p < 6; ++p) {
            auto tr = triple(f, p);
            if (tr[0] == x && tr[1] == v && tr[2] == w) return 6 * f + p;
        }
        fail("InternalError", "trace state not found in its face");
    }

    std::array<int, 3> decode(int id) const { return triple(id / 6, id % 6); }

    // Successor: the walk enters v along {x,v} and continues to w; the next
    // edge is {w,u} where u is the third vertex of the other face on {v,w}.
    std::array<int, 3> step(std::array<int, 3> s) const {
        auto [x, v, w] = s;
        int e = t.edge_id(v, w);
        int f = t.face_id({x, v, w});
        int f2 = t.other_face(e, f);
        int u = t.third_vertex(f2, v, w);
        return {v, w, u};
    }

    // The reverse walk traverses the same pair of edges backwards.
    static std::array<int, 3> mirror(std::array<int, 3> s) { return {s[2], s[1], s[0]}; }
};

}  // namespace detail

/// Trace the zigzag determined by the directed edge from->via followed by the
/// edge {via,to}. The returned cycle starts at `from`.
inline Zigzag trace(const Triangulation& t, int from, int via, int to) {
    if (t.edge_id(from, via) < 0 || t.edge_id(via, to) < 0 || from == to ||
        t.face_id({from, via, to}) < 0)
        fail("NotAdjacent", "edges " + t.label(from) + "-" + t.label(via) + " and " + t.label(via) +
                                "-" + t.label(to) + " are not adjacent");
    detail::TraceStates st(t);
    std::array<int, 3> start{from, via, to};
    Zigzag z;
    std::array<int, 3> s = start;
    do {
        z.verts.push_back(s[0]);
        s = st.step(s);
    } while (s != start);
    return z;
}

inline Zigzag trace(const Triangulation& t, const std::pair<std::string, std::string>& prev,
                    const std::pair<std::string, std::string>& next) {
    int x = t.require_vertex(prev.first);
    int v = t.require_vertex(prev.second);
    int p = t.require_vertex(next.first);
    int q = t.require_vertex(next.second);
    int w;
    if (p == v)
        w = q;
    else if (q == v)
        w = p;
    else
        fail("NotAdjacent", "edge " + next.first + "-" + next.second +
                                " does not continue from vertex " + prev.second);
    return trace(t, x, v, w);
}

/// All zigzags of a triangulation, grouped into reversal pairs. Each pair
/// stores the canonical representative (the lexicographically least rotation
/// among the pair's two directed vertex cycles) and the canonical rotation of
/// its reverse; pairs are sorted by representative.
class ZigzagSystem {
public:
    explicit ZigzagSystem(const Triangulation& t) {
        detail::TraceStates st(t);
        int n = st.count();
        std::vector<char> visited(static_cast<size_t>(n), 0);
        for (int s0 = 0; s0 < n; ++s0) {
            if (visited[static_cast<size_t>(s0)]) continue;
            std::vector<int> cycle_ids;
            std::vector<int> verts;
            std::array<int, 3> s = st.decode(s0);
            do {
                cycle_ids.push_back(st.id_of(s[0], s[1], s[2]));
                verts.push_back(s[0]);
                s = st.step(s);
            } while (st.id_of(s[0], s[1], s[2]) != s0);
            std::vector<int> mirror_ids;
            mirror_ids.reserve(cycle_ids.size());
            for (int id : cycle_ids) {
                auto m = detail::TraceStates::mirror(st.decode(id));
                mirror_ids.push_back(st.id_of(m[0], m[1], m[2]));
            }
            for (int id : mirror_ids)
                if (std::find(cycle_ids.begin(), cycle_ids.end(), id) != cycle_ids.end())
                    fail("InternalError", "self-reversed zigzag encountered");
            for (int id : cycle_ids) visited[static_cast<size_t>(id)] = 1;
            for (int id : mirror_ids) visited[static_cast<size_t>(id)] = 1;

            std::vector<int> fwd = least_rotation(verts);
            std::vector<int> rev = least_rotation(reversed_cycle(verts));
            if (rev < fwd) std::swap(fwd, rev);
            pairs_.push_back({std::move(fwd), std::move(rev)});
        }
        std::sort(pairs_.begin(), pairs_.end(),
                  [](const auto& a, const auto& b) { return a[0] < b[0]; });
    }

    int pair_count() const { return static_cast<int>(pairs_.size()); }

    /// Canonical representative of pair i.
    const std::vector<int>& canonical(int i) const { return pairs_[static_cast<size_t>(i)][0]; }
    /// Reverse of the canonical representative (canonical rotation).
    const std::vector<int>& reversed(int i) const { return pairs_[static_cast<size_t>(i)][1]; }

    const std::vector<int>& select(int i, bool rev) const {
        return pairs_[static_cast<size_t>(i)][rev ? 1 : 0];
    }

    /// Locate an arbitrary directed cycle: (pair index, true if it is the
    /// reverse of the canonical representative).
    std::optional<std::pair<int, bool>> find(const std::vector<int>& cycle) const {
        std::vector<int> c = least_rotation(cycle);
        for (int i = 0; i < pair_count(); ++i) {
            if (c == canonical(i)) return std::pair{i, false};
            if (c == reversed(i)) return std::pair{i, true};
        }
        return std::nullopt;
    }

private:
    std::vector<std::array<std::vector<int>, 2>> pairs_;
};

inline ZigzagSystem zigzag_system(const Triangulation& t) { return ZigzagSystem(t); }

/// A z-orientation: one zigzag per reversal pair. Bit i = 0 selects pair i's
/// canonical representative, 1 its reverse.
struct ZOrientation {
    std::vector<std::uint8_t> bits;

    std::string bit_string() const {
        std::string s(bits.size(), '0');
        for (size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) s[i] = '1';
        return s;
    }
};

inline ZOrientation orientation_from_bits(const std::string& bits, int k) {
    if (static_cast<int>(bits.size()) != k)
        fail("InvalidOrientation", "expected " + std::to_string(k) + " bits, got " +
                                       std::to_string(bits.size()));
    ZOrientation z;
    z.bits.resize(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            fail("InvalidOrientation", std::string("bit string contains '") + bits[i] + "'");
        z.bits[i] = bits[i] == '1';
    }
    return z;
}

/// The reversed z-orientation: complements every bit; edge and face types are
/// unchanged and every type II direction flips.
inline ZOrientation reverse(const ZOrientation& z) {
    ZOrientation r = z;
    for (auto& b : r.bits) b = !b;
    return r;
}

/// `.zor` text: "k <count>" then the bit string.
inline std::string zor_save(const ZOrientation& z) {
    return "k " + std::to_string(z.bits.size()) + "\n" + z.bit_string() + "\n";
}

inline ZOrientation zor_load(const std::string& text) {
    std::istringstream in(text);
    std::string kw;
    long k = -1;
    if (!(in >> kw >> k) || kw != "k" || k < 0)
        fail("ParseError", "line 1: expected 'k <count>'");
    std::string bits;
    if (!(in >> bits)) fail("ParseError", "line 2: expected bit string");
    return orientation_from_bits(bits, static_cast<int>(k));
}

enum class EdgeType : std::uint8_t { I, II };
enum class FaceType : std::uint8_t { I, II };

struct EdgeClass {
    EdgeType type = EdgeType::I;
    int tail = -1;  // type II only
    int head = -1;
};

/// Edge and face types induced by a z-orientation. Every edge is traversed
/// exactly twice by the selected zigzags: opposite directions make it type I,
/// equal directions type II (carrying that direction). Every face is either
/// type I (two type I edges, one type II) or type II (a directed 3-cycle).
struct Classification {
    std::vector<EdgeClass> edges;  // by edge id
    std::vector<FaceType> faces;   // by face id

    bool all_faces_type2() const {
        return std::all_of(faces.begin(), faces.end(),
                           [](FaceType f) { return f == FaceType::II; });
    }
    bool has_type1_face() const { return !all_faces_type2(); }

    /// (tail, head) of every type II edge, in edge-id order.
    std::vector<std::array<int, 2>> type2_directions() const {
        std::vector<std::array<int, 2>> out;
        for (const auto& e : edges)
            if (e.type == EdgeType::II) out.push_back({e.tail, e.head});
        return out;
    }
};

inline Classification classify(const Triangulation& t, const ZigzagSystem& sys,
                               const ZOrientation& z) {
    if (static_cast<int>(z.bits.size()) != sys.pair_count())
        fail("InvalidOrientation", "orientation has " + std::to_string(z.bits.size()) +
                                       " bits for " + std::to_string(sys.pair_count()) + " pairs");
    std::vector<std::vector<std::array<int, 2>>> traversals(static_cast<size_t>(t.edge_count()));
    for (int i = 0; i < sys.pair_count(); ++i) {
        const auto& c = sys.select(i, z.bits[static_cast<size_t>(i)] != 0);
        for (size_t j = 0; j < c.size(); ++j) {
            int a = c[j], b = c[(j + 1) % c.size()];
            int e = t.edge_id(a, b);
            if (e < 0) fail("ClassificationContradiction", "zigzag step is not an edge");
            traversals[static_cast<size_t>(e)].push_back({a, b});
        }
    }

    Classification cls;
    cls.edges.resize(static_cast<size_t>(t.edge_count()));
    for (int e = 0; e < t.edge_count(); ++e) {
        const auto& tv = traversals[static_cast<size_t>(e)];
        if (tv.size() != 2)
            fail("ClassificationContradiction", "edge " + t.edge_name(e) + " traversed " +
                                                    std::to_string(tv.size()) + " times");
        if (tv[0] == tv[1])
            cls.edges[static_cast<size_t>(e)] = {EdgeType::II, tv[0][0], tv[0][1]};
        else if (tv[0][0] == tv[1][1] && tv[0][1] == tv[1][0])
            cls.edges[static_cast<size_t>(e)] = {EdgeType::I, -1, -1};
        else
            fail("ClassificationContradiction", "edge " + t.edge_name(e) + " has inconsistent traversals");
    }

    cls.faces.resize(static_cast<size_t>(t.face_count()));
    for (int f = 0; f < t.face_count(); ++f) {
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        std::array<int, 3> eid{t.edge_id(fc[0], fc[1]), t.edge_id(fc[0], fc[2]), t.edge_id(fc[1], fc[2])};
        int n2 = 0;
        for (int e : eid)
            if (cls.edges[static_cast<size_t>(e)].type == EdgeType::II) ++n2;
        if (n2 == 1) {
            cls.faces[static_cast<size_t>(f)] = FaceType::I;
        } else if (n2 == 3) {
            // Three type II edges must form a directed cycle: each face
            // vertex occurs exactly once as a tail.
            std::array<int, 3> tails{cls.edges[static_cast<size_t>(eid[0])].tail,
                                     cls.edges[static_cast<size_t>(eid[1])].tail,
                                     cls.edges[static_cast<size_t>(eid[2])].tail};
            std::sort(tails.begin(), tails.end());
            std::array<int, 3> vs = fc;
            if (tails != vs)
                fail("ClassificationContradiction",
                     "face " + t.face_name(f) + " has three type II edges not forming a cycle");
            cls.faces[static_cast<size_t>(f)] = FaceType::II;
        } else {
            fail("ClassificationContradiction", "face " + t.face_name(f) + " has " +
                                                    std::to_string(n2) + " type II edges");
        }
    }
    return cls;
}

namespace detail {

// Per-edge direction table from (tail, head) pairs: dir[e] = tail vertex.
inline std::vector<int> direction_table(const Triangulation& t,
                                        const std::vector<std::array<int, 2>>& directions,
                                        bool require_all) {
    std::vector<int> tail(static_cast<size_t>(t.edge_count()), -1);
    for (const auto& d : directions) {
        int e = t.edge_id(d[0], d[1]);
        if (e < 0)
            fail("InconsistentDirections",
                 "directed pair " + t.label(d[0]) + "->" + t.label(d[1]) + " is not an edge");
        if (tail[static_cast<size_t>(e)] != -1)
            fail("InconsistentDirections", "edge " + t.edge_name(e) + " given two directions");
        tail[static_cast<size_t>(e)] = d[0];
    }
    if (require_all)
        for (int e = 0; e < t.edge_count(); ++e)
            if (tail[static_cast<size_t>(e)] < 0)
                fail("InconsistentDirections", "no direction for edge " + t.edge_name(e));
    return tail;
}

}  // namespace detail

/// Build the z-orientation whose classification makes every edge type II with
/// the given directions (hence every face type II). Requires every face to be
/// a directed 3-cycle under `directions`; agreement with such an assignment
/// is constant along each zigzag, so each pair picks the agreeing member.
inline ZOrientation orientation_from_edge_directions(
    const Triangulation& t, const ZigzagSystem& sys,
    const std::vector<std::array<int, 2>>& directions) {
    std::vector<int> tail = detail::direction_table(t, directions, true);
    for (int f = 0; f < t.face_count(); ++f) {
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        std::array<int, 3> tails{tail[static_cast<size_t>(t.edge_id(fc[0], fc[1]))],
                                 tail[static_cast<size_t>(t.edge_id(fc[0], fc[2]))],
                                 tail[static_cast<size_t>(t.edge_id(fc[1], fc[2]))]};
        std::sort(tails.begin(), tails.end());
        if (tails != fc)
            fail("InconsistentDirections", "face " + t.face_name(f) + " is not a directed 3-cycle");
    }

    ZOrientation z;
    z.bits.resize(static_cast<size_t>(sys.pair_count()));
    for (int i = 0; i < sys.pair_count(); ++i) {
        const auto& c = sys.canonical(i);
        int agree = -1;
        for (size_t j = 0; j < c.size(); ++j) {
            int a = c[j], b = c[(j + 1) % c.size()];
            int this_agree = tail[static_cast<size_t>(t.edge_id(a, b))] == a ? 1 : 0;
            if (agree < 0)
                agree = this_agree;
            else if (agree != this_agree)
                fail("NoConsistentChoice", "zigzag pair " + std::to_string(i) +
                                               " both agrees and disagrees with the directions");
        }
        z.bits[static_cast<size_t>(i)] = agree ? 0 : 1;
    }
    return z;
}

inline ZOrientation orientation_from_edge_directions(
    const Triangulation& t, const ZigzagSystem& sys,
    const std::vector<std::pair<std::string, std::string>>& directions) {
    std::vector<std::array<int, 2>> d;
    d.reserve(directions.size());
    for (const auto& p : directions)
        d.push_back({t.require_vertex(p.first), t.require_vertex(p.second)});
    return orientation_from_edge_directions(t, sys, d);
}

/// For T(Γ) built from a z-oriented Γ with all faces type II, recover the
/// unique z-orientation of T(Γ) under which all faces are type I and the
/// type II subgraph is exactly Γ with `original_directions`. Zigzag pairs
/// traversing a directed original edge are forced; any unconstrained pairs
/// are resolved by exhaustive search, and uniqueness is asserted.
inline ZOrientation lift_subdivision(const Triangulation& t, const ZigzagSystem& sys,
                                     const std::vector<std::array<int, 2>>& original_directions) {
    std::vector<int> tail = detail::direction_table(t, original_directions, false);

    // Subdivision structure: every face of T(Γ) contains exactly one
    // original edge.
    for (int f = 0; f < t.face_count(); ++f) {
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        int n = 0;
        for (auto [a, b] : {std::pair{fc[0], fc[1]}, std::pair{fc[0], fc[2]}, std::pair{fc[1], fc[2]}})
            if (tail[static_cast<size_t>(t.edge_id(a, b))] >= 0) ++n;
        if (n != 1)
            fail("MissingEdgeDirection", "face " + t.face_name(f) + " contains " + std::to_string(n) +
                                             " directed original edges, expected 1");
    }

    std::vector<int> forced(static_cast<size_t>(sys.pair_count()), -1);
    std::vector<int> free;
    for (int i = 0; i < sys.pair_count(); ++i) {
        const auto& c = sys.canonical(i);
        int agree = -1;
        for (size_t j = 0; j < c.size(); ++j) {
            int a = c[j], b = c[(j + 1) % c.size()];
            int tl = tail[static_cast<size_t>(t.edge_id(a, b))];
            if (tl < 0) continue;
            int this_agree = tl == a ? 1 : 0;
            if (agree < 0)
                agree = this_agree;
            else if (agree != this_agree)
                fail("NoSolution", "zigzag pair " + std::to_string(i) +
                                       " traverses original edges in conflicting directions");
        }
        if (agree < 0)
            free.push_back(i);
        else
            forced[static_cast<size_t>(i)] = agree ? 0 : 1;
    }
    if (free.size() > 20)
        fail("NoSolution", std::to_string(free.size()) + " unconstrained zigzag pairs; search is infeasible");

    auto satisfies = [&](const ZOrientation& z) {
        Classification cls = classify(t, sys, z);
        if (!std::all_of(cls.faces.begin(), cls.faces.end(),
                         [](FaceType f) { return f == FaceType::I; }))
            return false;
        for (int e = 0; e < t.edge_count(); ++e) {
            const auto& ec = cls.edges[static_cast<size_t>(e)];
            int tl = tail[static_cast<size_t>(e)];
            if (tl >= 0) {
                if (ec.type != EdgeType::II || ec.tail != tl) return false;
            } else if (ec.type != EdgeType::I) {
                return false;
            }
        }
        return true;
    };

    std::optional<ZOrientation> found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        ZOrientation z;
        z.bits.resize(static_cast<size_t>(sys.pair_count()));
        for (int i = 0; i < sys.pair_count(); ++i)
            z.bits[static_cast<size_t>(i)] = static_cast<std::uint8_t>(std::max(forced[static_cast<size_t>(i)], 0));
        for (size_t j = 0; j < free.size(); ++j)
            z.bits[static_cast<size_t>(free[j])] = (mask >> j) & 1;
        if (satisfies(z)) {
            if (found) fail("NotUnique", "more than one z-orientation lifts the given directions");
            found = z;
        }
    }
    if (!found) fail("NoSolution", "no z-orientation of the subdivision lifts the given directions");
    return *found;
}

inline ZOrientation lift_subdivision(const Triangulation& t, const ZigzagSystem& sys,
                                     const std::vector<std::pair<std::string, std::string>>& dirs) {
    std::vector<std::array<int, 2>> d;
    d.reserve(dirs.size());
    for (const auto& p : dirs) d.push_back({t.require_vertex(p.first), t.require_vertex(p.second)});
    return lift_subdivision(t, sys, d);
}

}  // namespace zchain
