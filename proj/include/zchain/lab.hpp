#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zchain/coloring.hpp"
#include "zchain/error.hpp"
#include "zchain/markov.hpp"
#include "zchain/surface.hpp"
#include "zchain/zigzag.hpp"

namespace zchain {

struct TauRecord {
    std::string bits;
    bool all_type2 = false;
    bool has_type1_face = false;
    int period = 0;
    bool ergodic = false;
    char taxonomy = '?';  // 'A': type I face, ergodic; 'B': colorable all-II,
                          // not ergodic; 'C': uncolorable all-II, ergodic
};

struct VerificationReport {
    std::string instance;
    int k = 0;
    bool colorable = false;
    int chi = 0;
    bool sphere = false;
    std::vector<TauRecord> taus;
    bool theorem1_holds = false;
    bool part2_holds = true;  // sphere simplification; meaningful iff sphere
    int mod3_checked = 0;     // all-type-II orientations cross-checked
    bool mod3_agrees = true;  // mod-3 potential vs exact search agreement
};

/// Exhaustively check "not ergodic <=> 3-colorable and all faces type II"
/// over all 2^k z-orientations. 3-colorability is computed once (it does not
/// depend on the orientation); orientations are enumerated in bit-string
/// order. On sphere instances the simplified criterion "not ergodic <=> all
/// faces type II" is checked as well. For every all-type-II orientation the
/// mod-3 potential's verdict is compared against the exact search.
inline VerificationReport verify_theorem1(const Triangulation& t, const std::string& name,
                                          int max_k = 20) {
    VerificationReport rep;
    rep.instance = name;
    ZigzagSystem sys = zigzag_system(t);
    rep.k = sys.pair_count();
    if (rep.k > max_k)
        fail("TooManyZigzags", name + " has " + std::to_string(rep.k) + " zigzag pairs, cap is " +
                                   std::to_string(max_k));
    rep.colorable = three_color(t).has_value();
    rep.chi = t.vertex_count() - t.edge_count() + t.face_count();
    rep.sphere = rep.chi == 2;
    rep.theorem1_holds = true;

    int k = rep.k;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
        ZOrientation z;
        z.bits.resize(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) z.bits[static_cast<size_t>(i)] = (s >> (k - 1 - i)) & 1;

        Classification cls = classify(t, sys, z);
        TransitionChain chain = build_chain(t, cls);

        TauRecord rec;
        rec.bits = z.bit_string();
        rec.all_type2 = cls.all_faces_type2();
        rec.has_type1_face = cls.has_type1_face();
        rec.period = period(chain);
        rec.ergodic = rec.period == 1;
        if (rec.has_type1_face)
            rec.taxonomy = 'A';
        else
            rec.taxonomy = rep.colorable ? 'B' : 'C';
        if ((!rec.ergodic) != (rep.colorable && rec.all_type2)) rep.theorem1_holds = false;
        if (rep.sphere && (!rec.ergodic) != rec.all_type2) rep.part2_holds = false;

        if (rec.all_type2) {
            ++rep.mod3_checked;
            if (mod3_potential(t, cls).has_value() != rep.colorable) rep.mod3_agrees = false;
        }
        rep.taus.push_back(std::move(rec));
    }
    return rep;
}

struct PropositionReport {
    bool triangle_through_every_vertex = false;
    bool irreducible = false;
    int period = 0;
    bool period_in_1_3 = false;
    bool type1_face_present = false;
    bool type1_implies_ergodic = true;
    std::vector<std::string> five_walk;  // witness, present iff a type I face exists
    std::vector<std::string> failures;

    bool all_pass() const { return failures.empty(); }
};

/// Assert the walk-structure facts of a z-oriented triangulation's chain:
/// a directed 3-cycle through every vertex, irreducibility, period 1 or 3,
/// and ergodicity with an explicit closed 5-walk whenever a type I face
/// exists. Failures are reported, not thrown.
inline PropositionReport check_propositions(const Triangulation& t, const ZigzagSystem& sys,
                                            const ZOrientation& z) {
    PropositionReport rep;
    Classification cls = classify(t, sys, z);
    TransitionChain chain = build_chain(t, cls);

    auto has_arc = [&](int u, int v) { return chain.probability(u, v) > 0; };

    std::vector<char> on_triangle(static_cast<size_t>(t.vertex_count()), 0);
    for (int f = 0; f < t.face_count(); ++f) {
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        bool cyc = (has_arc(fc[0], fc[1]) && has_arc(fc[1], fc[2]) && has_arc(fc[2], fc[0])) ||
                   (has_arc(fc[0], fc[2]) && has_arc(fc[2], fc[1]) && has_arc(fc[1], fc[0]));
        if (cyc)
            for (int v : fc) on_triangle[static_cast<size_t>(v)] = 1;
    }
    rep.triangle_through_every_vertex =
        std::all_of(on_triangle.begin(), on_triangle.end(), [](char x) { return x != 0; });
    if (!rep.triangle_through_every_vertex)
        rep.failures.push_back("some vertex lies on no directed 3-cycle");

    rep.irreducible = is_irreducible(chain);
    if (!rep.irreducible) {
        rep.failures.push_back("chain is not irreducible");
        return rep;
    }
    rep.period = period(chain);
    rep.period_in_1_3 = rep.period == 1 || rep.period == 3;
    if (!rep.period_in_1_3)
        rep.failures.push_back("period " + std::to_string(rep.period) + " not in {1,3}");

    rep.type1_face_present = cls.has_type1_face();
    if (rep.type1_face_present) {
        // First type I face; its single type II edge v1->v2 and the length-5
        // closed walk v1,v2,v3,v2,v3,v1.
        int face = -1;
        for (int f = 0; f < t.face_count(); ++f)
            if (cls.faces[static_cast<size_t>(f)] == FaceType::I) {
                face = f;
                break;
            }
        const auto& fc = t.faces()[static_cast<size_t>(face)];
        int v1 = -1, v2 = -1;
        for (auto [a, b] : {std::pair{fc[0], fc[1]}, std::pair{fc[0], fc[2]}, std::pair{fc[1], fc[2]}}) {
            const auto& ec = cls.edges[static_cast<size_t>(t.edge_id(a, b))];
            if (ec.type == EdgeType::II) {
                v1 = ec.tail;
                v2 = ec.head;
            }
        }
        int v3 = t.third_vertex(face, v1, v2);
        std::vector<int> w{v1, v2, v3, v2, v3, v1};
        bool walk_ok = true;
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (!has_arc(w[i], w[i + 1])) walk_ok = false;
        for (int v : w) rep.five_walk.push_back(t.label(v));
        rep.type1_implies_ergodic = walk_ok && rep.period == 1;
        if (!walk_ok) rep.failures.push_back("5-walk witness has a missing arc");
        if (rep.period != 1) rep.failures.push_back("type I face present but chain not ergodic");
    }
    return rep;
}

namespace detail {

// Parse a torus grid label "i,j"; nullopt when it does not match.
inline std::optional<std::pair<int, int>> parse_grid_label(const std::string& s) {
    size_t comma = s.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == s.size()) return std::nullopt;
    for (size_t i = 0; i < s.size(); ++i)
        if (i != comma && (s[i] < '0' || s[i] > '9')) return std::nullopt;
    return std::pair{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

}  // namespace detail

/// Recognize a catalog instance: "octahedron", "torus k m", or nullopt.
inline std::optional<std::string> identify_instance(const Triangulation& t) {
    if (t == octahedron()) return "octahedron";
    int k = 0, m = 0;
    for (const auto& l : t.labels()) {
        auto ij = detail::parse_grid_label(l);
        if (!ij) return std::nullopt;
        k = std::max(k, ij->first + 1);
        m = std::max(m, ij->second + 1);
    }
    if (k >= 3 && m >= 3 && t.vertex_count() == k * m && t == torus_grid(k, m))
        return "torus " + std::to_string(k) + " " + std::to_string(m);
    return std::nullopt;
}

/// Named z-orientations of the worked examples, reconstructed by matching the
/// traced zigzag pairs against closed-form vertex cycles.
///
/// Octahedron (tau1, tau2, tau3): the four zigzags
///   Z1 = a1,a2,a3,b1,b2,b3   Z2 = a2,a3,a1,b2,b3,b1
///   Z3 = a3,a1,a2,b3,b1,b2   Z4 = a1,b2,a3,b1,a2,b3
/// with tau1 = {Z1,Z2,Z3',Z4'}, tau2 = {Z1,Z2,Z3,Z4}, tau3 = {Z1,Z2,Z3',Z4}
/// (' marks reversal).
///
/// Torus grid (tau1, tau2): vertical zigzags through columns i,i+1,
/// horizontal zigzags through rows j,j+1, and skew zigzags, one per
/// anti-diagonal class s = 0..gcd(k,m)-1; tau1 takes every family forward,
/// tau2 reverses the horizontals.
inline ZOrientation catalog_tau(const Triangulation& t, const ZigzagSystem& sys,
                                const std::string& tau_name) {
    auto inst = identify_instance(t);
    if (!inst) fail("UnknownInstance", "triangulation is not a catalog instance");

    // family member = (vertex cycle, reversed in tau?)
    std::vector<std::pair<std::vector<int>, bool>> family;

    if (*inst == "octahedron") {
        if (tau_name != "tau1" && tau_name != "tau2" && tau_name != "tau3")
            fail("UnknownTau", "octahedron has tau1, tau2, tau3; got '" + tau_name + "'");
        auto cyc = [&](std::initializer_list<const char*> labels) {
            std::vector<int> c;
            for (const char* l : labels) c.push_back(t.require_vertex(l));
            return c;
        };
        std::vector<std::vector<int>> zz{cyc({"a1", "a2", "a3", "b1", "b2", "b3"}),
                                         cyc({"a2", "a3", "a1", "b2", "b3", "b1"}),
                                         cyc({"a3", "a1", "a2", "b3", "b1", "b2"}),
                                         cyc({"a1", "b2", "a3", "b1", "a2", "b3"})};
        std::array<bool, 4> rev{};
        if (tau_name == "tau1") rev = {false, false, true, true};
        if (tau_name == "tau2") rev = {false, false, false, false};
        if (tau_name == "tau3") rev = {false, false, true, false};
        for (int i = 0; i < 4; ++i) family.push_back({zz[static_cast<size_t>(i)], rev[static_cast<size_t>(i)]});
    } else {
        if (tau_name != "tau1" && tau_name != "tau2")
            fail("UnknownTau", "torus grids have tau1, tau2; got '" + tau_name + "'");
        int k = 0, m = 0;
        std::sscanf(inst->c_str(), "torus %d %d", &k, &m);
        auto vid = [&](int i, int j) {
            return t.require_vertex(std::to_string(((i % k) + k) % k) + "," +
                                    std::to_string(((j % m) + m) % m));
        };
        bool rev_horizontal = tau_name == "tau2";
        for (int i = 0; i < k; ++i) {  // vertical: i0,(i+1)0,i1,(i+1)1,...
            std::vector<int> c;
            for (int j = 0; j < m; ++j) {
                c.push_back(vid(i, j));
                c.push_back(vid(i + 1, j));
            }
            family.push_back({std::move(c), false});
        }
        for (int j = 0; j < m; ++j) {  // horizontal: 0j,0(j+1),1j,1(j+1),...
            std::vector<int> c;
            for (int i = 0; i < k; ++i) {
                c.push_back(vid(i, j));
                c.push_back(vid(i, j + 1));
            }
            family.push_back({std::move(c), rev_horizontal});
        }
        int g = std::gcd(k, m), l = k / g * m;
        for (int s = 0; s < g; ++s) {  // skew: 0(s+1),0s,1s,1(s-1),...
            std::vector<int> c;
            for (int i = 0; i < l; ++i) {
                c.push_back(vid(i, s + 1 - i));
                c.push_back(vid(i, s - i));
            }
            family.push_back({std::move(c), false});
        }
    }

    if (static_cast<int>(family.size()) != sys.pair_count())
        fail("MatchFailure", "catalog lists " + std::to_string(family.size()) + " zigzags but " +
                                 std::to_string(sys.pair_count()) + " pairs were traced");

    ZOrientation z;
    z.bits.assign(static_cast<size_t>(sys.pair_count()), 0);
    std::vector<char> matched(static_cast<size_t>(sys.pair_count()), 0);
    for (const auto& [cycle, reversed_in_tau] : family) {
        auto hit = sys.find(cycle);
        if (!hit) fail("MatchFailure", "a catalog zigzag was not traced");
        auto [pair, is_reverse_of_canonical] = *hit;
        if (matched[static_cast<size_t>(pair)])
            fail("MatchFailure", "two catalog zigzags match pair " + std::to_string(pair));
        matched[static_cast<size_t>(pair)] = 1;
        // Selected zigzag = cycle itself, or its reverse when the tau
        // definition reverses this family member.
        bool want_reverse_of_canonical = is_reverse_of_canonical != reversed_in_tau;
        z.bits[static_cast<size_t>(pair)] = want_reverse_of_canonical ? 1 : 0;
    }
    return z;
}

inline ZOrientation catalog_tau(const Triangulation& t, const std::string& tau_name) {
    ZigzagSystem sys = zigzag_system(t);
    return catalog_tau(t, sys, tau_name);
}

struct AllType2Sum {
    Triangulation sum;
    ZigzagSystem system;
    ZOrientation tau;
};

/// Connected sum of two all-type-II z-oriented triangulations, glued so the
/// removed faces' directed cycles align. The summands' type II directions
/// agree on the glued boundary and carry over to the sum, whose every face is
/// again a directed cycle; the resulting orientation keeps all faces type II.
inline AllType2Sum connected_sum_all_type2(const Triangulation& a, const Classification& cls_a,
                                           const std::array<std::string, 3>& face_a,
                                           const Triangulation& b, const Classification& cls_b,
                                           const std::array<std::string, 3>& face_b) {
    if (!cls_a.all_faces_type2() || !cls_b.all_faces_type2())
        fail("NotAllTypeII", "both summands must have all faces of type II");

    // Directed cycle v0 -> v1 -> v2 of a face under an all-type-II
    // classification.
    auto cycle_of = [](const Triangulation& t, const Classification& cls,
                       const std::array<std::string, 3>& fl) {
        std::array<int, 3> ids{t.require_vertex(fl[0]), t.require_vertex(fl[1]),
                               t.require_vertex(fl[2])};
        int f = t.face_id(ids);
        if (f < 0) fail("UnknownFace", "face {" + fl[0] + "," + fl[1] + "," + fl[2] + "} does not exist");
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        int v0 = fc[0];
        int v1 = -1;
        for (int x : fc) {
            if (x == v0) continue;
            const auto& ec = cls.edges[static_cast<size_t>(t.edge_id(v0, x))];
            if (ec.tail == v0) v1 = x;
        }
        int v2 = t.third_vertex(f, v0, v1);
        return std::array<int, 3>{v0, v1, v2};
    };
    auto ca = cycle_of(a, cls_a, face_a);
    auto cb = cycle_of(b, cls_b, face_b);

    VertexMap map;
    for (int i = 0; i < 3; ++i)
        map.pairs[static_cast<size_t>(i)] = {a.label(ca[static_cast<size_t>(i)]),
                                             b.label(cb[static_cast<size_t>(i)])};
    Triangulation sum = connected_sum(a, face_a, b, face_b, map);

    // Inherited directions: every left edge keeps its direction. Right edges
    // do too, except the glued face's three (the left copy already provides
    // those) — an edge of B lies on the glued face exactly when both its
    // endpoints are among that face's vertices.
    auto right_name = [&](int v) {
        for (int i = 0; i < 3; ++i)
            if (v == cb[static_cast<size_t>(i)]) return "L." + a.label(ca[static_cast<size_t>(i)]);
        return "R." + b.label(v);
    };
    auto on_glued_face = [&](int u, int v) {
        int on = 0;
        for (int x : {u, v})
            for (int i = 0; i < 3; ++i)
                if (x == cb[static_cast<size_t>(i)]) ++on;
        return on == 2;
    };
    std::vector<std::pair<std::string, std::string>> dirs;
    for (const auto& ec : cls_a.edges) dirs.push_back({"L." + a.label(ec.tail), "L." + a.label(ec.head)});
    for (const auto& ec : cls_b.edges) {
        if (on_glued_face(ec.tail, ec.head)) continue;
        dirs.push_back({right_name(ec.tail), right_name(ec.head)});
    }

    ZigzagSystem sys = zigzag_system(sum);
    ZOrientation tau = orientation_from_edge_directions(sum, sys, dirs);
    return AllType2Sum{std::move(sum), std::move(sys), std::move(tau)};
}

}  // namespace zchain
