#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "zchain/coloring.hpp"
#include "zchain/lab.hpp"
#include "zchain/markov.hpp"
#include "zchain/surface.hpp"
#include "zchain/zigzag.hpp"

namespace zchain {

using Json = nlohmann::ordered_json;

inline Json to_json(const SurfaceReport& r) {
    return Json{{"vertex_count", r.vertex_count},
                {"edge_count", r.edge_count},
                {"face_count", r.face_count},
                {"euler_characteristic", r.euler_characteristic},
                {"orientable", r.orientable}};
}

inline Json to_json(const Triangulation& t, const Classification& cls, const ZOrientation& z) {
    Json edges = Json::array();
    for (int e = 0; e < t.edge_count(); ++e) {
        const auto& ed = t.edges()[static_cast<size_t>(e)];
        const auto& ec = cls.edges[static_cast<size_t>(e)];
        Json j{{"edge", {t.label(ed[0]), t.label(ed[1])}}};
        if (ec.type == EdgeType::I) {
            j["type"] = "I";
        } else {
            j["type"] = "II";
            j["dir"] = {t.label(ec.tail), t.label(ec.head)};
        }
        edges.push_back(std::move(j));
    }
    Json faces = Json::array();
    int n1 = 0, n2 = 0;
    for (int f = 0; f < t.face_count(); ++f) {
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        bool two = cls.faces[static_cast<size_t>(f)] == FaceType::II;
        (two ? n2 : n1) += 1;
        faces.push_back(Json{{"face", {t.label(fc[0]), t.label(fc[1]), t.label(fc[2])}},
                             {"type", two ? "II" : "I"}});
    }
    return Json{{"k", static_cast<int>(z.bits.size())}, {"bits", z.bit_string()},
                {"edges", std::move(edges)},           {"faces", std::move(faces)},
                {"type1_faces", n1},                   {"type2_faces", n2}};
}

/// Chain export: states, sparse rows with exact rational probabilities,
/// period/ergodicity, optional stationary distribution and simulation block.
inline Json to_json(const TransitionChain& c, const ChainAnalysis& a,
                    bool with_stationary = false) {
    Json rows = Json::array();
    for (int u = 0; u < c.size(); ++u) {
        Json to = Json::array();
        for (const auto& [v, p] : c.rows[static_cast<size_t>(u)])
            to.push_back(Json{{"v", c.states[static_cast<size_t>(v)]}, {"p", rational_str(p)}});
        rows.push_back(Json{{"from", c.states[static_cast<size_t>(u)]}, {"to", std::move(to)}});
    }
    Json j{{"states", c.states},
           {"rows", std::move(rows)},
           {"period", a.period},
           {"ergodic", a.ergodic}};
    if (with_stationary && a.stationary) {
        Json pi = Json::object();
        for (int v = 0; v < c.size(); ++v)
            pi[c.states[static_cast<size_t>(v)]] = rational_str((*a.stationary)[static_cast<size_t>(v)]);
        j["stationary"] = std::move(pi);
    }
    return j;
}

inline Json to_json(const VerificationReport& r) {
    Json taus = Json::array();
    for (const auto& rec : r.taus)
        taus.push_back(Json{{"bits", rec.bits},
                            {"all_type2", rec.all_type2},
                            {"has_type1_face", rec.has_type1_face},
                            {"period", rec.period},
                            {"ergodic", rec.ergodic},
                            {"case", std::string(1, rec.taxonomy)}});
    Json j{{"instance", r.instance}, {"k", r.k},        {"colorable", r.colorable},
           {"chi", r.chi},           {"taus", std::move(taus)}, {"theorem1_holds", r.theorem1_holds}};
    if (r.sphere) j["part2_holds"] = r.part2_holds;
    return j;
}

inline Json coloring_json(const Triangulation& t, const Coloring& c) {
    Json j = Json::object();
    for (int v = 0; v < t.vertex_count(); ++v) j[t.label(v)] = c[static_cast<size_t>(v)];
    return j;
}

inline Json factor_json(const Triangulation& t, const std::vector<int>& factor) {
    Json j = Json::array();
    for (int v : factor) j.push_back(t.label(v));
    return j;
}

}  // namespace zchain
