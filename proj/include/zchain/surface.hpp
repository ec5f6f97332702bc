#pragma once

#include <algorithm>
#include <array>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zchain/error.hpp"

namespace zchain {

/// Combinatorial triangulation of a closed surface: opaque vertex labels and
/// a set of unordered triangular faces. Construction validates the closed
/// surface conditions (no duplicate faces, every edge in exactly two faces,
/// every vertex link a single cycle, connected face graph) and canonicalizes
/// all orderings lexicographically by label, so equal surfaces compare equal
/// and every downstream enumeration is deterministic.
///
/// Vertices are referenced by dense ids in label order; faces and edges are
/// stored as sorted id triples/pairs, themselves sorted.
class Triangulation {
public:
    static Triangulation build(std::vector<std::string> vertices,
                               std::vector<std::array<std::string, 3>> faces);

    /// Build with the vertex set inferred from the faces.
    static Triangulation build(std::vector<std::array<std::string, 3>> faces);

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int v) const { return labels_[static_cast<size_t>(v)]; }

    /// Id of a label, or -1 if unknown.
    int vertex_id(const std::string& label) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
        if (it == labels_.end() || *it != label) return -1;
        return static_cast<int>(it - labels_.begin());
    }

    int require_vertex(const std::string& label) const {
        int v = vertex_id(label);
        if (v < 0) fail("UnknownVertex", "no vertex labeled '" + label + "'");
        return v;
    }

    const std::vector<std::array<int, 3>>& faces() const { return faces_; }
    const std::vector<std::array<int, 2>>& edges() const { return edges_; }

    /// Id of the edge {u,v}, or -1 if absent.
    int edge_id(int u, int v) const {
        std::array<int, 2> e{std::min(u, v), std::max(u, v)};
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return -1;
        return static_cast<int>(it - edges_.begin());
    }

    /// Id of the face with the given vertices (any order), or -1 if absent.
    int face_id(std::array<int, 3> f) const {
        std::sort(f.begin(), f.end());
        auto it = std::lower_bound(faces_.begin(), faces_.end(), f);
        if (it == faces_.end() || *it != f) return -1;
        return static_cast<int>(it - faces_.begin());
    }

    /// The two faces containing edge e, ascending.
    const std::array<int, 2>& edge_faces(int e) const { return edge_faces_[static_cast<size_t>(e)]; }

    /// The face on edge e other than f.
    int other_face(int e, int f) const {
        const auto& ef = edge_faces_[static_cast<size_t>(e)];
        return ef[0] == f ? ef[1] : ef[0];
    }

    /// The vertex of face f that is neither u nor v.
    int third_vertex(int f, int u, int v) const {
        for (int x : faces_[static_cast<size_t>(f)])
            if (x != u && x != v) return x;
        fail("InternalError", "face " + face_name(f) + " has no third vertex besides " +
                                  label(u) + "," + label(v));
    }

    const std::vector<int>& neighbors(int v) const { return neighbors_[static_cast<size_t>(v)]; }
    const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[static_cast<size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(neighbors_[static_cast<size_t>(v)].size()); }

    std::string edge_name(int e) const {
        const auto& ed = edges_[static_cast<size_t>(e)];
        return label(ed[0]) + "-" + label(ed[1]);
    }
    std::string face_name(int f) const {
        const auto& fc = faces_[static_cast<size_t>(f)];
        return "{" + label(fc[0]) + "," + label(fc[1]) + "," + label(fc[2]) + "}";
    }

    bool operator==(const Triangulation& o) const {
        return labels_ == o.labels_ && faces_ == o.faces_;
    }
    bool operator!=(const Triangulation& o) const { return !(*this == o); }

private:
    std::vector<std::string> labels_;
    std::vector<std::array<int, 3>> faces_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<std::array<int, 2>> edge_faces_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<std::vector<int>> vertex_faces_;
};

inline Triangulation Triangulation::build(std::vector<std::string> vertices,
                                          std::vector<std::array<std::string, 3>> faces) {
    Triangulation t;
    std::sort(vertices.begin(), vertices.end());
    auto dup = std::adjacent_find(vertices.begin(), vertices.end());
    if (dup != vertices.end()) fail("DuplicateVertex", "vertex '" + *dup + "' declared twice");
    t.labels_ = std::move(vertices);

    if (faces.empty()) fail("Disconnected", "triangulation has no faces");

    t.faces_.reserve(faces.size());
    for (const auto& fl : faces) {
        std::array<int, 3> f{};
        for (int i = 0; i < 3; ++i) {
            f[static_cast<size_t>(i)] = t.vertex_id(fl[static_cast<size_t>(i)]);
            if (f[static_cast<size_t>(i)] < 0)
                fail("UnknownVertex", "face references undeclared vertex '" + fl[static_cast<size_t>(i)] + "'");
        }
        std::sort(f.begin(), f.end());
        if (f[0] == f[1] || f[1] == f[2])
            fail("InvalidFace", "face {" + fl[0] + "," + fl[1] + "," + fl[2] + "} has repeated vertices");
        t.faces_.push_back(f);
    }
    std::sort(t.faces_.begin(), t.faces_.end());
    auto dupf = std::adjacent_find(t.faces_.begin(), t.faces_.end());
    if (dupf != t.faces_.end())
        fail("DuplicateFace", "face " + t.face_name(static_cast<int>(dupf - t.faces_.begin())) +
                                  " occurs more than once");

    // Edges with incidence counts; every edge must lie in exactly two faces.
    std::vector<std::array<int, 2>> all_edges;
    all_edges.reserve(t.faces_.size() * 3);
    for (const auto& f : t.faces_) {
        all_edges.push_back({f[0], f[1]});
        all_edges.push_back({f[0], f[2]});
        all_edges.push_back({f[1], f[2]});
    }
    std::sort(all_edges.begin(), all_edges.end());
    for (size_t i = 0; i < all_edges.size();) {
        size_t j = i;
        while (j < all_edges.size() && all_edges[j] == all_edges[i]) ++j;
        if (j - i != 2)
            fail("EdgeNotInTwoFaces", "edge " + t.label(all_edges[i][0]) + "-" + t.label(all_edges[i][1]) +
                                          " lies in " + std::to_string(j - i) + " face(s)");
        t.edges_.push_back(all_edges[i]);
        i = j;
    }

    t.edge_faces_.assign(t.edges_.size(), {-1, -1});
    for (int fi = 0; fi < t.face_count(); ++fi) {
        const auto& f = t.faces_[static_cast<size_t>(fi)];
        for (auto [a, b] : {std::pair{f[0], f[1]}, std::pair{f[0], f[2]}, std::pair{f[1], f[2]}}) {
            auto& ef = t.edge_faces_[static_cast<size_t>(t.edge_id(a, b))];
            (ef[0] < 0 ? ef[0] : ef[1]) = fi;
        }
    }

    t.neighbors_.assign(t.labels_.size(), {});
    for (const auto& e : t.edges_) {
        t.neighbors_[static_cast<size_t>(e[0])].push_back(e[1]);
        t.neighbors_[static_cast<size_t>(e[1])].push_back(e[0]);
    }
    for (auto& n : t.neighbors_) std::sort(n.begin(), n.end());

    t.vertex_faces_.assign(t.labels_.size(), {});
    for (int fi = 0; fi < t.face_count(); ++fi)
        for (int v : t.faces_[static_cast<size_t>(fi)])
            t.vertex_faces_[static_cast<size_t>(v)].push_back(fi);

    // Vertex links: the edges opposite v in its incident faces must form one
    // cycle through all of v's neighbors.
    for (int v = 0; v < t.vertex_count(); ++v) {
        const auto& vf = t.vertex_faces_[static_cast<size_t>(v)];
        const auto& nb = t.neighbors_[static_cast<size_t>(v)];
        if (vf.empty() || nb.empty())
            fail("BrokenVertexLink", "vertex " + t.label(v) + " lies in no face");
        std::vector<std::vector<int>> link(nb.size());
        auto local = [&](int u) {
            return static_cast<int>(std::lower_bound(nb.begin(), nb.end(), u) - nb.begin());
        };
        for (int fi : vf) {
            const auto& f = t.faces_[static_cast<size_t>(fi)];
            std::array<int, 2> opp{};
            int k = 0;
            for (int x : f)
                if (x != v) opp[static_cast<size_t>(k++)] = x;
            link[static_cast<size_t>(local(opp[0]))].push_back(local(opp[1]));
            link[static_cast<size_t>(local(opp[1]))].push_back(local(opp[0]));
        }
        for (size_t i = 0; i < link.size(); ++i)
            if (link[i].size() != 2)
                fail("BrokenVertexLink", "link of vertex " + t.label(v) + " is not a single cycle at " +
                                             t.label(nb[i]));
        std::vector<char> seen(nb.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        size_t reached = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : link[static_cast<size_t>(u)])
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != nb.size())
            fail("BrokenVertexLink", "link of vertex " + t.label(v) + " has more than one cycle");
    }

    // Face-adjacency connectivity.
    std::vector<char> fseen(t.faces_.size(), 0);
    std::vector<int> fstack{0};
    fseen[0] = 1;
    size_t freached = 1;
    while (!fstack.empty()) {
        int f = fstack.back();
        fstack.pop_back();
        const auto& fc = t.faces_[static_cast<size_t>(f)];
        for (auto [a, b] : {std::pair{fc[0], fc[1]}, std::pair{fc[0], fc[2]}, std::pair{fc[1], fc[2]}}) {
            int g = t.other_face(t.edge_id(a, b), f);
            if (!fseen[static_cast<size_t>(g)]) {
                fseen[static_cast<size_t>(g)] = 1;
                ++freached;
                fstack.push_back(g);
            }
        }
    }
    if (freached != t.faces_.size()) {
        for (int f = 0; f < t.face_count(); ++f)
            if (!fseen[static_cast<size_t>(f)])
                fail("Disconnected", "face " + t.face_name(f) + " is unreachable from face " + t.face_name(0));
    }
    return t;
}

inline Triangulation Triangulation::build(std::vector<std::array<std::string, 3>> faces) {
    std::vector<std::string> vertices;
    for (const auto& f : faces)
        for (const auto& v : f) vertices.push_back(v);
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return build(std::move(vertices), std::move(faces));
}

struct SurfaceReport {
    int vertex_count = 0;
    int edge_count = 0;
    int face_count = 0;
    int euler_characteristic = 0;
    bool orientable = false;
};

/// Counts, Euler characteristic and orientability. Orientability is decided
/// by propagating face orientations across shared edges: consistent
/// neighbors must traverse the shared edge in opposite directions.
inline SurfaceReport surface_report(const Triangulation& t) {
    SurfaceReport r;
    r.vertex_count = t.vertex_count();
    r.edge_count = t.edge_count();
    r.face_count = t.face_count();
    r.euler_characteristic = r.vertex_count - r.edge_count + r.face_count;

    // dir = +1 if the face's reference cyclic order (a,b,c) traverses u->v.
    auto dir = [&](int f, int u, int v) {
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        int a = fc[0], b = fc[1], c = fc[2];
        if ((u == a && v == b) || (u == b && v == c) || (u == c && v == a)) return 1;
        return -1;
    };
    std::vector<int> sign(static_cast<size_t>(t.face_count()), 0);
    sign[0] = 1;
    std::vector<int> stack{0};
    r.orientable = true;
    while (!stack.empty() && r.orientable) {
        int f = stack.back();
        stack.pop_back();
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        for (auto [a, b] : {std::pair{fc[0], fc[1]}, std::pair{fc[0], fc[2]}, std::pair{fc[1], fc[2]}}) {
            int g = t.other_face(t.edge_id(a, b), f);
            int want = -sign[static_cast<size_t>(f)] * dir(f, a, b) * dir(g, a, b);
            if (sign[static_cast<size_t>(g)] == 0) {
                sign[static_cast<size_t>(g)] = want;
                stack.push_back(g);
            } else if (sign[static_cast<size_t>(g)] != want) {
                r.orientable = false;
                break;
            }
        }
    }
    return r;
}

/// The octahedron: outer triangle a1,a2,a3, inner triangle b1,b2,b3, with ai
/// opposite bi.
inline Triangulation octahedron() {
    return Triangulation::build(
        {"a1", "a2", "a3", "b1", "b2", "b3"},
        {{{"a1", "a2", "a3"}},
         {{"b1", "b2", "b3"}},
         {{"a1", "b2", "b3"}},
         {{"a2", "b1", "b3"}},
         {{"a3", "b1", "b2"}},
         {{"a1", "a2", "b3"}},
         {{"a2", "a3", "b1"}},
         {{"a3", "a1", "b2"}}});
}

/// Torus triangulation from a k x m grid with opposite sides identified;
/// each grid square is split by the diagonal joining its top-left and
/// bottom-right corners. Vertices are labeled "i,j" with i mod k, j mod m.
inline Triangulation torus_grid(int k, int m) {
    if (k < 3 || m < 3)
        fail("GridTooSmall", "torus grid needs k,m >= 3, got k=" + std::to_string(k) +
                                 ", m=" + std::to_string(m));
    auto lab = [](int i, int j) { return std::to_string(i) + "," + std::to_string(j); };
    std::vector<std::array<std::string, 3>> faces;
    faces.reserve(static_cast<size_t>(2 * k * m));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < m; ++j) {
            int i1 = (i + 1) % k, j1 = (j + 1) % m;
            faces.push_back({lab(i, j), lab(i1, j), lab(i, j1)});
            faces.push_back({lab(i1, j), lab(i1, j1), lab(i, j1)});
        }
    }
    return Triangulation::build(std::move(faces));
}

/// Bijection between the three vertices of one face and the three of another.
struct VertexMap {
    std::array<std::pair<std::string, std::string>, 3> pairs;
};

/// Connected sum: remove one face from each summand and glue the boundary
/// triangles along `map`. Left vertices are prefixed "L.", right vertices
/// "R.", and each mapped pair collapses to the left name, so the summands
/// stay disjoint regardless of label collisions.
inline Triangulation connected_sum(const Triangulation& a, const std::array<std::string, 3>& face_a,
                                   const Triangulation& b, const std::array<std::string, 3>& face_b,
                                   const VertexMap& map) {
    auto face_of = [](const Triangulation& t, const std::array<std::string, 3>& fl, const char* side) {
        std::array<int, 3> f{};
        for (int i = 0; i < 3; ++i) {
            f[static_cast<size_t>(i)] = t.vertex_id(fl[static_cast<size_t>(i)]);
            if (f[static_cast<size_t>(i)] < 0)
                fail("UnknownFace", std::string(side) + " face vertex '" + fl[static_cast<size_t>(i)] +
                                        "' does not exist");
        }
        int id = t.face_id(f);
        if (id < 0)
            fail("UnknownFace", std::string(side) + " face {" + fl[0] + "," + fl[1] + "," + fl[2] +
                                    "} does not exist");
        return id;
    };
    int fa = face_of(a, face_a, "left");
    int fb = face_of(b, face_b, "right");

    std::array<std::string, 3> src{}, dst{};
    for (int i = 0; i < 3; ++i) {
        src[static_cast<size_t>(i)] = map.pairs[static_cast<size_t>(i)].first;
        dst[static_cast<size_t>(i)] = map.pairs[static_cast<size_t>(i)].second;
    }
    auto sorted = [](std::array<std::string, 3> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    auto face_labels = [](const Triangulation& t, int f) {
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        return std::array<std::string, 3>{t.label(fc[0]), t.label(fc[1]), t.label(fc[2])};
    };
    if (sorted(src) != face_labels(a, fa) || sorted(dst) != face_labels(b, fb) ||
        src[0] == src[1] || src[1] == src[2] || src[0] == src[2] ||
        dst[0] == dst[1] || dst[1] == dst[2] || dst[0] == dst[2])
        fail("InvalidMap", "map is not a bijection from the left face onto the right face");

    auto right_name = [&](const std::string& v) -> std::string {
        for (int i = 0; i < 3; ++i)
            if (v == dst[static_cast<size_t>(i)]) return "L." + src[static_cast<size_t>(i)];
        return "R." + v;
    };

    std::vector<std::string> vertices;
    for (const auto& v : a.labels()) vertices.push_back("L." + v);
    for (const auto& v : b.labels()) {
        std::string n = right_name(v);
        if (n[0] == 'R') vertices.push_back(n);
    }

    std::vector<std::array<std::string, 3>> faces;
    for (int f = 0; f < a.face_count(); ++f) {
        if (f == fa) continue;
        const auto& fc = a.faces()[static_cast<size_t>(f)];
        faces.push_back({"L." + a.label(fc[0]), "L." + a.label(fc[1]), "L." + a.label(fc[2])});
    }
    for (int f = 0; f < b.face_count(); ++f) {
        if (f == fb) continue;
        const auto& fc = b.faces()[static_cast<size_t>(f)];
        faces.push_back({right_name(b.label(fc[0])), right_name(b.label(fc[1])), right_name(b.label(fc[2]))});
    }

    try {
        return Triangulation::build(std::move(vertices), std::move(faces));
    } catch (const Error& e) {
        fail("ResultNotSimple", "connected sum is not a valid triangulation (" + e.code() + ": " +
                                    e.detail() + ")");
    }
}

/// Label given to the center vertex added inside a face.
inline std::string subdivision_center_label(const Triangulation& t, int f) {
    const auto& fc = t.faces()[static_cast<size_t>(f)];
    std::string c = "c:" + t.label(fc[0]) + ":" + t.label(fc[1]) + ":" + t.label(fc[2]);
    while (t.vertex_id(c) >= 0) c = "c" + c;
    return c;
}

/// Face subdivision T(Γ): one new vertex per face, joined to the face's three
/// corners; the original faces are replaced by three new ones each.
inline Triangulation subdivide(const Triangulation& t) {
    std::vector<std::string> vertices = t.labels();
    std::vector<std::array<std::string, 3>> faces;
    faces.reserve(static_cast<size_t>(3 * t.face_count()));
    for (int f = 0; f < t.face_count(); ++f) {
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        std::string c = subdivision_center_label(t, f);
        vertices.push_back(c);
        std::string u = t.label(fc[0]), v = t.label(fc[1]), w = t.label(fc[2]);
        faces.push_back({c, u, v});
        faces.push_back({c, v, w});
        faces.push_back({c, w, u});
    }
    return Triangulation::build(std::move(vertices), std::move(faces));
}

/// Canonical `.tri` text: one face per line, vertices within a face sorted,
/// faces sorted.
inline std::string save_tri(const Triangulation& t) {
    std::string out;
    for (const auto& f : t.faces()) {
        out += t.label(f[0]);
        out += ' ';
        out += t.label(f[1]);
        out += ' ';
        out += t.label(f[2]);
        out += '\n';
    }
    return out;
}

/// Parse `.tri` text: '#' lines are comments, blank lines are ignored, every
/// other line holds exactly three whitespace-separated vertex labels.
inline Triangulation load_tri(std::istream& in) {
    std::vector<std::array<std::string, 3>> faces;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string w;
        while (ls >> w) tok.push_back(w);
        if (tok.size() != 3)
            fail("ParseError", "line " + std::to_string(lineno) + ": expected 3 vertex labels, got " +
                                   std::to_string(tok.size()));
        faces.push_back({tok[0], tok[1], tok[2]});
    }
    if (faces.empty()) fail("ParseError", "no faces in input");
    return Triangulation::build(std::move(faces));
}

inline Triangulation load_tri(const std::string& text) {
    std::istringstream in(text);
    return load_tri(in);
}

}  // namespace zchain
