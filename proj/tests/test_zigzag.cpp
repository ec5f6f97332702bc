#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "zchain/lab.hpp"
#include "zchain/surface.hpp"
#include "zchain/zigzag.hpp"

using namespace zchain;

namespace {

std::vector<std::string> labels_of(const Triangulation& t, const std::vector<int>& c) {
    std::vector<std::string> out;
    for (int v : c) out.push_back(t.label(v));
    return out;
}

std::vector<int> ids_of(const Triangulation& t, const std::vector<std::string>& c) {
    std::vector<int> out;
    for (const auto& l : c) out.push_back(t.require_vertex(l));
    return out;
}

bool fails_with(const std::function<void()>& fn, const std::string& code) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

// All-type-II edge directions of the octahedron under tau2 (outer and inner
// triangles cyclic, spokes alternating).
const std::vector<std::pair<std::string, std::string>> kOctTau2Dirs{
    {"a1", "a2"}, {"a2", "a3"}, {"a3", "a1"}, {"b1", "b2"}, {"b2", "b3"}, {"b3", "b1"},
    {"a1", "b2"}, {"b3", "a1"}, {"b1", "a2"}, {"a2", "b3"}, {"a3", "b1"}, {"b2", "a3"}};

ZOrientation random_orientation(const ZigzagSystem& sys, std::mt19937_64& gen) {
    ZOrientation z;
    z.bits.resize(static_cast<size_t>(sys.pair_count()));
    for (auto& b : z.bits) b = gen() & 1;
    return z;
}

}  // namespace

TEST_CASE("tracing the octahedron reproduces the worked zigzags") {
    Triangulation o = octahedron();
    Zigzag z1 = trace(o, {"a1", "a2"}, {"a2", "a3"});
    CHECK(labels_of(o, z1.verts) ==
          std::vector<std::string>{"a1", "a2", "a3", "b1", "b2", "b3"});

    Zigzag z4 = trace(o, {"a1", "b2"}, {"b2", "a3"});
    CHECK(labels_of(o, z4.verts) ==
          std::vector<std::string>{"a1", "b2", "a3", "b1", "a2", "b3"});

    CHECK(fails_with([&] { trace(o, {"a1", "a2"}, {"b1", "b2"}); }, "NotAdjacent"));
    // adjacent edges must span a face
    CHECK(fails_with([&] { trace(o, {"a3", "a1"}, {"a1", "b3"}); }, "NotAdjacent"));
}

TEST_CASE("tracing a torus grid reproduces the vertical zigzag") {
    Triangulation t = torus_grid(4, 3);
    Zigzag z = trace(t, {"0,0", "1,0"}, {"1,0", "0,1"});
    CHECK(labels_of(t, z.verts) ==
          std::vector<std::string>{"0,0", "1,0", "0,1", "1,1", "0,2", "1,2"});
}

TEST_CASE("zigzag systems") {
    Triangulation o = octahedron();
    ZigzagSystem so = zigzag_system(o);
    CHECK(so.pair_count() == 4);

    // the four worked zigzags are exactly the four pairs
    std::set<int> hit;
    for (const auto& z : std::vector<std::vector<std::string>>{
             {"a1", "a2", "a3", "b1", "b2", "b3"},
             {"a2", "a3", "a1", "b2", "b3", "b1"},
             {"a3", "a1", "a2", "b3", "b1", "b2"},
             {"a1", "b2", "a3", "b1", "a2", "b3"}}) {
        auto found = so.find(ids_of(o, z));
        REQUIRE(found.has_value());
        hit.insert(found->first);
    }
    CHECK(hit.size() == 4);

    // torus grids: k verticals, m horizontals, gcd(k,m) skews
    CHECK(zigzag_system(torus_grid(3, 3)).pair_count() == 9);
    CHECK(zigzag_system(torus_grid(3, 4)).pair_count() == 8);
    CHECK(zigzag_system(torus_grid(4, 4)).pair_count() == 12);

    Triangulation t34 = torus_grid(3, 4);
    ZigzagSystem s34 = zigzag_system(t34);
    int vertical = 0, horizontal = 0;
    for (int i = 0; i < s34.pair_count(); ++i) {
        size_t len = s34.canonical(i).size();
        if (len == 8) ++vertical;       // 2m
        else if (len == 6) ++horizontal;  // 2k
    }
    CHECK(vertical == 3);
    CHECK(horizontal == 4);
    CHECK(s34.pair_count() - vertical - horizontal == 1);  // one skew, length 2*lcm

    // state-count identity: lengths over all 2k zigzags sum to 6F
    for (const Triangulation& t : {octahedron(), torus_grid(3, 3), torus_grid(3, 4)}) {
        ZigzagSystem sys = zigzag_system(t);
        size_t total = 0;
        for (int i = 0; i < sys.pair_count(); ++i) total += 2 * sys.canonical(i).size();
        CHECK(total == static_cast<size_t>(6 * t.face_count()));
    }
}

TEST_CASE("tracing from any state of a zigzag reproduces it") {
    Triangulation t = torus_grid(3, 4);
    ZigzagSystem sys = zigzag_system(t);
    for (int i = 0; i < sys.pair_count(); ++i) {
        const auto& c = sys.canonical(i);
        for (size_t j = 0; j < c.size(); j += 2) {
            size_t n = c.size();
            Zigzag z = trace(t, c[j], c[(j + 1) % n], c[(j + 2) % n]);
            CHECK(rotation_equal(z.verts, c));
        }
    }
}

TEST_CASE("classification of the octahedron's named orientations") {
    Triangulation o = octahedron();
    ZigzagSystem sys = zigzag_system(o);

    Classification c1 = classify(o, sys, catalog_tau(o, sys, "tau1"));
    CHECK(std::all_of(c1.faces.begin(), c1.faces.end(),
                      [](FaceType f) { return f == FaceType::I; }));
    // tau1's type II edges form the 4-cycle a2 -> a3 -> b2 -> b3 -> a2
    std::set<std::pair<std::string, std::string>> dirs;
    for (const auto& d : c1.type2_directions()) dirs.insert({o.label(d[0]), o.label(d[1])});
    CHECK(dirs == std::set<std::pair<std::string, std::string>>{
                      {"a2", "a3"}, {"a3", "b2"}, {"b2", "b3"}, {"b3", "a2"}});

    Classification c2 = classify(o, sys, catalog_tau(o, sys, "tau2"));
    CHECK(c2.all_faces_type2());
    auto dir_of = [&](const std::string& u, const std::string& v) {
        const auto& ec = c2.edges[static_cast<size_t>(o.edge_id(o.require_vertex(u), o.require_vertex(v)))];
        REQUIRE(ec.type == EdgeType::II);
        return o.label(ec.tail) + ">" + o.label(ec.head);
    };
    CHECK(dir_of("a1", "a2") == "a1>a2");
    CHECK(dir_of("a2", "a3") == "a2>a3");
    CHECK(dir_of("a3", "a1") == "a3>a1");

    Classification c3 = classify(o, sys, catalog_tau(o, sys, "tau3"));
    int n1 = 0, n2 = 0;
    for (FaceType f : c3.faces) (f == FaceType::I ? n1 : n2) += 1;
    CHECK(n1 == 6);
    CHECK(n2 == 2);
}

TEST_CASE("every orientation classifies cleanly and double covers the edges") {
    for (const Triangulation& t : {octahedron(), torus_grid(3, 3)}) {
        ZigzagSystem sys = zigzag_system(t);
        std::mt19937_64 gen(7);
        for (int rep = 0; rep < 25; ++rep) {
            ZOrientation z = random_orientation(sys, gen);
            Classification cls = classify(t, sys, z);  // throws on any dichotomy violation
            CHECK(cls.faces.size() == static_cast<size_t>(t.face_count()));
            // type II edges balance in/out at every vertex
            std::vector<int> balance(static_cast<size_t>(t.vertex_count()), 0);
            for (const auto& e : cls.edges)
                if (e.type == EdgeType::II) {
                    balance[static_cast<size_t>(e.tail)] += 1;
                    balance[static_cast<size_t>(e.head)] -= 1;
                }
            CHECK(std::all_of(balance.begin(), balance.end(), [](int b) { return b == 0; }));
        }
        // across all 2k zigzags every edge is traversed exactly 4 times
        std::vector<int> count(static_cast<size_t>(t.edge_count()), 0);
        for (int i = 0; i < sys.pair_count(); ++i)
            for (bool rev : {false, true}) {
                const auto& c = sys.select(i, rev);
                for (size_t j = 0; j < c.size(); ++j)
                    count[static_cast<size_t>(t.edge_id(c[j], c[(j + 1) % c.size()]))] += 1;
            }
        CHECK(std::all_of(count.begin(), count.end(), [](int n) { return n == 4; }));
    }
}

TEST_CASE("octahedron face dichotomy over all orientations") {
    Triangulation o = octahedron();
    ZigzagSystem sys = zigzag_system(o);
    for (int mask = 0; mask < 16; ++mask) {
        ZOrientation z;
        z.bits = {static_cast<uint8_t>(mask & 1), static_cast<uint8_t>((mask >> 1) & 1),
                  static_cast<uint8_t>((mask >> 2) & 1), static_cast<uint8_t>((mask >> 3) & 1)};
        CHECK_NOTHROW(classify(o, sys, z));
    }
}

TEST_CASE("reversing an orientation") {
    Triangulation o = octahedron();
    ZigzagSystem sys = zigzag_system(o);
    ZOrientation tau2 = catalog_tau(o, sys, "tau2");
    CHECK(reverse(reverse(tau2)).bits == tau2.bits);

    Classification fwd = classify(o, sys, tau2);
    Classification bwd = classify(o, sys, reverse(tau2));
    CHECK(bwd.all_faces_type2());
    for (int e = 0; e < o.edge_count(); ++e) {
        CHECK(fwd.edges[static_cast<size_t>(e)].type == bwd.edges[static_cast<size_t>(e)].type);
        CHECK(fwd.edges[static_cast<size_t>(e)].tail == bwd.edges[static_cast<size_t>(e)].head);
        CHECK(fwd.edges[static_cast<size_t>(e)].head == bwd.edges[static_cast<size_t>(e)].tail);
    }
    CHECK(fwd.faces == bwd.faces);
}

TEST_CASE("orientation from edge directions") {
    Triangulation o = octahedron();
    ZigzagSystem sys = zigzag_system(o);
    ZOrientation z = orientation_from_edge_directions(o, sys, kOctTau2Dirs);
    CHECK(z.bits == catalog_tau(o, sys, "tau2").bits);
    CHECK(classify(o, sys, z).all_faces_type2());

    // direct all edges from smaller to larger label: no face is a cycle
    std::vector<std::pair<std::string, std::string>> bad;
    for (const auto& e : o.edges()) bad.push_back({o.label(e[0]), o.label(e[1])});
    CHECK(fails_with([&] { orientation_from_edge_directions(o, sys, bad); },
                     "InconsistentDirections"));
}

TEST_CASE("lifting an all-type-II orientation onto the subdivision") {
    Triangulation o = octahedron();
    Triangulation s = subdivide(o);
    ZigzagSystem sys_s = zigzag_system(s);
    ZOrientation lift = lift_subdivision(s, sys_s, kOctTau2Dirs);
    Classification cls = classify(s, sys_s, lift);
    CHECK(cls.faces.size() == 24);
    CHECK(std::all_of(cls.faces.begin(), cls.faces.end(),
                      [](FaceType f) { return f == FaceType::I; }));
    // the type II subgraph is exactly the original octahedron with its
    // tau2 directions
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& d : cls.type2_directions()) got.insert({s.label(d[0]), s.label(d[1])});
    std::set<std::pair<std::string, std::string>> want(kOctTau2Dirs.begin(), kOctTau2Dirs.end());
    CHECK(got == want);

    auto missing = kOctTau2Dirs;
    missing.pop_back();
    CHECK(fails_with([&] { lift_subdivision(s, sys_s, missing); }, "MissingEdgeDirection"));

    Triangulation t = torus_grid(3, 3);
    ZigzagSystem sys_t = zigzag_system(t);
    Classification tau2 = classify(t, sys_t, catalog_tau(t, sys_t, "tau2"));
    std::vector<std::pair<std::string, std::string>> dirs;
    for (const auto& d : tau2.type2_directions()) dirs.push_back({t.label(d[0]), t.label(d[1])});
    Triangulation ts = subdivide(t);
    ZigzagSystem sys_ts = zigzag_system(ts);
    Classification lifted = classify(ts, sys_ts, lift_subdivision(ts, sys_ts, dirs));
    CHECK(std::all_of(lifted.faces.begin(), lifted.faces.end(),
                      [](FaceType f) { return f == FaceType::I; }));
}

TEST_CASE("zor format round trip") {
    ZOrientation z;
    z.bits = {1, 0, 0, 1};
    CHECK(zor_save(z) == "k 4\n1001\n");
    CHECK(zor_load(zor_save(z)).bits == z.bits);
    CHECK(fails_with([] { zor_load("j 4\n1001\n"); }, "ParseError"));
    CHECK(fails_with([] { zor_load("k 4\n10011\n"); }, "InvalidOrientation"));
    CHECK(fails_with([] { zor_load("k 4\n10x1\n"); }, "InvalidOrientation"));
}
