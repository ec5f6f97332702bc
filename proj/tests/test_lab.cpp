#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>

#include "zchain/coloring.hpp"
#include "zchain/lab.hpp"
#include "zchain/markov.hpp"
#include "zchain/surface.hpp"
#include "zchain/zigzag.hpp"

using namespace zchain;

namespace {

bool fails_with(const std::function<void()>& fn, const std::string& code) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

int count_case(const VerificationReport& r, char c) {
    return static_cast<int>(
        std::count_if(r.taus.begin(), r.taus.end(), [&](const TauRecord& t) { return t.taxonomy == c; }));
}

}  // namespace

TEST_CASE("exhaustive verification on the octahedron") {
    VerificationReport r = verify_theorem1(octahedron(), "octahedron");
    CHECK(r.k == 4);
    CHECK(r.taus.size() == 16);
    CHECK(r.colorable);
    CHECK(r.chi == 2);
    CHECK(r.theorem1_holds);
    CHECK(r.sphere);
    CHECK(r.part2_holds);
    CHECK(r.mod3_agrees);

    // exactly the two mirror-image all-type-II orientations, both period 3;
    // case C never occurs on the sphere
    CHECK(count_case(r, 'B') == 2);
    CHECK(count_case(r, 'C') == 0);
    CHECK(count_case(r, 'A') == 14);
    for (const auto& rec : r.taus) {
        if (rec.all_type2) {
            CHECK(rec.period == 3);
            CHECK_FALSE(rec.ergodic);
        } else {
            CHECK(rec.ergodic);
        }
    }
    CHECK(r.mod3_checked == 2);

    // records are sorted by bit string
    for (size_t i = 1; i < r.taus.size(); ++i) CHECK(r.taus[i - 1].bits < r.taus[i].bits);
}

TEST_CASE("exhaustive verification on torus grids") {
    VerificationReport r33 = verify_theorem1(torus_grid(3, 3), "torus 3 3");
    CHECK(r33.k == 9);
    CHECK(r33.taus.size() == 512);
    CHECK(r33.colorable);
    CHECK(r33.chi == 0);
    CHECK(r33.theorem1_holds);
    CHECK(r33.mod3_agrees);
    CHECK(count_case(r33, 'A') > 0);
    CHECK(count_case(r33, 'B') > 0);
    CHECK(count_case(r33, 'C') == 0);

    VerificationReport r43 = verify_theorem1(torus_grid(4, 3), "torus 4 3");
    CHECK(r43.k == 8);
    CHECK(r43.taus.size() == 256);
    CHECK_FALSE(r43.colorable);
    CHECK(r43.theorem1_holds);
    CHECK(r43.mod3_agrees);
    CHECK(count_case(r43, 'A') > 0);
    CHECK(count_case(r43, 'B') == 0);
    CHECK(count_case(r43, 'C') > 0);

    CHECK(fails_with([] { verify_theorem1(torus_grid(3, 3), "torus 3 3", 4); }, "TooManyZigzags"));
}

TEST_CASE("proposition checks") {
    Triangulation o = octahedron();
    ZigzagSystem so = zigzag_system(o);

    PropositionReport p1 = check_propositions(o, so, catalog_tau(o, so, "tau1"));
    CHECK(p1.all_pass());
    CHECK(p1.triangle_through_every_vertex);
    CHECK(p1.irreducible);
    CHECK(p1.period == 1);
    CHECK(p1.type1_face_present);
    CHECK(p1.five_walk.size() == 6);

    PropositionReport p2 = check_propositions(o, so, catalog_tau(o, so, "tau2"));
    CHECK(p2.all_pass());
    CHECK(p2.period == 3);
    CHECK_FALSE(p2.type1_face_present);
    CHECK(p2.five_walk.empty());

    Triangulation t34 = torus_grid(3, 4);
    ZigzagSystem s34 = zigzag_system(t34);
    PropositionReport p3 = check_propositions(t34, s34, catalog_tau(t34, s34, "tau2"));
    CHECK(p3.all_pass());
    CHECK(p3.period == 1);
}

TEST_CASE("catalog orientations by name") {
    // face-type table of the worked examples
    Triangulation o = octahedron();
    ZigzagSystem so = zigzag_system(o);
    Classification oc1 = classify(o, so, catalog_tau(o, so, "tau1"));
    CHECK(std::all_of(oc1.faces.begin(), oc1.faces.end(),
                      [](FaceType f) { return f == FaceType::I; }));
    CHECK(classify(o, so, catalog_tau(o, so, "tau2")).all_faces_type2());

    for (auto [k, m] : {std::pair{3, 3}, std::pair{3, 4}, std::pair{4, 4}}) {
        Triangulation t = torus_grid(k, m);
        ZigzagSystem s = zigzag_system(t);
        Classification c1 = classify(t, s, catalog_tau(t, s, "tau1"));
        CHECK(std::all_of(c1.faces.begin(), c1.faces.end(),
                          [](FaceType f) { return f == FaceType::I; }));
        Classification c2 = classify(t, s, catalog_tau(t, s, "tau2"));
        CHECK(c2.all_faces_type2());
    }

    CHECK(fails_with([&] { catalog_tau(subdivide(octahedron()), "tau1"); }, "UnknownInstance"));
    CHECK(fails_with([&] { catalog_tau(o, so, "tau9"); }, "UnknownTau"));
    CHECK(fails_with([] { catalog_tau(torus_grid(3, 3), "tau3"); }, "UnknownTau"));

    CHECK(identify_instance(octahedron()) == "octahedron");
    CHECK(identify_instance(torus_grid(4, 3)) == "torus 4 3");
    CHECK_FALSE(identify_instance(subdivide(octahedron())).has_value());
}

TEST_CASE("connected sums of all-type-II instances") {
    // two spheres: the sum is a sphere, all faces type II, chain period 3
    Triangulation o = octahedron();
    ZigzagSystem so = zigzag_system(o);
    Classification oc = classify(o, so, catalog_tau(o, so, "tau2"));
    AllType2Sum s = connected_sum_all_type2(o, oc, {"a1", "a2", "a3"}, o, oc, {"a1", "a2", "a3"});
    Classification sc = classify(s.sum, s.system, s.tau);
    CHECK(sc.all_faces_type2());
    CHECK(three_color(s.sum).has_value());  // both summands colorable
    TransitionChain chain = build_chain(s.sum, sc);
    CHECK(period(chain) == 3);

    CHECK(fails_with(
        [&] {
            Classification c1 = classify(o, so, catalog_tau(o, so, "tau1"));
            connected_sum_all_type2(o, c1, {"a1", "a2", "a3"}, o, oc, {"a1", "a2", "a3"});
        },
        "NotAllTypeII"));
}

TEST_CASE("subdivision lift lands in case A") {
    Triangulation t = torus_grid(3, 3);
    ZigzagSystem st = zigzag_system(t);
    Classification tc = classify(t, st, catalog_tau(t, st, "tau2"));
    std::vector<std::pair<std::string, std::string>> dirs;
    for (const auto& d : tc.type2_directions()) dirs.push_back({t.label(d[0]), t.label(d[1])});

    Triangulation ts = subdivide(t);
    ZigzagSystem ss = zigzag_system(ts);
    ZOrientation lift = lift_subdivision(ts, ss, dirs);
    Classification cs = classify(ts, ss, lift);
    CHECK(std::all_of(cs.faces.begin(), cs.faces.end(), [](FaceType f) { return f == FaceType::I; }));
    CHECK(is_ergodic(build_chain(ts, cs)));
}
