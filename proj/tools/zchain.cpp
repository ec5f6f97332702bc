// Command-line front end: triangulation generators, zigzag/orientation
// inspection, Markov chain analysis and the exhaustive ergodicity verifier.
// Structured output is JSON (one object per invocation) unless --pretty is
// given; "-" means stdin/stdout. Exit codes: 0 success, 1 domain error
// (reported as {"error","detail"} JSON on stdout), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zchain/coloring.hpp"
#include "zchain/error.hpp"
#include "zchain/lab.hpp"
#include "zchain/markov.hpp"
#include "zchain/reports.hpp"
#include "zchain/surface.hpp"
#include "zchain/zigzag.hpp"

namespace {

using zchain::Json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) zchain::fail("ParseError", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) zchain::fail("ParseError", "cannot open '" + path + "' for writing");
    out << text;
}

zchain::Triangulation load(const std::string& path) { return zchain::load_tri(read_input(path)); }

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

// Resolve --tau BITS (or --tau @FILE.zor) / --named NAME into an orientation.
zchain::ZOrientation resolve_tau(const zchain::Triangulation& t, const zchain::ZigzagSystem& sys,
                                 const std::string& tau, const std::string& named) {
    if (tau.empty() == named.empty())
        throw UsageError("exactly one of --tau and --named is required");
    if (!named.empty()) return zchain::catalog_tau(t, sys, named);
    if (!tau.empty() && tau[0] == '@')
        return zchain::zor_load(read_input(tau.substr(1)));
    return zchain::orientation_from_bits(tau, sys.pair_count());
}

std::string cycle_str(const zchain::Triangulation& t, const std::vector<int>& c) {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += t.label(c[i]);
    }
    return s;
}

// `consum` argument parsing. Labels may contain commas and colons, so the
// arguments are matched against rendered candidates instead of being split.
int match_face_arg(const zchain::Triangulation& t, const std::string& arg) {
    int found = -1;
    for (int f = 0; f < t.face_count(); ++f) {
        const auto& fc = t.faces()[static_cast<size_t>(f)];
        std::string s = t.label(fc[0]) + "," + t.label(fc[1]) + "," + t.label(fc[2]);
        if (s == arg) {
            if (found >= 0) zchain::fail("UnknownFace", "face argument '" + arg + "' is ambiguous");
            found = f;
        }
    }
    if (found < 0) zchain::fail("UnknownFace", "no face matches '" + arg + "'");
    return found;
}

zchain::VertexMap match_map_arg(const zchain::Triangulation& a, int fa,
                                const zchain::Triangulation& b, int fb, const std::string& arg) {
    std::array<std::string, 3> src, dst;
    for (int i = 0; i < 3; ++i) {
        src[static_cast<size_t>(i)] = a.label(a.faces()[static_cast<size_t>(fa)][static_cast<size_t>(i)]);
        dst[static_cast<size_t>(i)] = b.label(b.faces()[static_cast<size_t>(fb)][static_cast<size_t>(i)]);
    }
    std::array<int, 3> perm{0, 1, 2};
    std::optional<zchain::VertexMap> found;
    do {
        zchain::VertexMap m;
        for (int i = 0; i < 3; ++i)
            m.pairs[static_cast<size_t>(i)] = {src[static_cast<size_t>(i)],
                                               dst[static_cast<size_t>(perm[static_cast<size_t>(i)])]};
        std::array<int, 3> order{0, 1, 2};
        do {
            std::string s;
            for (int i = 0; i < 3; ++i) {
                if (i) s += ',';
                s += m.pairs[static_cast<size_t>(order[static_cast<size_t>(i)])].first + ":" +
                     m.pairs[static_cast<size_t>(order[static_cast<size_t>(i)])].second;
            }
            if (s == arg) {
                if (found && found->pairs != m.pairs)
                    zchain::fail("InvalidMap", "map argument '" + arg + "' is ambiguous");
                found = m;
            }
        } while (std::next_permutation(order.begin(), order.end()));
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found) zchain::fail("InvalidMap", "map '" + arg + "' does not pair the two faces' vertices");
    return *found;
}

int run(int argc, char** argv) {
    CLI::App app{"z-oriented triangulations: zigzags, Markov chains, coloring"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a catalog triangulation");
    gen->require_subcommand(1);
    std::string gen_out = "-";
    auto* gen_oct = gen->add_subcommand("octahedron", "the octahedron");
    gen_oct->add_option("-o,--output", gen_out, "output .tri file");
    int torus_k = 0, torus_m = 0;
    auto* gen_torus = gen->add_subcommand("torus", "torus grid k x m");
    gen_torus->add_option("k", torus_k, "columns")->required();
    gen_torus->add_option("m", torus_m, "rows")->required();
    gen_torus->add_option("-o,--output", gen_out, "output .tri file");

    // info
    auto* info = app.add_subcommand("info", "surface report");
    std::string info_file;
    bool info_pretty = false;
    info->add_option("file", info_file, ".tri file")->required();
    info->add_flag("--pretty", info_pretty, "human-readable summary");

    // zigzags
    auto* zz = app.add_subcommand("zigzags", "canonical zigzag listing");
    std::string zz_file;
    bool zz_pretty = false;
    zz->add_option("file", zz_file, ".tri file")->required();
    zz->add_flag("--pretty", zz_pretty, "include pair indices, lengths and reverses");

    // classify
    auto* cl = app.add_subcommand("classify", "edge and face types of a z-orientation");
    std::string cl_file, cl_tau, cl_named;
    bool cl_pretty = false;
    cl->add_option("file", cl_file, ".tri file")->required();
    cl->add_option("--tau", cl_tau, "orientation bits (or @FILE.zor)");
    cl->add_option("--named", cl_named, "catalog orientation name (tau1/tau2/tau3)");
    cl->add_flag("--pretty", cl_pretty, "human-readable summary");

    // chain
    auto* ch = app.add_subcommand("chain", "transition chain of a z-orientation");
    std::string ch_file, ch_tau, ch_named, ch_start;
    bool ch_stationary = false, ch_pretty = false;
    long long ch_sim = 0, ch_burn = -1;
    std::uint64_t ch_seed = 1;
    ch->add_option("file", ch_file, ".tri file")->required();
    ch->add_option("--tau", ch_tau, "orientation bits (or @FILE.zor)");
    ch->add_option("--named", ch_named, "catalog orientation name");
    ch->add_flag("--stationary", ch_stationary, "include the exact stationary distribution");
    ch->add_option("--simulate", ch_sim, "simulate N steps");
    ch->add_option("--seed", ch_seed, "simulation seed");
    ch->add_option("--start", ch_start, "simulation start vertex (default: first state)");
    ch->add_option("--burn-in", ch_burn, "simulation burn-in (default: 10*|V|)");
    ch->add_flag("--pretty", ch_pretty, "human-readable summary");

    // verify
    auto* vf = app.add_subcommand("verify", "exhaustive ergodicity characterization check");
    std::string vf_file;
    int vf_max_k = -1;
    bool vf_pretty = false;
    vf->add_option("file", vf_file, ".tri file")->required();
    vf->add_option("--max-k", vf_max_k, "zigzag pair cap (default 20, env ZCHAIN_MAX_K)");
    vf->add_flag("--pretty", vf_pretty, "human-readable summary");

    // consum
    auto* cs = app.add_subcommand("consum", "connected sum of two triangulations");
    std::string cs_a, cs_fa, cs_b, cs_fb, cs_map, cs_out = "-";
    cs->add_option("A", cs_a, "left .tri file")->required();
    cs->add_option("FACE_A", cs_fa, "left face as u,v,w")->required();
    cs->add_option("B", cs_b, "right .tri file")->required();
    cs->add_option("FACE_B", cs_fb, "right face as u,v,w")->required();
    cs->add_option("--map", cs_map, "vertex map u1:v1,u2:v2,u3:v3")->required();
    cs->add_option("-o,--output", cs_out, "output .tri file");

    // subdivide
    auto* sd = app.add_subcommand("subdivide", "face subdivision T(G)");
    std::string sd_file, sd_out = "-", sd_lift;
    sd->add_option("file", sd_file, ".tri file")->required();
    sd->add_option("-o,--output", sd_out, "output .tri file");
    sd->add_option("--lift", sd_lift, "all-type-II orientation bits to lift onto T(G)");

    // color
    auto* co = app.add_subcommand("color", "exact 3-coloring and color factor");
    std::string co_file;
    bool co_factor = false, co_pretty = false;
    co->add_option("file", co_file, ".tri file")->required();
    co->add_flag("--factor", co_factor, "also compute a color factor");
    co->add_flag("--pretty", co_pretty, "human-readable summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (gen->parsed()) {
        zchain::Triangulation t =
            gen_oct->parsed() ? zchain::octahedron() : zchain::torus_grid(torus_k, torus_m);
        write_output(gen_out, zchain::save_tri(t));
        return 0;
    }

    if (info->parsed()) {
        zchain::SurfaceReport r = zchain::surface_report(load(info_file));
        if (info_pretty)
            std::cout << "V=" << r.vertex_count << " E=" << r.edge_count << " F=" << r.face_count
                      << " chi=" << r.euler_characteristic
                      << " orientable=" << (r.orientable ? "yes" : "no") << "\n";
        else
            emit(zchain::to_json(r));
        return 0;
    }

    if (zz->parsed()) {
        zchain::Triangulation t = load(zz_file);
        zchain::ZigzagSystem sys = zchain::zigzag_system(t);
        for (int i = 0; i < sys.pair_count(); ++i) {
            if (zz_pretty)
                std::cout << "pair " << i << " (length " << sys.canonical(i).size()
                          << "): " << cycle_str(t, sys.canonical(i))
                          << " | reverse: " << cycle_str(t, sys.reversed(i)) << "\n";
            else
                std::cout << cycle_str(t, sys.canonical(i)) << "\n";
        }
        return 0;
    }

    if (cl->parsed()) {
        zchain::Triangulation t = load(cl_file);
        zchain::ZigzagSystem sys = zchain::zigzag_system(t);
        zchain::ZOrientation z = resolve_tau(t, sys, cl_tau, cl_named);
        zchain::Classification cls = zchain::classify(t, sys, z);
        if (cl_pretty) {
            int n2 = 0;
            for (auto f : cls.faces)
                if (f == zchain::FaceType::II) ++n2;
            std::cout << "k=" << sys.pair_count() << " bits=" << z.bit_string() << " faces: "
                      << (cls.faces.size() - static_cast<size_t>(n2)) << " type I, " << n2
                      << " type II\n";
            for (int e = 0; e < t.edge_count(); ++e) {
                const auto& ec = cls.edges[static_cast<size_t>(e)];
                if (ec.type == zchain::EdgeType::II)
                    std::cout << "  II " << t.label(ec.tail) << "->" << t.label(ec.head) << "\n";
            }
        } else {
            emit(zchain::to_json(t, cls, z));
        }
        return 0;
    }

    if (ch->parsed()) {
        zchain::Triangulation t = load(ch_file);
        zchain::ZigzagSystem sys = zchain::zigzag_system(t);
        zchain::ZOrientation z = resolve_tau(t, sys, ch_tau, ch_named);
        zchain::TransitionChain chain = zchain::build_chain(t, zchain::classify(t, sys, z));
        zchain::ChainAnalysis a = zchain::analyze(chain);
        if (ch_pretty) {
            std::cout << "states=" << chain.size() << " irreducible=" << (a.irreducible ? "yes" : "no")
                      << " period=" << a.period << " ergodic=" << (a.ergodic ? "yes" : "no") << "\n";
            if (ch_stationary && a.stationary)
                for (int v = 0; v < chain.size(); ++v)
                    std::cout << "  pi(" << chain.states[static_cast<size_t>(v)]
                              << ") = " << zchain::rational_str((*a.stationary)[static_cast<size_t>(v)])
                              << "\n";
            return 0;
        }
        Json j = zchain::to_json(chain, a, ch_stationary);
        if (ch_sim > 0) {
            int start = ch_start.empty() ? 0 : chain.state_id(ch_start);
            if (start < 0) zchain::fail("UnknownState", "no state labeled '" + ch_start + "'");
            long long burn = ch_burn >= 0 ? ch_burn : 10LL * chain.size();
            std::vector<double> freq = zchain::simulate(chain, start, ch_sim, ch_seed, burn);
            Json fj = Json::object();
            for (int v = 0; v < chain.size(); ++v)
                fj[chain.states[static_cast<size_t>(v)]] = freq[static_cast<size_t>(v)];
            j["simulation"] = Json{{"start", chain.states[static_cast<size_t>(start)]},
                                   {"steps", ch_sim},
                                   {"seed", ch_seed},
                                   {"burn_in", burn},
                                   {"frequency", std::move(fj)}};
        }
        emit(j);
        return 0;
    }

    if (vf->parsed()) {
        int max_k = 20;
        if (const char* env = std::getenv("ZCHAIN_MAX_K")) max_k = std::atoi(env);
        if (vf_max_k > 0) max_k = vf_max_k;
        zchain::VerificationReport r = zchain::verify_theorem1(load(vf_file), vf_file, max_k);
        if (vf_pretty) {
            int na = 0, nb = 0, nc = 0;
            for (const auto& rec : r.taus) (rec.taxonomy == 'A' ? na : rec.taxonomy == 'B' ? nb : nc) += 1;
            std::cout << "instance=" << r.instance << " k=" << r.k
                      << " colorable=" << (r.colorable ? "yes" : "no") << " chi=" << r.chi << "\n"
                      << "theorem1 " << (r.theorem1_holds ? "holds" : "FAILS") << " over "
                      << r.taus.size() << " orientations (A:" << na << " B:" << nb << " C:" << nc
                      << ")";
            if (r.sphere) std::cout << "; sphere simplification " << (r.part2_holds ? "holds" : "FAILS");
            std::cout << "\n";
        } else {
            emit(zchain::to_json(r));
        }
        return 0;
    }

    if (cs->parsed()) {
        zchain::Triangulation a = load(cs_a);
        zchain::Triangulation b = load(cs_b);
        int fa = match_face_arg(a, cs_fa);
        int fb = match_face_arg(b, cs_fb);
        zchain::VertexMap m = match_map_arg(a, fa, b, fb, cs_map);
        auto face_labels = [](const zchain::Triangulation& t, int f) {
            const auto& fc = t.faces()[static_cast<size_t>(f)];
            return std::array<std::string, 3>{t.label(fc[0]), t.label(fc[1]), t.label(fc[2])};
        };
        zchain::Triangulation s =
            zchain::connected_sum(a, face_labels(a, fa), b, face_labels(b, fb), m);
        write_output(cs_out, zchain::save_tri(s));
        return 0;
    }

    if (sd->parsed()) {
        zchain::Triangulation t = load(sd_file);
        zchain::Triangulation s = zchain::subdivide(t);
        if (sd_lift.empty()) {
            write_output(sd_out, zchain::save_tri(s));
            return 0;
        }
        zchain::ZigzagSystem sys = zchain::zigzag_system(t);
        zchain::Classification cls =
            zchain::classify(t, sys, zchain::orientation_from_bits(sd_lift, sys.pair_count()));
        if (!cls.all_faces_type2())
            zchain::fail("NotAllTypeII", "--lift requires an orientation with all faces of type II");
        std::vector<std::pair<std::string, std::string>> dirs;
        for (const auto& d : cls.type2_directions()) dirs.push_back({t.label(d[0]), t.label(d[1])});
        zchain::ZigzagSystem sys_s = zchain::zigzag_system(s);
        zchain::ZOrientation lift = zchain::lift_subdivision(s, sys_s, dirs);
        zchain::Classification cls_s = zchain::classify(s, sys_s, lift);
        int n1 = 0;
        for (auto f : cls_s.faces)
            if (f == zchain::FaceType::I) ++n1;
        Json j{{"k", sys_s.pair_count()},
               {"bits", lift.bit_string()},
               {"type1_faces", n1},
               {"type2_faces", static_cast<int>(cls_s.faces.size()) - n1}};
        if (sd_out != "-") {
            write_output(sd_out, zchain::save_tri(s));
        } else {
            j["tri"] = zchain::save_tri(s);
        }
        emit(j);
        return 0;
    }

    if (co->parsed()) {
        zchain::Triangulation t = load(co_file);
        std::optional<zchain::Coloring> c = zchain::three_color(t);
        std::optional<std::vector<int>> factor;
        if (co_factor) factor = zchain::color_factor(t);
        if (co_pretty) {
            std::cout << "colorable=" << (c ? "yes" : "no");
            if (c) {
                std::cout << " (";
                for (int v = 0; v < t.vertex_count(); ++v)
                    std::cout << (v ? " " : "") << t.label(v) << "=" << (*c)[static_cast<size_t>(v)];
                std::cout << ")";
            }
            std::cout << "\n";
            if (co_factor) {
                std::cout << "factor=";
                if (factor) {
                    for (size_t i = 0; i < factor->size(); ++i)
                        std::cout << (i ? "," : "") << t.label((*factor)[i]);
                } else {
                    std::cout << "none";
                }
                std::cout << "\n";
            }
            return 0;
        }
        Json j{{"colorable", c.has_value()}};
        j["coloring"] = c ? zchain::coloring_json(t, *c) : Json(nullptr);
        if (co_factor) j["factor"] = factor ? zchain::factor_json(t, *factor) : Json(nullptr);
        emit(j);
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const zchain::Error& e) {
        std::cout << Json{{"error", e.code()}, {"detail", e.detail()}}.dump() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
}
