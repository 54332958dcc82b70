// wallkit: wall-and-chamber / cone reports for Mukai vectors on an abelian
// surface with rank-one Neron-Severi lattice. Deterministic, exact JSON; SVG
// wall pictures.
//
// Exit codes: 0 success, 2 usage error, 3 precondition violation,
// 4 wall-existence undecided within the search bound.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mukai/report.hpp"

namespace {

using namespace mukai;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rat parse_rational(const std::string& tok) {
    if (tok.empty()) throw UsageError("empty number");
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        Rat q(make_rat(Int(tok.substr(0, slash)), Int(tok.substr(slash + 1))));
        return q;
    }
    auto dot = tok.find('.');
    if (dot != std::string::npos) {
        std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
        Int den = 1;
        for (size_t i = dot + 1; i < tok.size(); ++i) den *= 10;
        return make_rat(Int(digits), den);
    }
    return Rat(Int(tok));
}

MukaiVector parse_vector(const std::string& s) {
    auto c1 = s.find(','), c2 = s.rfind(',');
    if (c1 == std::string::npos || c2 == c1) throw UsageError("--v expects r,d,a");
    return MukaiVector(Int(s.substr(0, c1)), Int(s.substr(c1 + 1, c2 - c1 - 1)),
                       Int(s.substr(c2 + 1)));
}

Window parse_window(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--window expects s_lo:s_hi,t_lo:t_hi");
    auto range = [&](const std::string& part) {
        auto colon = part.find(':');
        if (colon == std::string::npos) throw UsageError("--window expects s_lo:s_hi,t_lo:t_hi");
        return std::make_pair(parse_rational(part.substr(0, colon)),
                              parse_rational(part.substr(colon + 1)));
    };
    auto [s_lo, s_hi] = range(s.substr(0, comma));
    auto [t_lo, t_hi] = range(s.substr(comma + 1));
    return Window(s_lo, s_hi, t_lo * t_lo, t_hi * t_hi);  // t given, squared internally
}

struct CommonOpts {
    std::string n_str, gram_str, v_str, window_str, bound_str;
    std::string format = "json";
    std::string out_path;
};

SurfaceLattice lattice_from(const CommonOpts& o) {
    if (!o.gram_str.empty()) {
        if (o.gram_str.find(',') != std::string::npos)
            throw std::invalid_argument("only rank-one lattices are supported; --gram expects the single entry 2n");
        Int g(o.gram_str);
        if (g <= 0 || g % 2 != 0) throw std::invalid_argument("--gram entry must be a positive even integer 2n");
        return SurfaceLattice::rank1(g / 2);
    }
    if (o.n_str.empty()) throw UsageError("one of --n or --gram is required");
    Int n(o.n_str);
    if (n <= 0) throw std::invalid_argument("--n must be positive");
    return SurfaceLattice::rank1(n);
}

std::optional<Int> bound_from(const CommonOpts& o) {
    if (!o.bound_str.empty()) return Int(o.bound_str);
    if (const char* env = std::getenv("WALLKIT_BOUND"); env && *env) return Int(env);
    return std::nullopt;
}

nlohmann::json input_echo(const CommonOpts& o, const SurfaceLattice& L, const MukaiVector& v) {
    nlohmann::json j;
    j["n"] = int_str(L.n());
    j["v"] = vec_str(v);
    if (!o.window_str.empty()) j["window"] = o.window_str;
    if (auto b = bound_from(o)) j["bound"] = int_str(*b);
    return j;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_window) {
    cmd->add_option("--n", o.n_str, "self-intersection parameter n (NS = Z H, (H,H) = 2n)");
    cmd->add_option("--gram", o.gram_str, "NS Gram matrix; rank one: the single entry 2n");
    cmd->add_option("--v", o.v_str, "Mukai vector r,d,a")->required();
    if (with_window)
        cmd->add_option("--window", o.window_str, "parameter window s_lo:s_hi,t_lo:t_hi (t, not t^2)")
            ->required();
    cmd->add_option("--bound", o.bound_str, "search bound (default: WALLKIT_BOUND or built-in)");
    cmd->add_option("--format", o.format, "json|svg|both")
        ->check(CLI::IsMember({"json", "svg", "both"}));
    cmd->add_option("--out", o.out_path, "output path (basename for --format both)");
    cmd->fallthrough();
}

void write_outputs(const CommonOpts& o, const std::string& json_text,
                   const std::optional<std::string>& svg_text) {
    auto write_file = [](const std::string& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << text;
    };
    if (o.format == "both") {
        if (o.out_path.empty()) throw UsageError("--format both requires --out");
        std::string base = o.out_path;
        for (const char* ext : {".json", ".svg"})
            if (base.size() > 5 && base.rfind(ext) == base.size() - std::string(ext).size())
                base = base.substr(0, base.size() - std::string(ext).size());
        write_file(base + ".json", json_text);
        write_file(base + ".svg", *svg_text);
        return;
    }
    const std::string& text = o.format == "svg" ? *svg_text : json_text;
    if (o.out_path.empty())
        std::cout << text;
    else
        write_file(o.out_path, text);
}

std::string spe_tag(SpeCase c) {
    switch (c) {
        case SpeCase::Case1: return "1";
        case SpeCase::Case2a: return "2a";
        case SpeCase::Case2b: return "2b";
        case SpeCase::Case2c: return "2c";
        default: return "none";
    }
}

nlohmann::json markman_json(const MarkmanInvariants& m) {
    nlohmann::json j;
    j["div"] = int_str(m.div);
    j["rho"] = int_str(m.rho);
    j["sigma"] = int_str(m.sigma);
    j["rs"] = nlohmann::json::array({int_str(m.r), int_str(m.s)});
    j["spe"] = m.spe;
    j["case"] = spe_tag(m.tag);
    return j;
}

nlohmann::json stab_json(const SurfaceLattice& L, const MukaiVector& v) {
    StabilizerGenerator sg = stabilizer_generator(L, v);
    nlohmann::json j;
    j["finite"] = sg.finite;
    if (sg.g) {
        j["generator"] = nlohmann::json{{"a", int_str(sg.g->a())},
                                        {"b", int_str(sg.g->b())},
                                        {"c", int_str(sg.g->c())},
                                        {"d", int_str(sg.g->d())},
                                        {"r_split", int_str(sg.g->r_split())},
                                        {"s_split", int_str(sg.g->s_split())}};
    }
    if (sg.pell)
        j["pell"] = nlohmann::json{{"x", int_str(sg.pell->x)}, {"y", int_str(sg.pell->y)}};
    return j;
}

nlohmann::json chamber_side_json(const ChamberSide& s) {
    if (s.boundary) return nlohmann::json{{"boundary", true}};
    return nlohmann::json{{"boundary", false},
                          {"P", int_str(s.wall->pqr.P)},
                          {"Q", int_str(s.wall->pqr.Q)},
                          {"R", int_str(s.wall->pqr.R)}};
}

int run_walls(const CommonOpts& o) {
    SurfaceLattice L = lattice_from(o);
    MukaiVector v = parse_vector(o.v_str);
    Window win = parse_window(o.window_str);
    std::optional<Int> bound = bound_from(o);

    std::vector<Wall> walls = enumerate_walls(L, v, win);
    WallsExistResult we = walls_exist(L, v, bound);

    nlohmann::json rep;
    rep["input"] = input_echo(o, L, v);
    nlohmann::json jwalls = nlohmann::json::array();
    for (const Wall& w : walls) jwalls.push_back(wall_json(w));
    rep["walls"] = jwalls;

    // Walls ordered along the pencil parameter, and the probe chamber.
    PerpLattice P(L, v);
    std::vector<std::pair<QuadExt, const Wall*>> order;
    for (const Wall& w : walls) order.emplace_back(P.wall_lambda(w.pqr), &w);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        return QuadExt::compare(a.first, b.first) < 0;
    });
    nlohmann::json jord = nlohmann::json::array();
    for (const auto& [lam, w] : order)
        jord.push_back(nlohmann::json{{"P", int_str(w->pqr.P)},
                                      {"Q", int_str(w->pqr.Q)},
                                      {"R", int_str(w->pqr.R)},
                                      {"lambda", quadext_str(lam)}});
    nlohmann::json chambers;
    chambers["lambda_order"] = jord;
    // probe t = midpoint of the t range (window holds t^2)
    Rat tm = (sqrt_lower(win.t2_lo, 40) + sqrt_lower(win.t2_hi, 40)) / 2;
    StabilityPoint probe{(win.s_lo + win.s_hi) / 2, tm * tm};
    chambers["probe"] = nlohmann::json{{"s", rat_str(probe.s)}, {"t2", rat_str(probe.t2)}};
    try {
        ChamberDescriptor ch = locate_chamber(L, v, probe, bound);
        chambers["left"] = chamber_side_json(ch.left);
        chambers["right"] = chamber_side_json(ch.right);
    } catch (const OnWallError& e) {
        chambers["on_wall"] = nlohmann::json{{"P", int_str(e.pqr.P)},
                                             {"Q", int_str(e.pqr.Q)},
                                             {"R", int_str(e.pqr.R)},
                                             {"witness", vec_str(e.witness)}};
    }
    rep["chambers"] = chambers;

    nlohmann::json cert;
    cert["walls_exist"] = we.kind == WallsExistKind::NoWallCertified ? "no_wall"
                          : we.kind == WallsExistKind::WallFound     ? "wall_found"
                                                                     : "undecided";
    if (we.witness) cert["witness"] = vec_str(*we.witness);
    cert["pairing_gcd"] = int_str(we.pairing_gcd);
    cert["bound"] = int_str(we.bound);
    rep["certificates"] = cert;

    std::optional<std::string> svg;
    if (o.format != "json") {
        std::vector<SvgMark> marks;
        if (P.v().r != 0) {
            marks.push_back({"s-", svgdetail::to_d(P.s_minus())});
            marks.push_back({"s+", svgdetail::to_d(P.s_plus())});
            marks.push_back({"d/r", svgdetail::to_d(make_rat(P.v().d(), P.v().r))});
        } else {
            marks.push_back({"s0", svgdetail::to_d(P.s_zero())});
        }
        svg = svg_render(win, walls, marks);
    }
    write_outputs(o, dump_canonical(rep), svg);
    return 0;
}

int run_cones(const CommonOpts& o) {
    SurfaceLattice L = lattice_from(o);
    MukaiVector v = parse_vector(o.v_str);
    std::optional<Int> bound = bound_from(o);
    Int class_bound = bound.value_or(Int(100));

    nlohmann::json rep;
    rep["input"] = input_echo(o, L, v);

    auto guarded = [&](const char* key, auto&& fn) {
        try {
            rep[key] = fn();
        } catch (const std::exception& e) {
            rep[key] = nlohmann::json{{"error", e.what()}};
        }
    };

    guarded("boundary", [&] {
        BoundaryRays b = boundary_rays(L, v);
        nlohmann::json j;
        j["s_minus"] = quadext_str(b.s_minus);
        j["s_plus"] = quadext_str(b.s_plus);
        j["rational_flag"] = b.rational;
        j["minus"] = cone_ray_json(b.minus);
        j["plus"] = cone_ray_json(b.plus);
        return j;
    });
    guarded("trichotomy", [&] {
        TrichotomyResult t = trichotomy(L, v, class_bound);
        nlohmann::json j;
        j["case"] = t.kase;
        j["min_pairing"] = t.min_pairing == 3 ? ">=3" : std::to_string(t.min_pairing);
        if (t.witness) j["witness"] = vec_str(*t.witness);
        if (t.gcd_certificate) j["gcd_certificate"] = int_str(*t.gcd_certificate);
        return j;
    });
    guarded("hilbert_birational", [&] {
        HilbertBirational h = hilbert_birational(L, v, class_bound);
        nlohmann::json j;
        j["answer"] = h.answer;
        if (h.isotropic_class) j["isotropic_class"] = vec_str(*h.isotropic_class);
        if (h.pell_witness)
            j["witness"] = nlohmann::json::array(
                {int_str(h.pell_witness->first), int_str(h.pell_witness->second)});
        return j;
    });
    guarded("stabilizer", [&] { return stab_json(L, v); });

    // Probe for the chamber-dependent cones: deterministic candidates near the
    // pencil anchor, skipping points that land exactly on a wall.
    auto with_probe = [&](auto&& fn) {
        PerpLattice P(L, v);
        Rat anchor = P.v().r != 0 ? make_rat(P.v().d(), P.v().r) : Rat(P.s_zero() + 1);
        for (long den : {7, 11, 13, 17, 19}) {
            StabilityPoint p{anchor + make_rat(1, den), Rat(1)};
            try {
                return fn(p);
            } catch (const OnWallError&) {
                continue;
            }
        }
        throw std::runtime_error("no off-wall probe point found");
    };
    std::vector<MukaiVector> movable_us;
    guarded("movable", [&] {
        return with_probe([&](const StabilityPoint& p) {
            MovableRays m = movable_rays(L, v, p, class_bound);
            auto side = [&](const MovableSide& s) {
                nlohmann::json j;
                j["kind"] = s.kind == MovableKind::IsotropicPairing1   ? "isotropic_pairing_1"
                            : s.kind == MovableKind::IsotropicPairing2 ? "isotropic_pairing_2"
                                                                       : "positive_cone_boundary";
                j["ray"] = cone_ray_json(s.ray);
                if (s.u) {
                    j["u"] = vec_str(*s.u);
                    movable_us.push_back(*s.u);
                }
                return j;
            };
            nlohmann::json j;
            j["left"] = side(m.left);
            j["right"] = side(m.right);
            j["probe"] = nlohmann::json{{"s", rat_str(p.s)}, {"t2", rat_str(p.t2)}};
            return j;
        });
    });
    guarded("nef", [&] {
        return with_probe([&](const StabilityPoint& p) {
            NefRays nf = nef_rays(L, v, p, bound);
            nlohmann::json j;
            j["left"] = cone_ray_json(nf.left);
            j["right"] = cone_ray_json(nf.right);
            j["probe"] = nlohmann::json{{"s", rat_str(p.s)}, {"t2", rat_str(p.t2)}};
            return j;
        });
    });
    guarded("markman", [&] {
        nlohmann::json arr = nlohmann::json::array();
        for (const MukaiVector& u : movable_us) {
            ExceptionalData ed = exceptional_data(L, primitive_part(v), u);
            nlohmann::json j = markman_json(markman_classify(L, ed.d_u, primitive_part(v)));
            j["u"] = vec_str(u);
            j["d_u"] = vec_str(ed.d_u);
            arr.push_back(j);
        }
        return arr;
    });
    // Orientation convention for r = 0 inputs is a limit choice; surfaced here.
    rep["metadata"] = nlohmann::json{
        {"orientation_r0", "phi(x) = -d_v * x_r after normalizing d_v > 0 (limit of the r > 0 functional)"}};

    if (o.format != "json") throw UsageError("cones emits JSON only");
    write_outputs(o, dump_canonical(rep), std::nullopt);
    return 0;
}

int run_stab(const CommonOpts& o) {
    SurfaceLattice L = lattice_from(o);
    MukaiVector v = parse_vector(o.v_str);
    nlohmann::json rep;
    rep["input"] = input_echo(o, L, v);
    rep["stabilizer"] = stab_json(L, v);
    if (o.format != "json") throw UsageError("stab emits JSON only");
    write_outputs(o, dump_canonical(rep), std::nullopt);
    return 0;
}

int run_classify(const CommonOpts& o, const std::string& e_str) {
    SurfaceLattice L = lattice_from(o);
    MukaiVector v = parse_vector(o.v_str);
    MukaiVector e = parse_vector(e_str);
    nlohmann::json rep;
    rep["input"] = input_echo(o, L, v);
    rep["input"]["e"] = vec_str(e);
    rep["markman"] = markman_json(markman_classify(L, e, v));
    if (o.format != "json") throw UsageError("classify-exceptional emits JSON only");
    write_outputs(o, dump_canonical(rep), std::nullopt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wallkit: Bridgeland walls and moduli-cone reports on abelian surfaces"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "plain-text config file ([subcommand] sections, key=value; flags override)");

    CommonOpts ow, oc, os, oe;
    std::string e_str;
    CLI::App* walls = app.add_subcommand("walls", "enumerate walls in a parameter window");
    add_common(walls, ow, true);
    CLI::App* cones = app.add_subcommand("cones", "boundary, nef, movable cones and invariants");
    add_common(cones, oc, false);
    CLI::App* stab = app.add_subcommand("stab", "stabilizer generator of v");
    add_common(stab, os, false);
    CLI::App* cls = app.add_subcommand("classify-exceptional", "monodromy invariants of a class e");
    add_common(cls, oe, false);
    cls->add_option("--e", e_str, "exceptional class r,d,a")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (walls->parsed()) return run_walls(ow);
        if (cones->parsed()) return run_cones(oc);
        if (stab->parsed()) return run_stab(os);
        return run_classify(oe, e_str);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UndecidedError& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
