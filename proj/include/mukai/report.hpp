#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "mukai/atlas.hpp"
#include "mukai/cone.hpp"

namespace mukai {

// Canonical serialization: nlohmann objects keep keys sorted; every exact
// value is rendered as a string (integer, "p/q", or "p/q + r/s*sqrt(m)") so
// no floats ever reach the JSON layer.

inline std::string int_str(const Int& n) { return n.get_str(); }

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline std::string quadext_str(const QuadExt& x) {
    if (x.irrational_part() == 0) return rat_str(x.rational_part());
    Rat ir = x.irrational_part();
    std::string s = rat_str(x.rational_part());
    s += ir < 0 ? " - " : " + ";
    s += rat_str(abs(ir)) + "*sqrt(" + int_str(x.radicand()) + ")";
    return s;
}

inline std::string vec_str(const MukaiVector& v) {
    return int_str(v.r) + "," + int_str(v.d()) + "," + int_str(v.a);
}

inline nlohmann::json geometry_json(const WallGeometry& g) {
    nlohmann::json j;
    if (std::holds_alternative<WallEmpty>(g)) {
        j["type"] = "empty";
    } else if (auto* l = std::get_if<WallLine>(&g)) {
        j["type"] = "line";
        j["s0"] = rat_str(l->s0);
    } else {
        auto& c = std::get<WallCircle>(g);
        j["type"] = "circle";
        j["center"] = rat_str(c.center);
        j["radius2"] = rat_str(c.radius2);
    }
    return j;
}

inline nlohmann::json wall_json(const Wall& w) {
    nlohmann::json j;
    j["P"] = int_str(w.pqr.P);
    j["Q"] = int_str(w.pqr.Q);
    j["R"] = int_str(w.pqr.R);
    j["geometry"] = geometry_json(w.geometry);
    nlohmann::json wit = nlohmann::json::array();
    for (const MukaiVector& m : w.witnesses) wit.push_back(vec_str(m));
    j["witnesses"] = wit;
    nlohmann::json cd;
    cd["codim"] = w.codim.codim == WallCodim::Codim0   ? "0"
                  : w.codim.codim == WallCodim::Codim1 ? "1"
                                                       : "higher";
    if (w.codim.v1) cd["v1"] = vec_str(*w.codim.v1);
    if (w.codim.v2) cd["v2"] = vec_str(*w.codim.v2);
    j["class"] = cd;
    return j;
}

inline nlohmann::json cone_ray_json(const ConeRay& c) {
    nlohmann::json j;
    j["kind"] = c.kind == RayKind::BoundaryRay ? "boundary" : "wall";
    if (c.rational_cls) {
        j["class"] = vec_str(*c.rational_cls);
    } else {
        j["class"] = nlohmann::json::array(
            {quadext_str(c.cls[0]), quadext_str(c.cls[1]), quadext_str(c.cls[2])});
    }
    if (c.lambda) j["lambda"] = quadext_str(*c.lambda);
    return j;
}

inline std::string dump_canonical(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// --- SVG ----------------------------------------------------------------------

// Exact values cross to floating point only here, at a fixed 6-digit decimal
// precision, so identical reports render byte-identically.
namespace svgdetail {

inline double to_d(const Rat& q) { return mpq_get_d(q.get_mpq_t()); }

inline double to_d(const QuadExt& x) {
    return to_d(x.rational_part()) +
           to_d(x.irrational_part()) * std::sqrt(x.radicand().get_d());
}

inline std::string num(double x) {
    char buf[48];
    if (x == 0) x = 0;  // normalize -0
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

}  // namespace svgdetail

struct SvgMark {
    std::string label;
    double s;
};

// Wall picture over the (s, t) upper half plane: shaded window, one <path>
// per wall (circles as clipped arcs, lines as clipped vertical segments),
// axis marks, and a legend. The wall count equals the number of <path>
// elements by construction.
inline std::string svg_render(const Window& win, const std::vector<Wall>& walls,
                              const std::vector<SvgMark>& marks) {
    using svgdetail::num;
    using svgdetail::to_d;
    const double W = 640, H = 480, ML = 56, MR = 16, MT = 16, MB = 44;
    double s_lo = to_d(win.s_lo), s_hi = to_d(win.s_hi);
    double t_lo = std::sqrt(to_d(win.t2_lo)), t_hi = std::sqrt(to_d(win.t2_hi));
    // Horizontal span: the window plus the off-window marks; vertical: 0..t_hi.
    double x_lo = s_lo, x_hi = s_hi;
    for (const SvgMark& m : marks) {
        x_lo = std::min(x_lo, m.s);
        x_hi = std::max(x_hi, m.s);
    }
    double pad = 0.05 * (x_hi - x_lo);
    x_lo -= pad;
    x_hi += pad;
    double sx = (W - ML - MR) / (x_hi - x_lo);
    double sy = (H - MT - MB) / t_hi;
    auto px = [&](double s) { return ML + (s - x_lo) * sx; };
    auto py = [&](double t) { return H - MB - t * sy; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    out += "<defs><clipPath id=\"win\"><rect x=\"" + num(px(s_lo)) + "\" y=\"" + num(py(t_hi)) +
           "\" width=\"" + num((s_hi - s_lo) * sx) + "\" height=\"" + num((t_hi - t_lo) * sy) +
           "\"/></clipPath></defs>\n";
    out += "<rect x=\"" + num(px(s_lo)) + "\" y=\"" + num(py(t_hi)) + "\" width=\"" +
           num((s_hi - s_lo) * sx) + "\" height=\"" + num((t_hi - t_lo) * sy) +
           "\" fill=\"#eef3fa\" stroke=\"#7a8baa\" stroke-width=\"1\"/>\n";
    // t = 0 axis and window frame ticks.
    out += "<line x1=\"" + num(px(x_lo)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(x_hi)) +
           "\" y2=\"" + num(py(0)) + "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";

    int idx = 0;
    for (const Wall& w : walls) {
        std::string d;
        if (auto* l = std::get_if<WallLine>(&w.geometry)) {
            double x = px(to_d(l->s0));
            d = "M " + num(x) + " " + num(py(0)) + " L " + num(x) + " " + num(py(t_hi));
        } else if (auto* c = std::get_if<WallCircle>(&w.geometry)) {
            double cc = to_d(c->center), rr = std::sqrt(to_d(c->radius2));
            d = "M " + num(px(cc - rr)) + " " + num(py(0)) + " A " + num(rr * sx) + " " +
                num(rr * sy) + " 0 0 1 " + num(px(cc + rr)) + " " + num(py(0));
        } else {
            continue;  // empty geometry never reaches a report
        }
        std::string codim = w.codim.codim == WallCodim::Codim0   ? "0"
                            : w.codim.codim == WallCodim::Codim1 ? "1"
                                                                 : "h";
        out += "<path class=\"wall\" clip-path=\"url(#win)\" d=\"" + d +
               "\" fill=\"none\" stroke=\"#b03030\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + num(W - MR - 180) + "\" y=\"" + num(MT + 14 + 16 * idx) +
               "\" font-family=\"monospace\" font-size=\"12\">(" + int_str(w.pqr.P) + "," +
               int_str(w.pqr.Q) + "," + int_str(w.pqr.R) + ") codim " + codim + "</text>\n";
        ++idx;
    }
    for (const SvgMark& m : marks) {
        out += "<circle cx=\"" + num(px(m.s)) + "\" cy=\"" + num(py(0)) +
               "\" r=\"3\" fill=\"#1d4ed8\"/>\n";
        out += "<text x=\"" + num(px(m.s) - 10) + "\" y=\"" + num(py(0) + 16) +
               "\" font-family=\"monospace\" font-size=\"12\">" + m.label + "</text>\n";
    }
    out += "<text x=\"" + num(ML) + "\" y=\"" + num(H - 8) +
           "\" font-family=\"monospace\" font-size=\"12\">s</text>\n";
    out += "<text x=\"8\" y=\"" + num(MT + 12) +
           "\" font-family=\"monospace\" font-size=\"12\">t</text>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace mukai
