#pragma once

// Standalone SVG of body tracks: every track in grey, q_0 and q_n drawn on
// top, coordinate axes through the origin splitting the quadrants.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "model.hpp"

namespace choreo {

enum class Projection { xy, xz, yz, oblique };

inline Projection parse_projection(const std::string& s) {
    if (s == "xy") return Projection::xy;
    if (s == "xz") return Projection::xz;
    if (s == "yz") return Projection::yz;
    if (s == "3d" || s == "3d-oblique" || s == "oblique") return Projection::oblique;
    throw Error("unknown projection '" + s + "' (expected xy, xz, yz or 3d-oblique)");
}

inline const char* to_string(Projection p) {
    switch (p) {
        case Projection::xy: return "xy";
        case Projection::xz: return "xz";
        case Projection::yz: return "yz";
        default: return "3d-oblique";
    }
}

struct PlotOptions {
    Projection projection = Projection::xy;
    int size = 640;
    int margin = 40;
    std::string title;
};

/// Screen-plane coordinates (u right, v up) of a point.
inline std::pair<double, double> project(Projection p, const Vec3& q) {
    switch (p) {
        case Projection::xy: return {q.x, q.y};
        case Projection::xz: return {q.x, q.z};
        case Projection::yz: return {q.y, q.z};
        default: {
            // cabinet projection: depth along x recedes at 30 degrees, half scale
            constexpr double c = 0.4330127018922193, s = 0.25;
            return {q.y - c * q.x, q.z - s * q.x};
        }
    }
}

inline void write_svg(std::ostream& os, const FullLoop& loop, const PlotOptions& opt = {}) {
    const int S = loop.sample_count();
    const int N = loop.body_count();
    const int n = N / 2;
    double umin = std::numeric_limits<double>::infinity(), umax = -umin, vmin = umin, vmax = -umin;
    for (const Vec3& q : loop.positions()) {
        auto [u, v] = project(opt.projection, q);
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    // keep the origin in view so the quadrant axes are drawn
    umin = std::min(umin, 0.0);
    umax = std::max(umax, 0.0);
    vmin = std::min(vmin, 0.0);
    vmax = std::max(vmax, 0.0);
    const double span = std::max({umax - umin, vmax - vmin, 1e-12});
    const double scale = (opt.size - 2.0 * opt.margin) / span;
    const double cu = 0.5 * (umin + umax), cv = 0.5 * (vmin + vmax);
    auto X = [&](double u) { return 0.5 * opt.size + (u - cu) * scale; };
    auto Y = [&](double v) { return 0.5 * opt.size - (v - cv) * scale; };

    os.precision(6);
    os << std::fixed;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.size << "\" height=\"" << opt.size
       << "\" viewBox=\"0 0 " << opt.size << ' ' << opt.size << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const char* labels[3][2] = {{"x", "y"}, {"x", "z"}, {"y", "z"}};
    const int li = opt.projection == Projection::oblique ? 2 : static_cast<int>(opt.projection);
    os << "<g stroke=\"#999\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\">\n"
       << "<line x1=\"0\" y1=\"" << Y(0) << "\" x2=\"" << opt.size << "\" y2=\"" << Y(0) << "\"/>\n"
       << "<line x1=\"" << X(0) << "\" y1=\"0\" x2=\"" << X(0) << "\" y2=\"" << opt.size << "\"/>\n";
    if (opt.projection == Projection::oblique) {
        auto [u, v] = project(opt.projection, Vec3{1.0, 0.0, 0.0});
        const double t = 0.5 * span;
        os << "<line x1=\"" << X(-u * t) << "\" y1=\"" << Y(-v * t) << "\" x2=\"" << X(u * t) << "\" y2=\"" << Y(v * t)
           << "\"/>\n";
    }
    os << "</g>\n<g font-family=\"sans-serif\" font-size=\"13\" fill=\"#444\">\n"
       << "<text x=\"" << opt.size - 16 << "\" y=\"" << Y(0) - 4 << "\">" << labels[li][0] << "</text>\n"
       << "<text x=\"" << X(0) + 4 << "\" y=\"14\">" << labels[li][1] << "</text>\n";
    if (!opt.title.empty()) os << "<text x=\"8\" y=\"" << opt.size - 8 << "\">" << opt.title << "</text>\n";
    os << "</g>\n";

    auto polyline = [&](int body, const char* color, double width) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\" points=\"";
        for (int s = 0; s <= S; ++s) {
            auto [u, v] = project(opt.projection, loop.at(s, body));
            os << X(u) << ',' << Y(v) << (s == S ? "" : " ");
        }
        os << "\"/>\n";
    };
    for (int i = 0; i < N; ++i)
        if (i != 0 && i != n) polyline(i, "#c8c8c8", 0.6);
    polyline(0, "#1f5fbf", 1.6);
    polyline(n, "#c0392b", 1.6);

    // bodies at t = 0
    os << "<g stroke=\"black\" stroke-width=\"0.6\">\n";
    for (int i = 0; i < N; ++i) {
        auto [u, v] = project(opt.projection, loop.at(0, i));
        os << "<circle cx=\"" << X(u) << "\" cy=\"" << Y(v) << "\" r=\"3\" fill=\"" << (i < n ? "#1f5fbf" : "#c0392b")
           << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
}

inline void write_svg(const std::string& path, const FullLoop& loop, const PlotOptions& opt = {}) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    write_svg(f, loop, opt);
}

}  // namespace choreo
