#pragma once

#include "packcov/io.hpp"
#include "packcov/torus.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace packcov {

namespace detail {

inline std::string svg_num(double v) {
    char buf[48];
    // fixed precision keeps output byte-identical across runs
    std::snprintf(buf, sizeof(buf), "%.6f", v + 0.0);  // +0.0 normalizes -0
    return buf;
}

inline void svg_polygon(std::ostringstream& out, const std::vector<Vec<double, 2>>& poly,
                        const std::string& style) {
    out << "  <polygon points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (i) out << ' ';
        out << svg_num(poly[i][0]) << ',' << svg_num(-poly[i][1]);
    }
    out << "\" " << style << "/>\n";
}

template <class S>
std::vector<Vec<double, 2>> to_double_poly(const Polygon<S>& p) {
    std::vector<Vec<double, 2>> out;
    out.reserve(p.size());
    for (const auto& v : p) out.push_back(to_double(v));
    return out;
}

}  // namespace detail

struct RenderOptions {
    /// Inserted/removed points and uncovered witnesses from a transform trace.
    std::vector<Vec<double, 2>> trace_points;
    std::vector<Vec<double, 2>> trace_witnesses;
    bool shade_uncovered = true;
};

/// Deterministic SVG view of a d=2 arrangement: fundamental domain, wrapped
/// translates clipped to it, the uncovered region shaded, trace annotations.
template <class S>
std::string render_svg(const Arrangement<S, 2>& arr, const RenderOptions& opt = {}) {
    const Polygon<S> domain = arr.lattice().fundamental_polygon();
    const auto lambdas = neighbor_translates(arr.lattice(), arr.body());
    const auto& body_poly = arr.body().polygon();

    CoverageReport<S, 2> coverage;
    std::vector<Polygon<S>> uncovered_pieces;
    if (opt.shade_uncovered) {
        auto region = detail::uncovered_region(arr);
        uncovered_pieces = region.pieces();
        coverage.uncovered_volume = region.area();
    }

    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    for (const auto& v : domain) {
        auto vd = to_double(v);
        min_x = std::fmin(min_x, vd[0]);
        max_x = std::fmax(max_x, vd[0]);
        min_y = std::fmin(min_y, vd[1]);
        max_y = std::fmax(max_y, vd[1]);
    }
    const double margin = 0.06 * std::fmax(max_x - min_x, max_y - min_y) + 1e-3;
    const double r = std::fmax(max_x - min_x, max_y - min_y) * 0.008 + 1e-4;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
        << detail::svg_num(min_x - margin) << ' ' << detail::svg_num(-max_y - margin) << ' '
        << detail::svg_num(max_x - min_x + 2 * margin) << ' '
        << detail::svg_num(max_y - min_y + 2 * margin) << "\">\n";
    out << "  <desc>points=" << arr.points().size()
        << " density=" << detail::svg_num(to_double(periodic_density(arr)))
        << " uncovered_area=" << detail::svg_num(to_double(coverage.uncovered_volume))
        << "</desc>\n";

    // wrapped translates, clipped to the fundamental domain
    for (const auto& x : arr.points()) {
        for (const auto& lam : lambdas) {
            Polygon<S> piece = intersect_convex(translate(body_poly, x + lam), domain);
            if (piece.size() < 3) continue;
            if (!(polygon_area(piece) > 0)) continue;
            detail::svg_polygon(out, detail::to_double_poly(piece),
                                "fill=\"#7fa8d9\" fill-opacity=\"0.55\" stroke=\"#2c4f7c\" "
                                "stroke-width=\"0.004\"");
        }
    }

    for (const auto& piece : uncovered_pieces)
        detail::svg_polygon(out, detail::to_double_poly(piece),
                            "fill=\"#d94f4f\" fill-opacity=\"0.8\" stroke=\"none\"");

    detail::svg_polygon(out, detail::to_double_poly(domain),
                        "fill=\"none\" stroke=\"#000000\" stroke-width=\"0.008\"");

    for (const auto& x : arr.points()) {
        auto xd = to_double(x);
        out << "  <circle cx=\"" << detail::svg_num(xd[0]) << "\" cy=\"" << detail::svg_num(-xd[1])
            << "\" r=\"" << detail::svg_num(r) << "\" fill=\"#10316b\"/>\n";
    }
    for (const auto& p : opt.trace_points)
        out << "  <circle cx=\"" << detail::svg_num(p[0]) << "\" cy=\"" << detail::svg_num(-p[1])
            << "\" r=\"" << detail::svg_num(1.6 * r) << "\" fill=\"none\" stroke=\"#0a8f3c\""
            << " stroke-width=\"0.006\"/>\n";
    for (const auto& p : opt.trace_witnesses)
        out << "  <circle cx=\"" << detail::svg_num(p[0]) << "\" cy=\"" << detail::svg_num(-p[1])
            << "\" r=\"" << detail::svg_num(1.2 * r) << "\" fill=\"none\" stroke=\"#c27d0e\""
            << " stroke-width=\"0.006\"/>\n";

    out << "</svg>\n";
    return out.str();
}

}  // namespace packcov
