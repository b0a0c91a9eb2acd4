#pragma once

#include "packcov/vec.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace packcov {

/// One facet of a 3D hull: outward supporting plane plus its vertex loop,
/// counterclockwise as seen from outside.
template <class S>
struct HullFacet3 {
    Vec<S, 3> normal;
    S offset;  // normal . x <= offset for all hull points
    std::vector<Vec<S, 3>> loop;
};

template <class S>
struct Hull3 {
    std::vector<Vec<S, 3>> vertices;  // extreme points, lexicographically sorted
    std::vector<HullFacet3<S>> facets;
};

namespace detail {

template <class S>
int sign_tol(const S& v, double scale) {
    if constexpr (ScalarTraits<S>::is_exact) {
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    } else {
        double tol = ScalarTraits<S>::point_tol * std::fmax(1.0, scale);
        if (v > tol) return 1;
        if (v < -tol) return -1;
        return 0;
    }
}

template <class S>
bool same_plane(const Vec<S, 3>& n1, const S& b1, const Vec<S, 3>& n2, const S& b2) {
    // n2 == s*n1 with s > 0 and b2 == s*b1
    S nn = dot(n1, n1);
    S d12 = dot(n1, n2);
    if (d12 <= 0) return false;
    auto c = cross(n1, n2);
    double scale = std::sqrt(to_double(nn) * to_double(dot(n2, n2)));
    for (int i = 0; i < 3; ++i)
        if (sign_tol(c[i], scale) != 0) return false;
    return sign_tol(b2 * nn - b1 * d12, scale * std::fmax(to_double(b1), 1.0)) == 0;
}

/// Order coplanar points as a convex loop, CCW with respect to `normal`.
template <class S>
std::vector<Vec<S, 3>> order_facet_loop(std::vector<Vec<S, 3>> pts, const Vec<S, 3>& normal) {
    // project along the dominant normal axis, cyclic axes keep handedness
    int axis = 0;
    double best = 0;
    for (int i = 0; i < 3; ++i) {
        double a = std::fabs(to_double(normal[i]));
        if (a > best) {
            best = a;
            axis = i;
        }
    }
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    struct P2 {
        Vec<S, 2> p;
        std::size_t idx;
        bool operator<(const P2& o) const { return p < o.p; }
    };
    std::vector<P2> proj;
    proj.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) proj.push_back({Vec<S, 2>(pts[i][u], pts[i][v]), i});
    std::sort(proj.begin(), proj.end());
    auto orient = [](const P2& a, const P2& b, const P2& c) {
        S cr = cross(b.p - a.p, c.p - a.p);
        return cr > 0 ? 1 : (cr < 0 ? -1 : 0);
    };
    std::vector<P2> hull(2 * proj.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < proj.size(); ++i) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], proj[i]) <= 0) --k;
        hull[k++] = proj[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = proj.size() - 1; i-- > 0;) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], proj[i]) <= 0) --k;
        hull[k++] = proj[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);
    std::vector<Vec<S, 3>> loop;
    loop.reserve(hull.size());
    for (const auto& h : hull) loop.push_back(pts[h.idx]);
    if (to_double(normal[axis]) < 0) std::reverse(loop.begin(), loop.end());
    return loop;
}

}  // namespace detail

/// Exhaustive facet enumeration. Intended for small point sets (polytope
/// vertex counts at desk scale); throws beyond 96 distinct points.
template <class S>
Hull3<S> hull3(std::vector<Vec<S, 3>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 4) throw GeometryError("3d hull needs at least 4 distinct points");
    if (n > 96) throw ParameterError("3d hull limited to 96 points");

    Hull3<S> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec<S, 3> nor = cross(pts[j] - pts[i], pts[k] - pts[i]);
                double nscale = std::sqrt(to_double(norm_sq(pts[j] - pts[i])) *
                                          to_double(norm_sq(pts[k] - pts[i])));
                bool degenerate = true;
                for (int a = 0; a < 3; ++a)
                    if (detail::sign_tol(nor[a], nscale) != 0) degenerate = false;
                if (degenerate) continue;
                S off = dot(nor, pts[i]);
                int pos = 0, neg = 0;
                for (std::size_t m = 0; m < n && (pos == 0 || neg == 0); ++m) {
                    int s = detail::sign_tol<S>(dot(nor, pts[m]) - off, nscale);
                    if (s > 0) ++pos;
                    if (s < 0) ++neg;
                }
                if (pos > 0 && neg > 0) continue;
                if (pos > 0) {  // flip so that all points are on the <= side
                    nor = -nor;
                    off = -off;
                }
                bool known = false;
                for (const auto& f : out.facets)
                    if (detail::same_plane(f.normal, f.offset, nor, off)) {
                        known = true;
                        break;
                    }
                if (known) continue;
                std::vector<Vec<S, 3>> on_plane;
                for (std::size_t m = 0; m < n; ++m)
                    if (detail::sign_tol<S>(dot(nor, pts[m]) - off, nscale) == 0)
                        on_plane.push_back(pts[m]);
                auto loop = detail::order_facet_loop(std::move(on_plane), nor);
                if (loop.size() < 3) continue;
                out.facets.push_back({nor, off, std::move(loop)});
            }
        }
    }
    if (out.facets.size() < 4) throw GeometryError("degenerate 3d hull (flat point set)");

    std::vector<Vec<S, 3>> extreme;
    for (const auto& f : out.facets)
        for (const auto& v : f.loop) extreme.push_back(v);
    std::sort(extreme.begin(), extreme.end());
    extreme.erase(std::unique(extreme.begin(), extreme.end()), extreme.end());
    out.vertices = std::move(extreme);
    return out;
}

}  // namespace packcov
