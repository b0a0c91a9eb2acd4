#pragma once

#include "packcov/vec.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace packcov {

/// Convex polygon, counterclockwise vertex order.
template <class S>
using Polygon = std::vector<Vec<S, 2>>;

/// Halfplane {x : normal . x <= offset}.
template <class S, int D>
struct Halfspace {
    Vec<S, D> normal;
    S offset;
};

template <class S>
S polygon_area_doubled(const Polygon<S>& p) {
    S acc(0);
    const auto n = p.size();
    for (std::size_t i = 0; i < n; ++i) acc += cross(p[i], p[(i + 1) % n]);
    return acc;
}

template <class S>
S polygon_area(const Polygon<S>& p) {
    if (p.size() < 3) return S(0);
    return polygon_area_doubled(p) / S(2);
}

/// Area centroid. Falls back to the vertex average for degenerate polygons
/// (segments and points), which is still a point of the polygon.
template <class S>
Vec<S, 2> polygon_centroid(const Polygon<S>& p) {
    if (p.empty()) throw GeometryError("centroid of empty polygon");
    S a2 = p.size() >= 3 ? polygon_area_doubled(p) : S(0);
    if (ScalarTraits<S>::is_zero(a2)) {
        Vec<S, 2> avg = p[0];
        for (std::size_t i = 1; i < p.size(); ++i) avg += p[i];
        return avg / S(static_cast<long>(p.size()));
    }
    Vec<S, 2> acc;
    acc[0] = S(0);
    acc[1] = S(0);
    const auto n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = p[i];
        const auto& v = p[(i + 1) % n];
        S w = cross(u, v);
        acc[0] += (u[0] + v[0]) * w;
        acc[1] += (u[1] + v[1]) * w;
    }
    return acc / (S(3) * a2);
}

template <class S>
Polygon<S> translate(const Polygon<S>& p, const Vec<S, 2>& t) {
    Polygon<S> r;
    r.reserve(p.size());
    for (const auto& v : p) r.push_back(v + t);
    return r;
}

namespace detail {

template <class S>
void dedup_consecutive(Polygon<S>& p) {
    if (p.size() < 2) return;
    Polygon<S> out;
    out.reserve(p.size());
    for (const auto& v : p) {
        if (out.empty() || !(out.back() == v)) out.push_back(v);
    }
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    p = std::move(out);
}

}  // namespace detail

/// Clip a convex CCW polygon to the closed halfplane {x : n . x <= b}.
template <class S>
Polygon<S> clip_halfplane(const Polygon<S>& poly, const Vec<S, 2>& n, const S& b) {
    Polygon<S> out;
    const auto m = poly.size();
    if (m == 0) return out;
    out.reserve(m + 1);
    S d_cur = b - dot(n, poly[0]);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& cur = poly[i];
        const auto& nxt = poly[(i + 1) % m];
        S d_nxt = b - dot(n, nxt);
        if (d_cur >= 0) out.push_back(cur);
        if ((d_cur > 0 && d_nxt < 0) || (d_cur < 0 && d_nxt > 0)) {
            S t = d_cur / (d_cur - d_nxt);
            out.push_back(cur + t * (nxt - cur));
        }
        d_cur = std::move(d_nxt);
    }
    // degenerate outputs (point or segment contacts) are kept as-is
    detail::dedup_consecutive(out);
    return out;
}

/// Inward halfplanes of a CCW convex polygon, one per edge.
template <class S>
std::vector<Halfspace<S, 2>> polygon_halfplanes(const Polygon<S>& p) {
    std::vector<Halfspace<S, 2>> hs;
    const auto n = p.size();
    hs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec<S, 2> e = p[(i + 1) % n] - p[i];
        Vec<S, 2> nor(e[1], -e[0]);
        hs.push_back({nor, dot(nor, p[i])});
    }
    return hs;
}

/// Closed intersection of two convex CCW polygons (possibly a segment or point).
template <class S>
Polygon<S> intersect_convex(const Polygon<S>& a, const Polygon<S>& b) {
    Polygon<S> cur = a;
    for (const auto& h : polygon_halfplanes(b)) {
        cur = clip_halfplane(cur, h.normal, h.offset);
        if (cur.empty()) break;
    }
    return cur;
}

namespace detail {

template <class S>
int orientation_sign(const Vec<S, 2>& a, const Vec<S, 2>& b, const Vec<S, 2>& c) {
    S cr = cross(b - a, c - a);
    if constexpr (ScalarTraits<S>::is_exact) {
        return cr > 0 ? 1 : (cr < 0 ? -1 : 0);
    } else {
        double scale = std::sqrt(to_double(norm_sq(b - a)) * to_double(norm_sq(c - a)));
        double v = to_double(cr);
        double tol = ScalarTraits<S>::point_tol * std::fmax(1.0, scale);
        if (v > tol) return 1;
        if (v < -tol) return -1;
        return 0;
    }
}

}  // namespace detail

/// Strict convex hull (collinear points dropped), CCW starting at the
/// lexicographically smallest vertex. Andrew's monotone chain.
template <class S>
Polygon<S> convex_hull(std::vector<Vec<S, 2>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const auto n = pts.size();
    if (n < 3) return pts;
    Polygon<S> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && detail::orientation_sign(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && detail::orientation_sign(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

template <class S>
std::pair<Vec<S, 2>, Vec<S, 2>> polygon_bbox(const Polygon<S>& p) {
    Vec<S, 2> lo = p.at(0), hi = p.at(0);
    for (const auto& v : p) {
        for (int i = 0; i < 2; ++i) {
            if (v[i] < lo[i]) lo[i] = v[i];
            if (hi[i] < v[i]) hi[i] = v[i];
        }
    }
    return {lo, hi};
}

/// Finite union of convex polygons with pairwise disjoint interiors, obtained
/// from an initial convex domain by subtracting convex polygons. Subtraction
/// order is deterministic, so piece order is reproducible run to run.
template <class S>
class ConvexRegion {
public:
    explicit ConvexRegion(Polygon<S> domain) {
        initial_area_ = polygon_area(domain);
        if (initial_area_ <= 0) throw ParameterError("region domain must have positive area");
        if constexpr (!ScalarTraits<S>::is_exact) {
            drop_threshold_ = ScalarTraits<S>::volume_tol * initial_area_;
        } else {
            drop_threshold_ = S(0);
        }
        pieces_.push_back(std::move(domain));
    }

    bool empty() const { return pieces_.empty(); }

    const std::vector<Polygon<S>>& pieces() const { return pieces_; }

    S area() const {
        S acc(0);
        for (const auto& p : pieces_) acc += polygon_area(p);
        return acc;
    }

    /// Remove the closed convex polygon q from the region. Pieces that only
    /// touch q along their boundary are kept intact.
    void subtract(const Polygon<S>& q) {
        if (pieces_.empty() || q.size() < 3) return;
        const auto hs = polygon_halfplanes(q);
        const auto [qlo, qhi] = polygon_bbox(q);
        std::vector<Polygon<S>> next;
        next.reserve(pieces_.size());
        for (auto& piece : pieces_) {
            const auto [plo, phi] = polygon_bbox(piece);
            bool bbox_disjoint = false;
            for (int i = 0; i < 2 && !bbox_disjoint; ++i)
                bbox_disjoint = phi[i] < qlo[i] || qhi[i] < plo[i];
            if (bbox_disjoint || !solid_overlap(piece, hs)) {
                next.push_back(std::move(piece));
                continue;
            }
            Polygon<S> rest = std::move(piece);
            for (const auto& h : hs) {
                Polygon<S> outside = clip_halfplane(rest, -h.normal, -h.offset);
                if (outside.size() >= 3 && polygon_area(outside) > drop_threshold_)
                    next.push_back(std::move(outside));
                rest = clip_halfplane(rest, h.normal, h.offset);
                if (rest.size() < 3) break;
            }
            // whatever remains lies inside q and is discarded
        }
        pieces_ = std::move(next);
    }

private:
    bool solid_overlap(const Polygon<S>& piece, const std::vector<Halfspace<S, 2>>& hs) const {
        Polygon<S> inter = piece;
        for (const auto& h : hs) {
            inter = clip_halfplane(inter, h.normal, h.offset);
            if (inter.size() < 3) return false;
        }
        return polygon_area(inter) > drop_threshold_;
    }

    std::vector<Polygon<S>> pieces_;
    S initial_area_;
    S drop_threshold_;
};

}  // namespace packcov
