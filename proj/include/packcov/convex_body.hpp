#pragma once

#include "packcov/hull3.hpp"
#include "packcov/polygon.hpp"

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace packcov {

enum class PointLocation { interior, boundary, exterior };

/// Full-dimensional convex polytope in V-representation with cached facets,
/// volume and centroid. Immutable after construction.
template <class S, int D>
class ConvexBody {
    static_assert(D == 2 || D == 3, "geometry kernel supports d = 2 and d = 3");

public:
    /// Build from vertices that must all be extreme (convex position).
    /// Vertex order is canonicalized; degenerate input is rejected.
    static ConvexBody from_vertices(std::vector<Vec<S, D>> verts, bool symmetric) {
        std::vector<Vec<S, D>> given = verts;
        std::sort(given.begin(), given.end());
        given.erase(std::unique(given.begin(), given.end()), given.end());
        ConvexBody body = hulled(std::move(verts), symmetric);
        std::vector<Vec<S, D>> kept = body.verts_;
        std::sort(kept.begin(), kept.end());
        if (kept != given)
            throw ParameterError("vertex list is not in convex position (non-extreme vertex)");
        return body;
    }

    /// Build from an arbitrary point cloud, keeping extreme points only.
    static ConvexBody hulled(std::vector<Vec<S, D>> pts, bool symmetric) {
        ConvexBody body;
        body.symmetric_ = symmetric;
        if constexpr (D == 2) {
            Polygon<S> hull = convex_hull(std::move(pts));
            if (hull.size() < 3) throw ParameterError("degenerate body: fewer than 3 extreme vertices");
            body.verts_ = std::move(hull);
            body.volume_ = polygon_area(body.verts_);
            if (!(body.volume_ > 0)) throw ParameterError("degenerate body: zero volume");
            body.centroid_ = polygon_centroid(body.verts_);
            for (const auto& h : polygon_halfplanes(body.verts_)) body.facets_.push_back(h);
        } else {
            Hull3<S> hull = hull3(std::move(pts));
            body.verts_ = std::move(hull.vertices);
            S vol6(0);
            Vec<S, 3> mom;  // volume moment * 24 relative to the fan apex
            mom[0] = mom[1] = mom[2] = S(0);
            Vec<S, 3> apex = body.verts_[0];
            for (auto& f : hull.facets) {
                body.facets_.push_back({f.normal, f.offset});
                const auto& loop = f.loop;
                for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
                    Vec<S, 3> a = loop[0] - apex, b = loop[i] - apex, c = loop[i + 1] - apex;
                    S v6 = dot(a, cross(b, c));
                    vol6 += v6;
                    Vec<S, 3> csum = loop[0] + loop[i] + loop[i + 1] + apex;
                    mom += v6 * csum;
                }
                body.facet_loops_.push_back(std::move(f.loop));
            }
            body.volume_ = vol6 / S(6);
            if (!(body.volume_ > 0)) throw ParameterError("degenerate body: zero volume");
            body.centroid_ = mom / (S(4) * vol6);
        }
        if constexpr (!ScalarTraits<S>::is_exact) body.normalize_facets();
        if (symmetric) body.check_symmetry();
        return body;
    }

    static constexpr int dimension() { return D; }
    const std::vector<Vec<S, D>>& vertices() const { return verts_; }
    const std::vector<Halfspace<S, D>>& facets() const { return facets_; }
    bool symmetric() const { return symmetric_; }
    const S& volume() const { return volume_; }
    const Vec<S, D>& centroid() const { return centroid_; }

    const Polygon<S>& polygon() const
        requires(D == 2)
    {
        return verts_;
    }

    /// Facet vertex loops (outward CCW), only populated for d = 3.
    const std::vector<std::vector<Vec<S, 3>>>& facet_loops() const
        requires(D == 3)
    {
        return facet_loops_;
    }

    PointLocation classify(const Vec<S, D>& p) const {
        bool on_boundary = false;
        for (const auto& f : facets_) {
            S gap = f.offset - dot(f.normal, p);
            if constexpr (ScalarTraits<S>::is_exact) {
                if (gap < 0) return PointLocation::exterior;
                if (gap == 0) on_boundary = true;
            } else {
                if (gap < -ScalarTraits<S>::point_tol) return PointLocation::exterior;
                if (gap <= ScalarTraits<S>::point_tol) on_boundary = true;
            }
        }
        return on_boundary ? PointLocation::boundary : PointLocation::interior;
    }

    /// Conservative upper bound on max |v| over vertices (safe for enumeration radii).
    double circumradius_upper() const {
        double r = 0;
        for (const auto& v : verts_) r = std::fmax(r, std::sqrt(to_double(norm_sq(v))));
        return r * (1.0 + 1e-12);
    }

private:
    ConvexBody() = default;

    void normalize_facets() {
        for (auto& f : facets_) {
            double len = std::sqrt(to_double(norm_sq(f.normal)));
            if (len <= 0) throw GeometryError("zero facet normal");
            for (int i = 0; i < D; ++i) f.normal[i] = f.normal[i] / S(len);
            f.offset = f.offset / S(len);
        }
    }

    void check_symmetry() const {
        for (const auto& v : verts_) {
            bool found = false;
            for (const auto& w : verts_) {
                Vec<S, D> s = v + w;
                if constexpr (ScalarTraits<S>::is_exact) {
                    found = s == Vec<S, D>{};
                } else {
                    found = std::sqrt(to_double(norm_sq(s))) <= ScalarTraits<S>::point_tol;
                }
                if (found) break;
            }
            if (!found)
                throw ParameterError("body declared centrally symmetric but vertex set is not");
        }
    }

    std::vector<Vec<S, D>> verts_;
    std::vector<Halfspace<S, D>> facets_;
    std::vector<std::vector<Vec<S, 3>>> facet_loops_;  // d = 3 only
    Vec<S, D> centroid_{};
    S volume_{};
    bool symmetric_ = false;
};

/// Non-owning view of lambda * C + x. Predicates work through the inverse
/// map, so no vertices are materialized until requested.
template <class S, int D>
struct Homothet {
    const ConvexBody<S, D>* base;
    S lambda;
    Vec<S, D> shift;

    Homothet(const ConvexBody<S, D>& body, S coeff, Vec<S, D> translation)
        : base(&body), lambda(std::move(coeff)), shift(std::move(translation)) {
        if (ScalarTraits<S>::is_zero(lambda)) throw ParameterError("degenerate homothety: lambda = 0");
    }

    /// Identity placement of a body.
    explicit Homothet(const ConvexBody<S, D>& body) : Homothet(body, S(1), Vec<S, D>{}) {}

    std::size_t vertex_count() const { return base->vertices().size(); }
    Vec<S, D> vertex(std::size_t i) const { return lambda * base->vertices()[i] + shift; }

    PointLocation classify(const Vec<S, D>& p) const {
        return base->classify((p - shift) / lambda);
    }
};

template <class S, int D>
ConvexBody<S, D> materialize(const Homothet<S, D>& h) {
    std::vector<Vec<S, D>> verts;
    verts.reserve(h.vertex_count());
    for (std::size_t i = 0; i < h.vertex_count(); ++i) verts.push_back(h.vertex(i));
    bool zero_shift = true;
    for (int i = 0; i < D; ++i)
        if (!ScalarTraits<S>::is_zero(h.shift[i])) zero_shift = false;
    return ConvexBody<S, D>::hulled(std::move(verts), h.base->symmetric() && zero_shift);
}

/// lambda * C + x as a materialized body (orientation re-canonicalized).
template <class S, int D>
ConvexBody<S, D> homothet(const ConvexBody<S, D>& c, const S& lambda, const Vec<S, D>& x) {
    return materialize(Homothet<S, D>(c, lambda, x));
}

/// Closed containment A >= B, decided on B's vertices (valid by convexity).
template <class S, int D>
bool contains(const ConvexBody<S, D>& a, const Homothet<S, D>& b) {
    for (std::size_t i = 0; i < b.vertex_count(); ++i)
        if (a.classify(b.vertex(i)) == PointLocation::exterior) return false;
    return true;
}

template <class S, int D>
bool contains(const ConvexBody<S, D>& a, const ConvexBody<S, D>& b) {
    return contains(a, Homothet<S, D>(b));
}

template <class S, int D>
bool contains(const Homothet<S, D>& a, const Homothet<S, D>& b) {
    for (std::size_t i = 0; i < b.vertex_count(); ++i)
        if (a.classify(b.vertex(i)) == PointLocation::exterior) return false;
    return true;
}

/// Minkowski difference body C + (-C); always centrally symmetric.
template <class S, int D>
ConvexBody<S, D> difference_body(const ConvexBody<S, D>& c) {
    const auto& vs = c.vertices();
    std::vector<Vec<S, D>> diffs;
    diffs.reserve(vs.size() * vs.size());
    for (const auto& v : vs)
        for (const auto& w : vs) diffs.push_back(v - w);
    return ConvexBody<S, D>::hulled(std::move(diffs), true);
}

/// Point v with -(1/d) C + v inside C; realized by the centroid, so that
/// v = (1 + 1/d) * centroid. The containment is verified before returning.
template <class S, int D>
Vec<S, D> radon_vector(const ConvexBody<S, D>& c) {
    S factor = S(1) + S(1) / S(D);
    Vec<S, D> v = factor * c.centroid();
    if (!contains(c, Homothet<S, D>(c, S(-1) / S(D), v)))
        throw GeometryError("radon vector containment check failed");
    return v;
}

/// W(C) = (vol(C-C)/vol(C))^{1/d}; equals 2 exactly for symmetric bodies.
template <class S, int D>
double diff_ratio_W(const ConvexBody<S, D>& c) {
    double ratio = to_double(difference_body(c).volume()) / to_double(c.volume());
    return std::pow(ratio, 1.0 / D);
}

}  // namespace packcov
