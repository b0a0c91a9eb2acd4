#pragma once

#include "packcov/convex_body.hpp"
#include "packcov/lattice.hpp"

#include <utility>
#include <vector>

namespace packcov {

/// Periodic arrangement C + Lambda + X on the flat torus R^d / Lambda.
/// Points are stored as canonical fundamental-domain representatives.
template <class S, int D>
class Arrangement {
public:
    using scalar_type = S;
    static constexpr int dim = D;

    Arrangement(ConvexBody<S, D> body, Lattice<S, D> lattice, std::vector<Vec<S, D>> points)
        : body_(std::move(body)), lattice_(std::move(lattice)) {
        if (points.empty()) throw ParameterError("arrangement needs a nonempty point set");
        if (body_.classify(Vec<S, D>{}) != PointLocation::interior)
            throw ParameterError("arrangement body must contain the origin in its interior");
        points_.reserve(points.size());
        for (const auto& p : points) points_.push_back(lattice_.wrap(p));
        for (std::size_t i = 0; i < points_.size(); ++i) {
            for (std::size_t j = i + 1; j < points_.size(); ++j) {
                // torus distance: residual after removing the nearest lattice vector
                Vec<S, D> d = lattice_.wrap_centered(points_[i] - points_[j]);
                if constexpr (ScalarTraits<S>::is_exact) {
                    if (d == Vec<S, D>{}) throw ParameterError("duplicate arrangement points");
                } else {
                    if (std::sqrt(to_double(norm_sq(d))) <= ScalarTraits<S>::point_tol)
                        throw ParameterError("duplicate arrangement points (within tolerance)");
                }
            }
        }
    }

    const ConvexBody<S, D>& body() const { return body_; }
    const Lattice<S, D>& lattice() const { return lattice_; }
    const std::vector<Vec<S, D>>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    /// Same lattice and points, different body.
    Arrangement with_body(ConvexBody<S, D> body) const {
        return Arrangement(std::move(body), lattice_, points_);
    }

private:
    ConvexBody<S, D> body_;
    Lattice<S, D> lattice_;
    std::vector<Vec<S, D>> points_;
};

/// den(C + Lambda + X) = |X| vol(C) / vol(T); exact in rational mode.
template <class S, int D>
S periodic_density(const Arrangement<S, D>& a) {
    return S(static_cast<long>(a.size())) * a.body().volume() / a.lattice().cell_volume();
}

}  // namespace packcov
