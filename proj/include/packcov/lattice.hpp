#pragma once

#include "packcov/polygon.hpp"
#include "packcov/vec.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace packcov {

namespace detail {

inline double floor_scalar(double v) { return std::floor(v); }
inline Rational floor_scalar(const Rational& v) { return Rational(rational_floor(v)); }

}  // namespace detail

/// Full-rank lattice given by basis columns; the fundamental domain is the
/// half-open parallelepiped spanned by the basis.
template <class S, int D>
class Lattice {
public:
    explicit Lattice(Mat<S, D> basis) : basis_(std::move(basis)) {
        S det = basis_.det();
        if (ScalarTraits<S>::is_zero(det)) throw ParameterError("lattice basis is singular");
        inverse_ = basis_.inverse();
        cell_volume_ = det < 0 ? -det : det;
    }

    const Mat<S, D>& basis() const { return basis_; }
    const Mat<S, D>& inverse_basis() const { return inverse_; }
    /// Volume of the torus R^d / Lambda.
    const S& cell_volume() const { return cell_volume_; }

    Vec<S, D> to_fractional(const Vec<S, D>& p) const { return inverse_ * p; }
    Vec<S, D> from_fractional(const Vec<S, D>& f) const { return basis_ * f; }

    /// Canonical representative of p + Lambda in the fundamental domain.
    Vec<S, D> wrap(const Vec<S, D>& p) const {
        Vec<S, D> f = inverse_ * p;
        for (int i = 0; i < D; ++i) f[i] -= detail::floor_scalar(f[i]);
        return basis_ * f;
    }

    /// Shortest representative heuristic: fractional parts mapped to [-1/2, 1/2).
    Vec<S, D> wrap_centered(const Vec<S, D>& p) const {
        Vec<S, D> f = inverse_ * p;
        for (int i = 0; i < D; ++i) {
            f[i] -= detail::floor_scalar(f[i]);
            if (S(2) * f[i] >= S(1)) f[i] -= S(1);
        }
        return basis_ * f;
    }

    Polygon<S> fundamental_polygon() const
        requires(D == 2)
    {
        const auto& b0 = basis_.column(0);
        const auto& b1 = basis_.column(1);
        Vec<S, 2> zero{};
        if (cross(b0, b1) > 0) return {zero, b0, b0 + b1, b1};
        return {zero, b1, b0 + b1, b0};
    }

    /// Upper bound on the diameter of the fundamental domain.
    double diameter_upper() const {
        double best = 0;
        if constexpr (D == 2) {
            best = std::fmax(corner_norm({1, 1}), corner_norm({1, -1}));
        } else {
            best = std::fmax(std::fmax(corner_norm({1, 1, 1}), corner_norm({1, 1, -1})),
                             std::fmax(corner_norm({1, -1, 1}), corner_norm({-1, 1, 1})));
        }
        return best * (1.0 + 1e-12);
    }

    /// All lattice vectors of norm <= radius (a guaranteed superset; marginal
    /// vectors slightly beyond the radius may be included). Sorted by
    /// (norm^2, lexicographic), so scans over the result are deterministic.
    std::vector<Vec<S, D>> vectors_within(double radius) const {
        const double pad = radius * (1.0 + 1e-9) + 1e-12;
        long limit[D];
        for (int i = 0; i < D; ++i) {
            double row_norm = 0;
            for (int j = 0; j < D; ++j) {
                double e = to_double(inverse_.column(j)[i]);
                row_norm += e * e;
            }
            row_norm = std::sqrt(row_norm);
            limit[i] = static_cast<long>(std::ceil(pad * row_norm)) + 1;
        }
        struct Entry {
            S n2;
            Vec<S, D> v;
        };
        std::vector<Entry> found;
        const double r2 = pad * pad;
        Vec<S, D> k;
        auto scan = [&](auto&& self, int axis) -> void {
            if (axis == D) {
                Vec<S, D> lam = basis_ * k;
                S n2 = norm_sq(lam);
                if (to_double(n2) <= r2) found.push_back({std::move(n2), std::move(lam)});
                return;
            }
            for (long t = -limit[axis]; t <= limit[axis]; ++t) {
                k[axis] = ScalarTraits<S>::from_int(t);
                self(self, axis + 1);
            }
        };
        scan(scan, 0);
        std::sort(found.begin(), found.end(), [](const Entry& a, const Entry& b) {
            if (a.n2 < b.n2) return true;
            if (b.n2 < a.n2) return false;
            return a.v < b.v;
        });
        std::vector<Vec<S, D>> out;
        out.reserve(found.size());
        for (auto& e : found) out.push_back(std::move(e.v));
        return out;
    }

    Lattice scaled_by_int(int m) const {
        if (m < 1) throw ParameterError("lattice scale factor must be >= 1");
        return Lattice(S(m) * basis_);
    }

private:
    double corner_norm(std::initializer_list<int> signs) const {
        Vec<double, D> acc{};
        int axis = 0;
        for (int s : signs) {
            for (int i = 0; i < D; ++i) acc[i] += s * to_double(basis_.column(axis)[i]);
            ++axis;
        }
        return std::sqrt(norm_sq(acc));
    }

    Mat<S, D> basis_;
    Mat<S, D> inverse_;
    S cell_volume_;
};

}  // namespace packcov
