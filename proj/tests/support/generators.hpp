#pragma once

// Randomized instance generators shared by the property tests and the
// acceptance suite. Everything is built in exact rational arithmetic so that
// densities and packing/covering properties hold exactly by construction;
// float instances are derived from the exact ones.

#include <packcov/packcov.hpp>

#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace testsupport {

using packcov::Arrangement;
using packcov::BigInt;
using packcov::ConvexBody;
using packcov::Lattice;
using packcov::Mat;
using packcov::Rational;
using packcov::Vec;

inline Rational snap64(double v) {
    return Rational(static_cast<long>(std::llround(v * 64.0)), 64);
}

/// Minkowski functional of a symmetric body with 0 in its interior:
/// gauge(v) = max_i (n_i . v) / b_i, exact for rational polytopes.
inline Rational gauge(const ConvexBody<Rational, 2>& k, const Vec<Rational, 2>& v) {
    Rational best(0);
    for (const auto& f : k.facets()) {
        if (!(f.offset > 0)) throw packcov::GeometryError("gauge needs 0 in the interior");
        Rational g = packcov::dot(f.normal, v) / f.offset;
        if (g > best) best = g;
    }
    return best;
}

/// Random convex polygon with 3..max_v vertices on a snapped circle,
/// recentered at its centroid (so the origin is interior and the Radon vector
/// vanishes only when the body is symmetric by accident).
inline ConvexBody<Rational, 2> random_body(std::mt19937& rng, int max_v = 12,
                                           bool symmetric = false) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        int target = 3 + static_cast<int>(unit(rng) * (max_v - 2));
        std::vector<double> angles;
        int n = symmetric ? (target + 1) / 2 : target;
        for (int i = 0; i < n; ++i) angles.push_back(unit(rng) * 2.0 * M_PI);
        std::vector<Vec<Rational, 2>> pts;
        for (double a : angles) {
            double r = 0.6 + 0.8 * unit(rng);
            Vec<Rational, 2> p{snap64(r * std::cos(a)), snap64(r * std::sin(a))};
            pts.push_back(p);
            if (symmetric) pts.push_back(-p);
        }
        try {
            auto body = ConvexBody<Rational, 2>::hulled(pts, symmetric);
            if (static_cast<int>(body.vertices().size()) < 3 ||
                static_cast<int>(body.vertices().size()) > max_v)
                continue;
            if (symmetric) return body;
            Vec<Rational, 2> c = body.centroid();
            std::vector<Vec<Rational, 2>> centered;
            for (const auto& v : body.vertices()) centered.push_back(v - c);
            return ConvexBody<Rational, 2>::hulled(centered, false);
        } catch (const packcov::Error&) {
            continue;
        }
    }
    throw packcov::GeometryError("random_body failed to produce a polygon");
}

/// Hexagonal-contact basis of the symmetric body K: a basis (a, b) with
/// a, b and a+b all on the boundary of K. Such a lattice is admissible for K,
/// i.e. C + Lambda is a packing when K = C - C. Returns the candidate with
/// the smallest |det| found (the densest packing over the sampled contacts).
inline std::optional<Mat<Rational, 2>> contact_basis(const ConvexBody<Rational, 2>& k) {
    const auto& verts = k.vertices();
    const std::size_t n = verts.size();
    std::vector<Vec<Rational, 2>> samples;
    for (std::size_t i = 0; i < n; ++i) {
        samples.push_back(verts[i]);
        samples.push_back((verts[i] + verts[(i + 1) % n]) / Rational(2));
    }
    std::optional<Mat<Rational, 2>> best;
    Rational best_det(0);
    auto admissible_quickcheck = [&](const Vec<Rational, 2>& a, const Vec<Rational, 2>& b) {
        for (int k1 = -3; k1 <= 3; ++k1)
            for (int k2 = -3; k2 <= 3; ++k2) {
                if (k1 == 0 && k2 == 0) continue;
                Vec<Rational, 2> v = Rational(k1) * a + Rational(k2) * b;
                if (gauge(k, v) < 1) return false;
            }
        return true;
    };
    for (const auto& a : samples) {
        for (std::size_t e = 0; e < n; ++e) {
            const Vec<Rational, 2>& w0 = verts[e];
            const Vec<Rational, 2> dir = verts[(e + 1) % n] - verts[e];
            for (const auto& f : k.facets()) {
                Rational denom = packcov::dot(f.normal, dir);
                if (denom == 0) continue;
                Rational t = (f.offset - packcov::dot(f.normal, a) - packcov::dot(f.normal, w0)) / denom;
                if (t < 0 || t > 1) continue;
                Vec<Rational, 2> b = w0 + t * dir;
                if (gauge(k, a + b) != 1) continue;
                Rational det = packcov::cross(a, b);
                if (det < 0) det = -det;
                if (det == 0) continue;
                if (best && det >= best_det) continue;
                if (!admissible_quickcheck(a, b)) continue;
                Mat<Rational, 2> basis;
                basis.column(0) = a;
                basis.column(1) = b;
                best = basis;
                best_det = det;
            }
        }
    }
    return best;
}

/// Dyadic rational near v (20 bits), rounded up or down.
inline Rational dyadic_near(double v, bool round_up) {
    const long scale = 1L << 20;
    double s = v * static_cast<double>(scale);
    long q = round_up ? static_cast<long>(std::ceil(s)) : static_cast<long>(std::floor(s));
    return Rational(q, scale);
}

struct TilingFamily {
    ConvexBody<Rational, 2> body;
    Mat<Rational, 2> basis;  // exact tiling lattice: critical density 1
};

inline std::optional<TilingFamily> random_parallelogram(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vec<Rational, 2> u1{snap64(0.7 + 0.8 * unit(rng)), snap64(0.5 * (unit(rng) - 0.5))};
    Vec<Rational, 2> u2{snap64(0.5 * (unit(rng) - 0.5)), snap64(0.7 + 0.8 * unit(rng))};
    if (packcov::cross(u1, u2) <= 0) return std::nullopt;
    Vec<Rational, 2> h1 = (u1 + u2) / Rational(2);
    Vec<Rational, 2> h2 = (u1 - u2) / Rational(2);
    try {
        auto body = ConvexBody<Rational, 2>::from_vertices({h1, h2, -h1, -h2}, true);
        Mat<Rational, 2> basis;
        basis.column(0) = u1;
        basis.column(1) = u2;
        return TilingFamily{std::move(body), basis};
    } catch (const packcov::Error&) {
        return std::nullopt;
    }
}

inline std::optional<TilingFamily> random_hexagon(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vec<Rational, 2> u1{snap64(0.8 + 0.6 * unit(rng)), snap64(0.4 * (unit(rng) - 0.5))};
    Vec<Rational, 2> u2{snap64(0.3 + 0.5 * unit(rng)), snap64(0.7 + 0.6 * unit(rng))};
    if (packcov::cross(u1, u2) <= 0) return std::nullopt;
    std::vector<Vec<Rational, 2>> verts = {u1, u2, u2 - u1, -u1, -u2, u1 - u2};
    try {
        auto body = ConvexBody<Rational, 2>::from_vertices(verts, true);
        if (body.vertices().size() != 6) return std::nullopt;
        Mat<Rational, 2> basis;
        basis.column(0) = u1 + u2;
        basis.column(1) = Rational(2) * u2 - u1;
        return TilingFamily{std::move(body), basis};
    } catch (const packcov::Error&) {
        return std::nullopt;
    }
}

/// Split the lattice in one axis, moving one generator into the point set.
/// The translate set (and hence density and both properties) is unchanged.
inline Arrangement<Rational, 2> sublattice_split(const Arrangement<Rational, 2>& arr, int axis) {
    Mat<Rational, 2> basis = arr.lattice().basis();
    Vec<Rational, 2> moved = basis.column(axis);
    basis.column(axis) = Rational(2) * moved;
    Lattice<Rational, 2> lattice(basis);
    std::vector<Vec<Rational, 2>> pts;
    for (const auto& x : arr.points()) {
        pts.push_back(lattice.wrap(x));
        pts.push_back(lattice.wrap(x + moved));
    }
    return Arrangement<Rational, 2>(arr.body(), lattice, pts);
}

struct ExactInstance {
    Arrangement<Rational, 2> arr;
    Rational density;
};

/// Random packing with density in [0.55, 0.999]: random body, hexagonal-contact
/// lattice, rational scale-up toward a sampled target density, optional
/// sublattice splits for multi-point X. Verified by is_packing before returning.
inline ExactInstance make_packing_instance(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 200; ++attempt) {
        ConvexBody<Rational, 2>* body_ptr = nullptr;
        std::optional<TilingFamily> fam;
        std::optional<ConvexBody<Rational, 2>> generic;
        std::optional<Mat<Rational, 2>> basis;
        const int kind = static_cast<int>(unit(rng) * 4.0);
        if (kind == 0) fam = random_parallelogram(rng);
        if (kind == 1) fam = random_hexagon(rng);
        if (fam) {
            basis = fam->basis;
            body_ptr = &fam->body;
        } else {
            generic = random_body(rng, 12, unit(rng) < 0.3);
            basis = contact_basis(packcov::difference_body(*generic));
            if (!basis) continue;
            body_ptr = &*generic;
        }
        const ConvexBody<Rational, 2>& body = *body_ptr;
        Lattice<Rational, 2> critical(*basis);
        Rational rho_star = body.volume() / critical.cell_volume();
        if (rho_star > 1 || rho_star < Rational(553, 1000)) continue;
        double hi = std::min(packcov::to_double(rho_star), 0.999);
        double target = unit(rng) < 0.35 ? hi * (1.0 - 1e-4 - 1e-3 * unit(rng))
                                         : 0.552 + unit(rng) * (hi - 0.552);
        Rational s = dyadic_near(std::sqrt(packcov::to_double(rho_star) / target), true);
        if (s < 1) s = 1;
        Lattice<Rational, 2> lattice(s * *basis);
        Rational density = body.volume() / lattice.cell_volume();
        if (density < Rational(55, 100) || density > Rational(999, 1000)) continue;
        Arrangement<Rational, 2> arr(body, lattice, {Vec<Rational, 2>{}});
        if (!packcov::is_packing(arr).ok) continue;
        int splits = static_cast<int>(unit(rng) * 3.0);
        for (int si = 0; si < splits; ++si)
            arr = sublattice_split(arr, static_cast<int>(unit(rng) * 2.0));
        return {std::move(arr), std::move(density)};
    }
    throw packcov::GeometryError("make_packing_instance ran out of attempts");
}

/// Random covering with density in [1.001, 1.9]: same lattice shapes, rational
/// scale-down until the exact coverage check passes.
inline ExactInstance make_covering_instance(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::optional<TilingFamily> fam;
        std::optional<ConvexBody<Rational, 2>> generic;
        std::optional<Mat<Rational, 2>> basis;
        ConvexBody<Rational, 2>* body_ptr = nullptr;
        const int kind = static_cast<int>(unit(rng) * 4.0);
        if (kind == 0) fam = random_parallelogram(rng);
        if (kind == 1) fam = random_hexagon(rng);
        if (fam) {
            basis = fam->basis;
            body_ptr = &fam->body;
        } else {
            generic = random_body(rng, 12, unit(rng) < 0.3);
            basis = contact_basis(packcov::difference_body(*generic));
            if (!basis) continue;
            body_ptr = &*generic;
        }
        const ConvexBody<Rational, 2>& body = *body_ptr;
        Lattice<Rational, 2> critical(*basis);
        Rational rho_star = body.volume() / critical.cell_volume();
        if (rho_star > 1) continue;
        const bool dense_end = unit(rng) < 0.5;
        double target = dense_end ? 1.001 + 0.03 * unit(rng) : 1.05 + unit(rng) * 0.8;
        Rational s = dyadic_near(std::sqrt(packcov::to_double(rho_star) / target), false);
        for (int shrink = 0; shrink < 12; ++shrink) {
            if (!(s > 0)) break;
            Lattice<Rational, 2> lattice(s * *basis);
            Rational density = body.volume() / lattice.cell_volume();
            if (density > Rational(19, 10)) break;
            if (density >= Rational(1001, 1000)) {
                Arrangement<Rational, 2> arr(body, lattice, {Vec<Rational, 2>{}});
                if (packcov::uncovered_volume(arr).is_covering) {
                    int splits = dense_end ? 2 + static_cast<int>(unit(rng) * 2.0)
                                           : static_cast<int>(unit(rng) * 3.0);
                    // keep the refined instance small: splits multiply |X|, and the
                    // transform multiplies it again by m^2
                    const int m_hat = packcov::refine_lattice(body, lattice);
                    while (splits > 0 && (1L << splits) * m_hat * m_hat > 24) --splits;
                    for (int si = 0; si < splits; ++si)
                        arr = sublattice_split(arr, static_cast<int>(unit(rng) * 2.0));
                    // redundant translates keep the covering property and give
                    // the overlap-removal loop real work
                    int extra = unit(rng) < 0.6 ? 1 + static_cast<int>(unit(rng) * 3.0) : 0;
                    for (int ei = 0; ei < extra; ++ei) {
                        Rational k_vol = Rational(static_cast<long>(arr.size() + 1)) *
                                         arr.body().volume();
                        if (k_vol / arr.lattice().cell_volume() > Rational(19, 10)) break;
                        std::vector<Vec<Rational, 2>> pts = arr.points();
                        Vec<Rational, 2> cand;
                        if (unit(rng) < 0.7 && !pts.empty()) {
                            // near-duplicate of an existing translate
                            const auto& base =
                                pts[static_cast<std::size_t>(unit(rng) * pts.size())];
                            auto jitter = [&] {
                                long q = 1 + static_cast<long>(unit(rng) * 7.0);
                                return Rational(unit(rng) < 0.5 ? -q : q, 64);
                            };
                            cand = base + Vec<Rational, 2>{jitter(), jitter()};
                        } else {
                            cand = Vec<Rational, 2>{snap64(4.0 * unit(rng)),
                                                    snap64(4.0 * unit(rng))};
                        }
                        pts.push_back(arr.lattice().wrap(cand));
                        try {
                            arr = Arrangement<Rational, 2>(arr.body(), arr.lattice(), pts);
                        } catch (const packcov::Error&) {
                            break;  // duplicate draw; keep the smaller instance
                        }
                    }
                    Rational final_density = periodic_density(arr);
                    if (final_density > Rational(19, 10)) continue;
                    return {std::move(arr), std::move(final_density)};
                }
            }
            s = s * Rational(15, 16);
        }
    }
    throw packcov::GeometryError("make_covering_instance ran out of attempts");
}

/// Exact instance converted to the float kernel (coordinates rounded to double).
inline Arrangement<double, 2> to_float(const Arrangement<Rational, 2>& arr) {
    std::vector<Vec<double, 2>> verts;
    for (const auto& v : arr.body().vertices()) verts.push_back(packcov::to_double(v));
    auto body = ConvexBody<double, 2>::hulled(verts, arr.body().symmetric());
    Mat<double, 2> basis;
    for (int j = 0; j < 2; ++j) basis.column(j) = packcov::to_double(arr.lattice().basis().column(j));
    std::vector<Vec<double, 2>> pts;
    for (const auto& p : arr.points()) pts.push_back(packcov::to_double(p));
    return Arrangement<double, 2>(std::move(body), Lattice<double, 2>(basis), std::move(pts));
}

/// Scale body, lattice and points by sigma (the transform is homothety
/// equivariant; used to test exactly that).
inline Arrangement<Rational, 2> scaled_instance(const Arrangement<Rational, 2>& arr,
                                                const Rational& sigma) {
    std::vector<Vec<Rational, 2>> verts;
    for (const auto& v : arr.body().vertices()) verts.push_back(sigma * v);
    auto body = ConvexBody<Rational, 2>::hulled(verts, arr.body().symmetric());
    Lattice<Rational, 2> lattice(sigma * arr.lattice().basis());
    std::vector<Vec<Rational, 2>> pts;
    for (const auto& p : arr.points()) pts.push_back(sigma * p);
    return Arrangement<Rational, 2>(std::move(body), std::move(lattice), std::move(pts));
}

/// Arbitrary small arrangements (not necessarily packings or coverings), for
/// oracle-equivalence sweeps.
inline Arrangement<Rational, 2> random_arrangement(std::mt19937& rng, double max_spread = 3.6) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        auto body = random_body(rng, 8, unit(rng) < 0.25);
        double spread = 1.2 + (max_spread - 1.2) * unit(rng);
        Mat<Rational, 2> basis;
        basis.column(0) = {snap64(spread * (0.8 + 0.4 * unit(rng))), snap64(0.4 * (unit(rng) - 0.5))};
        basis.column(1) = {snap64(0.4 * (unit(rng) - 0.5)), snap64(spread * (0.8 + 0.4 * unit(rng)))};
        if (basis.det() == 0) continue;
        Lattice<Rational, 2> lattice(basis);
        std::vector<Vec<Rational, 2>> pts{Vec<Rational, 2>{}};
        int extra = static_cast<int>(unit(rng) * 3.0);
        for (int i = 0; i < extra; ++i) {
            Vec<Rational, 2> p{snap64(spread * unit(rng)), snap64(spread * unit(rng))};
            pts.push_back(p);
        }
        try {
            return Arrangement<Rational, 2>(std::move(body), std::move(lattice), std::move(pts));
        } catch (const packcov::Error&) {
            continue;  // duplicates after wrapping; redraw
        }
    }
}

}  // namespace testsupport
