#pragma once

#include "packcov/arrangement.hpp"

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace packcov {

/// Lattice vectors enumerated for torus predicates: every translate C + x + lambda
/// that can meet the fundamental domain, or another translate placed in it, has
/// its lambda in this list (radius 2 R(C) + diam(F), a safe over-approximation).
template <class S, int D>
std::vector<Vec<S, D>> neighbor_translates(const Lattice<S, D>& lattice,
                                           const ConvexBody<S, D>& body) {
    return lattice.vectors_within(2.0 * body.circumradius_upper() + lattice.diameter_upper());
}

template <class S, int D>
struct PackingWitness {
    std::size_t index_first = 0, index_second = 0;
    Vec<S, D> first, second, lattice_vector;
};

template <class S, int D>
struct PackingResult {
    bool ok = false;
    std::optional<PackingWitness<S, D>> witness;
};

namespace detail {

/// Double shadows of exact data, used only to skip pairs that are certainly
/// too far apart. Conservative margins keep every candidate that could matter.
template <class S, int D>
struct PairScanner {
    std::vector<Vec<double, D>> points_d;
    std::vector<Vec<double, D>> lambda_d;
    double reach2;

    PairScanner(const std::vector<Vec<S, D>>& pts, const std::vector<Vec<S, D>>& lams,
                double reach) {
        points_d.reserve(pts.size());
        for (const auto& p : pts) points_d.push_back(to_double(p));
        lambda_d.reserve(lams.size());
        for (const auto& l : lams) lambda_d.push_back(to_double(l));
        double r = reach * (1.0 + 1e-9) + 1e-9;
        reach2 = r * r;
    }

    bool plausible(std::size_t i, std::size_t j, std::size_t li) const {
        Vec<double, D> w = points_d[j] + lambda_d[li] - points_d[i];
        return norm_sq(w) <= reach2;
    }
};

template <class S, int D>
bool is_zero_vec(const Vec<S, D>& v) {
    for (int i = 0; i < D; ++i)
        if (!(v[i] == S(0))) return false;
    return true;
}

}  // namespace detail

/// Packing test via the difference-body criterion: translates C + a and C + b
/// share an interior point iff b - a lies in the interior of C - C. Pairs are
/// scanned in deterministic (i, j, lambda) order; the first violation is returned.
template <class S, int D>
PackingResult<S, D> is_packing(const Arrangement<S, D>& arr) {
    const ConvexBody<S, D> diff = difference_body(arr.body());
    const auto lambdas = neighbor_translates(arr.lattice(), arr.body());
    const auto& pts = arr.points();
    detail::PairScanner<S, D> scan(pts, lambdas, 2.0 * arr.body().circumradius_upper());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i; j < pts.size(); ++j) {
            for (std::size_t li = 0; li < lambdas.size(); ++li) {
                if (i == j && detail::is_zero_vec(lambdas[li])) continue;
                if (!scan.plausible(i, j, li)) continue;
                Vec<S, D> w = pts[j] + lambdas[li] - pts[i];
                if (diff.classify(w) == PointLocation::interior)
                    return {false, PackingWitness<S, D>{i, j, pts[i], pts[j], lambdas[li]}};
            }
        }
    }
    return {true, std::nullopt};
}

enum class CoverageMethod { exact2d, grid };

struct CoverageOptions {
    std::optional<CoverageMethod> method;  // default: exact2d for d=2, grid for d=3
    double grid_h = 0.05;
};

template <class S, int D>
struct CoverageReport {
    S uncovered_volume{};
    bool is_covering = false;
    /// Only the exact2d method certifies a covering verdict.
    bool certified = false;
    CoverageMethod method = CoverageMethod::exact2d;
    double grid_resolution = 0;
    std::optional<Vec<S, D>> witness_uncovered;
};

namespace detail {

template <class S, int D>
CoverageMethod pick_method(const CoverageOptions& opt) {
    if (opt.method) {
        if (*opt.method == CoverageMethod::exact2d && D != 2)
            throw ParameterError("exact coverage is only available for d = 2");
        return *opt.method;
    }
    return D == 2 ? CoverageMethod::exact2d : CoverageMethod::grid;
}

/// Strict exterior check of p against every translate of the arrangement body.
template <class S, int D>
bool verified_uncovered(const Arrangement<S, D>& arr, const std::vector<Vec<S, D>>& lambdas,
                        const Vec<S, D>& p) {
    const double reach = arr.body().circumradius_upper() * (1.0 + 1e-9) + 1e-9;
    const double reach2 = reach * reach;
    const Vec<double, D> pd = to_double(p);
    for (const auto& x : arr.points()) {
        const Vec<double, D> xd = to_double(x);
        for (const auto& lam : lambdas) {
            Vec<double, D> cd = xd + to_double(lam);
            if (norm_sq(pd - cd) > reach2) continue;
            if (arr.body().classify(p - x - lam) != PointLocation::exterior) return false;
        }
    }
    return true;
}

/// Exact complement of the arrangement within the fundamental domain.
/// Translates whose bounding box misses the domain are skipped outright.
template <class S>
ConvexRegion<S> uncovered_region(const Arrangement<S, 2>& arr) {
    const Polygon<S> domain = arr.lattice().fundamental_polygon();
    ConvexRegion<S> region(domain);
    const auto lambdas = neighbor_translates(arr.lattice(), arr.body());
    const auto& poly = arr.body().polygon();
    const auto [dom_lo, dom_hi] = polygon_bbox(domain);
    const auto [body_lo, body_hi] = polygon_bbox(poly);
    for (const auto& x : arr.points()) {
        for (const auto& lam : lambdas) {
            if (region.empty()) return region;
            Vec<S, 2> shift = x + lam;
            bool outside = false;
            for (int i = 0; i < 2 && !outside; ++i)
                outside = body_hi[i] + shift[i] < dom_lo[i] || dom_hi[i] < body_lo[i] + shift[i];
            if (outside) continue;
            region.subtract(translate(poly, shift));
        }
    }
    return region;
}

template <class S, int D>
struct GridSpec {
    long cells[D];
    long total = 1;

    GridSpec(const Lattice<S, D>& lattice, double h) {
        if (!(h > 0)) throw ParameterError("grid resolution must be positive");
        for (int i = 0; i < D; ++i) {
            double len = std::sqrt(norm_sq(to_double(lattice.basis().column(i))));
            cells[i] = std::max<long>(1, static_cast<long>(std::ceil(len * std::sqrt(2.0) / h)));
            total *= cells[i];
        }
        if (total > 80'000'000L) throw ParameterError("grid resolution too fine");
    }

    Vec<S, D> node(const Lattice<S, D>& lattice, long flat) const {
        Vec<S, D> f;
        for (int i = D - 1; i >= 0; --i) {
            long idx = flat % cells[i];
            flat /= cells[i];
            f[i] = ScalarTraits<S>::from_int(2 * idx + 1) /
                   ScalarTraits<S>::from_int(2 * cells[i]);
        }
        return lattice.from_fractional(f);
    }
};

template <class S, int D>
CoverageReport<S, D> coverage_grid(const Arrangement<S, D>& arr, double h) {
    GridSpec<S, D> grid(arr.lattice(), h);
    const auto lambdas = neighbor_translates(arr.lattice(), arr.body());
    long uncovered = 0;
    std::optional<Vec<S, D>> witness;
    for (long flat = 0; flat < grid.total; ++flat) {
        Vec<S, D> p = grid.node(arr.lattice(), flat);
        if (verified_uncovered(arr, lambdas, p)) {
            ++uncovered;
            if (!witness) witness = p;
        }
    }
    CoverageReport<S, D> rep;
    rep.method = CoverageMethod::grid;
    rep.grid_resolution = h;
    rep.certified = false;
    rep.uncovered_volume = ScalarTraits<S>::from_int(uncovered) * arr.lattice().cell_volume() /
                           ScalarTraits<S>::from_int(grid.total);
    rep.is_covering = uncovered == 0;
    rep.witness_uncovered = std::move(witness);
    return rep;
}

}  // namespace detail

/// vol(T \ (C + X)), plus the covering verdict. The exact2d method clips every
/// relevant translate against the fundamental domain and is certified; the grid
/// method estimates by node classification and is not.
template <class S, int D>
CoverageReport<S, D> uncovered_volume(const Arrangement<S, D>& arr, CoverageOptions opt = {}) {
    const CoverageMethod method = detail::pick_method<S, D>(opt);
    if (method == CoverageMethod::grid) return detail::coverage_grid(arr, opt.grid_h);
    if constexpr (D == 2) {
        auto region = detail::uncovered_region(arr);
        CoverageReport<S, 2> rep;
        rep.method = CoverageMethod::exact2d;
        rep.certified = true;
        rep.uncovered_volume = region.area();
        if constexpr (ScalarTraits<S>::is_exact) {
            rep.is_covering = rep.uncovered_volume == 0;
        } else {
            rep.is_covering = rep.uncovered_volume <=
                              ScalarTraits<S>::volume_tol * arr.lattice().cell_volume();
        }
        if (!rep.is_covering) {
            const auto lambdas = neighbor_translates(arr.lattice(), arr.body());
            for (const auto& piece : region.pieces()) {
                Vec<S, 2> c = polygon_centroid(piece);
                if (detail::verified_uncovered(arr, lambdas, c)) {
                    rep.witness_uncovered = c;
                    break;
                }
            }
        }
        return rep;
    } else {
        throw ParameterError("exact coverage is only available for d = 2");
    }
}

/// A point of T not covered by any translate, exactly re-verified before being
/// returned; nullopt means the complement has no interior point (exact2d) or
/// no uncovered node exists (grid).
template <class S, int D>
std::optional<Vec<S, D>> find_uncovered_point(const Arrangement<S, D>& arr,
                                              CoverageOptions opt = {}) {
    const CoverageMethod method = detail::pick_method<S, D>(opt);
    const auto lambdas = neighbor_translates(arr.lattice(), arr.body());
    if (method == CoverageMethod::grid) {
        detail::GridSpec<S, D> grid(arr.lattice(), opt.grid_h);
        for (long flat = 0; flat < grid.total; ++flat) {
            Vec<S, D> p = grid.node(arr.lattice(), flat);
            if (detail::verified_uncovered(arr, lambdas, p)) return p;
        }
        return std::nullopt;
    }
    if constexpr (D == 2) {
        auto region = detail::uncovered_region(arr);
        for (const auto& piece : region.pieces()) {
            Vec<S, 2> c = polygon_centroid(piece);
            if (detail::verified_uncovered(arr, lambdas, c)) return c;
            if constexpr (ScalarTraits<S>::is_exact)
                throw GeometryError("complement piece centroid failed exact uncovered check");
        }
        return std::nullopt;
    } else {
        throw ParameterError("exact coverage is only available for d = 2");
    }
}

enum class OverlapSemantics { interior, closed };

template <class S, int D>
struct OverlapWitness {
    std::size_t index_first = 0, index_second = 0;
    Vec<S, D> first, second;        // canonical representatives
    Vec<S, D> lattice_vector;       // lift: the overlapping translate is C + second + lattice_vector
    Vec<S, D> second_lifted;
    Vec<S, D> point;                // point of the closed intersection, verified in both
};

namespace detail {

/// A point of the closed intersection of two placed copies of `body`.
template <class S, int D>
std::optional<Vec<S, D>> intersection_point(const ConvexBody<S, D>& body, const Vec<S, D>& a,
                                            const Vec<S, D>& b) {
    if constexpr (D == 2) {
        Polygon<S> inter =
            intersect_convex(translate(body.polygon(), a), translate(body.polygon(), b));
        if (inter.empty()) return std::nullopt;
        return polygon_centroid(inter);
    } else {
        auto inside = [&](const Vec<S, D>& p, const Vec<S, D>& shift) {
            return body.classify(p - shift) != PointLocation::exterior;
        };
        for (const auto& v : body.vertices()) {
            if (inside(v + a, b)) return v + a;
            if (inside(v + b, a)) return v + b;
        }
        // clip each edge of one copy against the facets of the other
        auto edge_probe = [&](const Vec<S, D>& own, const Vec<S, D>& other)
            -> std::optional<Vec<S, D>> {
            for (const auto& loop : body.facet_loops()) {
                for (std::size_t i = 0; i < loop.size(); ++i) {
                    Vec<S, D> p = loop[i] + own;
                    Vec<S, D> q = loop[(i + 1) % loop.size()] + own;
                    S t0(0), t1(1);
                    bool alive = true;
                    for (const auto& f : body.facets()) {
                        S dp = f.offset - dot(f.normal, p - other);
                        S dq = f.offset - dot(f.normal, q - other);
                        if (dp < 0 && dq < 0) {
                            alive = false;
                            break;
                        }
                        if (dp < 0 || dq < 0) {
                            S t = dp / (dp - dq);
                            if (dp < 0) {
                                if (t > t0) t0 = t;
                            } else {
                                if (t < t1) t1 = t;
                            }
                            if (t1 < t0) {
                                alive = false;
                                break;
                            }
                        }
                    }
                    if (alive) {
                        S mid = (t0 + t1) / S(2);
                        return p + mid * (q - p);
                    }
                }
            }
            return std::nullopt;
        };
        if (auto r = edge_probe(a, b)) return r;
        return edge_probe(b, a);
    }
}

}  // namespace detail

/// First overlapping pair of translates in deterministic scan order, together
/// with a verified point of their intersection. `interior` semantics matches
/// the packing definition; `closed` also reports boundary contacts.
template <class S, int D>
std::optional<OverlapWitness<S, D>> find_overlap(const Arrangement<S, D>& arr,
                                                 OverlapSemantics sem = OverlapSemantics::interior) {
    const ConvexBody<S, D> diff = difference_body(arr.body());
    const auto lambdas = neighbor_translates(arr.lattice(), arr.body());
    const auto& pts = arr.points();
    detail::PairScanner<S, D> scan(pts, lambdas, 2.0 * arr.body().circumradius_upper());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i; j < pts.size(); ++j) {
            for (std::size_t li = 0; li < lambdas.size(); ++li) {
                if (i == j && detail::is_zero_vec(lambdas[li])) continue;
                if (!scan.plausible(i, j, li)) continue;
                Vec<S, D> w = pts[j] + lambdas[li] - pts[i];
                PointLocation loc = diff.classify(w);
                bool hit = sem == OverlapSemantics::interior ? loc == PointLocation::interior
                                                             : loc != PointLocation::exterior;
                if (!hit) continue;
                OverlapWitness<S, D> ow;
                ow.index_first = i;
                ow.index_second = j;
                ow.first = pts[i];
                ow.second = pts[j];
                ow.lattice_vector = lambdas[li];
                ow.second_lifted = pts[j] + lambdas[li];
                auto y = detail::intersection_point(arr.body(), ow.first, ow.second_lifted);
                if (!y)
                    throw GeometryError(
                        "difference-body test found an overlap but no intersection point");
                if (arr.body().classify(*y - ow.first) == PointLocation::exterior ||
                    arr.body().classify(*y - ow.second_lifted) == PointLocation::exterior)
                    throw GeometryError("overlap witness point failed verification");
                ow.point = std::move(*y);
                return ow;
            }
        }
    }
    return std::nullopt;
}

/// Minimal m >= 1 such that distinct translates of C by m Lambda are disjoint
/// as closed sets. The paper guarantees existence; `cap` guards the loop.
template <class S, int D>
int refine_lattice(const ConvexBody<S, D>& body, const Lattice<S, D>& lattice, int cap = 64) {
    const ConvexBody<S, D> diff = difference_body(body);
    const double radius = diff.circumradius_upper();
    for (int m = 1; m <= cap; ++m) {
        bool ok = true;
        for (const auto& lam : lattice.scaled_by_int(m).vectors_within(radius)) {
            if (detail::is_zero_vec(lam)) continue;
            if (diff.classify(lam) != PointLocation::exterior) {
                ok = false;
                break;
            }
        }
        if (ok) return m;
    }
    throw ParameterError("lattice refinement cap exceeded");
}

/// X' = X + Lambda_m (coset representatives of Lambda / m Lambda), wrapped into
/// the fundamental domain of m Lambda. Preserves the periodic density exactly.
template <class S, int D>
std::vector<Vec<S, D>> expand_points(const std::vector<Vec<S, D>>& points,
                                     const Lattice<S, D>& lattice, int m) {
    if (m < 1) throw ParameterError("expansion factor must be >= 1");
    const Lattice<S, D> refined = lattice.scaled_by_int(m);
    std::vector<Vec<S, D>> out;
    out.reserve(points.size() * static_cast<std::size_t>(std::pow(m, D)));
    for (const auto& x : points) {
        Vec<S, D> k;
        auto emit = [&](auto&& self, int axis) -> void {
            if (axis == D) {
                out.push_back(refined.wrap(x + lattice.basis() * k));
                return;
            }
            for (int t = 0; t < m; ++t) {
                k[axis] = ScalarTraits<S>::from_int(t);
                self(self, axis + 1);
            }
        };
        emit(emit, 0);
    }
    return out;
}

}  // namespace packcov
