#pragma once

#include "packcov/torus.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace packcov {

enum class Direction { pack_to_cover, cover_to_pack };

template <class S>
S pow_int(const S& base, int n) {
    S r(1);
    for (int i = 0; i < n; ++i) r = r * base;
    return r;
}

/// alpha = eps^{1/(d+1)}, clamped to 1/d for bodies that are not centrally
/// symmetric (the clamp is what the hole-filling witness construction needs).
inline double choose_alpha(double eps, int d, bool symmetric) {
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
    if (d < 2) throw ParameterError("dimension must be >= 2");
    double a = std::pow(eps, 1.0 / (d + 1));
    return symmetric ? a : std::min(a, 1.0 / d);
}

namespace detail {

/// Scalar-generic admissible alpha. In exact mode the irrational optimum is
/// replaced by a nearby dyadic rational rounded down, which stays admissible;
/// every certified inequality uses the alpha actually returned here.
template <class S>
S select_alpha(double eps, int d, bool clamp_to_inv_d) {
    double a = std::pow(eps, 1.0 / (d + 1));
    if constexpr (ScalarTraits<S>::is_exact) {
        constexpr unsigned bits = 20;
        Rational r = dyadic_floor(ScalarTraits<Rational>::from_double(a), bits);
        Rational lo(1, BigInt(1) << bits);
        if (r < lo) r = lo;
        if (clamp_to_inv_d && r > Rational(1, d)) r = Rational(1, d);
        Rational hi = Rational(1) - lo;
        if (r > hi) r = hi;
        return r;
    } else {
        if (clamp_to_inv_d) a = std::min(a, 1.0 / d);
        return a;
    }
}

}  // namespace detail

/// y' with C + y' covering -alpha C + y. Symmetric bodies take y' = y; the
/// general case shifts by the Radon vector and needs alpha <= 1/d. The
/// containment is verified before returning.
template <class S, int D>
Vec<S, D> cover_witness_translate(const ConvexBody<S, D>& body, const Vec<S, D>& y,
                                  const S& alpha, bool symmetric) {
    if (!(alpha > 0)) throw ParameterError("alpha must be positive");
    if (symmetric) {
        if (!(alpha < 1)) throw ParameterError("alpha must be < 1");
    } else if (!(alpha * S(D) <= S(1))) {
        throw ParameterError("alpha must be <= 1/d for a body without central symmetry");
    }
    Vec<S, D> y_prime = y;
    if (!symmetric) y_prime = y - (alpha * S(D)) * radon_vector(body);
    if (!contains(Homothet<S, D>(body, S(1), y_prime), Homothet<S, D>(body, -alpha, y)))
        throw GeometryError("cover witness containment failed");
    return y_prime;
}

template <class S, int D>
struct GreedyStep {
    int iteration = 0;
    Vec<S, D> witness;  // the uncovered point y, or the overlap point y
    Vec<S, D> point;    // inserted y' (wrapped) or removed x'
    S potential_before{}, potential_after{};
};

template <class S, int D>
struct GreedyTrace {
    S alpha{};
    S epsilon_effective{};
    std::vector<GreedyStep<S, D>> steps;
    int step_count = 0;
    bool certified = false;
    long claim_checks = 0;
    long claim_failures = 0;
};

template <class S, int D>
struct TransformResult {
    Arrangement<S, D> output;
    GreedyTrace<S, D> trace;
    S density_before{}, density_after{};
    /// (1 +- eps/alpha^d)(1 +- alpha)^d, evaluated with the alpha actually used.
    S bound_value{};
    bool bound_satisfied = false;
    bool bound_vacuous = false;
    int refinement_m = 1;
    bool output_verified = false;
};

struct TransformOptions {
    CoverageOptions coverage;
    /// Witness coordinates are snapped to this dyadic grid in lattice
    /// coordinates (exact mode only, re-verified, falls back to the exact
    /// witness). Keeps rational coordinate sizes bounded across iterations.
    unsigned snap_bits = 40;
    int extra_iterations = 8;
    int refinement_cap = 64;
};

namespace detail {

inline Rational dyadic_round(const Rational& v, unsigned bits) {
    return dyadic_floor(v + Rational(1, BigInt(1) << (bits + 1)), bits);
}

template <class S, int D, class Verify>
Vec<S, D> snap_witness(const Lattice<S, D>& lattice, const Vec<S, D>& y, unsigned bits,
                       Verify&& verify) {
    if constexpr (ScalarTraits<S>::is_exact) {
        if (bits == 0) return y;
        Vec<S, D> f = lattice.to_fractional(y);
        for (int i = 0; i < D; ++i) f[i] = dyadic_round(f[i], bits);
        Vec<S, D> snapped = lattice.from_fractional(f);
        if (verify(snapped)) return snapped;
    }
    return y;
}

template <class S>
bool potential_decrement_ok(const S& before, const S& after, const S& min_drop, const S& vol_t) {
    if constexpr (ScalarTraits<S>::is_exact) {
        return after <= before - min_drop;
    } else {
        return after <= before - min_drop + ScalarTraits<S>::volume_tol * vol_t;
    }
}

template <class S>
long iteration_cap(const S& eps, const S& vol_t, const S& alpha_d, const S& vol_c, int d,
                   int extra) {
    double budget = to_double(eps) * to_double(vol_t) / (to_double(alpha_d) * to_double(vol_c));
    return static_cast<long>(std::ceil(std::fmax(budget, 0.0))) + d + extra;
}

}  // namespace detail

/// Hole filling: grow the body to (1+alpha)C and insert a translate for every
/// uncovered point until the torus is covered. Every step is certified: the
/// uncovered witness is re-verified exactly, the covering translate is checked
/// by containment, and the potential S_i must drop by at least alpha^d vol(C).
template <class S, int D>
TransformResult<S, D> pack_to_cover(const Arrangement<S, D>& input, const S& alpha,
                                    const TransformOptions& opt = {}) {
    if (!(alpha > 0 && alpha < 1)) throw ParameterError("alpha must lie in (0, 1)");
    if (!input.body().symmetric() && !(alpha * S(D) <= S(1)))
        throw ParameterError("alpha must be <= 1/d for a body without central symmetry");
    auto packing = is_packing(input);
    if (!packing.ok) throw PreconditionError("pack_to_cover requires a packing");

    const ConvexBody<S, D>& body = input.body();
    const Lattice<S, D>& lattice = input.lattice();
    const S vol_c = body.volume();
    const S vol_t = lattice.cell_volume();
    const S density = periodic_density(input);
    const S eps = S(1) - density;
    const S alpha_d = pow_int(alpha, D);
    const S min_drop = alpha_d * vol_c;
    const ConvexBody<S, D> grown = homothet(body, S(1) + alpha, Vec<S, D>{});
    const auto lambdas_grown = neighbor_translates(lattice, grown);
    const CoverageMethod method = opt.coverage.method.value_or(
        D == 2 ? CoverageMethod::exact2d : CoverageMethod::grid);
    const bool exact_path = method == CoverageMethod::exact2d;

    GreedyTrace<S, D> trace;
    trace.alpha = alpha;
    trace.epsilon_effective = eps;

    std::vector<Vec<S, D>> points = input.points();
    auto potential_of = [&](const std::vector<Vec<S, D>>& pts) {
        return uncovered_volume(Arrangement<S, D>(body, lattice, pts), opt.coverage)
            .uncovered_volume;
    };
    S potential = potential_of(points);
    const long cap =
        detail::iteration_cap(eps, vol_t, alpha_d, vol_c, D, opt.extra_iterations);

    for (int iter = 0;; ++iter) {
        Arrangement<S, D> grown_arr(grown, lattice, points);
        auto witness = find_uncovered_point(grown_arr, opt.coverage);
        if (!witness) break;
        if (iter >= cap) throw GeometryError("pack_to_cover exceeded its certified step budget");
        Vec<S, D> y = detail::snap_witness(lattice, *witness, opt.snap_bits,
                                           [&](const Vec<S, D>& cand) {
                                               return detail::verified_uncovered(
                                                   grown_arr, lambdas_grown, cand);
                                           });
        // proof claim: (-alpha C + y) misses every C + x, equivalently y lies
        // outside every (1+alpha)C + x; difference-body membership over all x.
        ++trace.claim_checks;
        if (!detail::verified_uncovered(grown_arr, lambdas_grown, y)) {
            ++trace.claim_failures;
            if (exact_path) throw GeometryError("disjointness claim failed at an insertion");
        }
        Vec<S, D> y_prime = cover_witness_translate(body, y, alpha, body.symmetric());
        points.push_back(lattice.wrap(y_prime));
        S next = potential_of(points);
        if (!detail::potential_decrement_ok(potential, next, min_drop, vol_t)) {
            ++trace.claim_failures;
            if (exact_path) throw GeometryError("potential failed to drop by alpha^d vol(C)");
        }
        trace.steps.push_back({iter, std::move(y), points.back(), potential, next});
        potential = std::move(next);
    }
    trace.step_count = static_cast<int>(trace.steps.size());

    TransformResult<S, D> result{Arrangement<S, D>(grown, lattice, points), std::move(trace),
                                 density, S(0)};
    auto final_cover = uncovered_volume(result.output, opt.coverage);
    result.output_verified = final_cover.is_covering;
    if (!result.output_verified && exact_path)
        throw GeometryError("final arrangement failed the covering check");

    // l vol(C) < eps/alpha^d * vol(T), from the telescoped potential drops
    const S spent = S(result.trace.step_count) * vol_c * alpha_d;
    bool step_bound;
    if constexpr (ScalarTraits<S>::is_exact) {
        step_bound = spent <= eps * vol_t;
    } else {
        step_bound = spent <= eps * vol_t + ScalarTraits<S>::volume_tol * vol_t;
    }
    if (!step_bound) {
        ++result.trace.claim_failures;
        if (exact_path) throw GeometryError("step-count bound violated");
    }

    result.density_after = periodic_density(result.output);
    const S growth = pow_int(S(1) + alpha, D);
    result.bound_value = (S(1) + eps / alpha_d) * growth;
    result.bound_satisfied = result.density_after < result.bound_value;
    result.bound_vacuous = !(eps > 0);
    result.trace.certified =
        exact_path && final_cover.certified && result.trace.claim_failures == 0 && step_bound;
    return result;
}

/// Overlap removal: refine the lattice so single translates cannot touch their
/// own copies, shrink the body to (1-alpha)C, and delete the second member of
/// every overlapping pair until a packing remains. The sandwich claim
/// (alpha C + y) inside both translates is verified at every removal.
template <class S, int D>
TransformResult<S, D> cover_to_pack(const Arrangement<S, D>& input, const S& alpha,
                                    const TransformOptions& opt = {}) {
    if (!(alpha > 0 && alpha < 1)) throw ParameterError("alpha must lie in (0, 1)");
    auto cover = uncovered_volume(input, opt.coverage);
    if (!cover.is_covering) throw PreconditionError("cover_to_pack requires a covering");

    const ConvexBody<S, D>& body = input.body();
    const int m = refine_lattice(body, input.lattice(), opt.refinement_cap);
    const Lattice<S, D> lattice =
        m > 1 ? input.lattice().scaled_by_int(m) : input.lattice();
    std::vector<Vec<S, D>> points =
        m > 1 ? expand_points(input.points(), input.lattice(), m) : input.points();

    const S vol_c = body.volume();
    const S vol_t = lattice.cell_volume();
    const S density = periodic_density(input);
    const S eps = density - S(1);
    const S alpha_d = pow_int(alpha, D);
    const S min_drop = alpha_d * vol_c;
    const ConvexBody<S, D> shrunk = homothet(body, S(1) - alpha, Vec<S, D>{});
    const CoverageMethod method = opt.coverage.method.value_or(
        D == 2 ? CoverageMethod::exact2d : CoverageMethod::grid);
    const bool exact_path = method == CoverageMethod::exact2d;

    GreedyTrace<S, D> trace;
    trace.alpha = alpha;
    trace.epsilon_effective = eps;

    auto excess_of = [&](const std::vector<Vec<S, D>>& pts) {
        S uncov = uncovered_volume(Arrangement<S, D>(body, lattice, pts), opt.coverage)
                      .uncovered_volume;
        return S(static_cast<long>(pts.size())) * vol_c - (vol_t - uncov);
    };
    S potential = excess_of(points);
    const long cap =
        detail::iteration_cap(eps, vol_t, alpha_d, vol_c, D, opt.extra_iterations);

    for (int iter = 0;; ++iter) {
        Arrangement<S, D> shrunk_arr(shrunk, lattice, points);
        auto overlap = find_overlap(shrunk_arr, OverlapSemantics::interior);
        if (!overlap) break;
        if (iter >= cap) throw GeometryError("cover_to_pack exceeded its certified step budget");
        if (overlap->index_first == overlap->index_second)
            throw GeometryError("translate overlaps its own lattice copy after refinement");
        Vec<S, D> y = detail::snap_witness(
            lattice, overlap->point, opt.snap_bits, [&](const Vec<S, D>& cand) {
                return shrunk.classify(cand - overlap->first) != PointLocation::exterior &&
                       shrunk.classify(cand - overlap->second_lifted) != PointLocation::exterior;
            });
        // sandwich claim: alpha C + y inside C + x and inside C + x'
        Homothet<S, D> core(body, alpha, y);
        trace.claim_checks += 2;
        if (!contains(Homothet<S, D>(body, S(1), overlap->first), core) ||
            !contains(Homothet<S, D>(body, S(1), overlap->second_lifted), core)) {
            ++trace.claim_failures;
            if (exact_path) throw GeometryError("sandwich claim failed at a removal");
        }
        Vec<S, D> removed = points[overlap->index_second];
        points.erase(points.begin() + static_cast<std::ptrdiff_t>(overlap->index_second));
        if (points.empty()) throw GeometryError("overlap removal emptied the point set");
        S next = excess_of(points);
        if (!detail::potential_decrement_ok(potential, next, min_drop, vol_t)) {
            ++trace.claim_failures;
            if (exact_path) throw GeometryError("covering excess failed to drop by alpha^d vol(C)");
        }
        trace.steps.push_back({iter, std::move(y), std::move(removed), potential, next});
        potential = std::move(next);
    }
    trace.step_count = static_cast<int>(trace.steps.size());

    TransformResult<S, D> result{Arrangement<S, D>(shrunk, lattice, points), std::move(trace),
                                 density, S(0)};
    result.refinement_m = m;
    auto final_packing = is_packing(result.output);
    result.output_verified = final_packing.ok;
    if (!result.output_verified) throw GeometryError("final arrangement failed the packing check");

    const S spent = S(result.trace.step_count) * vol_c * alpha_d;
    bool step_bound;
    if constexpr (ScalarTraits<S>::is_exact) {
        step_bound = spent <= eps * vol_t;
    } else {
        step_bound = spent <= eps * vol_t + ScalarTraits<S>::volume_tol * vol_t;
    }
    if (!step_bound) {
        ++result.trace.claim_failures;
        if (exact_path) throw GeometryError("step-count bound violated");
    }

    result.density_after = periodic_density(result.output);
    const S shrink = pow_int(S(1) - alpha, D);
    result.bound_value = (S(1) - eps / alpha_d) * shrink;
    result.bound_satisfied = result.density_after > result.bound_value;
    result.bound_vacuous = !(result.bound_value > 0);
    result.trace.certified = exact_path && result.trace.claim_failures == 0 && step_bound &&
                             result.output_verified;
    return result;
}

template <class S, int D>
struct PipelineResult {
    TransformResult<S, D> transform;
    /// Closed-form Theorem bound at the optimal alpha (float arithmetic).
    double formula_bound = 0;
    bool formula_satisfied = false;
    bool formula_vacuous = false;
    std::string formula_branch;  // "1a", "1b" or "2"
};

/// Full pipeline: measure eps from the input density, pick alpha, run the
/// transform, and evaluate the closed-form density bound of the theorem.
template <class S, int D>
PipelineResult<S, D> theorem_pipeline(const Arrangement<S, D>& input, Direction direction,
                                      const TransformOptions& opt = {}) {
    const bool symmetric = input.body().symmetric();
    const S density = periodic_density(input);
    double formula_bound = 0.0;
    bool formula_vacuous = false;
    std::string branch;
    if (direction == Direction::pack_to_cover) {
        const S eps = S(1) - density;
        const double eps_d = to_double(eps);
        S alpha;
        if (eps_d <= 0.0) {
            // exact tiling: any admissible alpha works, the formula bound is vacuous
            alpha = S(1) / S(2 * D);
            formula_vacuous = true;
            formula_bound = 1.0;
            branch = "1a";
        } else {
            alpha = detail::select_alpha<S>(eps_d, D, !symmetric);
            bool branch_a = symmetric;
            if (!branch_a) {
                if constexpr (ScalarTraits<S>::is_exact) {
                    branch_a = eps <= Rational(1, pow_int(BigInt(D), D + 1));
                } else {
                    branch_a = eps_d <= std::pow(static_cast<double>(D), -(D + 1.0));
                }
            }
            if (branch_a) {
                branch = "1a";
                formula_bound = std::pow(1.0 + std::pow(eps_d, 1.0 / (D + 1)), D + 1);
            } else {
                branch = "1b";
                formula_bound = (1.0 + eps_d * std::pow(static_cast<double>(D), D)) *
                                std::pow(1.0 + 1.0 / D, D);
            }
        }
        PipelineResult<S, D> out{pack_to_cover(input, alpha, opt), formula_bound, false,
                                 formula_vacuous, std::move(branch)};
        out.formula_satisfied = to_double(out.transform.density_after) < out.formula_bound;
        return out;
    }
    const S eps = density - S(1);
    const double eps_d = to_double(eps);
    S alpha;
    branch = "2";
    if (eps_d <= 0.0) {
        alpha = S(1) / S(2 * D);
        formula_vacuous = true;
        formula_bound = 1.0;
    } else if (eps_d >= 1.0) {
        // the theorem presumes eps < 1; run anyway with a documented alpha
        alpha = S(1) / S(2);
        formula_vacuous = true;
        formula_bound = 0.0;
    } else {
        // no 1/d clamp here: the overlap-removal argument admits any alpha in (0,1)
        alpha = detail::select_alpha<S>(eps_d, D, false);
        formula_bound = std::pow(1.0 - std::pow(eps_d, 1.0 / (D + 1)), D + 1);
    }
    PipelineResult<S, D> out{cover_to_pack(input, alpha, opt), formula_bound, false,
                             formula_vacuous, std::move(branch)};
    out.formula_satisfied = to_double(out.transform.density_after) > out.formula_bound;
    return out;
}

}  // namespace packcov
