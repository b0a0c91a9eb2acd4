#pragma once

#include "packcov/arrangement.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace packcov {

/// Covering-density bound after hole filling. Branch "1a" applies to
/// centrally symmetric bodies or eps <= 1/d^{d+1}; branch "1b" otherwise.
struct CoverBound {
    double value = 0;
    std::string branch;  // "1a" or "1b"
};

inline CoverBound thm_cover_bound(double eps, int d, bool symmetric) {
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
    if (d < 2) throw ParameterError("dimension must be >= 2");
    const double threshold = std::pow(static_cast<double>(d), -(d + 1.0));
    if (symmetric || eps <= threshold) {
        return {std::pow(1.0 + std::pow(eps, 1.0 / (d + 1)), d + 1.0), "1a"};
    }
    return {(1.0 + eps * std::pow(static_cast<double>(d), d)) * std::pow(1.0 + 1.0 / d, d), "1b"};
}

/// Packing-density bound after overlap removal: (1 - eps^{1/(d+1)})^{d+1}.
inline double thm_pack_bound(double eps, int d) {
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
    if (d < 2) throw ParameterError("dimension must be >= 2");
    return std::pow(1.0 - std::pow(eps, 1.0 / (d + 1)), d + 1.0);
}

/// d ln d + d ln ln d + o_term; the o(d) term is the caller's to supply
/// (asymptotic omission, defaults to zero).
inline double ft_cover_bound(int d, double o_term = 0.0) {
    if (d < 3) throw ParameterError("the covering comparison needs d >= 3");
    return d * std::log(static_cast<double>(d)) + d * std::log(std::log(static_cast<double>(d))) +
           o_term;
}

/// c d / 2^d; the constant c is a required parameter.
inline double schmidt_pack_bound(int d, double c) {
    return c * d / std::pow(2.0, d);
}

/// c d / W(C)^d: the symmetric-body packing bound transferred through the
/// difference-body identity.
template <class S, int D>
double minkowski_transfer_bound(const ConvexBody<S, D>& body, double c) {
    if (!(c > 0)) throw ParameterError("the Schmidt constant must be positive");
    return c * D / std::pow(diff_ratio_W(body), D);
}

/// One crossover threshold: the eps (or excess) range where the greedy bound
/// beats a literature bound. Inapplicable when the inner expression is not positive.
struct CrossoverEntry {
    std::string name;
    double value = 0;
    bool applicable = false;
};

struct CrossoverReport {
    int d = 0;
    double c = 1;
    double W = 2;
    std::vector<CrossoverEntry> entries;
};

inline CrossoverReport crossover_report(int d, double c, bool symmetric, double W) {
    if (d < 3) throw ParameterError("crossover thresholds need d >= 3");
    if (!(c > 0)) throw ParameterError("the Schmidt constant must be positive");
    if (!(W >= 2)) throw ParameterError("W(C) is always >= 2");
    CrossoverReport rep{d, c, W, {}};
    const double dd = d;
    {
        double v = std::log(dd) / (std::exp(1.0) * std::pow(dd, dd - 1.0));
        rep.entries.push_back({"cover_vs_fejes_toth_general", v, v > 0});
    }
    {
        double inner = std::log(dd * std::log(dd) + dd * std::log(std::log(dd))) / (dd + 1.0);
        double v = std::pow(inner, dd + 1.0);
        rep.entries.push_back({"cover_vs_fejes_toth_symmetric", v, inner > 0 && symmetric});
    }
    {
        double inner = 0.5 - std::log(2.0 * c * dd) / (dd + 1.0);
        double v = std::pow(inner, dd + 1.0);
        rep.entries.push_back({"pack_vs_schmidt_symmetric", v, inner > 0 && symmetric});
    }
    {
        double inner = 1.0 - 1.0 / W - std::log(W * c * dd) / (dd + 1.0);
        double v = std::pow(inner, dd + 1.0);
        rep.entries.push_back({"pack_vs_schmidt_transferred", v, inner > 0});
    }
    return rep;
}

struct Comparison {
    std::string name;
    double value = 0;
    bool stronger = false;  // greedy bound beats this literature value
};

enum class ArrangementKind { packing, covering };

/// Density summary for a verified arrangement: measured density, effective
/// eps, the applicable theorem bound, and indicative literature comparisons.
struct DensityReport {
    double density = 0;
    ArrangementKind kind = ArrangementKind::packing;
    double epsilon_effective = 0;
    std::optional<double> theorem_bound;
    std::string bound_branch;
    std::vector<Comparison> comparisons;
};

template <class S, int D>
DensityReport make_density_report(const Arrangement<S, D>& arr, ArrangementKind kind,
                                  double schmidt_c) {
    DensityReport rep;
    rep.kind = kind;
    rep.density = to_double(periodic_density(arr));
    if (kind == ArrangementKind::packing) {
        // a dense packing promises an economical covering; compare that promise
        // against the general covering bound
        rep.epsilon_effective = 1.0 - rep.density;
        if (rep.epsilon_effective > 0 && rep.epsilon_effective < 1) {
            auto b = thm_cover_bound(rep.epsilon_effective, D, arr.body().symmetric());
            rep.theorem_bound = b.value;
            rep.bound_branch = b.branch;
            if (D >= 3) {
                double ft = ft_cover_bound(D);
                rep.comparisons.push_back({"fejes_toth_cover", ft, b.value < ft});
            }
        }
    } else {
        // an economical covering promises a dense packing; compare against the
        // Schmidt bound transferred through the difference body
        rep.epsilon_effective = rep.density - 1.0;
        if (rep.epsilon_effective > 0 && rep.epsilon_effective < 1) {
            double b = thm_pack_bound(rep.epsilon_effective, D);
            rep.theorem_bound = b;
            rep.bound_branch = "2";
            double lit = minkowski_transfer_bound(arr.body(), schmidt_c);
            rep.comparisons.push_back({"minkowski_schmidt_pack", lit, b > lit});
        }
    }
    return rep;
}

}  // namespace packcov
