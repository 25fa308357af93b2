#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "wqte/nuisance.hpp"
#include "wqte/quantile.hpp"
#include "wqte/types.hpp"

namespace wqte {

/// Per-record inverse-probability weights and the factors they were built
/// from. Records whose outcome is unavailable carry weight zero.
struct UnitWeights {
    struct Components {
        double g_value = 0.0;
        double e_value = 0.0;
        double eta_or_pi_value = 0.0;   ///< 0 when the variant uses neither
        double observance_factor = 0.0;
    };

    std::vector<double> omega;
    std::vector<Components> components;
    EstimatorVariant variant = EstimatorVariant::I_full;
    GSpec g;
};

/// Point estimates over a quantile grid plus the solver's bookkeeping.
struct WqteFit {
    QuantileGrid grid;
    std::vector<double> beta0;  ///< per tau, quantile of the control arm
    std::vector<double> beta;   ///< per tau, the treatment effect
    /// Estimating-equation values at the solution, one per arm, normalized by
    /// total weight; each is bounded by (arm max weight)/(total weight).
    std::vector<std::array<double, 2>> residuals;
    UnitWeights weights;
    EstimatorVariant variant = EstimatorVariant::I_full;
};

/// omega = observance_factor * W^g, where W^g = g z/e + g (1-z)/(1-e) and the
/// observance factor is r (I, II), r + s(1-r)/eta (III, IV) or r/pi (V).
UnitWeights compute_weights(const Dataset& d, EstimatorVariant variant, const GSpec& g,
                            const Nuisances& nuisances);

/// Solves the weighted estimating equations exactly: for each tau the two
/// components decouple by arm, so beta0 and beta0+beta are per-arm weighted
/// quantiles at mass tau times the arm's total weight.
WqteFit estimate_wqte(const Dataset& d, EstimatorVariant variant, const GSpec& g,
                      const Nuisances& nuisances, const QuantileGrid& grid);

/// As above but with precomputed weights (used by the bootstrap paths).
WqteFit estimate_wqte_with_weights(const Dataset& d, UnitWeights weights,
                                   const QuantileGrid& grid);

/// Empirical estimating-equation value at arbitrary (beta0, beta), one
/// component per arm, normalized by total weight. Uses the strict indicator
/// 1{y < q}.
std::array<double, 2> estimating_equation_value(const Dataset& d, const UnitWeights& w,
                                                double tau, double beta0, double beta);

/// Residual recorded in the fit for a grid level (exact match required).
std::array<double, 2> estimating_equation_residual(const WqteFit& fit, double tau);

}  // namespace wqte
