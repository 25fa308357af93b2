#include "wqte/estimator.hpp"

#include <cmath>

#include "wqte/errors.hpp"

namespace wqte {

UnitWeights compute_weights(const Dataset& d, EstimatorVariant variant, const GSpec& g,
                            const Nuisances& nuisances) {
    UnitWeights out;
    out.variant = variant;
    out.g = g;
    out.omega.resize(d.size());
    out.components.resize(d.size());

    const bool uses_eta = variant == EstimatorVariant::III_ds_known_e ||
                          variant == EstimatorVariant::IV_ds_estimated;
    if (variant == EstimatorVariant::V_mar && !nuisances.pi) {
        throw ConfigError("variant V requires a fitted observance model pi(z,x)");
    }

    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& rec = d.records[i];
        auto& comp = out.components[i];

        const double e_raw = nuisances.propensity_value(rec, variant);
        if (!(e_raw > 0.0 && e_raw < 1.0)) {
            throw PositivityError("propensity " + std::to_string(e_raw) + " at record " +
                                  std::to_string(i) + " is not inside (0,1)");
        }
        const double e = clip_probability(e_raw);
        comp.e_value = e_raw;
        comp.g_value = g.kind == GKind::population ? 1.0 : e;

        double factor = 0.0;
        double aux = 0.0;
        switch (variant) {
            case EstimatorVariant::I_full:
            case EstimatorVariant::II_complete_case:
                factor = rec.r;
                break;
            case EstimatorVariant::III_ds_known_e:
            case EstimatorVariant::IV_ds_estimated:
                if (rec.r == 1) {
                    factor = 1.0;
                } else if (rec.s == 1) {
                    if (!nuisances.eta) {
                        throw ConfigError("variant " + to_string(variant) +
                                          " requires a double-sampling model");
                    }
                    aux = nuisances.eta->prob(rec);
                    if (!(aux > 0.0)) {
                        throw PositivityError("double-sampling probability " +
                                              std::to_string(aux) + " at record " +
                                              std::to_string(i) + " is not positive");
                    }
                    factor = 1.0 / clip_probability(aux);
                }
                break;
            case EstimatorVariant::V_mar:
                if (rec.r == 1) {
                    aux = nuisances.pi->predict(rec);
                    factor = 1.0 / clip_probability(aux);
                }
                break;
        }
        comp.eta_or_pi_value = aux;
        comp.observance_factor = factor;

        const double zf = static_cast<double>(rec.z);
        const double w_g = comp.g_value * zf / e + comp.g_value * (1.0 - zf) / (1.0 - e);
        out.omega[i] = factor * w_g;
    }
    (void)uses_eta;
    return out;
}

namespace {

struct ArmSplit {
    std::vector<double> values;  ///< per record; 0 when y is absent
    SortedArm arm0;
    SortedArm arm1;
};

ArmSplit split_arms(const Dataset& d, const UnitWeights& w) {
    ArmSplit sp;
    sp.values.assign(d.size(), 0.0);
    std::vector<std::size_t> idx0;
    std::vector<std::size_t> idx1;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& rec = d.records[i];
        if (!rec.y.has_value()) {
            if (w.omega[i] != 0.0) {
                throw ConfigError("record " + std::to_string(i) +
                                  " has positive weight but no outcome");
            }
            continue;
        }
        sp.values[i] = *rec.y;
        (rec.z == 0 ? idx0 : idx1).push_back(i);
    }
    sp.arm0 = SortedArm(idx0, sp.values);
    sp.arm1 = SortedArm(idx1, sp.values);
    return sp;
}

}  // namespace

WqteFit estimate_wqte_with_weights(const Dataset& d, UnitWeights weights,
                                   const QuantileGrid& grid) {
    if (weights.omega.size() != d.size()) {
        throw ConfigError("weights do not match the dataset");
    }
    const ArmSplit sp = split_arms(d, weights);
    if (sp.arm0.empty() || sp.arm1.empty()) {
        throw EmptyArmError("an arm has no observed outcomes");
    }
    const double total0 = sp.arm0.total_weight(weights.omega);
    const double total1 = sp.arm1.total_weight(weights.omega);
    if (!(total0 > 0.0) || !(total1 > 0.0)) {
        throw EmptyArmError("an arm has zero total weight");
    }
    const double total = total0 + total1;

    WqteFit fit{grid, {}, {}, {}, UnitWeights{}, weights.variant};
    fit.beta0.reserve(grid.size());
    fit.beta.reserve(grid.size());
    fit.residuals.reserve(grid.size());
    for (double tau : grid.taus()) {
        const auto q0 = sp.arm0.quantile(weights.omega, tau * total0);
        const auto q1 = sp.arm1.quantile(weights.omega, tau * total1);
        fit.beta0.push_back(q0.value);
        fit.beta.push_back(q1.value - q0.value);
        // estimating-equation value at the solution with the strict indicator:
        // cumulative weight strictly below the fitted quantile, against tau.
        fit.residuals.push_back({(q0.cum_below - tau * total0) / total,
                                 (q1.cum_below - tau * total1) / total});
    }
    fit.weights = std::move(weights);
    return fit;
}

WqteFit estimate_wqte(const Dataset& d, EstimatorVariant variant, const GSpec& g,
                      const Nuisances& nuisances, const QuantileGrid& grid) {
    return estimate_wqte_with_weights(d, compute_weights(d, variant, g, nuisances), grid);
}

std::array<double, 2> estimating_equation_value(const Dataset& d, const UnitWeights& w,
                                                double tau, double beta0, double beta) {
    double total = 0.0;
    std::array<double, 2> sums{0.0, 0.0};
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double omega = w.omega[i];
        if (omega == 0.0) continue;
        total += omega;
        const auto& rec = d.records[i];
        const double q = beta0 + beta * rec.z;
        const double ind = (*rec.y < q) ? 1.0 : 0.0;
        sums[static_cast<std::size_t>(rec.z)] += omega * (ind - tau);
    }
    if (total <= 0.0) throw EmptyArmError("all weights are zero");
    return {sums[0] / total, sums[1] / total};
}

std::array<double, 2> estimating_equation_residual(const WqteFit& fit, double tau) {
    for (std::size_t k = 0; k < fit.grid.size(); ++k) {
        if (fit.grid[k] == tau) return fit.residuals[k];
    }
    throw ConfigError("tau " + std::to_string(tau) + " is not on the fitted grid");
}

}  // namespace wqte
