#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wqte/logistic.hpp"
#include "wqte/types.hpp"

namespace wqte {

/// Stratification rule: treatment arm crossed with covariates dichotomized at
/// fixed thresholds. Cell index packs z in the high bit, then one bit per cut.
struct StratumSpec {
    std::vector<std::pair<std::size_t, double>> cuts;  ///< (covariate index, threshold)

    std::size_t n_cells() const { return std::size_t{2} << cuts.size(); }
    std::size_t cell_of(const ObservedRecord& rec) const;
    std::string cell_label(std::size_t cell) const;
};

/// Empirical double-sampling proportions within strata of the r=0 subset.
struct StratumModel {
    StratumSpec spec;
    std::vector<std::int64_t> selected;   ///< per cell, count with s=1
    std::vector<std::int64_t> eligible;   ///< per cell, count with r=0
    std::vector<double> proportions;      ///< selected/eligible; 0 when eligible=0

    /// Sampling probability for a record's own stratum. Throws PositivityError
    /// if the stratum has no usable proportion (eligible = 0 or proportion 0).
    double prob(const ObservedRecord& rec) const;

    /// True when 0 < proportion < 1, i.e. the cell carries sampling randomness.
    bool cell_is_interior(std::size_t cell) const;
};

/// Double-sampling (or MAR-observance) probability model; either a logistic
/// regression or saturated stratum proportions.
struct EtaModel {
    enum class Kind { logistic, saturated };
    Kind kind = Kind::logistic;
    std::optional<LogisticModel> logit;
    std::optional<StratumModel> strata;

    double prob(const ObservedRecord& rec) const;
};

/// Propensity supplied as known logistic coefficients on (1, x) — the form
/// used when e(x) is treated as given rather than estimated.
struct KnownPropensity {
    std::vector<double> coef;  ///< intercept first, then one slope per covariate

    double eval(const ObservedRecord& rec) const;
};

/// The fitted (or supplied) probability models a variant needs.
struct Nuisances {
    std::optional<LogisticModel> propensity;  ///< e(x;gamma), variants I/II/IV/V
    std::optional<KnownPropensity> true_e;    ///< variant III
    std::optional<EtaModel> eta;              ///< variants III/IV; absent when no r=0 rows
    std::optional<LogisticModel> pi;          ///< pr(R=1|Z,X), variant V

    double propensity_value(const ObservedRecord& rec, EstimatorVariant v) const;
};

/// Logistic fit of z on (1, x) over all records.
LogisticModel fit_propensity(const Dataset& d, const IrlsOptions& opts = {});

enum class EtaDesign { logistic, saturated_strata };

struct EtaFitOptions {
    EtaDesign design = EtaDesign::logistic;
    LogisticDesign logistic_design;  ///< used when design == logistic; default 1+z+x
    StratumSpec strata;              ///< used when design == saturated_strata
    /// Accept strata whose realized proportion is 0 or 1 instead of failing.
    /// Boundary cells then carry no sampling randomness: proportion-1 cells
    /// weight their records by 1, proportion-0 cells must contain no s=1 record.
    bool allow_boundary_proportions = false;
    IrlsOptions irls;
};

/// Model for eta(z,x) = pr(S=1 | Z=z, X=x, R=0), fitted on the r=0 subset.
EtaModel fit_double_sampling(const Dataset& d, const EtaFitOptions& opts);

/// Logistic fit of r on (1, z, x) over all records (the MAR observance model).
LogisticModel fit_mar_observance(const Dataset& d, const IrlsOptions& opts = {});

/// Records whose fitted probability escapes [c, 1-c], with extremes.
struct PositivityReport {
    double c = 0.0;
    std::vector<std::size_t> flagged;  ///< record indices
    double min_prob = 1.0;
    double max_prob = 0.0;
    std::size_t n_checked = 0;

    bool clean() const { return flagged.empty(); }
};

/// Checks fitted probabilities (pre-clipping) for every record against
/// [c, 1-c]. `probs` must align with d.records.
PositivityReport positivity_diagnostics(const std::vector<double>& probs, double c);
PositivityReport positivity_diagnostics(const LogisticModel& model, const Dataset& d, double c);

/// Fits everything `variant` requires. `true_e` must be supplied for III.
/// For III/IV on data with no r=0 records the eta model is left empty.
Nuisances fit_nuisances(const Dataset& d, EstimatorVariant variant,
                        const std::optional<KnownPropensity>& true_e = std::nullopt,
                        const EtaFitOptions& eta_opts = {}, const IrlsOptions& irls = {});

}  // namespace wqte
