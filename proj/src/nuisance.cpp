#include "wqte/nuisance.hpp"

#include <cmath>
#include <sstream>

#include "wqte/errors.hpp"

namespace wqte {

std::size_t StratumSpec::cell_of(const ObservedRecord& rec) const {
    std::size_t cell = static_cast<std::size_t>(rec.z);
    for (const auto& [col, threshold] : cuts) {
        cell = (cell << 1) | (rec.x[col] >= threshold ? 1u : 0u);
    }
    return cell;
}

std::string StratumSpec::cell_label(std::size_t cell) const {
    std::ostringstream os;
    const std::size_t bits = cuts.size();
    os << "z=" << ((cell >> bits) & 1u);
    for (std::size_t i = 0; i < bits; ++i) {
        const auto& [col, threshold] = cuts[i];
        const bool hi = (cell >> (bits - 1 - i)) & 1u;
        os << ",x" << (col + 1) << (hi ? ">=" : "<") << threshold;
    }
    return os.str();
}

double StratumModel::prob(const ObservedRecord& rec) const {
    const std::size_t cell = spec.cell_of(rec);
    if (eligible[cell] == 0 || proportions[cell] <= 0.0) {
        throw PositivityError("double-sampling probability unavailable for stratum " +
                              spec.cell_label(cell));
    }
    return proportions[cell];
}

bool StratumModel::cell_is_interior(std::size_t cell) const {
    return eligible[cell] > 0 && proportions[cell] > 0.0 && proportions[cell] < 1.0;
}

double EtaModel::prob(const ObservedRecord& rec) const {
    if (kind == Kind::logistic) return logit->predict(rec);
    return strata->prob(rec);
}

double KnownPropensity::eval(const ObservedRecord& rec) const {
    double t = coef.at(0);
    for (std::size_t j = 0; j + 1 < coef.size(); ++j) t += coef[j + 1] * rec.x.at(j);
    return expit(t);
}

double Nuisances::propensity_value(const ObservedRecord& rec, EstimatorVariant v) const {
    if (v == EstimatorVariant::III_ds_known_e) {
        if (!true_e) throw ConfigError("variant III requires a known propensity");
        return true_e->eval(rec);
    }
    if (!propensity) throw ConfigError("variant " + to_string(v) + " requires a fitted propensity");
    return propensity->predict(rec);
}

namespace {

LogisticModel fit_on_design(const Dataset& d, const LogisticDesign& design,
                            const std::vector<std::size_t>& rows,
                            const std::vector<double>& labels, const IrlsOptions& opts) {
    const std::size_t n = rows.size();
    const std::size_t p = design.dim();
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    std::vector<std::string> names(p);
    for (std::size_t j = 0; j < p; ++j) names[j] = design.column_name(j);
    Eigen::VectorXd row(p);
    for (std::size_t i = 0; i < n; ++i) {
        design.fill_row(d.records[rows[i]], row.data());
        X.row(i) = row;
        y[i] = labels[i];
    }
    LogisticModel m = fit_logistic(X, y, opts, names);
    return LogisticModel(m.coefficients(), design, m.converged(), m.iterations());
}

}  // namespace

LogisticModel fit_propensity(const Dataset& d, const IrlsOptions& opts) {
    std::vector<std::size_t> rows(d.size());
    std::vector<double> labels(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        rows[i] = i;
        labels[i] = static_cast<double>(d.records[i].z);
    }
    return fit_on_design(d, LogisticDesign::all_covariates(d.p, /*include_z=*/false), rows,
                         labels, opts);
}

EtaModel fit_double_sampling(const Dataset& d, const EtaFitOptions& opts) {
    std::vector<std::size_t> rows;
    std::vector<double> labels;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.records[i].r == 0) {
            rows.push_back(i);
            labels.push_back(static_cast<double>(d.records[i].s));
        }
    }
    if (rows.empty()) {
        throw NothingToFitError("double-sampling fit: no records with r=0");
    }

    EtaModel model;
    if (opts.design == EtaDesign::logistic) {
        model.kind = EtaModel::Kind::logistic;
        LogisticDesign design = opts.logistic_design;
        if (design.dim() == 1 && design.x_cols.empty() && !design.include_z) {
            design = LogisticDesign::all_covariates(d.p, /*include_z=*/true);
        }
        model.logit = fit_on_design(d, design, rows, labels, opts.irls);
        return model;
    }

    StratumModel sm;
    sm.spec = opts.strata;
    const std::size_t cells = sm.spec.n_cells();
    sm.selected.assign(cells, 0);
    sm.eligible.assign(cells, 0);
    sm.proportions.assign(cells, 0.0);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::size_t cell = sm.spec.cell_of(d.records[rows[k]]);
        sm.eligible[cell] += 1;
        sm.selected[cell] += static_cast<std::int64_t>(labels[k]);
    }
    for (std::size_t c = 0; c < cells; ++c) {
        if (sm.eligible[c] > 0) {
            sm.proportions[c] =
                static_cast<double>(sm.selected[c]) / static_cast<double>(sm.eligible[c]);
            if (!opts.allow_boundary_proportions &&
                (sm.proportions[c] == 0.0 || sm.proportions[c] == 1.0)) {
                throw PositivityError(
                    "double-sampling proportion is " + std::to_string(sm.proportions[c]) +
                    " in stratum " + sm.spec.cell_label(c) +
                    "; sampling probabilities must lie strictly inside (0,1)");
            }
        }
    }
    model.kind = EtaModel::Kind::saturated;
    model.strata = std::move(sm);
    return model;
}

LogisticModel fit_mar_observance(const Dataset& d, const IrlsOptions& opts) {
    std::vector<std::size_t> rows(d.size());
    std::vector<double> labels(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        rows[i] = i;
        labels[i] = static_cast<double>(d.records[i].r);
    }
    return fit_on_design(d, LogisticDesign::all_covariates(d.p, /*include_z=*/true), rows,
                         labels, opts);
}

PositivityReport positivity_diagnostics(const std::vector<double>& probs, double c) {
    if (!(c > 0.0 && c < 0.5)) throw ConfigError("positivity threshold must lie in (0, 0.5)");
    PositivityReport rep;
    rep.c = c;
    rep.n_checked = probs.size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = probs[i];
        rep.min_prob = std::min(rep.min_prob, p);
        rep.max_prob = std::max(rep.max_prob, p);
        if (p < c || p > 1.0 - c) rep.flagged.push_back(i);
    }
    return rep;
}

PositivityReport positivity_diagnostics(const LogisticModel& model, const Dataset& d, double c) {
    std::vector<double> probs(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) probs[i] = model.predict(d.records[i]);
    return positivity_diagnostics(probs, c);
}

Nuisances fit_nuisances(const Dataset& d, EstimatorVariant variant,
                        const std::optional<KnownPropensity>& true_e,
                        const EtaFitOptions& eta_opts, const IrlsOptions& irls) {
    Nuisances out;
    const bool needs_eta = variant == EstimatorVariant::III_ds_known_e ||
                           variant == EstimatorVariant::IV_ds_estimated;

    if (variant == EstimatorVariant::III_ds_known_e) {
        if (!true_e) throw ConfigError("variant III requires known propensity coefficients");
        out.true_e = true_e;
    } else {
        out.propensity = fit_propensity(d, irls);
    }

    if (needs_eta) {
        bool any_missing = false;
        for (const auto& rec : d.records) {
            if (rec.r == 0) {
                any_missing = true;
                break;
            }
        }
        if (any_missing) out.eta = fit_double_sampling(d, eta_opts);
    }

    if (variant == EstimatorVariant::V_mar) {
        out.pi = fit_mar_observance(d, irls);
    }
    return out;
}

}  // namespace wqte
