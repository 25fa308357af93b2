#include "wqte/logistic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wqte/errors.hpp"

namespace wqte {

void LogisticDesign::fill_row(const ObservedRecord& rec, double* out) const {
    std::size_t j = 0;
    out[j++] = 1.0;
    if (include_z) out[j++] = static_cast<double>(rec.z);
    for (std::size_t c : x_cols) out[j++] = rec.x[c];
}

std::string LogisticDesign::column_name(std::size_t j) const {
    if (j == 0) return "(intercept)";
    if (include_z) {
        if (j == 1) return "z";
        return "x" + std::to_string(x_cols[j - 2] + 1);
    }
    return "x" + std::to_string(x_cols[j - 1] + 1);
}

LogisticDesign LogisticDesign::all_covariates(std::size_t p, bool include_z) {
    LogisticDesign d;
    d.include_z = include_z;
    d.x_cols.resize(p);
    for (std::size_t i = 0; i < p; ++i) d.x_cols[i] = i;
    return d;
}

double expit(double t) {
    double p;
    if (t >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-t));
    } else {
        const double e = std::exp(t);
        p = e / (1.0 + e);
    }
    const double lo = std::numeric_limits<double>::min();
    const double hi = std::nextafter(1.0, 0.0);
    return std::min(std::max(p, lo), hi);
}

double clip_probability(double p, double eps) {
    return std::min(std::max(p, eps), 1.0 - eps);
}

double LogisticModel::predict(const ObservedRecord& rec) const {
    Eigen::VectorXd row(design_.dim());
    design_.fill_row(rec, row.data());
    return predict_row(row);
}

double LogisticModel::predict_row(const Eigen::VectorXd& row) const {
    return expit(coef_.dot(row));
}

double logistic_loglik(const Eigen::VectorXd& eta, const Eigen::VectorXd& labels) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        // y*eta - log(1+exp(eta)), computed without overflow
        const double t = eta[i];
        const double softplus = t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
        ll += labels[i] * t - softplus;
    }
    return ll;
}

LogisticModel fit_logistic(const Eigen::MatrixXd& features, const Eigen::VectorXd& labels,
                           const IrlsOptions& opts, const std::vector<std::string>& column_names) {
    const Eigen::Index n = features.rows();
    const Eigen::Index p = features.cols();
    if (n == 0) throw NothingToFitError("logistic fit: no observations");
    if (labels.size() != n) throw ConfigError("logistic fit: labels/features size mismatch");

    auto name_of = [&](Eigen::Index j) {
        if (static_cast<std::size_t>(j) < column_names.size()) return column_names[j];
        return "column " + std::to_string(j + 1);
    };

    const double ymin = labels.minCoeff();
    const double ymax = labels.maxCoeff();
    if (ymin == ymax) {
        throw SeparationError("logistic fit: labels are all " +
                              std::to_string(static_cast<int>(ymin)) + ", one-class fit");
    }

    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(features);
        if (qr.rank() < p) {
            // the first dependent column is the one the pivoting pushed last
            const Eigen::Index bad = qr.colsPermutation().indices()(p - 1);
            throw SingularDesignError("logistic fit: design is rank-deficient (" +
                                      name_of(bad) + " is collinear)");
        }
    }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
    double ll = logistic_loglik(eta, labels);
    bool converged = false;
    int iter = 0;

    for (iter = 1; iter <= opts.max_iter; ++iter) {
        Eigen::VectorXd prob(n);
        for (Eigen::Index i = 0; i < n; ++i) prob[i] = expit(eta[i]);
        const Eigen::VectorXd score = features.transpose() * (labels - prob);
        if (score.lpNorm<Eigen::Infinity>() <= opts.score_tol) {
            converged = true;
            break;
        }
        if (beta.lpNorm<Eigen::Infinity>() > opts.separation_cap) {
            Eigen::Index worst;
            beta.cwiseAbs().maxCoeff(&worst);
            throw SeparationError("logistic fit: complete separation detected (coefficient of " +
                                  name_of(worst) + " diverged)");
        }

        Eigen::VectorXd w = prob.array() * (1.0 - prob.array());
        Eigen::MatrixXd hessian = features.transpose() * w.asDiagonal() * features;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian);
        if (ldlt.info() != Eigen::Success) {
            throw SingularDesignError("logistic fit: information matrix is singular");
        }
        const Eigen::VectorXd delta = ldlt.solve(score);

        double step = 1.0;
        Eigen::VectorXd beta_new;
        Eigen::VectorXd eta_new;
        double ll_new;
        int halvings = 0;
        while (true) {
            beta_new = beta + step * delta;
            eta_new = features * beta_new;
            ll_new = logistic_loglik(eta_new, labels);
            if (ll_new >= ll || halvings >= opts.max_halvings) break;
            step *= 0.5;
            ++halvings;
        }
        beta = std::move(beta_new);
        eta = std::move(eta_new);
        ll = ll_new;
    }

    if (!converged) {
        // one more score check at the final iterate
        Eigen::VectorXd prob(n);
        for (Eigen::Index i = 0; i < n; ++i) prob[i] = expit(eta[i]);
        const Eigen::VectorXd score = features.transpose() * (labels - prob);
        if (score.lpNorm<Eigen::Infinity>() <= opts.score_tol) {
            converged = true;
        } else if (beta.lpNorm<Eigen::Infinity>() > opts.separation_cap) {
            Eigen::Index worst;
            beta.cwiseAbs().maxCoeff(&worst);
            throw SeparationError("logistic fit: complete separation detected (coefficient of " +
                                  name_of(worst) + " diverged)");
        }
    }

    return LogisticModel(std::move(beta), LogisticDesign{}, converged, iter);
}

}  // namespace wqte
