#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "wqte/types.hpp"

namespace wqte {

/// Which inputs enter a logistic design, in order: intercept, optionally z,
/// then the listed covariate columns.
struct LogisticDesign {
    bool include_z = false;
    std::vector<std::size_t> x_cols;  ///< covariate indices, in design order

    std::size_t dim() const { return 1 + (include_z ? 1 : 0) + x_cols.size(); }
    void fill_row(const ObservedRecord& rec, double* out) const;
    std::string column_name(std::size_t j) const;

    static LogisticDesign all_covariates(std::size_t p, bool include_z);
};

struct IrlsOptions {
    double score_tol = 1e-8;  ///< on the max-norm of the score sum
    int max_iter = 100;
    int max_halvings = 30;
    double separation_cap = 30.0;  ///< |coef| beyond this with a non-zero score => separation
};

/// Maximum-likelihood logistic model fitted by Newton/IRLS with step-halving.
class LogisticModel {
public:
    LogisticModel() = default;
    LogisticModel(Eigen::VectorXd coefficients, LogisticDesign design, bool converged,
                  int iterations)
        : coef_(std::move(coefficients)), design_(std::move(design)),
          converged_(converged), iterations_(iterations) {}

    const Eigen::VectorXd& coefficients() const { return coef_; }
    const LogisticDesign& design() const { return design_; }
    bool converged() const { return converged_; }
    int iterations() const { return iterations_; }

    /// Fitted probability for a record; strictly inside (0, 1).
    double predict(const ObservedRecord& rec) const;
    double predict_row(const Eigen::VectorXd& row) const;

private:
    Eigen::VectorXd coef_;
    LogisticDesign design_;
    bool converged_ = false;
    int iterations_ = 0;
};

/// expit with the result clamped into the open unit interval.
double expit(double t);

/// Probability clipped away from 0/1 for use inside inverse weights.
double clip_probability(double p, double eps = 1e-6);

/// IRLS fit of labels on a raw design matrix (first column need not be an
/// intercept; callers that want one include it in `features`).
/// `column_names` is used only in error messages and may be empty.
LogisticModel fit_logistic(const Eigen::MatrixXd& features, const Eigen::VectorXd& labels,
                           const IrlsOptions& opts = {},
                           const std::vector<std::string>& column_names = {});

/// Log-likelihood of a logistic model at linear predictors `eta`.
double logistic_loglik(const Eigen::VectorXd& eta, const Eigen::VectorXd& labels);

}  // namespace wqte
