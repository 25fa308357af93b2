#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wqte {

/// One study unit. The outcome is known only when it was initially observed
/// (r = 1) or recovered by double-sampling (s = 1); otherwise y is empty.
struct ObservedRecord {
    std::optional<double> y;
    int z = 0;               ///< treatment arm, 0 or 1
    std::vector<double> x;   ///< covariates, dataset-wide dimension
    int r = 0;               ///< initially observed
    int s = 0;               ///< double-sampled (only meaningful when r = 0)
};

struct Dataset {
    std::vector<ObservedRecord> records;
    std::size_t p = 0;  ///< covariate dimension
    std::vector<std::string> column_names;  ///< optional labels for x columns

    std::size_t size() const { return records.size(); }
};

/// Strictly increasing quantile levels inside (0, 1).
class QuantileGrid {
public:
    explicit QuantileGrid(std::vector<double> taus);
    static QuantileGrid regular(double start, double stop, double step);

    const std::vector<double>& taus() const { return taus_; }
    std::size_t size() const { return taus_.size(); }
    double operator[](std::size_t i) const { return taus_[i]; }

private:
    std::vector<double> taus_;
};

/// Target-population weighting: g(x) = 1 (population QTE) or g(x) = e(x)
/// (QTE among the treated).
enum class GKind { population, treated };

struct GSpec {
    GKind kind = GKind::population;
};

enum class EstimatorVariant {
    I_full,            ///< all outcomes available, weight = W^g
    II_complete_case,  ///< initially observed units only
    III_ds_known_e,    ///< double-sampling weights, propensity known
    IV_ds_estimated,   ///< double-sampling weights, propensity estimated
    V_mar,             ///< initially observed units reweighted by 1/pi(z,x)
};

std::string to_string(EstimatorVariant v);
EstimatorVariant variant_from_string(const std::string& tag);

std::string to_string(GKind g);
GKind gkind_from_string(const std::string& tag);

/// One invariant violation found by validate_dataset.
struct ValidationIssue {
    std::size_t record_index;  ///< index into records, or npos for dataset-level issues
    std::string message;

    static constexpr std::size_t dataset_level = static_cast<std::size_t>(-1);
};

/// Pure diagnostic: lists every violation of the record/dataset invariants.
/// An empty report means the dataset is valid.
std::vector<ValidationIssue> validate_dataset(const Dataset& d);

/// Throws ConfigError with the first violation if the dataset is invalid.
void require_valid(const Dataset& d);

}  // namespace wqte
