#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wqte {

/// Smallest value v in the list with total weight of {values <= v} at least
/// `target_mass`. Weights tied at the same value are pooled before the scan,
/// so the result does not depend on input order.
///
/// Requires at least one positive weight and 0 < target_mass <= sum(weights).
double weighted_quantile(std::span<const double> values, std::span<const double> weights,
                         double target_mass);

/// One treatment arm's observed outcomes, sorted once so that repeated
/// quantile queries under changing weights cost a single linear scan.
class SortedArm {
public:
    SortedArm() = default;
    /// `record_indices` selects the arm's records; `values[i]` is record i's
    /// outcome (entries for other records are ignored).
    SortedArm(const std::vector<std::size_t>& record_indices, std::span<const double> values);

    /// Quantile of the arm under per-record weights `omega` (indexed by record).
    /// Also reports the cumulative weight strictly below the returned value.
    struct Result {
        double value = 0.0;
        double cum_below = 0.0;    ///< weight of {y < value}
        double total = 0.0;        ///< arm total weight
        double max_weight = 0.0;   ///< largest single weight in the arm
    };
    Result quantile(std::span<const double> omega, double target_mass) const;

    double total_weight(std::span<const double> omega) const;
    bool empty() const { return order_.empty(); }
    const std::vector<std::size_t>& order() const { return order_; }

private:
    std::vector<std::size_t> order_;  ///< record indices, ascending by value
    std::vector<double> sorted_values_;
};

}  // namespace wqte
