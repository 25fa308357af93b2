#include "wqte/quantile.hpp"

#include <algorithm>
#include <numeric>

#include "wqte/errors.hpp"

namespace wqte {

double weighted_quantile(std::span<const double> values, std::span<const double> weights,
                         double target_mass) {
    if (values.size() != weights.size()) {
        throw ConfigError("weighted_quantile: values/weights size mismatch");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ConfigError("weighted_quantile: negative weight");
        total += w;
    }
    if (total <= 0.0) throw EmptyArmError("weighted_quantile: all weights are zero");
    if (!(target_mass > 0.0 && target_mass <= total)) {
        throw ConfigError("weighted_quantile: target mass outside (0, total weight]");
    }

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    double cum = 0.0;
    for (std::size_t k = 0; k < order.size();) {
        const double v = values[order[k]];
        // pool every weight tied at v before testing the threshold
        while (k < order.size() && values[order[k]] == v) {
            cum += weights[order[k]];
            ++k;
        }
        if (cum >= target_mass) return v;
    }
    return values[order.back()];  // reachable only through rounding in the prefix sums
}

SortedArm::SortedArm(const std::vector<std::size_t>& record_indices,
                     std::span<const double> values) {
    order_ = record_indices;
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    sorted_values_.resize(order_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) sorted_values_[k] = values[order_[k]];
}

double SortedArm::total_weight(std::span<const double> omega) const {
    double total = 0.0;
    for (std::size_t idx : order_) total += omega[idx];
    return total;
}

SortedArm::Result SortedArm::quantile(std::span<const double> omega, double target_mass) const {
    if (order_.empty()) throw EmptyArmError("quantile of an empty arm");
    Result res;
    for (std::size_t idx : order_) {
        res.total += omega[idx];
        res.max_weight = std::max(res.max_weight, omega[idx]);
    }
    if (res.total <= 0.0) throw EmptyArmError("arm total weight is zero");
    if (!(target_mass > 0.0 && target_mass <= res.total)) {
        throw ConfigError("quantile target mass outside (0, arm total]");
    }

    double cum = 0.0;
    for (std::size_t k = 0; k < order_.size();) {
        const double v = sorted_values_[k];
        const double below = cum;
        while (k < order_.size() && sorted_values_[k] == v) {
            cum += omega[order_[k]];
            ++k;
        }
        if (cum >= target_mass) {
            res.value = v;
            res.cum_below = below;
            return res;
        }
    }
    res.value = sorted_values_.back();
    res.cum_below = cum;
    return res;
}

}  // namespace wqte
