#include "wqte/types.hpp"

#include <cmath>
#include <sstream>

#include "wqte/errors.hpp"

namespace wqte {

QuantileGrid::QuantileGrid(std::vector<double> taus) : taus_(std::move(taus)) {
    if (taus_.empty()) throw ConfigError("quantile grid is empty");
    double prev = 0.0;
    for (double t : taus_) {
        if (!(t > 0.0 && t < 1.0)) {
            throw ConfigError("quantile level " + std::to_string(t) + " outside (0,1)");
        }
        if (t <= prev) {
            throw ConfigError("quantile levels must be strictly increasing");
        }
        prev = t;
    }
}

QuantileGrid QuantileGrid::regular(double start, double stop, double step) {
    if (step <= 0.0) throw ConfigError("grid step must be positive");
    std::vector<double> taus;
    // integer stepping avoids accumulation drift on long grids
    const long k_max = std::lround((stop - start) / step);
    for (long k = 0; k <= k_max; ++k) {
        double t = start + static_cast<double>(k) * step;
        if (t > stop + 1e-12) break;
        taus.push_back(t);
    }
    return QuantileGrid(std::move(taus));
}

std::string to_string(EstimatorVariant v) {
    switch (v) {
        case EstimatorVariant::I_full: return "I";
        case EstimatorVariant::II_complete_case: return "II";
        case EstimatorVariant::III_ds_known_e: return "III";
        case EstimatorVariant::IV_ds_estimated: return "IV";
        case EstimatorVariant::V_mar: return "V";
    }
    return "?";
}

EstimatorVariant variant_from_string(const std::string& tag) {
    if (tag == "I") return EstimatorVariant::I_full;
    if (tag == "II") return EstimatorVariant::II_complete_case;
    if (tag == "III") return EstimatorVariant::III_ds_known_e;
    if (tag == "IV") return EstimatorVariant::IV_ds_estimated;
    if (tag == "V") return EstimatorVariant::V_mar;
    throw ConfigError("unknown estimator variant '" + tag + "'");
}

std::string to_string(GKind g) {
    return g == GKind::population ? "population" : "treated";
}

GKind gkind_from_string(const std::string& tag) {
    if (tag == "population") return GKind::population;
    if (tag == "treated") return GKind::treated;
    throw ConfigError("unknown g kind '" + tag + "'");
}

std::vector<ValidationIssue> validate_dataset(const Dataset& d) {
    std::vector<ValidationIssue> issues;
    auto add = [&](std::size_t i, std::string msg) {
        issues.push_back({i, std::move(msg)});
    };

    if (d.records.empty()) {
        add(ValidationIssue::dataset_level, "dataset is empty");
        return issues;
    }

    bool arm0_observed = false;
    bool arm1_observed = false;
    for (std::size_t i = 0; i < d.records.size(); ++i) {
        const auto& rec = d.records[i];
        if (rec.z != 0 && rec.z != 1) add(i, "z must be 0 or 1");
        if (rec.r != 0 && rec.r != 1) add(i, "r must be 0 or 1");
        if (rec.s != 0 && rec.s != 1) add(i, "s must be 0 or 1");
        if (rec.s == 1 && rec.r == 1) add(i, "S=1 requires R=0");
        const bool should_have_y = (rec.r + rec.s == 1);
        if (should_have_y && !rec.y.has_value()) add(i, "y must be present when r+s=1");
        if (!should_have_y && rec.y.has_value()) add(i, "y must be absent when r+s=0");
        if (rec.y && !std::isfinite(*rec.y)) add(i, "y must be finite");
        if (rec.x.size() != d.p) {
            std::ostringstream os;
            os << "x has dimension " << rec.x.size() << ", expected " << d.p;
            add(i, os.str());
        }
        for (double v : rec.x) {
            if (!std::isfinite(v)) {
                add(i, "covariates must be finite");
                break;
            }
        }
        if (rec.y.has_value()) {
            if (rec.z == 0) arm0_observed = true;
            if (rec.z == 1) arm1_observed = true;
        }
    }
    if (!arm0_observed) add(ValidationIssue::dataset_level, "no observed outcomes in arm z=0");
    if (!arm1_observed) add(ValidationIssue::dataset_level, "no observed outcomes in arm z=1");
    return issues;
}

void require_valid(const Dataset& d) {
    auto issues = validate_dataset(d);
    if (issues.empty()) return;
    std::ostringstream os;
    os << "invalid dataset: " << issues.front().message;
    if (issues.front().record_index != ValidationIssue::dataset_level) {
        os << " (record " << issues.front().record_index << ")";
    }
    if (issues.size() > 1) os << " and " << issues.size() - 1 << " more issue(s)";
    throw ConfigError(os.str());
}

}  // namespace wqte
