#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edms/model.hpp"

namespace edms {

/// Metric used for performance weighting. MAE is the production default; the
/// rest exist for experimentation.
enum class WeightMetric { Mae, Mse, Rmse, Mape };

std::string weight_metric_name(WeightMetric m);
WeightMetric weight_metric_from_name(const std::string& name);

/// Ordered (label, value) pairs; member order is the configuration order.
using KeyedValues = std::vector<std::pair<std::string, double>>;
using KeyedForecasts = std::vector<std::pair<std::string, Vector>>;

/// Mean absolute error between a forecast and the held-out test window.
double compute_member_mae(const Vector& forecast, const Vector& test);
double compute_member_metric(const Vector& forecast, const Vector& test, WeightMetric metric);

/// Held-out errors per member, in member order.
struct PerformanceReport {
    KeyedValues maes;
    int horizon_used = 0;
};

/// Inverse-error weights: nonnegative, summing to one, keys matching the
/// report they were computed from.
struct WeightVector {
    KeyedValues weights;
};

/// w_i = mae'_i / sum(mae'), mae'_i = 1 - mae_i / sum(mae). All-perfect
/// reports (every error zero) fall back to equal weights.
WeightVector compute_weights(const PerformanceReport& report);

/// Weighted arithmetic mean of member forecasts (labels must match exactly).
Vector combine(const KeyedForecasts& forecasts, const WeightVector& weights);

/// One ensemble member: a model kind under a run-unique label.
struct MemberSpec {
    std::string label;
    ForecasterKind kind = ForecasterKind::Linear;
};

std::vector<MemberSpec> default_members();

struct EnsembleConfig {
    std::vector<MemberSpec> members = default_members();
    double train_fraction = 0.8;
    WeightMetric metric = WeightMetric::Mae;
    MemberConfig member_config;
};

/// Pre-fitted models injected into a round (global LSTM mode): the entry
/// replaces both fits for its label.
struct ExternalMember {
    std::string label;
    TrainedModel performance_model;
    TrainedModel final_model;
};

struct RoundSeeds {
    std::uint64_t performance_seed = 0;
    std::uint64_t final_seed = 0;
};

struct RoundResult {
    Vector combined;
    WeightVector weights;
    PerformanceReport report;
    KeyedForecasts member_forecasts;       // final 100%-fit forecasts, length = horizon
    KeyedForecasts member_perf_forecasts;  // test-window forecasts behind the MAEs
    Index fit_length = 0;                  // series length at fit time
};

/// The two-pass split protocol: fit members on the 80% prefix, score on the
/// 20% suffix, weight by inverted errors, refit on 100% and combine the
/// h-step forecasts with those weights.
RoundResult ensemble_round(const Series& series, const EnsembleConfig& config, int horizon,
                           const RoundSeeds& seeds = {},
                           const std::vector<ExternalMember>* external = nullptr);

}  // namespace edms
