#include "edms/ensemble.hpp"

#include <cmath>
#include <set>

namespace edms {

std::string weight_metric_name(WeightMetric m) {
    switch (m) {
        case WeightMetric::Mae: return "mae";
        case WeightMetric::Mse: return "mse";
        case WeightMetric::Rmse: return "rmse";
        case WeightMetric::Mape: return "mape";
    }
    return "mae";
}

WeightMetric weight_metric_from_name(const std::string& name) {
    if (name == "mae") return WeightMetric::Mae;
    if (name == "mse") return WeightMetric::Mse;
    if (name == "rmse") return WeightMetric::Rmse;
    if (name == "mape") return WeightMetric::Mape;
    throw ConfigError("unknown weighting metric '" + name + "'");
}

double compute_member_mae(const Vector& forecast, const Vector& test) {
    if (forecast.size() != test.size()) {
        throw LengthMismatch("forecast length " + std::to_string(forecast.size()) +
                             " != test length " + std::to_string(test.size()));
    }
    if (forecast.size() == 0) {
        throw EmptyInput("cannot score an empty forecast");
    }
    return (forecast - test).cwiseAbs().mean();
}

double compute_member_metric(const Vector& forecast, const Vector& test, WeightMetric metric) {
    if (forecast.size() != test.size()) {
        throw LengthMismatch("forecast length " + std::to_string(forecast.size()) +
                             " != test length " + std::to_string(test.size()));
    }
    if (forecast.size() == 0) {
        throw EmptyInput("cannot score an empty forecast");
    }
    switch (metric) {
        case WeightMetric::Mae:
            return (forecast - test).cwiseAbs().mean();
        case WeightMetric::Mse:
            return (forecast - test).array().square().mean();
        case WeightMetric::Rmse:
            return std::sqrt((forecast - test).array().square().mean());
        case WeightMetric::Mape: {
            double sum = 0.0;
            for (Index i = 0; i < test.size(); ++i) {
                if (std::abs(test[i]) < 1e-9) {
                    throw NearZeroDenominator("test value at step " + std::to_string(i + 1) +
                                              " is too close to zero for MAPE weighting");
                }
                sum += std::abs((forecast[i] - test[i]) / test[i]);
            }
            return sum / static_cast<double>(test.size());
        }
    }
    return 0.0;
}

WeightVector compute_weights(const PerformanceReport& report) {
    const std::size_t k = report.maes.size();
    if (k < 2) {
        throw TooFewMembers("weighting needs at least 2 members, got " + std::to_string(k));
    }
    double total = 0.0;
    for (const auto& [label, mae] : report.maes) {
        if (!std::isfinite(mae) || mae < 0.0) {
            throw Error("member '" + label + "' has an invalid error value");
        }
        total += mae;
    }

    WeightVector out;
    out.weights.reserve(k);
    if (total == 0.0) {
        // Every member perfect: equal weights.
        for (const auto& [label, mae] : report.maes) {
            out.weights.emplace_back(label, 1.0 / static_cast<double>(k));
        }
        return out;
    }

    double inverted_sum = 0.0;  // identically k-1 up to rounding
    std::vector<double> inverted(k);
    std::size_t at = 0;
    for (const auto& [label, mae] : report.maes) {
        inverted[at] = 1.0 - mae / total;
        inverted_sum += inverted[at];
        ++at;
    }
    at = 0;
    for (const auto& [label, mae] : report.maes) {
        out.weights.emplace_back(label, inverted[at] / inverted_sum);
        ++at;
    }
    return out;
}

Vector combine(const KeyedForecasts& forecasts, const WeightVector& weights) {
    if (forecasts.size() != weights.weights.size()) {
        throw KeyMismatch("forecast count " + std::to_string(forecasts.size()) +
                          " != weight count " + std::to_string(weights.weights.size()));
    }
    if (forecasts.empty()) {
        throw EmptyInput("nothing to combine");
    }
    const Index h = forecasts.front().second.size();
    Vector out = Vector::Zero(h);
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
        if (forecasts[i].first != weights.weights[i].first) {
            throw KeyMismatch("forecast label '" + forecasts[i].first +
                              "' does not match weight label '" + weights.weights[i].first + "'");
        }
        if (forecasts[i].second.size() != h) {
            throw LengthMismatch("member '" + forecasts[i].first +
                                 "' forecast has inconsistent length");
        }
        out += weights.weights[i].second * forecasts[i].second;
    }
    return out;
}

std::vector<MemberSpec> default_members() {
    return {{"avg_growth", ForecasterKind::AvgGrowth},
            {"linear", ForecasterKind::Linear},
            {"polynomial", ForecasterKind::Polynomial},
            {"holt", ForecasterKind::Holt},
            {"lstm", ForecasterKind::Lstm}};
}

namespace {

const ExternalMember* find_external(const std::vector<ExternalMember>* external,
                                    const std::string& label) {
    if (!external) return nullptr;
    for (const auto& e : *external) {
        if (e.label == label) return &e;
    }
    return nullptr;
}

/// Errors that are pure floating-point noise relative to the test window are
/// treated as exact zeros, so that perfectly reproduced data yields the
/// all-perfect equal-weight fallback instead of noise-ratio weights.
double snap_perfect(double err, const Vector& test) {
    const double scale = std::max(1.0, test.cwiseAbs().mean());
    return err <= 1e-10 * scale ? 0.0 : err;
}

}  // namespace

RoundResult ensemble_round(const Series& series, const EnsembleConfig& config, int horizon,
                           const RoundSeeds& seeds, const std::vector<ExternalMember>* external) {
    if (horizon < 1) {
        throw Error("forecast horizon must be at least 1");
    }
    if (config.members.size() < 2) {
        throw TooFewMembers("the ensemble needs at least 2 members");
    }
    {
        std::set<std::string> labels;
        for (const auto& m : config.members) {
            if (!labels.insert(m.label).second) {
                throw DuplicateSeriesId("duplicate member label '" + m.label + "'");
            }
        }
    }

    const auto [train, test] = split_train_test(series, SplitSpec{config.train_fraction});

    RoundResult result;
    result.fit_length = series.length();
    result.report.horizon_used = static_cast<int>(test.length());

    // Performance pass: fit on the prefix, score on the held-out suffix.
    for (const auto& member : config.members) {
        const ExternalMember* ext = find_external(external, member.label);
        TrainedModel model;
        try {
            if (ext) {
                model = ext->performance_model;
            } else {
                MemberConfig mc = config.member_config;
                mc.lstm.seed = seeds.performance_seed;
                model = fit_model(member.kind, train, mc);
            }
        } catch (const Error& e) {
            throw MemberFitFailure(member.label, e.what());
        }
        Vector forecast = forecast_model(model, train, static_cast<int>(test.length()));
        const double err =
            snap_perfect(compute_member_metric(forecast, test.values, config.metric), test.values);
        result.member_perf_forecasts.emplace_back(member.label, std::move(forecast));
        result.report.maes.emplace_back(member.label, err);
    }

    result.weights = compute_weights(result.report);

    // Production pass: refit on the full series and forecast the horizon.
    for (const auto& member : config.members) {
        const ExternalMember* ext = find_external(external, member.label);
        TrainedModel model;
        try {
            if (ext) {
                model = ext->final_model;
            } else {
                MemberConfig mc = config.member_config;
                mc.lstm.seed = seeds.final_seed;
                model = fit_model(member.kind, series, mc);
            }
        } catch (const Error& e) {
            throw MemberFitFailure(member.label, e.what());
        }
        result.member_forecasts.emplace_back(member.label, forecast_model(model, series, horizon));
    }

    result.combined = combine(result.member_forecasts, result.weights);
    return result;
}

}  // namespace edms
