#pragma once

#include <string>
#include <variant>

#include "edms/growth.hpp"
#include "edms/holt.hpp"
#include "edms/lstm.hpp"
#include "edms/regression.hpp"

#include <json.hpp>

namespace edms {

enum class ForecasterKind { AvgGrowth, Linear, Polynomial, Holt, Lstm };

std::string kind_name(ForecasterKind kind);
ForecasterKind kind_from_name(const std::string& name);

/// Knobs shared by every member fit.
struct MemberConfig {
    bool additive_growth = false;
    LstmTrainConfig lstm;
};

/// A fitted forecaster of one of the five kinds.
struct TrainedModel {
    ForecasterKind kind = ForecasterKind::Linear;
    std::variant<GrowthParams, RegressionParams, HoltParams, LstmParams> params;
    Index train_length = 0;
};

TrainedModel fit_model(ForecasterKind kind, const Series& train, const MemberConfig& config);

/// Forecast h steps past the end of `context`, which must be the model's
/// training series possibly extended by prior forecasts. Closed-form kinds
/// evaluate their h-step expressions anchored at the end of the context; the
/// LSTM rolls one-step predictions forward (IMS stepping).
Vector forecast_model(const TrainedModel& model, const Series& context, int h);

/// Parameter snapshot for audit and re-forecast without refitting.
nlohmann::ordered_json model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const nlohmann::json& j);

}  // namespace edms
