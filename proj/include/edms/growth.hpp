#pragma once

#include "edms/series.hpp"

namespace edms {

/// Average growth rate model. In the default multiplicative form g is the
/// mean of period-over-period ratios and the h-step forecast is
/// last_value * g^h. The additive variant keeps the mean of differences and
/// forecasts last_value + h * g instead.
struct GrowthParams {
    double g = 1.0;
    double last_value = 0.0;
    bool additive = false;
};

GrowthParams fit_avg_growth(const Series& train, bool additive = false);

/// Forecast steps offset+1 .. offset+h after the end of the training data.
Vector forecast_avg_growth(const GrowthParams& params, int h, Index offset = 0);

}  // namespace edms
