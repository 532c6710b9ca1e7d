#pragma once

#include "edms/series.hpp"

namespace edms {

/// Holt's linear-trend exponential smoothing, additive, no seasonality.
/// Recursions with L_1 = y_1, T_1 = y_2 - y_1:
///   L_t = alpha * y_t + (1 - alpha) * (L_{t-1} + T_{t-1})
///   T_t = gamma * (L_t - L_{t-1}) + (1 - gamma) * T_{t-1}
struct HoltParams {
    double alpha = 0.5;
    double gamma = 0.5;
    double level = 0.0;
    double trend = 0.0;
};

/// Sum of squared one-step errors y_t - (L_{t-1} + T_{t-1}) over t = 2..N.
double holt_one_step_rss(const Vector& values, double alpha, double gamma);

/// Fits (alpha, gamma) by an exhaustive 0.01-step grid over [0.01, 0.99]^2
/// followed by coordinate refinement at 0.001 resolution.
HoltParams fit_holt(const Series& train);

/// Step k forecast = level + (offset + k) * trend.
Vector forecast_holt(const HoltParams& params, int h, Index offset = 0);

}  // namespace edms
