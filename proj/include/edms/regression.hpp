#pragma once

#include "edms/series.hpp"

namespace edms {

/// Ordinary least squares polynomial trend of degree 1 or 2 over the
/// regressors (1, t) or (1, t, t^2) with t = 0..N-1 relative to time_origin.
struct RegressionParams {
    Vector coefficients;  // intercept first
    int degree = 1;
    int time_origin = 0;
};

RegressionParams fit_regression(const Series& train, int degree);

/// Evaluates the fitted polynomial at t = from, from+1, ..., from+h-1
/// (relative indices; the end of an N-point training series is from = N).
Vector forecast_regression(const RegressionParams& params, Index from, int h);

}  // namespace edms
