#include "edms/growth.hpp"

#include <cmath>

namespace edms {

GrowthParams fit_avg_growth(const Series& train, bool additive) {
    validate_series(train);
    const Index n = train.length();
    if (n < 2) {
        throw SeriesTooShort("avg_growth needs at least 2 observations, got " + std::to_string(n));
    }
    GrowthParams params;
    params.additive = additive;
    params.last_value = train.values[n - 1];

    double sum = 0.0;
    for (Index t = 1; t < n; ++t) {
        if (additive) {
            sum += train.values[t] - train.values[t - 1];
        } else {
            if (!(train.values[t] > 0.0) || !(train.values[t - 1] > 0.0)) {
                throw NonPositiveValue("avg_growth ratios need strictly positive values; series '" +
                                       train.id + "' violates this at index " + std::to_string(t));
            }
            sum += train.values[t] / train.values[t - 1];
        }
    }
    params.g = sum / static_cast<double>(n - 1);
    if (!std::isfinite(params.g)) {
        throw NonFiniteValue("avg_growth rate is not finite");
    }
    return params;
}

Vector forecast_avg_growth(const GrowthParams& params, int h, Index offset) {
    if (h < 1) {
        throw Error("forecast horizon must be at least 1");
    }
    Vector out(h);
    if (params.additive) {
        for (int k = 1; k <= h; ++k) {
            out[k - 1] = params.last_value + static_cast<double>(offset + k) * params.g;
        }
    } else {
        double value = params.last_value * std::pow(params.g, static_cast<double>(offset));
        for (int k = 1; k <= h; ++k) {
            value *= params.g;
            out[k - 1] = value;
        }
    }
    return out;
}

}  // namespace edms
