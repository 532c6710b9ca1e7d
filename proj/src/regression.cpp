#include "edms/regression.hpp"

namespace edms {

RegressionParams fit_regression(const Series& train, int degree) {
    validate_series(train);
    if (degree != 1 && degree != 2) {
        throw ConfigError("regression degree must be 1 or 2");
    }
    const Index n = train.length();
    if (n < degree + 2) {
        throw SeriesTooShort("degree-" + std::to_string(degree) + " regression needs at least " +
                             std::to_string(degree + 2) + " observations, got " +
                             std::to_string(n));
    }

    Matrix design(n, degree + 1);
    for (Index t = 0; t < n; ++t) {
        design(t, 0) = 1.0;
        design(t, 1) = static_cast<double>(t);
        if (degree == 2) design(t, 2) = static_cast<double>(t) * static_cast<double>(t);
    }

    Eigen::ColPivHouseholderQR<Matrix> qr(design);
    if (qr.rank() < degree + 1) {
        throw SingularDesign("design matrix is rank deficient");
    }
    RegressionParams params;
    params.coefficients = qr.solve(train.values);
    params.degree = degree;
    params.time_origin = train.start;
    return params;
}

Vector forecast_regression(const RegressionParams& params, Index from, int h) {
    if (h < 1) {
        throw Error("forecast horizon must be at least 1");
    }
    if (params.coefficients.size() != params.degree + 1) {
        throw ShapeMismatch("coefficient count does not match degree");
    }
    Vector out(h);
    for (int k = 0; k < h; ++k) {
        const double t = static_cast<double>(from + k);
        double v = params.coefficients[0] + params.coefficients[1] * t;
        if (params.degree == 2) v += params.coefficients[2] * t * t;
        out[k] = v;
    }
    return out;
}

}  // namespace edms
