#include "edms/holt.hpp"

#include <algorithm>
#include <cmath>

namespace edms {

namespace {

struct LevelTrend {
    double level;
    double trend;
};

LevelTrend run_recursion(const Vector& y, double alpha, double gamma, double* rss_out) {
    double level = y[0];
    double trend = y[1] - y[0];
    double rss = 0.0;
    for (Index t = 1; t < y.size(); ++t) {
        const double pred = level + trend;
        const double err = y[t] - pred;
        rss += err * err;
        const double new_level = alpha * y[t] + (1.0 - alpha) * pred;
        trend = gamma * (new_level - level) + (1.0 - gamma) * trend;
        level = new_level;
    }
    if (rss_out) *rss_out = rss;
    return {level, trend};
}

}  // namespace

double holt_one_step_rss(const Vector& values, double alpha, double gamma) {
    if (values.size() < 2) {
        throw SeriesTooShort("Holt RSS needs at least 2 observations");
    }
    double rss = 0.0;
    run_recursion(values, alpha, gamma, &rss);
    return rss;
}

HoltParams fit_holt(const Series& train) {
    validate_series(train);
    if (train.length() < 3) {
        throw SeriesTooShort("Holt fit needs at least 3 observations, got " +
                             std::to_string(train.length()));
    }
    const Vector& y = train.values;

    double best_alpha = 0.01;
    double best_gamma = 0.01;
    double best_rss = std::numeric_limits<double>::infinity();
    for (int ai = 1; ai <= 99; ++ai) {
        const double alpha = 0.01 * ai;
        for (int gi = 1; gi <= 99; ++gi) {
            const double gamma = 0.01 * gi;
            double rss = 0.0;
            run_recursion(y, alpha, gamma, &rss);
            if (rss < best_rss) {
                best_rss = rss;
                best_alpha = alpha;
                best_gamma = gamma;
            }
        }
    }

    // Coordinate refinement at 0.001 resolution around the grid optimum.
    for (int pass = 0; pass < 2; ++pass) {
        for (int coord = 0; coord < 2; ++coord) {
            const double center = coord == 0 ? best_alpha : best_gamma;
            for (int step = -9; step <= 9; ++step) {
                const double cand =
                    std::clamp(center + 0.001 * step, 0.001, 0.999);
                const double alpha = coord == 0 ? cand : best_alpha;
                const double gamma = coord == 0 ? best_gamma : cand;
                double rss = 0.0;
                run_recursion(y, alpha, gamma, &rss);
                if (rss < best_rss) {
                    best_rss = rss;
                    best_alpha = alpha;
                    best_gamma = gamma;
                }
            }
        }
    }

    const LevelTrend lt = run_recursion(y, best_alpha, best_gamma, nullptr);
    return {best_alpha, best_gamma, lt.level, lt.trend};
}

Vector forecast_holt(const HoltParams& params, int h, Index offset) {
    if (h < 1) {
        throw Error("forecast horizon must be at least 1");
    }
    Vector out(h);
    for (int k = 1; k <= h; ++k) {
        out[k - 1] = params.level + static_cast<double>(offset + k) * params.trend;
    }
    return out;
}

}  // namespace edms
