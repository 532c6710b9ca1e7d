#include "edms/series.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace edms {

void validate_series(const Series& s) {
    if (s.values.size() == 0) {
        throw EmptyInput("series '" + s.id + "' has no values");
    }
    for (Index i = 0; i < s.values.size(); ++i) {
        if (!std::isfinite(s.values[i])) {
            throw NonFiniteValue("series '" + s.id + "' has a non-finite value at index " +
                                 std::to_string(i));
        }
    }
}

void validate_panel(const Panel& p) {
    if (p.series.empty()) {
        throw EmptyPanel("panel has no series");
    }
    std::set<std::string> ids;
    for (const auto& s : p.series) {
        validate_series(s);
        if (s.frequency != p.frequency) {
            throw Error("series '" + s.id + "' frequency differs from panel frequency");
        }
        if (s.length() != p.length) {
            throw Error("series '" + s.id + "' length " + std::to_string(s.length()) +
                        " differs from panel length " + std::to_string(p.length));
        }
        if (!ids.insert(s.id).second) {
            throw DuplicateSeriesId("duplicate series id '" + s.id + "'");
        }
    }
}

std::pair<Series, Series> split_train_test(const Series& series, const SplitSpec& spec) {
    validate_series(series);
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw ConfigError("train_fraction must lie in (0,1)");
    }
    const Index n = series.length();
    // The tiny epsilon keeps floor(f*N) at the exact-real value when f*N is an
    // integer that rounds just below it in floating point (e.g. 0.7 * 10).
    const Index train_len =
        static_cast<Index>(std::floor(spec.train_fraction * static_cast<double>(n) + 1e-9));
    const Index test_len = n - train_len;
    if (train_len < 2 || test_len < 1) {
        throw SplitTooSmall("series '" + series.id + "' of length " + std::to_string(n) +
                            " cannot be split " + std::to_string(spec.train_fraction) +
                            " (train " + std::to_string(train_len) + ", test " +
                            std::to_string(test_len) + ")");
    }
    Series train{series.id, series.frequency, series.start, series.values.head(train_len)};
    Series test{series.id, series.frequency, series.start + static_cast<int>(train_len),
                series.values.tail(test_len)};
    return {std::move(train), std::move(test)};
}

AlignResult align_panel(const std::vector<Series>& raw) {
    if (raw.empty()) {
        throw EmptyPanel("cannot align an empty set of series");
    }
    const Frequency freq = raw.front().frequency;
    for (const auto& s : raw) {
        validate_series(s);
        if (s.length() < 2) {
            throw SeriesTooShort("series '" + s.id + "' has fewer than 2 observations");
        }
        if (s.frequency != freq) {
            throw Error("series '" + s.id + "' frequency differs from the rest of the panel");
        }
    }

    // The objective L * count(len >= L) only changes at observed lengths, so
    // scanning the distinct lengths is exact.
    std::set<Index> candidates;
    for (const auto& s : raw) candidates.insert(s.length());

    Index best_len = 0;
    Index best_points = -1;
    for (Index cand : candidates) {
        Index kept = 0;
        for (const auto& s : raw) {
            if (s.length() >= cand) ++kept;
        }
        const Index points = cand * kept;
        // >= breaks ties toward the larger candidate (candidates iterate ascending).
        if (points >= best_points) {
            best_points = points;
            best_len = cand;
        }
    }

    AlignResult result;
    result.cutoff = best_len;
    result.panel.frequency = freq;
    result.panel.length = best_len;
    for (const auto& s : raw) {
        if (s.length() < best_len) {
            result.dropped.push_back({s.id, "shorter than cutoff " + std::to_string(best_len)});
            continue;
        }
        Series trimmed{s.id, s.frequency,
                       s.start + static_cast<int>(s.length() - best_len),
                       s.values.tail(best_len)};
        result.panel.series.push_back(std::move(trimmed));
    }
    if (result.panel.series.empty()) {
        throw EmptyPanel("alignment dropped every series");
    }
    validate_panel(result.panel);
    return result;
}

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

PruneResult prune_irregular(const Panel& panel,
                            const std::map<std::string, double>& fit_errors,
                            double ratio_threshold) {
    validate_panel(panel);
    if (!(ratio_threshold > 0.0)) {
        throw ConfigError("ratio_threshold must be positive");
    }
    std::vector<double> errors;
    errors.reserve(panel.series.size());
    for (const auto& s : panel.series) {
        auto it = fit_errors.find(s.id);
        if (it == fit_errors.end()) {
            throw KeyMismatch("fit_errors has no entry for series '" + s.id + "'");
        }
        if (!std::isfinite(it->second) || it->second < 0.0) {
            throw Error("fit error for series '" + s.id + "' must be finite and nonnegative");
        }
        errors.push_back(it->second);
    }

    const double med = median_of(errors);
    const double bound = ratio_threshold * med;

    PruneResult result;
    result.panel.frequency = panel.frequency;
    result.panel.length = panel.length;
    for (const auto& s : panel.series) {
        const double err = fit_errors.at(s.id);
        if (err > bound) {
            result.dropped.push_back(
                {s.id, "fit error " + format_double(err) + " exceeds " +
                           format_double(ratio_threshold) + " x median " + format_double(med)});
        } else {
            result.panel.series.push_back(s);
        }
    }
    if (result.panel.series.empty()) {
        throw EmptyPanel("pruning dropped every series");
    }
    return result;
}

}  // namespace edms
