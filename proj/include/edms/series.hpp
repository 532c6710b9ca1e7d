#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "edms/core.hpp"

namespace edms {

/// One univariate time series. `start` is the period index of the first
/// observation, counted in native periods; loaders emit series-relative
/// indexing (start = 0) and splits advance it for the suffix.
struct Series {
    std::string id;
    Frequency frequency = Frequency::Annual;
    int start = 0;
    Vector values;

    Index length() const { return values.size(); }
};

/// Throws unless the series is nonempty with all-finite values.
void validate_series(const Series& s);

/// An aligned collection of equal-length series sharing one frequency.
struct Panel {
    std::vector<Series> series;
    Frequency frequency = Frequency::Annual;
    Index length = 0;

    Index n_series() const { return static_cast<Index>(series.size()); }
};

/// Throws unless all members share frequency and length and ids are unique.
void validate_panel(const Panel& p);

struct SplitSpec {
    double train_fraction = 0.8;
};

/// Chronological prefix/suffix split with train length = floor(fraction * N).
/// Throws SplitTooSmall when train < 2 or test would be empty.
std::pair<Series, Series> split_train_test(const Series& series, const SplitSpec& spec = {});

struct DropRecord {
    std::string id;
    std::string reason;
};

struct AlignResult {
    Panel panel;
    Index cutoff = 0;
    std::vector<DropRecord> dropped;
};

/// Chooses the common length L* maximizing L * |{s : len(s) >= L}| over the
/// distinct observed lengths (ties broken toward the larger L), drops shorter
/// series and truncates survivors to their most recent L* observations.
AlignResult align_panel(const std::vector<Series>& raw);

struct PruneResult {
    Panel panel;
    std::vector<DropRecord> dropped;
};

/// Drops every series whose fit error exceeds ratio_threshold * median of all
/// fit errors (median taken before any drop).
PruneResult prune_irregular(const Panel& panel,
                            const std::map<std::string, double>& fit_errors,
                            double ratio_threshold = 10.0);

}  // namespace edms
