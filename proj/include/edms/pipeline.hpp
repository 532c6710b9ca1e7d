#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edms/ensemble.hpp"

namespace edms {

/// Horizon steps after which every member is refit on the series extended
/// with the ensembled forecasts. Empty = never retrain (plain EIMS behavior).
struct RetrainSchedule {
    std::vector<int> steps;
};

/// Throws unless steps are strictly increasing positive integers below H.
void validate_schedule(const RetrainSchedule& schedule, int horizon);

/// Frequency defaults ({1,5} years / {1,5} months equivalents) filtered to
/// steps below the horizon.
RetrainSchedule default_schedule(Frequency f, int horizon);

struct RunConfig {
    int horizon = 1;
    RetrainSchedule schedule;
    EnsembleConfig ensemble;
    std::uint64_t seed = 1;
    bool global_lstm = false;
    Frequency frequency = Frequency::Annual;
    int threads = 0;  // 0 = hardware concurrency; EDMS_THREADS caps either way
};

struct StageRecord {
    int stage = 0;
    Index fit_length = 0;  // working-series length at fit time
    int first_step = 1;    // 1-based first horizon step this stage covers
    int horizon = 0;       // steps covered by this stage
    PerformanceReport report;
    WeightVector weights;
    KeyedForecasts member_forecasts;
    Vector combined;
};

struct SeriesRun {
    std::string id;
    bool ok = false;
    std::string error;
    Vector forecast;  // length = config horizon when ok
    std::vector<StageRecord> stages;
};

struct ForecastRun {
    std::string method;
    int horizon = 0;
    std::vector<int> schedule_used;
    std::uint64_t seed = 0;
    std::vector<SeriesRun> series;
    std::vector<std::string> warnings;
};

/// One ensemble round per series over the full horizon; weights fixed from
/// the initial 80/20 split; any configured retrain schedule is ignored with a
/// warning.
ForecastRun run_eims(const Panel& panel, const RunConfig& config);

/// Segment-wise runs delimited by the retrain schedule: each segment refits
/// everything on the working series (real data extended by the previous
/// segments' ensembled forecasts) with freshly recalculated weights. An empty
/// schedule reproduces run_eims bit for bit.
ForecastRun run_edms(const Panel& panel, const RunConfig& config);

/// Iterative multi-step stepping for a fitted model (feedback roll for the
/// LSTM, closed-form evaluation for the rest).
Vector ims_roll(const TrainedModel& model, const Series& context, int h);

/// Deterministic per-fit seed: base seed mixed with the series id, the stage
/// index and the fit role (0 = performance fit, 1 = final fit).
std::uint64_t derive_seed(std::uint64_t base, const std::string& series_id, int stage, int role);

/// Content hash of a panel (ids, lengths, value bit patterns), hex-encoded.
std::string panel_fingerprint(const Panel& panel);

/// Worker count from the config, capped by the EDMS_THREADS env var.
int resolve_threads(int requested);

}  // namespace edms
