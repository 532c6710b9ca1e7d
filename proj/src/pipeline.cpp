#include "edms/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace edms {

void validate_schedule(const RetrainSchedule& schedule, int horizon) {
    int prev = 0;
    for (int s : schedule.steps) {
        if (s <= prev) {
            throw ConfigError("retrain steps must be strictly increasing positive integers");
        }
        if (s >= horizon) {
            throw ConfigError("retrain step " + std::to_string(s) +
                              " must be below the horizon " + std::to_string(horizon));
        }
        prev = s;
    }
}

RetrainSchedule default_schedule(Frequency f, int horizon) {
    RetrainSchedule out;
    for (int s : default_schedule_steps(f)) {
        if (s < horizon) out.steps.push_back(s);
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t base, const std::string& series_id, int stage, int role) {
    std::uint64_t h = fnv1a64_u64(base, 14695981039346656037ull);
    h = fnv1a64_str(series_id, h);
    h = fnv1a64_u64(static_cast<std::uint64_t>(stage), h);
    h = fnv1a64_u64(static_cast<std::uint64_t>(role), h);
    return h;
}

std::string panel_fingerprint(const Panel& panel) {
    std::uint64_t h = fnv1a64_u64(static_cast<std::uint64_t>(panel.series.size()),
                                  14695981039346656037ull);
    for (const auto& s : panel.series) {
        h = fnv1a64_str(s.id, h);
        h = fnv1a64_u64(static_cast<std::uint64_t>(s.length()), h);
        for (Index i = 0; i < s.length(); ++i) {
            std::uint64_t bits;
            static_assert(sizeof bits == sizeof(double));
            std::memcpy(&bits, &s.values[i], sizeof bits);
            h = fnv1a64_u64(bits, h);
        }
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int resolve_threads(int requested) {
    int threads = requested > 0 ? requested
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("EDMS_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) threads = std::min(threads, cap);
    }
    return std::max(1, threads);
}

Vector ims_roll(const TrainedModel& model, const Series& context, int h) {
    return forecast_model(model, context, h);
}

namespace {

/// Segment boundaries (0, s1, ..., H]; each entry is a (first_step, length).
std::vector<std::pair<int, int>> make_segments(const std::vector<int>& steps, int horizon) {
    std::vector<std::pair<int, int>> segments;
    int prev = 0;
    for (int s : steps) {
        segments.emplace_back(prev + 1, s - prev);
        prev = s;
    }
    segments.emplace_back(prev + 1, horizon - prev);
    return segments;
}

void run_for_index(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < n;
                 i += static_cast<std::size_t>(workers)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

/// Runs every stage of one series sequentially, appending each segment's
/// combined forecast to the working series before the next refit.
SeriesRun run_series_stages(const Series& series, const RunConfig& config,
                            const std::vector<std::pair<int, int>>& segments) {
    SeriesRun out;
    out.id = series.id;
    Series working = series;
    std::vector<double> full;
    full.reserve(config.horizon);
    try {
        for (std::size_t stage = 0; stage < segments.size(); ++stage) {
            const auto [first_step, seg_h] = segments[stage];
            RoundSeeds seeds{derive_seed(config.seed, series.id, static_cast<int>(stage), 0),
                             derive_seed(config.seed, series.id, static_cast<int>(stage), 1)};
            RoundResult round = ensemble_round(working, config.ensemble, seg_h, seeds);

            StageRecord rec;
            rec.stage = static_cast<int>(stage);
            rec.fit_length = round.fit_length;
            rec.first_step = first_step;
            rec.horizon = seg_h;
            rec.report = std::move(round.report);
            rec.weights = std::move(round.weights);
            rec.member_forecasts = std::move(round.member_forecasts);
            rec.combined = round.combined;
            out.stages.push_back(std::move(rec));

            for (Index i = 0; i < round.combined.size(); ++i) full.push_back(round.combined[i]);
            const Index old_len = working.values.size();
            working.values.conservativeResize(old_len + round.combined.size());
            working.values.tail(round.combined.size()) = round.combined;
        }
        out.forecast = Eigen::Map<const Vector>(full.data(), static_cast<Index>(full.size()));
        out.ok = true;
    } catch (const Error& e) {
        out.ok = false;
        out.error = e.what();
        out.stages.clear();
        out.forecast.resize(0);
    }
    return out;
}

bool has_lstm_member(const EnsembleConfig& cfg) {
    for (const auto& m : cfg.members) {
        if (m.kind == ForecasterKind::Lstm) return true;
    }
    return false;
}

/// Stage-synchronized variant: at every stage one LSTM is trained on pooled
/// windows from all live series (each normalized by its own training
/// segment); the shared weights then serve every series with its own
/// normalization attached.
void run_stages_global_lstm(const Panel& panel, const RunConfig& config,
                            const std::vector<std::pair<int, int>>& segments,
                            std::vector<SeriesRun>* runs) {
    std::vector<Series> working;
    working.reserve(panel.series.size());
    for (const auto& s : panel.series) working.push_back(s);
    std::vector<bool> live(panel.series.size(), true);

    LstmTrainConfig base_cfg = config.ensemble.member_config.lstm;
    if (base_cfg.lookback < 1) base_cfg.lookback = default_lookback(panel.frequency);

    for (std::size_t stage = 0; stage < segments.size(); ++stage) {
        const auto [first_step, seg_h] = segments[stage];

        // Pool supervised windows for both fit roles over the live series.
        std::vector<Vector> perf_windows, final_windows;
        std::vector<double> perf_targets, final_targets;
        std::vector<Normalization> perf_norm(working.size()), final_norm(working.size());
        for (std::size_t j = 0; j < working.size(); ++j) {
            if (!live[j]) continue;
            try {
                const auto [train, test] =
                    split_train_test(working[j], SplitSpec{config.ensemble.train_fraction});
                if (train.length() < base_cfg.lookback + 2 ||
                    working[j].length() < base_cfg.lookback + 2) {
                    throw SeriesTooShort("series too short for the pooled LSTM window");
                }
                perf_norm[j] = zscore_normalization(train.values);
                final_norm[j] = zscore_normalization(working[j].values);
                std::vector<Vector> w;
                std::vector<double> t;
                make_lstm_windows(
                    ((train.values.array() - perf_norm[j].mean) / perf_norm[j].scale).matrix(),
                    base_cfg.lookback, &w, &t);
                perf_windows.insert(perf_windows.end(), w.begin(), w.end());
                perf_targets.insert(perf_targets.end(), t.begin(), t.end());
                make_lstm_windows(
                    ((working[j].values.array() - final_norm[j].mean) / final_norm[j].scale)
                        .matrix(),
                    base_cfg.lookback, &w, &t);
                final_windows.insert(final_windows.end(), w.begin(), w.end());
                final_targets.insert(final_targets.end(), t.begin(), t.end());
            } catch (const Error& e) {
                live[j] = false;
                (*runs)[j].ok = false;
                (*runs)[j].error = MemberFitFailure("lstm", e.what()).what();
                (*runs)[j].stages.clear();
            }
        }
        if (std::none_of(live.begin(), live.end(), [](bool b) { return b; })) return;

        LstmParams perf_shared, final_shared;
        try {
            LstmTrainConfig cfg = base_cfg;
            cfg.seed = derive_seed(config.seed, "", static_cast<int>(stage), 0);
            perf_shared = fit_lstm_windows(
                perf_windows,
                Eigen::Map<const Vector>(perf_targets.data(),
                                         static_cast<Index>(perf_targets.size())),
                cfg);
            cfg.seed = derive_seed(config.seed, "", static_cast<int>(stage), 1);
            final_shared = fit_lstm_windows(
                final_windows,
                Eigen::Map<const Vector>(final_targets.data(),
                                         static_cast<Index>(final_targets.size())),
                cfg);
        } catch (const Error& e) {
            for (std::size_t j = 0; j < working.size(); ++j) {
                if (!live[j]) continue;
                live[j] = false;
                (*runs)[j].ok = false;
                (*runs)[j].error = MemberFitFailure("lstm", e.what()).what();
                (*runs)[j].stages.clear();
            }
            return;
        }

        for (std::size_t j = 0; j < working.size(); ++j) {
            if (!live[j]) continue;
            try {
                const auto [train, test] =
                    split_train_test(working[j], SplitSpec{config.ensemble.train_fraction});
                std::vector<ExternalMember> external;
                for (const auto& member : config.ensemble.members) {
                    if (member.kind != ForecasterKind::Lstm) continue;
                    LstmParams perf_j = perf_shared;
                    perf_j.norm = perf_norm[j];
                    LstmParams final_j = final_shared;
                    final_j.norm = final_norm[j];
                    external.push_back(
                        {member.label,
                         TrainedModel{ForecasterKind::Lstm, perf_j, train.length()},
                         TrainedModel{ForecasterKind::Lstm, final_j, working[j].length()}});
                }
                RoundSeeds seeds{derive_seed(config.seed, working[j].id, static_cast<int>(stage), 0),
                                 derive_seed(config.seed, working[j].id, static_cast<int>(stage), 1)};
                RoundResult round =
                    ensemble_round(working[j], config.ensemble, seg_h, seeds, &external);

                StageRecord rec;
                rec.stage = static_cast<int>(stage);
                rec.fit_length = round.fit_length;
                rec.first_step = first_step;
                rec.horizon = seg_h;
                rec.report = std::move(round.report);
                rec.weights = std::move(round.weights);
                rec.member_forecasts = std::move(round.member_forecasts);
                rec.combined = round.combined;
                (*runs)[j].stages.push_back(std::move(rec));

                const Index old_len = working[j].values.size();
                working[j].values.conservativeResize(old_len + round.combined.size());
                working[j].values.tail(round.combined.size()) = round.combined;
            } catch (const Error& e) {
                live[j] = false;
                (*runs)[j].ok = false;
                (*runs)[j].error = e.what();
                (*runs)[j].stages.clear();
            }
        }
    }

    for (std::size_t j = 0; j < working.size(); ++j) {
        if (!live[j]) continue;
        (*runs)[j].ok = true;
        (*runs)[j].forecast = working[j].values.tail(config.horizon);
    }
}

ForecastRun run_method(const Panel& panel, const RunConfig& config,
                       const std::vector<int>& schedule_steps, const std::string& method) {
    validate_panel(panel);
    if (config.horizon < 1) {
        throw ConfigError("horizon must be at least 1");
    }
    validate_schedule(RetrainSchedule{schedule_steps}, config.horizon);

    ForecastRun run;
    run.method = method;
    run.horizon = config.horizon;
    run.schedule_used = schedule_steps;
    run.seed = config.seed;
    run.series.resize(panel.series.size());
    for (std::size_t j = 0; j < panel.series.size(); ++j) {
        run.series[j].id = panel.series[j].id;
    }

    const auto segments = make_segments(schedule_steps, config.horizon);

    if (config.global_lstm && has_lstm_member(config.ensemble)) {
        run_stages_global_lstm(panel, config, segments, &run.series);
        return run;
    }

    run_for_index(panel.series.size(), resolve_threads(config.threads), [&](std::size_t j) {
        run.series[j] = run_series_stages(panel.series[j], config, segments);
    });
    return run;
}

}  // namespace

ForecastRun run_eims(const Panel& panel, const RunConfig& config) {
    ForecastRun run = run_method(panel, config, {}, "eims");
    if (!config.schedule.steps.empty()) {
        run.warnings.push_back("EIMS never retrains; the configured retrain schedule is ignored");
    }
    return run;
}

ForecastRun run_edms(const Panel& panel, const RunConfig& config) {
    return run_method(panel, config, config.schedule.steps, "edms");
}

}  // namespace edms
