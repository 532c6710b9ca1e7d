#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edms/artifacts.hpp"
#include "edms/csv.hpp"
#include "edms/synth.hpp"

namespace edms {

struct DatasetSpec {
    std::string label;
    std::string path;
    CsvLayout layout = CsvLayout::Wide;
    Frequency frequency = Frequency::Annual;
};

/// Experiment configuration file (JSON). Unknown keys are rejected.
struct ExperimentConfig {
    std::vector<DatasetSpec> datasets;
    std::vector<std::string> members = {"avg_growth", "linear", "polynomial", "holt", "lstm"};
    std::optional<int> horizon;          // absent = derive from eval_test_fraction
    double eval_test_fraction = 0.7;
    double train_fraction = 0.8;         // inner performance split
    std::optional<std::vector<int>> schedule;  // absent = frequency defaults
    std::uint64_t seed = 1;
    std::string metric = "mae";
    std::string mape_denominator = "forecast";
    bool additive_growth = false;
    bool global_lstm = false;
    bool prune_enabled = true;
    double prune_ratio_threshold = 10.0;
    long lstm_hidden_size = 16;
    long lstm_lookback = 0;  // 0 = frequency default
    int lstm_epochs = 200;
    double lstm_learning_rate = 1e-2;
    std::string out_dir = "out";
    int threads = 0;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);

/// Flag values layered over the config file.
struct CliOverrides {
    std::optional<std::vector<int>> schedule;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mape_denominator;
    bool global_lstm = false;
    std::optional<std::string> out_dir;
};

void apply_overrides(ExperimentConfig* config, const CliOverrides& overrides);

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

int cmd_validate(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_run(const ExperimentConfig& config, const std::string& method, std::ostream& out,
            std::ostream& err);
int cmd_report(const std::vector<std::string>& run_dirs, const std::string& out_dir,
               std::ostream& out, std::ostream& err);

struct SynthOptions {
    SynthConfig config;
    std::string out_path;
    Date start{2000, 1, 1};
};

int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);

/// Comma-separated positive integers; empty or "none" gives an empty schedule.
std::vector<int> parse_schedule_flag(const std::string& text);

}  // namespace edms
