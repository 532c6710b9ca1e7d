#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edms/eval.hpp"
#include "edms/pipeline.hpp"

#include <json.hpp>

namespace edms {

void make_dirs(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Per-series values keyed in panel order.
using SeriesValues = std::vector<std::pair<std::string, Vector>>;

/// `series_id,step,value` with 1-based steps. Only successful series appear.
std::string forecast_csv(const ForecastRun& run);
SeriesValues read_series_values_csv(const std::string& content);

/// `series_id,step,eims_value,edms_value`; a missing method leaves blanks.
std::string combined_forecast_csv(const ForecastRun* eims, const ForecastRun* edms);
struct CombinedForecasts {
    SeriesValues eims;
    SeriesValues edms;
};
CombinedForecasts read_combined_forecast_csv(const std::string& content);

/// `series_id,step,value` rows for the held-out evaluation windows.
std::string actuals_csv(const SeriesValues& actuals);

/// `series_id,method,stage,member,mae,weight` across every stage of each run.
std::string weights_csv(const std::vector<const ForecastRun*>& runs);

/// Full per-stage audit: member errors, weights, member forecasts and the
/// combined forecast, enough to recompute the combination externally.
nlohmann::ordered_json run_audit_json(const ForecastRun& run);

/// `step,actual,eims,edms` for one series.
std::string plot_csv(const Vector& actual, const Vector& eims, const Vector& edms);

}  // namespace edms
