#pragma once

#include <string>
#include <utility>
#include <vector>

#include "edms/core.hpp"

namespace edms {

/// Which value sits under the error. `Forecast` is the production default;
/// `Actual` gives the textbook MAPE for sensitivity checks.
enum class MapeDenominator { Forecast, Actual };

std::string mape_denominator_name(MapeDenominator m);
MapeDenominator mape_denominator_from_name(const std::string& name);

/// (1/H) * sum |(forecast_h - actual_h) / denominator_h|. Denominators closer
/// to zero than 1e-9 raise NearZeroDenominator naming the offending steps.
double series_mape(const Vector& forecast, const Vector& actual, MapeDenominator mode);

struct MapeResult {
    std::vector<std::pair<std::string, double>> per_series;
    double dataset_average = 0.0;
    MapeDenominator mode = MapeDenominator::Forecast;
};

/// Unweighted mean over series.
MapeResult dataset_average_mape(const std::vector<std::pair<std::string, double>>& per_series,
                                MapeDenominator mode);

/// Relative reduction of average MAPE, in percent; positive when the
/// multi-step method wins.
double delta_percent(double mape_ims, double mape_dms);

/// One row of the comparison table (the CSV-facing flat record).
struct ReportRow {
    std::string dataset;
    long n_series = 0;
    long total_size = 0;
    long test_size = 0;
    double eims_mape = 0.0;
    double edms_mape = 0.0;
    double delta = 0.0;  // percent
};

struct ComparisonReport {
    std::string dataset;
    Frequency frequency = Frequency::Annual;
    long n_series = 0;
    long total_size = 0;
    long test_size = 0;
    MapeResult eims;
    MapeResult edms;
    double delta = 0.0;  // percent

    ReportRow row() const;
};

/// CSV with header dataset,n_series,total_size,test_size,eims_mape,edms_mape,
/// delta_percent plus a trailing Average row carrying the mean delta.
std::string render_report_csv(const std::vector<ReportRow>& rows);

/// Human-readable fixed-width table with the same columns and average row.
std::string render_report_text(const std::vector<ReportRow>& rows, const std::string& title);

struct ParsedReport {
    std::vector<ReportRow> rows;
    double average_delta = 0.0;
};

ParsedReport parse_report_csv(const std::string& csv);

}  // namespace edms
