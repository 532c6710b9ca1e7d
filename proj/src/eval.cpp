#include "edms/eval.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "edms/csv.hpp"

namespace edms {

std::string mape_denominator_name(MapeDenominator m) {
    return m == MapeDenominator::Forecast ? "forecast" : "actual";
}

MapeDenominator mape_denominator_from_name(const std::string& name) {
    if (name == "forecast") return MapeDenominator::Forecast;
    if (name == "actual") return MapeDenominator::Actual;
    throw ConfigError("unknown MAPE denominator '" + name + "' (expected forecast|actual)");
}

double series_mape(const Vector& forecast, const Vector& actual, MapeDenominator mode) {
    if (forecast.size() != actual.size()) {
        throw LengthMismatch("forecast length " + std::to_string(forecast.size()) +
                             " != actual length " + std::to_string(actual.size()));
    }
    if (forecast.size() == 0) {
        throw EmptyInput("cannot evaluate an empty horizon");
    }
    constexpr double eps = 1e-9;
    std::string offenders;
    for (Index i = 0; i < forecast.size(); ++i) {
        const double denom = mode == MapeDenominator::Forecast ? forecast[i] : actual[i];
        if (std::abs(denom) < eps) {
            if (!offenders.empty()) offenders += ", ";
            offenders += std::to_string(i + 1);
        }
    }
    if (!offenders.empty()) {
        throw NearZeroDenominator("near-zero " +
                                  std::string(mode == MapeDenominator::Forecast ? "forecast"
                                                                                : "actual") +
                                  " denominator at steps " + offenders);
    }
    double sum = 0.0;
    for (Index i = 0; i < forecast.size(); ++i) {
        const double denom = mode == MapeDenominator::Forecast ? forecast[i] : actual[i];
        sum += std::abs((forecast[i] - actual[i]) / denom);
    }
    return sum / static_cast<double>(forecast.size());
}

MapeResult dataset_average_mape(const std::vector<std::pair<std::string, double>>& per_series,
                                MapeDenominator mode) {
    if (per_series.empty()) {
        throw EmptyInput("no per-series MAPE values to average");
    }
    MapeResult out;
    out.per_series = per_series;
    out.mode = mode;
    double sum = 0.0;
    for (const auto& [id, v] : per_series) sum += v;
    out.dataset_average = sum / static_cast<double>(per_series.size());
    return out;
}

double delta_percent(double mape_ims, double mape_dms) {
    if (!(mape_ims > 0.0)) {
        throw ZeroBaseline("EIMS average MAPE must be positive to compute the improvement");
    }
    return 100.0 * (mape_ims - mape_dms) / mape_ims;
}

ReportRow ComparisonReport::row() const {
    return {dataset, n_series, total_size, test_size, eims.dataset_average,
            edms.dataset_average, delta};
}

namespace {

double mean_delta(const std::vector<ReportRow>& rows) {
    double sum = 0.0;
    for (const auto& r : rows) sum += r.delta;
    return sum / static_cast<double>(rows.size());
}

}  // namespace

std::string render_report_csv(const std::vector<ReportRow>& rows) {
    if (rows.empty()) {
        throw EmptyInput("no report rows to render");
    }
    std::ostringstream out;
    out << "dataset,n_series,total_size,test_size,eims_mape,edms_mape,delta_percent\n";
    for (const auto& r : rows) {
        out << r.dataset << "," << r.n_series << "," << r.total_size << "," << r.test_size << ","
            << format_double(r.eims_mape) << "," << format_double(r.edms_mape) << ","
            << format_double(r.delta) << "\n";
    }
    out << "Average,,,,,," << format_double(mean_delta(rows)) << "\n";
    return out.str();
}

std::string render_report_text(const std::vector<ReportRow>& rows, const std::string& title) {
    if (rows.empty()) {
        throw EmptyInput("no report rows to render");
    }
    std::ostringstream out;
    out << title << "\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-28s %9s %12s %10s %10s %10s\n", "dataset", "n_series",
                  "total/test", "EIMS", "EDMS", "delta(%)");
    out << line;
    for (const auto& r : rows) {
        const std::string sizes = std::to_string(r.total_size) + "/" + std::to_string(r.test_size);
        std::snprintf(line, sizeof line, "%-28s %9ld %12s %10.4f %10.4f %10.2f\n",
                      r.dataset.c_str(), r.n_series, sizes.c_str(), r.eims_mape, r.edms_mape,
                      r.delta);
        out << line;
    }
    std::snprintf(line, sizeof line, "%-28s %9s %12s %10s %10s %10.2f\n", "Average delta(%)", "",
                  "", "", "", mean_delta(rows));
    out << line;
    return out.str();
}

ParsedReport parse_report_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty report CSV", 1, 1);
    }
    if (split_csv_line(line) !=
        std::vector<std::string>{"dataset", "n_series", "total_size", "test_size", "eims_mape",
                                 "edms_mape", "delta_percent"}) {
        throw ParseError("unexpected report CSV header", 1, 1);
    }
    ParsedReport out;
    long row = 1;
    bool saw_average = false;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 7) {
            throw ParseError("report row has " + std::to_string(cells.size()) +
                                 " cells, expected 7",
                             row, 1);
        }
        if (cells[0] == "Average") {
            out.average_delta = parse_double_strict(cells[6], row, 7);
            saw_average = true;
            continue;
        }
        ReportRow r;
        r.dataset = cells[0];
        r.n_series = std::stol(cells[1]);
        r.total_size = std::stol(cells[2]);
        r.test_size = std::stol(cells[3]);
        r.eims_mape = parse_double_strict(cells[4], row, 5);
        r.edms_mape = parse_double_strict(cells[5], row, 6);
        r.delta = parse_double_strict(cells[6], row, 7);
        out.rows.push_back(std::move(r));
    }
    if (!saw_average) {
        throw ParseError("report CSV is missing the trailing Average row", row, 1);
    }
    return out;
}

}  // namespace edms
