#include "edms/artifacts.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "edms/csv.hpp"

namespace edms {

void make_dirs(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) {
        throw ArtifactError("cannot create directory '" + path + "': " + ec.message());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ArtifactError("cannot write '" + path + "'");
    }
    out << content;
    if (!out) {
        throw ArtifactError("write failed for '" + path + "'");
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArtifactError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string forecast_csv(const ForecastRun& run) {
    std::ostringstream out;
    out << "series_id,step,value\n";
    for (const auto& sr : run.series) {
        if (!sr.ok) continue;
        for (Index i = 0; i < sr.forecast.size(); ++i) {
            out << sr.id << "," << (i + 1) << "," << format_double(sr.forecast[i]) << "\n";
        }
    }
    return out.str();
}

SeriesValues read_series_values_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty forecast CSV", 1, 1);
    }
    SeriesValues out;
    std::map<std::string, std::vector<double>> acc;
    std::vector<std::string> order;
    long row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 3) {
            throw ParseError("expected 3 cells at row " + std::to_string(row), row, 1);
        }
        if (acc.find(cells[0]) == acc.end()) order.push_back(cells[0]);
        acc[cells[0]].push_back(parse_double_strict(cells[2], row, 3));
    }
    for (const auto& id : order) {
        const auto& v = acc.at(id);
        out.emplace_back(id, Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size())));
    }
    return out;
}

std::string combined_forecast_csv(const ForecastRun* eims, const ForecastRun* edms) {
    if (!eims && !edms) {
        throw EmptyInput("no runs to serialize");
    }
    const ForecastRun* lead = eims ? eims : edms;
    std::ostringstream out;
    out << "series_id,step,eims_value,edms_value\n";
    for (std::size_t j = 0; j < lead->series.size(); ++j) {
        const std::string& id = lead->series[j].id;
        const SeriesRun* a = eims ? &eims->series[j] : nullptr;
        const SeriesRun* b = nullptr;
        if (edms) {
            b = &edms->series[j];
            if (b->id != id) {
                throw KeyMismatch("method runs cover different series orders");
            }
        }
        const bool a_ok = a && a->ok;
        const bool b_ok = b && b->ok;
        if (!a_ok && !b_ok) continue;
        const Index h = a_ok ? a->forecast.size() : b->forecast.size();
        for (Index i = 0; i < h; ++i) {
            out << id << "," << (i + 1) << ",";
            if (a_ok) out << format_double(a->forecast[i]);
            out << ",";
            if (b_ok) out << format_double(b->forecast[i]);
            out << "\n";
        }
    }
    return out.str();
}

CombinedForecasts read_combined_forecast_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty forecast CSV", 1, 1);
    }
    if (split_csv_line(line) !=
        std::vector<std::string>{"series_id", "step", "eims_value", "edms_value"}) {
        throw ParseError("unexpected forecast CSV header", 1, 1);
    }
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> acc;
    std::vector<std::string> order;
    long row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 4) {
            throw ParseError("expected 4 cells at row " + std::to_string(row), row, 1);
        }
        if (acc.find(cells[0]) == acc.end()) order.push_back(cells[0]);
        auto& entry = acc[cells[0]];
        if (!cells[2].empty()) entry.first.push_back(parse_double_strict(cells[2], row, 3));
        if (!cells[3].empty()) entry.second.push_back(parse_double_strict(cells[3], row, 4));
    }
    CombinedForecasts out;
    for (const auto& id : order) {
        const auto& [e, d] = acc.at(id);
        if (!e.empty()) {
            out.eims.emplace_back(id,
                                  Eigen::Map<const Vector>(e.data(), static_cast<Index>(e.size())));
        }
        if (!d.empty()) {
            out.edms.emplace_back(id,
                                  Eigen::Map<const Vector>(d.data(), static_cast<Index>(d.size())));
        }
    }
    return out;
}

std::string actuals_csv(const SeriesValues& actuals) {
    std::ostringstream out;
    out << "series_id,step,value\n";
    for (const auto& [id, values] : actuals) {
        for (Index i = 0; i < values.size(); ++i) {
            out << id << "," << (i + 1) << "," << format_double(values[i]) << "\n";
        }
    }
    return out.str();
}

std::string weights_csv(const std::vector<const ForecastRun*>& runs) {
    std::ostringstream out;
    out << "series_id,method,stage,member,mae,weight\n";
    for (const ForecastRun* run : runs) {
        for (const auto& sr : run->series) {
            if (!sr.ok) continue;
            for (const auto& stage : sr.stages) {
                for (std::size_t m = 0; m < stage.weights.weights.size(); ++m) {
                    out << sr.id << "," << run->method << "," << stage.stage << ","
                        << stage.weights.weights[m].first << ","
                        << format_double(stage.report.maes[m].second) << ","
                        << format_double(stage.weights.weights[m].second) << "\n";
                }
            }
        }
    }
    return out.str();
}

namespace {

nlohmann::ordered_json keyed_values_json(const KeyedValues& kv) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

nlohmann::ordered_json vector_json(const Vector& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

}  // namespace

nlohmann::ordered_json run_audit_json(const ForecastRun& run) {
    nlohmann::ordered_json j;
    j["method"] = run.method;
    j["horizon"] = run.horizon;
    j["schedule"] = run.schedule_used;
    j["seed"] = run.seed;
    j["warnings"] = run.warnings;
    nlohmann::ordered_json series = nlohmann::ordered_json::array();
    for (const auto& sr : run.series) {
        nlohmann::ordered_json s;
        s["id"] = sr.id;
        s["ok"] = sr.ok;
        if (!sr.ok) {
            s["error"] = sr.error;
            series.push_back(std::move(s));
            continue;
        }
        nlohmann::ordered_json stages = nlohmann::ordered_json::array();
        for (const auto& st : sr.stages) {
            nlohmann::ordered_json sj;
            sj["stage"] = st.stage;
            sj["fit_length"] = st.fit_length;
            sj["first_step"] = st.first_step;
            sj["horizon"] = st.horizon;
            sj["member_errors"] = keyed_values_json(st.report.maes);
            sj["performance_horizon"] = st.report.horizon_used;
            sj["weights"] = keyed_values_json(st.weights.weights);
            nlohmann::ordered_json mf = nlohmann::ordered_json::object();
            for (const auto& [label, f] : st.member_forecasts) mf[label] = vector_json(f);
            sj["member_forecasts"] = std::move(mf);
            sj["combined"] = vector_json(st.combined);
            stages.push_back(std::move(sj));
        }
        s["stages"] = std::move(stages);
        series.push_back(std::move(s));
    }
    j["series"] = std::move(series);
    return j;
}

std::string plot_csv(const Vector& actual, const Vector& eims, const Vector& edms) {
    if (actual.size() != eims.size() || actual.size() != edms.size()) {
        throw LengthMismatch("plot series must share one horizon");
    }
    std::ostringstream out;
    out << "step,actual,eims,edms\n";
    for (Index i = 0; i < actual.size(); ++i) {
        out << (i + 1) << "," << format_double(actual[i]) << "," << format_double(eims[i]) << ","
            << format_double(edms[i]) << "\n";
    }
    return out.str();
}

}  // namespace edms
