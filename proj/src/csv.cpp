#include "edms/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace edms {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int table[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return table[month - 1];
}

long month_index(const Date& d) {
    return static_cast<long>(d.year) * 12 + (d.month - 1);
}

void check_spacing(const Date& prev, const Date& cur, Frequency f, long row) {
    if (f == Frequency::Daily) {
        if (!(prev < cur)) {
            throw SpacingError("dates not strictly increasing at row " + std::to_string(row) +
                               " (" + format_date(prev) + " then " + format_date(cur) + ")");
        }
        return;
    }
    const long stride = months_per_period(f);
    if (month_index(cur) - month_index(prev) != stride) {
        throw SpacingError("date spacing at row " + std::to_string(row) + " (" +
                           format_date(prev) + " to " + format_date(cur) +
                           ") does not match frequency " + frequency_name(f));
    }
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    cells.push_back(cur);
    return cells;
}

Date parse_date(const std::string& token, long row, long column) {
    Date d;
    char extra = 0;
    const int got = std::sscanf(token.c_str(), "%d-%d-%d%c", &d.year, &d.month, &d.day, &extra);
    if (got != 3 || token.size() != 10 || token[4] != '-' || token[7] != '-') {
        throw ParseError("cannot parse '" + token + "' as an ISO-8601 date at row " +
                             std::to_string(row) + ", column " + std::to_string(column),
                         row, column);
    }
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month)) {
        throw ParseError("invalid calendar date '" + token + "' at row " + std::to_string(row),
                         row, column);
    }
    return d;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

Date next_period(const Date& d, Frequency f) {
    Date out = d;
    if (f == Frequency::Daily) {
        out.day += 1;
        if (out.day > days_in_month(out.year, out.month)) {
            out.day = 1;
            out.month += 1;
            if (out.month > 12) {
                out.month = 1;
                out.year += 1;
            }
        }
        return out;
    }
    const long idx = month_index(d) + months_per_period(f);
    out.year = static_cast<int>(idx / 12);
    out.month = static_cast<int>(idx % 12) + 1;
    out.day = std::min(d.day, days_in_month(out.year, out.month));
    return out;
}

namespace {

std::vector<Series> load_wide(std::istream& in, const CsvSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty file", 1, 1);
    }
    auto header = split_csv_line(line);
    if (header.size() < 2 || lower(header[0]) != "date") {
        throw ParseError("wide layout requires a 'date' first column plus one column per series",
                         1, 1);
    }
    const std::size_t n_cols = header.size();
    std::vector<std::string> ids(header.begin() + 1, header.end());
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i].empty()) {
                throw ParseError("empty series id in header", 1, static_cast<long>(i + 2));
            }
            if (!seen.insert(ids[i]).second) {
                throw DuplicateSeriesId("duplicate series id '" + ids[i] + "' in header");
            }
        }
    }

    std::vector<std::vector<double>> columns(ids.size());
    std::vector<bool> started(ids.size(), false);
    std::optional<Date> prev_date;
    long row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != n_cols) {
            throw ParseError("row " + std::to_string(row) + " has " +
                                 std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(n_cols),
                             row, 1);
        }
        const Date date = parse_date(cells[0], row, 1);
        if (prev_date) check_spacing(*prev_date, date, schema.frequency, row);
        prev_date = date;

        for (std::size_t c = 0; c < ids.size(); ++c) {
            const std::string& cell = cells[c + 1];
            if (cell.empty()) {
                if (started[c]) {
                    throw ParseError("empty cell for series '" + ids[c] + "' at row " +
                                         std::to_string(row) + ", column " +
                                         std::to_string(c + 2) +
                                         " (missing values are not imputed)",
                                     row, static_cast<long>(c + 2));
                }
                continue;  // series has not started yet
            }
            columns[c].push_back(parse_double_strict(cell, row, static_cast<long>(c + 2)));
            started[c] = true;
        }
    }

    std::vector<Series> out;
    out.reserve(ids.size());
    for (std::size_t c = 0; c < ids.size(); ++c) {
        if (columns[c].empty()) {
            throw ParseError("series '" + ids[c] + "' has no observations", 0,
                             static_cast<long>(c + 2));
        }
        Series s;
        s.id = ids[c];
        s.frequency = schema.frequency;
        s.start = 0;
        s.values = Eigen::Map<const Vector>(columns[c].data(), static_cast<Index>(columns[c].size()));
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Series> load_long(std::istream& in, const CsvSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty file", 1, 1);
    }
    auto header = split_csv_line(line);
    if (header.size() != 3 || lower(header[0]) != "date" || lower(header[1]) != "id" ||
        lower(header[2]) != "value") {
        throw ParseError("long layout requires the header date,id,value", 1, 1);
    }

    struct Accum {
        std::vector<double> values;
        Date last_date;
    };
    std::vector<std::string> order;
    std::map<std::string, Accum> groups;

    long row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 3) {
            throw ParseError("row " + std::to_string(row) + " has " +
                                 std::to_string(cells.size()) + " cells, expected 3",
                             row, 1);
        }
        const Date date = parse_date(cells[0], row, 1);
        const std::string& id = cells[1];
        if (id.empty()) {
            throw ParseError("empty series id at row " + std::to_string(row), row, 2);
        }
        const double value = parse_double_strict(cells[2], row, 3);

        auto it = groups.find(id);
        if (it == groups.end()) {
            order.push_back(id);
            groups[id] = Accum{{value}, date};
            continue;
        }
        if (it->second.last_date == date) {
            throw DuplicateSeriesId("series '" + id + "' has two rows for date " +
                                    format_date(date) + " (row " + std::to_string(row) + ")");
        }
        check_spacing(it->second.last_date, date, schema.frequency, row);
        it->second.values.push_back(value);
        it->second.last_date = date;
    }

    std::vector<Series> out;
    out.reserve(order.size());
    for (const auto& id : order) {
        const auto& acc = groups.at(id);
        Series s;
        s.id = id;
        s.frequency = schema.frequency;
        s.start = 0;
        s.values = Eigen::Map<const Vector>(acc.values.data(), static_cast<Index>(acc.values.size()));
        out.push_back(std::move(s));
    }
    if (out.empty()) {
        throw ParseError("file contains no data rows", row, 1);
    }
    return out;
}

}  // namespace

std::vector<Series> load_panel_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return schema.layout == CsvLayout::Wide ? load_wide(in, schema) : load_long(in, schema);
}

void write_panel_csv_wide(const std::string& path, const std::vector<Series>& series,
                          Frequency frequency, const Date& start) {
    if (series.empty()) {
        throw EmptyPanel("nothing to write");
    }
    Index max_len = 0;
    for (const auto& s : series) max_len = std::max(max_len, s.length());

    std::ofstream out(path);
    if (!out) {
        throw ArtifactError("cannot write '" + path + "'");
    }
    out << "date";
    for (const auto& s : series) out << "," << s.id;
    out << "\n";

    Date d = start;
    for (Index r = 0; r < max_len; ++r) {
        out << format_date(d);
        for (const auto& s : series) {
            // Shorter series start late: pad the front with blanks.
            const Index lead = max_len - s.length();
            out << ",";
            if (r >= lead) out << format_double(s.values[r - lead]);
        }
        out << "\n";
        d = next_period(d, frequency);
    }
}

}  // namespace edms
