#pragma once

#include <string>
#include <vector>

#include "edms/series.hpp"

namespace edms {

enum class CsvLayout { Wide, Long };

struct CsvSchema {
    CsvLayout layout = CsvLayout::Wide;
    Frequency frequency = Frequency::Annual;
};

/// Calendar date (ISO-8601 `YYYY-MM-DD` in files).
struct Date {
    int year = 2000;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;
};

Date parse_date(const std::string& token, long row, long column);
std::string format_date(const Date& d);

/// The date one native period after `d` (calendar-day increment for daily).
Date next_period(const Date& d, Frequency f);

/// Loads a CSV panel file. Wide layout: a `date` column plus one numeric
/// column per series id; a column may start late (leading blanks) but any
/// blank after its first value is an error. Long layout: `date,id,value`
/// rows, chronological within each id. Date spacing is validated against the
/// declared frequency (strictly increasing dates for daily data, exact
/// month strides otherwise). No imputation is ever performed.
std::vector<Series> load_panel_csv(const std::string& path, const CsvSchema& schema);

/// Writes a wide-layout panel CSV starting at `start`, one row per period.
void write_panel_csv_wide(const std::string& path, const std::vector<Series>& series,
                          Frequency frequency, const Date& start);

/// Splits one CSV record on commas (no quoting support) and strips a trailing CR.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace edms
