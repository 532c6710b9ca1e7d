#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "edms/errors.hpp"

namespace edms {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class Frequency { Annual, Quarterly, Monthly, Daily };

std::string frequency_name(Frequency f);
Frequency frequency_from_name(const std::string& name);

/// Periods per year; also the month stride between consecutive observations
/// for the calendar frequencies (12, 3, 1). Daily has no month stride.
int months_per_period(Frequency f);

/// Default LSTM input window length, in native periods.
Index default_lookback(Frequency f);

/// Default retrain points in native periods: the one- and five-year marks for
/// calendar data, one and five months of trading days for daily data.
std::vector<int> default_schedule_steps(Frequency f);

/// Round-trip safe formatting for CSV artifacts (17 significant digits).
std::string format_double(double v);

/// Strict finite-double parse of a whole token.
double parse_double_strict(const std::string& token, long row, long column);

/// FNV-1a accumulation helpers used for seed derivation and panel fingerprints.
std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 14695981039346656037ull);
std::uint64_t fnv1a64_str(const std::string& s, std::uint64_t h);
std::uint64_t fnv1a64_u64(std::uint64_t v, std::uint64_t h);

}  // namespace edms
