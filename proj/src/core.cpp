#include "edms/core.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace edms {

std::string frequency_name(Frequency f) {
    switch (f) {
        case Frequency::Annual: return "annual";
        case Frequency::Quarterly: return "quarterly";
        case Frequency::Monthly: return "monthly";
        case Frequency::Daily: return "daily";
    }
    return "annual";
}

Frequency frequency_from_name(const std::string& name) {
    if (name == "annual") return Frequency::Annual;
    if (name == "quarterly") return Frequency::Quarterly;
    if (name == "monthly") return Frequency::Monthly;
    if (name == "daily") return Frequency::Daily;
    throw ConfigError("unknown frequency '" + name + "' (expected annual|quarterly|monthly|daily)");
}

int months_per_period(Frequency f) {
    switch (f) {
        case Frequency::Annual: return 12;
        case Frequency::Quarterly: return 3;
        case Frequency::Monthly: return 1;
        case Frequency::Daily: return 0;
    }
    return 12;
}

Index default_lookback(Frequency f) {
    switch (f) {
        case Frequency::Annual: return 4;
        case Frequency::Quarterly: return 8;
        case Frequency::Monthly: return 12;
        case Frequency::Daily: return 20;
    }
    return 4;
}

std::vector<int> default_schedule_steps(Frequency f) {
    switch (f) {
        case Frequency::Annual: return {1, 5};
        case Frequency::Quarterly: return {4, 20};
        case Frequency::Monthly: return {12, 60};
        case Frequency::Daily: return {21, 105};
    }
    return {1, 5};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double_strict(const std::string& token, long row, long column) {
    if (token.empty()) {
        throw ParseError("empty numeric cell at row " + std::to_string(row) + ", column " +
                             std::to_string(column),
                         row, column);
    }
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
        throw ParseError("cannot parse '" + token + "' as a number at row " + std::to_string(row) +
                             ", column " + std::to_string(column),
                         row, column);
    }
    if (!std::isfinite(v)) {
        throw NonFiniteValue("non-finite value '" + token + "' at row " + std::to_string(row) +
                             ", column " + std::to_string(column));
    }
    return v;
}

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a64_str(const std::string& s, std::uint64_t h) {
    return fnv1a64(s.data(), s.size(), h);
}

std::uint64_t fnv1a64_u64(std::uint64_t v, std::uint64_t h) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    return fnv1a64(bytes, 8, h);
}

}  // namespace edms
