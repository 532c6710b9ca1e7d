#include "edms/synth.hpp"

#include <cmath>
#include <cstdio>

#include "edms/rng.hpp"

namespace edms {

std::string synth_kind_name(SynthKind k) {
    switch (k) {
        case SynthKind::Affine: return "affine";
        case SynthKind::AffineBreak: return "affine_break";
        case SynthKind::Ar1: return "ar1";
        case SynthKind::Geometric: return "geometric";
    }
    return "affine";
}

SynthKind synth_kind_from_name(const std::string& name) {
    if (name == "affine") return SynthKind::Affine;
    if (name == "affine_break") return SynthKind::AffineBreak;
    if (name == "ar1") return SynthKind::Ar1;
    if (name == "geometric") return SynthKind::Geometric;
    throw ConfigError("unknown generator '" + name +
                      "' (expected affine|affine_break|ar1|geometric)");
}

std::vector<Series> make_synthetic_panel(const SynthConfig& config) {
    if (config.n_series < 1) throw ConfigError("n_series must be positive");
    if (config.length < 4) throw ConfigError("length must be at least 4");
    if (!(config.break_fraction > 0.0 && config.break_fraction < 1.0)) {
        throw ConfigError("break_fraction must lie in (0,1)");
    }

    std::vector<Series> out;
    out.reserve(config.n_series);
    for (int j = 0; j < config.n_series; ++j) {
        Rng rng(fnv1a64_u64(static_cast<std::uint64_t>(j),
                            fnv1a64_u64(config.seed, 14695981039346656037ull)));
        Series s;
        char id[16];
        std::snprintf(id, sizeof id, "s%02d", j + 1);
        s.id = id;
        s.frequency = config.frequency;
        s.start = 0;
        s.values.resize(config.length);

        switch (config.kind) {
            case SynthKind::Affine: {
                const double intercept = rng.uniform(50.0, 150.0);
                const double slope = rng.uniform(0.5, 3.0);
                for (Index t = 0; t < config.length; ++t) {
                    s.values[t] = intercept + slope * static_cast<double>(t) +
                                  config.noise * rng.normal();
                }
                break;
            }
            case SynthKind::AffineBreak: {
                const double intercept = rng.uniform(100.0, 200.0);
                const double slope = rng.uniform(1.0, 3.0);
                const Index break_at = static_cast<Index>(
                    std::floor(config.break_fraction * static_cast<double>(config.length)));
                double value = intercept;
                for (Index t = 0; t < config.length; ++t) {
                    if (t > 0) value += t <= break_at ? slope : slope * config.break_slope_factor;
                    s.values[t] = value + config.noise * rng.normal();
                }
                break;
            }
            case SynthKind::Ar1: {
                const double base = rng.uniform(80.0, 120.0);
                const double sd = config.noise > 0.0 ? config.noise : 1.0;
                double x = 0.0;
                for (Index t = 0; t < config.length; ++t) {
                    x = config.ar_coefficient * x + sd * rng.normal();
                    s.values[t] = base + x;
                }
                break;
            }
            case SynthKind::Geometric: {
                const double start = rng.uniform(50.0, 150.0);
                const double rate = rng.uniform(1.005, 1.03);
                double value = start;
                for (Index t = 0; t < config.length; ++t) {
                    s.values[t] = value * (1.0 + config.noise * rng.normal());
                    value *= rate;
                }
                break;
            }
        }

        // Generators are meant to mimic positive-valued indicators; clamp away
        // from zero so ratio-based members stay fittable under heavy noise.
        for (Index t = 0; t < config.length; ++t) {
            if (s.values[t] < 1.0) s.values[t] = 1.0;
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace edms
