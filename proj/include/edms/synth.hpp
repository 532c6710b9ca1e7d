#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edms/series.hpp"

namespace edms {

enum class SynthKind { Affine, AffineBreak, Ar1, Geometric };

std::string synth_kind_name(SynthKind k);
SynthKind synth_kind_from_name(const std::string& name);

/// Deterministic positive-valued generators standing in for real panels.
struct SynthConfig {
    SynthKind kind = SynthKind::Affine;
    int n_series = 5;
    Index length = 60;
    Frequency frequency = Frequency::Annual;
    std::uint64_t seed = 1;
    double noise = 0.0;            // stddev of additive noise (Ar1: innovation sd)
    double break_fraction = 0.6;   // AffineBreak: where the slope changes
    double break_slope_factor = -0.5;  // AffineBreak: new slope = factor * old
    double ar_coefficient = 0.8;   // Ar1 only
};

std::vector<Series> make_synthetic_panel(const SynthConfig& config);

}  // namespace edms
