#pragma once

#include <cstdint>
#include <vector>

#include "edms/series.hpp"

namespace edms {

/// Per-series z-score transform; domain = normalized * scale + mean.
struct Normalization {
    double mean = 0.0;
    double scale = 1.0;
};

Normalization zscore_normalization(const Vector& values);

/// Single-layer LSTM over a scalar input sequence. Gates have no bias terms;
/// the scalar forecast is an affine read-out of the final hidden output.
/// Column convention: pre-activation = u * x_t + W * h_{t-1}.
struct LstmParams {
    Index hidden_size = 0;
    Index lookback = 0;
    std::uint64_t seed = 0;

    Vector u_forget, u_input, u_cell, u_output;
    Matrix w_forget, w_input, w_cell, w_output;
    Vector readout_weights;
    double readout_bias = 0.0;

    Normalization norm;
};

void validate_lstm_params(const LstmParams& params);

struct LstmForward {
    double prediction = 0.0;  // de-normalized (domain units)
    Vector hidden;            // final hidden output
    Vector cell;              // final cell state
};

/// Runs the module over a normalized window (length = lookback) starting from
/// zero hidden output and zero cell state. The returned prediction is
/// de-normalized; hidden/cell stay in normalized space.
LstmForward lstm_forward(const LstmParams& params, const Vector& window);

struct LstmTrainConfig {
    Index hidden_size = 16;
    Index lookback = 0;  // 0 = resolve from the series frequency
    int epochs = 200;
    double learning_rate = 1e-2;
    std::uint64_t seed = 0;
};

/// Deterministic initialization: every weight uniform in +-1/sqrt(hidden_size).
LstmParams init_lstm_params(Index hidden_size, Index lookback, std::uint64_t seed);

struct LstmGradients {
    Vector u_forget, u_input, u_cell, u_output;
    Matrix w_forget, w_input, w_cell, w_output;
    Vector readout_weights;
    double readout_bias = 0.0;
};

/// Mean squared error of the batch in normalized space; when `grads` is
/// non-null it is filled with the full backpropagation-through-time gradient.
double lstm_loss_and_gradient(const LstmParams& params, const std::vector<Vector>& windows,
                              const Vector& targets, LstmGradients* grads);

/// Supervised windows over an already-normalized sequence: lookback inputs
/// predicting the next value.
void make_lstm_windows(const Vector& normalized, Index lookback, std::vector<Vector>* windows,
                       std::vector<double>* targets);

/// Training core on prepared normalized windows (identity normalization).
/// Full-batch Adam (beta1 0.9, beta2 0.999) for a fixed epoch count.
LstmParams fit_lstm_windows(const std::vector<Vector>& windows, const Vector& targets,
                            const LstmTrainConfig& config);

/// Fits on a series: z-score from the training data only, then the window core.
LstmParams fit_lstm(const Series& train, const LstmTrainConfig& config);

/// Iterative multi-step roll: each one-step prediction is fed back into the
/// input window. `context` is in domain units and must cover one lookback.
Vector lstm_roll_forecast(const LstmParams& params, const Vector& context, int h);

/// Flat parameter vector (gates, recurrent matrices, read-out) for the
/// optimizer and finite-difference checks. Order is fixed.
Index lstm_parameter_count(const LstmParams& params);
Vector lstm_pack(const LstmParams& params);
void lstm_unpack(const Vector& theta, LstmParams* params);
Vector lstm_pack_gradients(const LstmGradients& grads);

}  // namespace edms
