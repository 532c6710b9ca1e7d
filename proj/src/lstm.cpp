#include "edms/lstm.hpp"

#include <cmath>

#include "edms/rng.hpp"

namespace edms {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct StepCache {
    Vector f, i, g, o, c, h;
};

/// Forward pass in normalized space; fills `cache` (one entry per step) when
/// requested and returns the normalized prediction.
double forward_normalized(const LstmParams& p, const Vector& window,
                          std::vector<StepCache>* cache, Vector* final_h, Vector* final_c) {
    const Index hs = p.hidden_size;
    Vector h = Vector::Zero(hs);
    Vector c = Vector::Zero(hs);
    if (cache) cache->resize(window.size());
    for (Index t = 0; t < window.size(); ++t) {
        const double x = window[t];
        const Vector f = (p.u_forget * x + p.w_forget * h).unaryExpr([](double v) { return sigmoid(v); });
        const Vector g = (p.u_cell * x + p.w_cell * h).array().tanh().matrix();
        const Vector i = (p.u_input * x + p.w_input * h).unaryExpr([](double v) { return sigmoid(v); });
        const Vector c_new = i.cwiseProduct(g) + f.cwiseProduct(c);
        const Vector o = (p.u_output * x + p.w_output * h).unaryExpr([](double v) { return sigmoid(v); });
        const Vector h_new = o.cwiseProduct(c_new.array().tanh().matrix());
        if (cache) (*cache)[t] = StepCache{f, i, g, o, c_new, h_new};
        c = c_new;
        h = h_new;
    }
    if (final_h) *final_h = h;
    if (final_c) *final_c = c;
    return p.readout_weights.dot(h) + p.readout_bias;
}

void zero_gradients(const LstmParams& p, LstmGradients* g) {
    const Index hs = p.hidden_size;
    g->u_forget = Vector::Zero(hs);
    g->u_input = Vector::Zero(hs);
    g->u_cell = Vector::Zero(hs);
    g->u_output = Vector::Zero(hs);
    g->w_forget = Matrix::Zero(hs, hs);
    g->w_input = Matrix::Zero(hs, hs);
    g->w_cell = Matrix::Zero(hs, hs);
    g->w_output = Matrix::Zero(hs, hs);
    g->readout_weights = Vector::Zero(hs);
    g->readout_bias = 0.0;
}

}  // namespace

Normalization zscore_normalization(const Vector& values) {
    Normalization norm;
    norm.mean = values.mean();
    const double var = (values.array() - norm.mean).square().mean();
    const double sd = std::sqrt(var);
    norm.scale = sd < 1e-12 ? 1.0 : sd;
    return norm;
}

void validate_lstm_params(const LstmParams& p) {
    const Index hs = p.hidden_size;
    if (hs < 1) throw ShapeMismatch("hidden_size must be positive");
    if (p.lookback < 1) throw ShapeMismatch("lookback must be positive");
    auto check_vec = [&](const Vector& v, const char* name) {
        if (v.size() != hs) throw ShapeMismatch(std::string(name) + " has wrong size");
        if (!v.allFinite()) throw NonFiniteValue(std::string(name) + " has non-finite entries");
    };
    auto check_mat = [&](const Matrix& m, const char* name) {
        if (m.rows() != hs || m.cols() != hs) {
            throw ShapeMismatch(std::string(name) + " has wrong shape");
        }
        if (!m.allFinite()) throw NonFiniteValue(std::string(name) + " has non-finite entries");
    };
    check_vec(p.u_forget, "u_forget");
    check_vec(p.u_input, "u_input");
    check_vec(p.u_cell, "u_cell");
    check_vec(p.u_output, "u_output");
    check_mat(p.w_forget, "w_forget");
    check_mat(p.w_input, "w_input");
    check_mat(p.w_cell, "w_cell");
    check_mat(p.w_output, "w_output");
    check_vec(p.readout_weights, "readout_weights");
    if (!std::isfinite(p.readout_bias)) throw NonFiniteValue("readout_bias is not finite");
    if (!(p.norm.scale > 0.0)) throw ShapeMismatch("normalization scale must be positive");
}

LstmForward lstm_forward(const LstmParams& params, const Vector& window) {
    validate_lstm_params(params);
    if (window.size() != params.lookback) {
        throw ShapeMismatch("window length " + std::to_string(window.size()) +
                            " does not match lookback " + std::to_string(params.lookback));
    }
    LstmForward out;
    const double pred = forward_normalized(params, window, nullptr, &out.hidden, &out.cell);
    out.prediction = pred * params.norm.scale + params.norm.mean;
    return out;
}

LstmParams init_lstm_params(Index hidden_size, Index lookback, std::uint64_t seed) {
    if (hidden_size < 1) throw ShapeMismatch("hidden_size must be positive");
    if (lookback < 1) throw ShapeMismatch("lookback must be positive");
    LstmParams p;
    p.hidden_size = hidden_size;
    p.lookback = lookback;
    p.seed = seed;
    const double r = 1.0 / std::sqrt(static_cast<double>(hidden_size));
    Rng rng(seed);
    auto fill_vec = [&](Vector& v) {
        v.resize(hidden_size);
        for (Index i = 0; i < hidden_size; ++i) v[i] = rng.uniform(-r, r);
    };
    auto fill_mat = [&](Matrix& m) {
        m.resize(hidden_size, hidden_size);
        for (Index c = 0; c < hidden_size; ++c) {
            for (Index rw = 0; rw < hidden_size; ++rw) m(rw, c) = rng.uniform(-r, r);
        }
    };
    fill_vec(p.u_forget);
    fill_vec(p.u_input);
    fill_vec(p.u_cell);
    fill_vec(p.u_output);
    fill_mat(p.w_forget);
    fill_mat(p.w_input);
    fill_mat(p.w_cell);
    fill_mat(p.w_output);
    fill_vec(p.readout_weights);
    p.readout_bias = rng.uniform(-r, r);
    return p;
}

double lstm_loss_and_gradient(const LstmParams& params, const std::vector<Vector>& windows,
                              const Vector& targets, LstmGradients* grads) {
    if (windows.empty()) throw EmptyInput("no training windows");
    if (static_cast<Index>(windows.size()) != targets.size()) {
        throw LengthMismatch("window/target count mismatch");
    }
    const Index hs = params.hidden_size;
    const double inv_n = 1.0 / static_cast<double>(windows.size());
    if (grads) zero_gradients(params, grads);

    double loss = 0.0;
    std::vector<StepCache> cache;
    for (std::size_t s = 0; s < windows.size(); ++s) {
        const Vector& window = windows[s];
        if (window.size() != params.lookback) {
            throw ShapeMismatch("training window length does not match lookback");
        }
        const double pred = forward_normalized(params, window, grads ? &cache : nullptr, nullptr, nullptr);
        const double err = pred - targets[static_cast<Index>(s)];
        loss += err * err * inv_n;
        if (!grads) continue;

        const Index L = window.size();
        const double dpred = 2.0 * err * inv_n;
        grads->readout_weights += dpred * cache[L - 1].h;
        grads->readout_bias += dpred;

        Vector dh = dpred * params.readout_weights;
        Vector dc_next = Vector::Zero(hs);
        for (Index t = L - 1; t >= 0; --t) {
            const StepCache& st = cache[t];
            const Vector h_prev = t > 0 ? cache[t - 1].h : Vector::Zero(hs);
            const Vector c_prev = t > 0 ? cache[t - 1].c : Vector::Zero(hs);
            const double x = window[t];

            const Vector tanh_c = st.c.array().tanh().matrix();
            const Vector d_o = dh.cwiseProduct(tanh_c);
            const Vector dc =
                dc_next + dh.cwiseProduct(st.o).cwiseProduct(
                              (1.0 - tanh_c.array().square()).matrix());
            const Vector d_i = dc.cwiseProduct(st.g);
            const Vector d_g = dc.cwiseProduct(st.i);
            const Vector d_f = dc.cwiseProduct(c_prev);
            dc_next = dc.cwiseProduct(st.f);

            const Vector da_o =
                d_o.cwiseProduct(st.o).cwiseProduct((1.0 - st.o.array()).matrix());
            const Vector da_i =
                d_i.cwiseProduct(st.i).cwiseProduct((1.0 - st.i.array()).matrix());
            const Vector da_g = d_g.cwiseProduct((1.0 - st.g.array().square()).matrix());
            const Vector da_f =
                d_f.cwiseProduct(st.f).cwiseProduct((1.0 - st.f.array()).matrix());

            grads->u_output += da_o * x;
            grads->u_input += da_i * x;
            grads->u_cell += da_g * x;
            grads->u_forget += da_f * x;
            grads->w_output.noalias() += da_o * h_prev.transpose();
            grads->w_input.noalias() += da_i * h_prev.transpose();
            grads->w_cell.noalias() += da_g * h_prev.transpose();
            grads->w_forget.noalias() += da_f * h_prev.transpose();

            dh = params.w_output.transpose() * da_o + params.w_input.transpose() * da_i +
                 params.w_cell.transpose() * da_g + params.w_forget.transpose() * da_f;
        }
    }
    return loss;
}

void make_lstm_windows(const Vector& normalized, Index lookback, std::vector<Vector>* windows,
                       std::vector<double>* targets) {
    if (lookback < 1) throw ShapeMismatch("lookback must be positive");
    if (normalized.size() < lookback + 1) {
        throw SeriesTooShort("need at least lookback+1 observations to form one window");
    }
    windows->clear();
    targets->clear();
    for (Index t = 0; t + lookback < normalized.size(); ++t) {
        windows->push_back(normalized.segment(t, lookback));
        targets->push_back(normalized[t + lookback]);
    }
}

Index lstm_parameter_count(const LstmParams& p) {
    const Index hs = p.hidden_size;
    return 4 * hs + 4 * hs * hs + hs + 1;
}

Vector lstm_pack(const LstmParams& p) {
    Vector theta(lstm_parameter_count(p));
    Index at = 0;
    auto put_vec = [&](const Vector& v) {
        theta.segment(at, v.size()) = v;
        at += v.size();
    };
    auto put_mat = [&](const Matrix& m) {
        theta.segment(at, m.size()) = Eigen::Map<const Vector>(m.data(), m.size());
        at += m.size();
    };
    put_vec(p.u_forget);
    put_vec(p.u_input);
    put_vec(p.u_cell);
    put_vec(p.u_output);
    put_mat(p.w_forget);
    put_mat(p.w_input);
    put_mat(p.w_cell);
    put_mat(p.w_output);
    put_vec(p.readout_weights);
    theta[at++] = p.readout_bias;
    return theta;
}

void lstm_unpack(const Vector& theta, LstmParams* p) {
    if (theta.size() != lstm_parameter_count(*p)) {
        throw ShapeMismatch("flat parameter vector has wrong length");
    }
    const Index hs = p->hidden_size;
    Index at = 0;
    auto get_vec = [&](Vector& v) {
        v = theta.segment(at, hs);
        at += hs;
    };
    auto get_mat = [&](Matrix& m) {
        m = Eigen::Map<const Matrix>(theta.segment(at, hs * hs).data(), hs, hs);
        at += hs * hs;
    };
    get_vec(p->u_forget);
    get_vec(p->u_input);
    get_vec(p->u_cell);
    get_vec(p->u_output);
    get_mat(p->w_forget);
    get_mat(p->w_input);
    get_mat(p->w_cell);
    get_mat(p->w_output);
    get_vec(p->readout_weights);
    p->readout_bias = theta[at++];
}

Vector lstm_pack_gradients(const LstmGradients& g) {
    LstmParams view;
    view.hidden_size = g.u_forget.size();
    view.lookback = 1;
    view.u_forget = g.u_forget;
    view.u_input = g.u_input;
    view.u_cell = g.u_cell;
    view.u_output = g.u_output;
    view.w_forget = g.w_forget;
    view.w_input = g.w_input;
    view.w_cell = g.w_cell;
    view.w_output = g.w_output;
    view.readout_weights = g.readout_weights;
    view.readout_bias = g.readout_bias;
    return lstm_pack(view);
}

LstmParams fit_lstm_windows(const std::vector<Vector>& windows, const Vector& targets,
                            const LstmTrainConfig& config) {
    if (windows.empty()) throw EmptyInput("no training windows");
    if (config.lookback < 1) throw ShapeMismatch("lookback must be resolved before fitting");
    if (config.epochs < 1) throw ConfigError("epochs must be at least 1");

    LstmParams params = init_lstm_params(config.hidden_size, config.lookback, config.seed);

    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double adam_eps = 1e-8;

    Vector theta = lstm_pack(params);
    Vector m = Vector::Zero(theta.size());
    Vector v = Vector::Zero(theta.size());
    LstmGradients grads;
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const double loss = lstm_loss_and_gradient(params, windows, targets, &grads);
        if (!std::isfinite(loss)) {
            throw DivergedLoss("training loss became non-finite at epoch " +
                               std::to_string(epoch));
        }
        const Vector g = lstm_pack_gradients(grads);
        m = beta1 * m + (1.0 - beta1) * g;
        v = beta2 * v + (1.0 - beta2) * g.cwiseProduct(g);
        const double mc = 1.0 - std::pow(beta1, epoch);
        const double vc = 1.0 - std::pow(beta2, epoch);
        theta.array() -= config.learning_rate * (m.array() / mc) /
                         ((v.array() / vc).sqrt() + adam_eps);
        if (!theta.allFinite()) {
            throw DivergedLoss("parameters became non-finite at epoch " + std::to_string(epoch));
        }
        lstm_unpack(theta, &params);
    }
    return params;
}

LstmParams fit_lstm(const Series& train, const LstmTrainConfig& config) {
    validate_series(train);
    if (config.lookback < 1) {
        throw ConfigError("lookback must be resolved (positive) before fitting");
    }
    if (train.length() < config.lookback + 2) {
        throw SeriesTooShort("LSTM fit needs at least lookback+2 = " +
                             std::to_string(config.lookback + 2) + " observations, got " +
                             std::to_string(train.length()));
    }
    const Normalization norm = zscore_normalization(train.values);
    const Vector normalized = (train.values.array() - norm.mean) / norm.scale;
    std::vector<Vector> windows;
    std::vector<double> targets;
    make_lstm_windows(normalized, config.lookback, &windows, &targets);
    LstmParams params = fit_lstm_windows(
        windows, Eigen::Map<const Vector>(targets.data(), static_cast<Index>(targets.size())),
        config);
    params.norm = norm;
    return params;
}

Vector lstm_roll_forecast(const LstmParams& params, const Vector& context, int h) {
    validate_lstm_params(params);
    if (h < 1) throw Error("forecast horizon must be at least 1");
    if (context.size() < params.lookback) {
        throw SeriesTooShort("context shorter than lookback window");
    }
    Vector window = ((context.tail(params.lookback).array() - params.norm.mean) /
                     params.norm.scale)
                        .matrix();
    Vector out(h);
    for (int k = 0; k < h; ++k) {
        const double pred_norm = forward_normalized(params, window, nullptr, nullptr, nullptr);
        out[k] = pred_norm * params.norm.scale + params.norm.mean;
        // slide the window, feeding the normalized prediction back in
        if (params.lookback > 1) {
            window.head(params.lookback - 1) = window.tail(params.lookback - 1).eval();
        }
        window[params.lookback - 1] = pred_norm;
    }
    return out;
}

}  // namespace edms
