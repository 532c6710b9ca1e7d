#include "edms/model.hpp"

namespace edms {

std::string kind_name(ForecasterKind kind) {
    switch (kind) {
        case ForecasterKind::AvgGrowth: return "avg_growth";
        case ForecasterKind::Linear: return "linear";
        case ForecasterKind::Polynomial: return "polynomial";
        case ForecasterKind::Holt: return "holt";
        case ForecasterKind::Lstm: return "lstm";
    }
    return "linear";
}

ForecasterKind kind_from_name(const std::string& name) {
    if (name == "avg_growth") return ForecasterKind::AvgGrowth;
    if (name == "linear") return ForecasterKind::Linear;
    if (name == "polynomial") return ForecasterKind::Polynomial;
    if (name == "holt") return ForecasterKind::Holt;
    if (name == "lstm") return ForecasterKind::Lstm;
    throw ConfigError("unknown model kind '" + name + "'");
}

TrainedModel fit_model(ForecasterKind kind, const Series& train, const MemberConfig& config) {
    TrainedModel model;
    model.kind = kind;
    model.train_length = train.length();
    switch (kind) {
        case ForecasterKind::AvgGrowth:
            model.params = fit_avg_growth(train, config.additive_growth);
            break;
        case ForecasterKind::Linear:
            model.params = fit_regression(train, 1);
            break;
        case ForecasterKind::Polynomial:
            model.params = fit_regression(train, 2);
            break;
        case ForecasterKind::Holt:
            model.params = fit_holt(train);
            break;
        case ForecasterKind::Lstm: {
            LstmTrainConfig cfg = config.lstm;
            if (cfg.lookback < 1) cfg.lookback = default_lookback(train.frequency);
            model.params = fit_lstm(train, cfg);
            break;
        }
    }
    return model;
}

Vector forecast_model(const TrainedModel& model, const Series& context, int h) {
    if (h < 1) {
        throw Error("forecast horizon must be at least 1");
    }
    if (context.length() < model.train_length) {
        throw LengthMismatch("context is shorter than the model's training series");
    }
    const Index offset = context.length() - model.train_length;
    switch (model.kind) {
        case ForecasterKind::AvgGrowth:
            return forecast_avg_growth(std::get<GrowthParams>(model.params), h, offset);
        case ForecasterKind::Linear:
        case ForecasterKind::Polynomial:
            return forecast_regression(std::get<RegressionParams>(model.params),
                                       context.length(), h);
        case ForecasterKind::Holt:
            return forecast_holt(std::get<HoltParams>(model.params), h, offset);
        case ForecasterKind::Lstm:
            return lstm_roll_forecast(std::get<LstmParams>(model.params), context.values, h);
    }
    throw Error("unreachable model kind");
}

namespace {

nlohmann::ordered_json vector_to_json(const Vector& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Vector vector_from_json(const nlohmann::json& j) {
    Vector v(static_cast<Index>(j.size()));
    Index at = 0;
    for (const auto& x : j) v[at++] = x.get<double>();
    return v;
}

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    const Index rows = static_cast<Index>(j.size());
    if (rows == 0) return Matrix();
    const Index cols = static_cast<Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (static_cast<Index>(row.size()) != cols) {
            throw ShapeMismatch("ragged matrix in JSON snapshot");
        }
        for (Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return m;
}

}  // namespace

nlohmann::ordered_json model_to_json(const TrainedModel& model) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(model.kind);
    j["train_length"] = model.train_length;
    nlohmann::ordered_json p;
    switch (model.kind) {
        case ForecasterKind::AvgGrowth: {
            const auto& gp = std::get<GrowthParams>(model.params);
            p["g"] = gp.g;
            p["last_value"] = gp.last_value;
            p["additive"] = gp.additive;
            break;
        }
        case ForecasterKind::Linear:
        case ForecasterKind::Polynomial: {
            const auto& rp = std::get<RegressionParams>(model.params);
            p["coefficients"] = vector_to_json(rp.coefficients);
            p["degree"] = rp.degree;
            p["time_origin"] = rp.time_origin;
            break;
        }
        case ForecasterKind::Holt: {
            const auto& hp = std::get<HoltParams>(model.params);
            p["alpha"] = hp.alpha;
            p["gamma"] = hp.gamma;
            p["level"] = hp.level;
            p["trend"] = hp.trend;
            break;
        }
        case ForecasterKind::Lstm: {
            const auto& lp = std::get<LstmParams>(model.params);
            p["hidden_size"] = lp.hidden_size;
            p["lookback"] = lp.lookback;
            p["seed"] = lp.seed;
            p["u_forget"] = vector_to_json(lp.u_forget);
            p["u_input"] = vector_to_json(lp.u_input);
            p["u_cell"] = vector_to_json(lp.u_cell);
            p["u_output"] = vector_to_json(lp.u_output);
            p["w_forget"] = matrix_to_json(lp.w_forget);
            p["w_input"] = matrix_to_json(lp.w_input);
            p["w_cell"] = matrix_to_json(lp.w_cell);
            p["w_output"] = matrix_to_json(lp.w_output);
            p["readout_weights"] = vector_to_json(lp.readout_weights);
            p["readout_bias"] = lp.readout_bias;
            p["norm_mean"] = lp.norm.mean;
            p["norm_scale"] = lp.norm.scale;
            break;
        }
    }
    j["params"] = std::move(p);
    return j;
}

TrainedModel model_from_json(const nlohmann::json& j) {
    TrainedModel model;
    model.kind = kind_from_name(j.at("kind").get<std::string>());
    model.train_length = j.at("train_length").get<Index>();
    const auto& p = j.at("params");
    switch (model.kind) {
        case ForecasterKind::AvgGrowth: {
            GrowthParams gp;
            gp.g = p.at("g").get<double>();
            gp.last_value = p.at("last_value").get<double>();
            gp.additive = p.at("additive").get<bool>();
            model.params = gp;
            break;
        }
        case ForecasterKind::Linear:
        case ForecasterKind::Polynomial: {
            RegressionParams rp;
            rp.coefficients = vector_from_json(p.at("coefficients"));
            rp.degree = p.at("degree").get<int>();
            rp.time_origin = p.at("time_origin").get<int>();
            if (rp.coefficients.size() != rp.degree + 1) {
                throw ShapeMismatch("coefficient count does not match degree");
            }
            model.params = rp;
            break;
        }
        case ForecasterKind::Holt: {
            HoltParams hp;
            hp.alpha = p.at("alpha").get<double>();
            hp.gamma = p.at("gamma").get<double>();
            hp.level = p.at("level").get<double>();
            hp.trend = p.at("trend").get<double>();
            model.params = hp;
            break;
        }
        case ForecasterKind::Lstm: {
            LstmParams lp;
            lp.hidden_size = p.at("hidden_size").get<Index>();
            lp.lookback = p.at("lookback").get<Index>();
            lp.seed = p.at("seed").get<std::uint64_t>();
            lp.u_forget = vector_from_json(p.at("u_forget"));
            lp.u_input = vector_from_json(p.at("u_input"));
            lp.u_cell = vector_from_json(p.at("u_cell"));
            lp.u_output = vector_from_json(p.at("u_output"));
            lp.w_forget = matrix_from_json(p.at("w_forget"));
            lp.w_input = matrix_from_json(p.at("w_input"));
            lp.w_cell = matrix_from_json(p.at("w_cell"));
            lp.w_output = matrix_from_json(p.at("w_output"));
            lp.readout_weights = vector_from_json(p.at("readout_weights"));
            lp.readout_bias = p.at("readout_bias").get<double>();
            lp.norm.mean = p.at("norm_mean").get<double>();
            lp.norm.scale = p.at("norm_scale").get<double>();
            validate_lstm_params(lp);
            model.params = lp;
            break;
        }
    }
    return model;
}

}  // namespace edms
