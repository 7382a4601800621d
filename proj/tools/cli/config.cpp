#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace lasekit::cli {

namespace {

struct KeySpec {
    std::vector<const char*> required;
    std::vector<std::pair<const char*, double>> optional;
};

KeySpec keys_for(lk_model_kind model, Parameterization p)
{
    if (p == Parameterization::Physical) {
        if (model == LK_MODEL_TWO_LEVEL)
            return {{"n_atoms", "coupling_g", "cavity_kappa", "gamma_decay", "pump_Gamma"},
                    {{"gamma_ph", 0.0}}};
        return {{"n_atoms", "coupling_g", "cavity_kappa", "gamma_21", "gamma_02", "gamma_10"},
                {{"gamma_ph", 0.0}}};
    }
    switch (model) {
    case LK_MODEL_TWO_LEVEL:
        return {{"lambda", "s"}, {{"delta", 0.0}}};
    case LK_MODEL_SCHEME_A:
        return {{"lambda1", "s1"}, {{"eps1", 0.0}, {"delta1", 0.0}}};
    case LK_MODEL_SCHEME_B:
        return {{"lambda2", "s2"}, {{"eps2", 0.0}, {"delta2", 0.0}}};
    }
    return {};
}

double number_at(const nlohmann::json& obj, const std::string& key, const std::string& where)
{
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(where + "." + key + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw ConfigError(where + "." + key + ": must be finite");
    return d;
}

}  // namespace

const char* to_string(Parameterization p)
{
    return p == Parameterization::Physical ? "physical" : "dimensionless";
}

double RunConfig::param(const std::string& key) const
{
    for (const auto& [k, v] : params)
        if (k == key)
            return v;
    throw ConfigError("params." + key + ": missing");
}

RunConfig parse_config(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw ConfigError("config: top level must be a JSON object");
    static const std::set<std::string> top_keys{"model", "parameterization", "params", "integrator",
                                                "expand_gauge"};
    for (const auto& [key, _] : doc.items())
        if (!top_keys.count(key))
            throw ConfigError(key + ": unknown top-level key");

    RunConfig cfg;
    if (!doc.contains("model") || !doc["model"].is_string())
        throw ConfigError("model: required string (two-level | three-a | three-b)");
    const auto model = doc["model"].get<std::string>();
    if (model == "two-level")
        cfg.model = LK_MODEL_TWO_LEVEL;
    else if (model == "three-a")
        cfg.model = LK_MODEL_SCHEME_A;
    else if (model == "three-b")
        cfg.model = LK_MODEL_SCHEME_B;
    else
        throw ConfigError("model: unknown model '" + model + "' (two-level | three-a | three-b)");

    if (!doc.contains("parameterization") || !doc["parameterization"].is_string())
        throw ConfigError("parameterization: required string (physical | dimensionless)");
    const auto param = doc["parameterization"].get<std::string>();
    if (param == "physical")
        cfg.parameterization = Parameterization::Physical;
    else if (param == "dimensionless")
        cfg.parameterization = Parameterization::Dimensionless;
    else
        throw ConfigError("parameterization: unknown value '" + param + "'");

    if (!doc.contains("params") || !doc["params"].is_object())
        throw ConfigError("params: required object");
    const auto& params = doc["params"];
    const auto keys = keys_for(cfg.model, cfg.parameterization);
    std::set<std::string> known;
    for (const char* key : keys.required) {
        known.insert(key);
        if (!params.contains(key))
            throw ConfigError(std::string("params.") + key + ": required for " + model + " (" + param + ")");
        cfg.params.emplace_back(key, number_at(params, key, "params"));
    }
    for (const auto& [key, fallback] : keys.optional) {
        known.insert(key);
        cfg.params.emplace_back(key, params.contains(key) ? number_at(params, key, "params") : fallback);
    }
    for (const auto& [key, _] : params.items())
        if (!known.count(key))
            throw ConfigError("params." + key + ": not a parameter of " + model + " (" + param + ")");

    lk_integrator_config_default(&cfg.integrator);
    if (doc.contains("integrator")) {
        const auto& integ = doc["integrator"];
        if (!integ.is_object())
            throw ConfigError("integrator: must be an object");
        for (const auto& [key, _] : integ.items()) {
            if (key == "rel_tol")
                cfg.integrator.rel_tol = number_at(integ, key, "integrator");
            else if (key == "abs_tol")
                cfg.integrator.abs_tol = number_at(integ, key, "integrator");
            else if (key == "max_step")
                cfg.integrator.max_step = number_at(integ, key, "integrator");
            else if (key == "t_max")
                cfg.integrator.t_max = number_at(integ, key, "integrator");
            else if (key == "steady_tol")
                cfg.integrator.steady_tol = number_at(integ, key, "integrator");
            else if (key == "output_every")
                cfg.integrator.output_every = number_at(integ, key, "integrator");
            else if (key == "max_steps") {
                const double v = number_at(integ, key, "integrator");
                if (v < 1 || v != std::floor(v))
                    throw ConfigError("integrator.max_steps: must be a positive integer");
                cfg.integrator.max_steps = static_cast<std::uint64_t>(v);
            } else {
                throw ConfigError("integrator." + key + ": unknown key");
            }
        }
        const auto& ic = cfg.integrator;
        if (!(ic.rel_tol > 0) || !(ic.abs_tol > 0) || !(ic.steady_tol > 0) || !(ic.max_step > 0))
            throw ConfigError("integrator: tolerances and max_step must be > 0");
        if (ic.output_every < 0)
            throw ConfigError("integrator.output_every: must be >= 0");
    }

    if (doc.contains("expand_gauge")) {
        if (!doc["expand_gauge"].is_boolean())
            throw ConfigError("expand_gauge: must be true or false");
        cfg.expand_gauge = doc["expand_gauge"].get<bool>();
    }
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

ModelHandle RunConfig::build() const
{
    lk_model* raw = nullptr;
    lk_status st = LK_OK;
    if (parameterization == Parameterization::Physical) {
        if (model == LK_MODEL_TWO_LEVEL) {
            lk_physical_two p{param("n_atoms"),     param("coupling_g"), param("cavity_kappa"),
                              param("gamma_decay"), param("pump_Gamma"), param("gamma_ph")};
            st = lk_model_from_physical_two(&p, &raw);
        } else {
            lk_physical_three p{param("n_atoms"),  param("coupling_g"), param("cavity_kappa"),
                                param("gamma_21"), param("gamma_02"),   param("gamma_10"),
                                param("gamma_ph")};
            st = lk_model_from_physical_three(&p, model, &raw);
        }
    } else {
        lk_dimensionless d{};
        switch (model) {
        case LK_MODEL_TWO_LEVEL:
            d = {param("lambda"), param("s"), 0.0, param("delta")};
            break;
        case LK_MODEL_SCHEME_A:
            d = {param("lambda1"), param("s1"), param("eps1"), param("delta1")};
            break;
        case LK_MODEL_SCHEME_B:
            d = {param("lambda2"), param("s2"), param("eps2"), param("delta2")};
            break;
        }
        st = lk_model_from_dimensionless(model, &d, &raw);
    }
    if (st != LK_OK)
        throw ConfigError(std::string("params: ") + lk_last_error());
    return ModelHandle(raw);
}

}  // namespace lasekit::cli
