#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include <json.hpp>

namespace lasekit::cli {

namespace {

using nlohmann::json;

json number(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return v;
}

json window_json(const lk_window& w)
{
    if (!w.present)
        return nullptr;
    return json{{"lower", number(w.lower)}, {"upper", number(w.upper)}, {"exact", w.exact != 0}};
}

void flatten(const json& node, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows)
{
    if (node.is_object()) {
        for (const auto& [key, value] : node.items())
            flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
        return;
    }
    if (node.is_null())
        rows.emplace_back(prefix, "");
    else if (node.is_string())
        rows.emplace_back(prefix, node.get<std::string>());
    else if (node.is_boolean())
        rows.emplace_back(prefix, node.get<bool>() ? "true" : "false");
    else
        rows.emplace_back(prefix, format_double(node.get<double>(), precision_from_env()));
}

void emit(const json& doc, OutputFormat format, std::ostream& out)
{
    if (format == OutputFormat::Json) {
        out << doc.dump(2) << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    out << "key,value\n";
    for (const auto& [k, v] : rows)
        out << k << ',' << v << '\n';
}

lk_model_info info_of(const lk_model* model)
{
    lk_model_info info{};
    check(lk_model_get_info(model, &info), "model info");
    return info;
}

double resolve_pump(const lk_model* model, std::optional<double> pump)
{
    if (pump)
        return *pump;
    const auto info = info_of(model);
    if (!info.has_configured_pump)
        throw ConfigError("--pump: required for this configuration (no pump rate in params)");
    return info.configured_pump;
}

/// Opens `path` for writing ("-" is `fallback`); returns nullptr on failure.
std::ostream* open_output(const std::string& path, std::ofstream& file, std::ostream& fallback)
{
    if (path == "-")
        return &fallback;
    file.open(path, std::ios::binary | std::ios::trunc);
    return file ? &file : nullptr;
}

int report_failure(std::ostream& err, const std::exception& e, int code)
{
    err << "error: " << e.what() << '\n';
    return code;
}

int exit_for(lk_status status)
{
    switch (status) {
    case LK_E_STIFFNESS:
    case LK_E_STEP_LIMIT:
        return kExitIntegrator;
    case LK_E_INTERNAL:
        return kExitUsage;
    default:
        return kExitConfig;
    }
}

/// Runs a command body and maps exceptions to exit codes.
template <class F>
int run(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const ConfigError& e) {
        return report_failure(err, e, kExitConfig);
    } catch (const ApiError& e) {
        return report_failure(err, e, exit_for(e.status()));
    } catch (const std::invalid_argument& e) {
        return report_failure(err, e, kExitConfig);
    } catch (const std::exception& e) {
        return report_failure(err, e, kExitUsage);
    }
}

ModelHandle dynamics_model(const RunConfig& cfg)
{
    auto model = cfg.build();
    if (cfg.parameterization == Parameterization::Physical)
        return model;
    if (!cfg.expand_gauge)
        throw ConfigError("parameterization: dynamics needs a physical configuration "
                          "(or \"expand_gauge\": true to use kappa = 1 and a unit reference rate)");
    lk_model* raw = nullptr;
    check(lk_model_gauge_expand(model.get(), &raw), "gauge expansion");
    return ModelHandle(raw);
}

}  // namespace

std::optional<OutputFormat> parse_format(const std::string& text)
{
    if (text == "json")
        return OutputFormat::Json;
    if (text == "csv")
        return OutputFormat::Csv;
    return std::nullopt;
}

Metadata model_metadata(const lk_model* model)
{
    Metadata md;
    md.emplace_back("model", lk_model_kind_name(info_of(model).kind));
    const int precision = precision_from_env();
    const std::size_t count = lk_model_parameter_count(model);
    for (std::size_t i = 0; i < count; ++i) {
        const char* name = nullptr;
        double value = 0.0;
        check(lk_model_parameter(model, i, &name, &value), "parameter record");
        md.emplace_back(name, format_double(value, precision));
    }
    return md;
}

std::pair<double, double> preset_range(const lk_model* model, std::optional<double> upper_override)
{
    lk_region_report r{};
    check(lk_region(model, &r), "region");
    double lo = 1e-2;
    if (r.has_threshold && std::isfinite(r.threshold))
        lo = std::max(1e-2, 0.5 * r.threshold);
    double upper = 1e2;
    if (upper_override)
        upper = *upper_override;
    else if (r.window.present && std::isfinite(r.window.upper))
        upper = r.window.upper;
    double hi = 1.2 * upper;
    if (!(hi > lo))
        hi = 100.0 * lo;
    return {lo, hi};
}

int cmd_steady(const RunConfig& cfg, const SteadyOptions& opt, std::ostream& out, std::ostream& err)
{
    return run(err, [&] {
        const auto model = cfg.build();
        const double pump = resolve_pump(model.get(), opt.pump);
        lk_steady_report r{};
        check(lk_steady(model.get(), pump, &r), "steady");
        const bool three = cfg.model != LK_MODEL_TWO_LEVEL;
        json doc;
        doc["model"] = lk_model_kind_name(cfg.model);
        doc["parameterization"] = to_string(cfg.parameterization);
        doc["pump"] = number(pump);
        doc["photon_number"] = number(r.photon_number);
        doc["regime"] = lk_regime_name(r.regime);
        doc["raw_bracket"] = number(r.raw_bracket);
        doc["raw_photon_number"] = number(r.raw_photon_number);
        doc["gamma_perp"] = number(r.gamma_perp);
        json pops{{"rho11", number(r.rho11)}, {"rho00", number(r.rho00)}};
        if (three)
            pops["rho22"] = number(r.rho22);
        doc["populations"] = pops;
        if (three) {
            doc["gamma_parallel"] = number(r.gamma_parallel);
            doc["inversion"] = number(r.inversion);
        }
        emit(doc, opt.format, out);
        return static_cast<int>(kExitOk);
    });
}

int cmd_region(const RunConfig& cfg, const RegionOptions& opt, std::ostream& out, std::ostream& err)
{
    return run(err, [&] {
        const auto model = cfg.build();
        lk_region_report r{};
        check(lk_region(model.get(), &r), "region");
        json doc;
        doc["model"] = lk_model_kind_name(cfg.model);
        doc["parameterization"] = to_string(cfg.parameterization);
        doc["outcome"] = r.lasing_possible ? "Lasing" : "NoLasing";
        doc["threshold"] = r.has_threshold ? number(r.threshold) : json(nullptr);
        doc["window"] = window_json(r.window);
        doc["window_asymptotic"] = window_json(r.window_asymptotic);
        doc["window_upper_relative_error"] = number(r.window_upper_relative_error);
        if (cfg.model == LK_MODEL_TWO_LEVEL)
            doc["pump_restriction"] = window_json(r.pump_restriction);
        if (r.has_extremum) {
            json ex{{"p_closed_form", number(r.p_closed_form)},
                    {"p_exact", number(r.p_exact)},
                    {"n_at_exact", number(r.n_at_exact)},
                    {"n_at_closed_form", number(r.n_at_closed_form)},
                    {"discrepancy", number(r.extremum_discrepancy)}};
            if (r.has_n_max_approx) {
                ex["n_max_approx"] = number(r.n_max_approx);
                ex["n_max_relative_error"] = number(r.n_max_relative_error);
            }
            doc["extremum"] = ex;
        } else {
            doc["extremum"] = nullptr;
        }
        if (cfg.model == LK_MODEL_SCHEME_A) {
            doc["n_min"] = r.has_n_min ? number(r.n_min) : json(nullptr);
            doc["s_bound"] = r.has_s_bound ? number(r.s_bound) : json(nullptr);
            doc["saturation"] = r.has_saturation ? number(r.saturation) : json(nullptr);
            doc["depletion_window"] = window_json(r.depletion_window);
            doc["depletion_window_asymptotic"] = window_json(r.depletion_window_asymptotic);
        }
        emit(doc, opt.format, out);
        return static_cast<int>(kExitOk);
    });
}

namespace {

SweepTable table_from(const lk_model* model, const lk_sweep_options& so, const Metadata& extra)
{
    lk_series* raw = nullptr;
    check(lk_sweep(model, &so, &raw), "sweep");
    SeriesHandle series(raw);
    SweepTable table;
    table.metadata = extra;
    const auto md = model_metadata(model);
    table.metadata.insert(table.metadata.end(), md.begin(), md.end());
    const int precision = precision_from_env();
    table.metadata.emplace_back("scale", so.scale == LK_SCALE_LOG ? "log" : "linear");
    table.metadata.emplace_back("points", std::to_string(so.count));
    table.metadata.emplace_back("pump_min", format_double(so.pump_min, precision));
    table.metadata.emplace_back("pump_max", format_double(so.pump_max, precision));
    table.has_oracle = lk_series_has_oracle(series.get()) != 0;
    const std::size_t n = lk_series_size(series.get());
    table.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        SweepRow row;
        lk_regime regime{};
        double ode = 0.0;
        check(lk_series_get(series.get(), i, &row.pump, &row.photon_number, &regime, &ode), "series");
        row.regime = lk_regime_name(regime);
        if (table.has_oracle && !std::isnan(ode))
            row.ode_photon_number = ode;
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace

int cmd_sweep(const RunConfig& cfg, const SweepOptionsCli& opt, std::ostream& out, std::ostream& err)
{
    return run(err, [&] {
        ModelHandle model = opt.oracle_every > 0 ? dynamics_model(cfg) : cfg.build();
        lk_sweep_options so{};
        lk_sweep_options_default(&so);
        if (opt.scale == "linear")
            so.scale = LK_SCALE_LINEAR;
        else if (opt.scale == "log")
            so.scale = LK_SCALE_LOG;
        else
            throw ConfigError("--scale: expected linear or log");
        if (!opt.pump_min || !opt.pump_max) {
            const auto [lo, hi] = preset_range(model.get());
            so.pump_min = opt.pump_min.value_or(lo);
            so.pump_max = opt.pump_max.value_or(hi);
        } else {
            so.pump_min = *opt.pump_min;
            so.pump_max = *opt.pump_max;
        }
        so.count = opt.points;
        so.threads = opt.threads;
        so.oracle_every = opt.oracle_every;
        so.integrator = cfg.integrator;
        const auto table = table_from(model.get(), so, {{"command", "sweep"}});

        std::ofstream file;
        std::ostream* os = open_output(opt.out_path, file, out);
        if (!os) {
            err << "error: cannot open '" << opt.out_path << "' for writing\n";
            return static_cast<int>(kExitIo);
        }
        write_sweep_csv(*os, table, precision_from_env());
        os->flush();
        if (!*os) {
            err << "error: write to '" << opt.out_path << "' failed\n";
            return static_cast<int>(kExitIo);
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_dynamics(const RunConfig& cfg, const DynamicsOptions& opt, std::ostream& out, std::ostream& err)
{
    return run(err, [&] {
        const auto model = dynamics_model(cfg);
        const double pump = resolve_pump(model.get(), opt.pump);
        lk_integrator_config ic = cfg.integrator;
        if (opt.t_max) {
            if (!(*opt.t_max > 0) || !std::isfinite(*opt.t_max))
                throw ConfigError("--t-max: must be finite and > 0");
            ic.t_max = *opt.t_max;
        }
        double horizon = ic.t_max;
        if (!(horizon > 0))
            check(lk_default_t_max(model.get(), pump, &horizon), "default t_max");
        if (ic.output_every <= 0)
            ic.output_every = horizon / 2000.0;
        if (!(opt.seed_field >= 0) || !std::isfinite(opt.seed_field))
            throw ConfigError("--seed-field: must be finite and >= 0");

        lk_state init{};
        check(lk_default_initial_state(model.get(), pump, opt.seed_field, &init), "initial state");
        lk_settle_result result{};
        lk_trajectory* raw = nullptr;
        const lk_status st = lk_settle(model.get(), pump, &init, &ic, &result, &raw);
        TrajectoryHandle traj(raw);
        if (st != LK_OK && st != LK_E_NO_CONVERGENCE)
            throw ApiError(st, "dynamics");

        std::ofstream file;
        std::ostream* os = open_output(opt.out_path, file, out);
        if (!os) {
            err << "error: cannot open '" << opt.out_path << "' for writing\n";
            return static_cast<int>(kExitIo);
        }
        const int precision = precision_from_env();
        auto f = [&](double v) { return format_double(v, precision); };
        const bool three = cfg.model != LK_MODEL_TWO_LEVEL;
        *os << "# command=dynamics\n";
        for (const auto& [k, v] : model_metadata(model.get()))
            *os << "# " << k << '=' << v << '\n';
        *os << "# pump=" << f(pump) << '\n';
        *os << "# seed_field=" << f(opt.seed_field) << '\n';
        *os << "# t_max=" << f(horizon) << '\n';
        *os << (three ? "t,rho11,rho22,y,x,n\n" : "t,rho11,y,x,n\n");
        const std::size_t n = lk_trajectory_size(traj.get());
        for (std::size_t i = 0; i < n; ++i) {
            double t = 0.0;
            lk_state s{};
            check(lk_trajectory_get(traj.get(), i, &t, &s), "trajectory");
            *os << f(t) << ',' << f(s.rho11) << ',';
            if (three)
                *os << f(s.rho22) << ',';
            *os << f(s.y) << ',' << f(s.x) << ',' << f(s.x * s.x) << '\n';
        }
        *os << "# settle=" << (result.converged ? "converged" : "no-convergence")
            << " t_final=" << f(result.t_final) << " photon_number=" << f(result.photon_number) << '\n';
        os->flush();
        if (!*os) {
            err << "error: write to '" << opt.out_path << "' failed\n";
            return static_cast<int>(kExitIo);
        }
        return static_cast<int>(kExitOk);
    });
}

const std::vector<FigurePreset>& figure_presets()
{
    static const std::vector<FigurePreset> presets{
        {"fig2", LK_MODEL_TWO_LEVEL, 1e3, 0.0, 1e5, {7e-7, 1e-6, 1.33e-6}, std::nullopt},
        {"fig4a", LK_MODEL_SCHEME_A, 1e6, 0.01, 0.0, {0.0, 0.2, 0.5}, 1e3},
        {"fig4b", LK_MODEL_SCHEME_B, 1e5, 0.0, 0.1, {0.1, 0.02, 0.01}, std::nullopt},
    };
    return presets;
}

const FigurePreset* find_figure(const std::string& name)
{
    for (const auto& p : figure_presets())
        if (p.name == name)
            return &p;
    return nullptr;
}

SweepTable figure_curve(const FigurePreset& preset, std::size_t curve)
{
    const lk_dimensionless d{preset.lambda, preset.s_values.at(curve), preset.eps, preset.delta};
    lk_model* raw = nullptr;
    check(lk_model_from_dimensionless(preset.kind, &d, &raw), "figure model");
    ModelHandle model(raw);
    const auto [lo, hi] = preset_range(model.get(), preset.upper_override);
    lk_sweep_options so{};
    lk_sweep_options_default(&so);
    so.pump_min = lo;
    so.pump_max = hi;
    so.count = 400;
    so.scale = LK_SCALE_LOG;
    return table_from(model.get(), so,
                      {{"command", "figure"}, {"figure", preset.name}, {"curve", std::to_string(curve + 1)}});
}

int cmd_figure(const std::string& name, const FigureOptions& opt, std::ostream& out, std::ostream& err)
{
    return run(err, [&] {
        const auto* preset = find_figure(name);
        if (!preset)
            throw ConfigError("figure: unknown preset '" + name + "' (fig2 | fig4a | fig4b)");
        std::error_code ec;
        std::filesystem::create_directories(opt.out_dir, ec);
        if (ec) {
            err << "error: cannot create directory '" << opt.out_dir << "': " << ec.message() << '\n';
            return static_cast<int>(kExitIo);
        }
        const int precision = precision_from_env();
        for (std::size_t k = 0; k < preset->s_values.size(); ++k) {
            const auto table = figure_curve(*preset, k);
            const auto path = std::filesystem::path(opt.out_dir) /
                              (preset->name + "_curve" + std::to_string(k + 1) + ".csv");
            std::ofstream file(path, std::ios::binary | std::ios::trunc);
            if (!file) {
                err << "error: cannot open '" << path.string() << "' for writing\n";
                return static_cast<int>(kExitIo);
            }
            write_sweep_csv(file, table, precision);
            file.flush();
            if (!file) {
                err << "error: write to '" << path.string() << "' failed\n";
                return static_cast<int>(kExitIo);
            }
            out << path.string() << '\n';
        }
        return static_cast<int>(kExitOk);
    });
}

}  // namespace lasekit::cli
