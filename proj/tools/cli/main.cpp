#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace lasekit::cli;

namespace {

struct Shared {
    std::string config_path;
    std::string format = "json";
};

std::optional<double> opt_value(CLI::Option* opt, double value)
{
    if (opt->count() == 0)
        return std::nullopt;
    return value;
}

int with_config(const std::string& path, const std::function<int(const RunConfig&)>& body)
{
    RunConfig cfg;
    try {
        cfg = load_config(path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return body(cfg);
}

OutputFormat format_or_throw(const std::string& text)
{
    if (auto f = parse_format(text))
        return *f;
    throw CLI::ValidationError("--format", "expected csv or json");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"lasekit: steady-state, sweep and dynamics tool for two- and three-level laser models"};
    app.require_subcommand(1);

    Shared shared;
    std::function<int()> action;

    double pump = 0.0;
    auto* steady = app.add_subcommand("steady", "Closed-form steady state at one pump value");
    steady->add_option("--config", shared.config_path, "JSON run configuration")->required();
    auto* steady_pump = steady->add_option("--pump", pump, "Relative pump (default: configured pump)");
    steady->add_option("--format", shared.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    steady->callback([&] {
        action = [&] {
            SteadyOptions opt;
            opt.pump = opt_value(steady_pump, pump);
            opt.format = format_or_throw(shared.format);
            return with_config(shared.config_path,
                               [&](const RunConfig& c) { return cmd_steady(c, opt, std::cout, std::cerr); });
        };
    });

    auto* region = app.add_subcommand("region", "Threshold, lasing window and extremum report");
    region->add_option("--config", shared.config_path, "JSON run configuration")->required();
    region->add_option("--format", shared.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    region->callback([&] {
        action = [&] {
            RegionOptions opt;
            opt.format = format_or_throw(shared.format);
            return with_config(shared.config_path,
                               [&](const RunConfig& c) { return cmd_region(c, opt, std::cout, std::cerr); });
        };
    });

    SweepOptionsCli sweep_opt;
    double pump_min = 0.0;
    double pump_max = 0.0;
    auto* sweep = app.add_subcommand("sweep", "Photon number over a pump grid, as CSV");
    sweep->add_option("--config", shared.config_path, "JSON run configuration")->required();
    auto* o_min = sweep->add_option("--pump-min", pump_min, "First pump value");
    auto* o_max = sweep->add_option("--pump-max", pump_max, "Last pump value");
    sweep->add_option("--points", sweep_opt.points, "Number of grid points")->check(CLI::Range(2, 100000000));
    sweep->add_option("--scale", sweep_opt.scale, "linear or log")->check(CLI::IsMember({"linear", "log"}));
    sweep->add_option("--out", sweep_opt.out_path, "Output CSV path ('-' for stdout)");
    sweep->add_option("--threads", sweep_opt.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    sweep->add_option("--oracle-every", sweep_opt.oracle_every,
                      "Also settle the ODE at every k-th point (physical configs)");
    sweep->callback([&] {
        action = [&] {
            sweep_opt.pump_min = opt_value(o_min, pump_min);
            sweep_opt.pump_max = opt_value(o_max, pump_max);
            return with_config(shared.config_path,
                               [&](const RunConfig& c) { return cmd_sweep(c, sweep_opt, std::cout, std::cerr); });
        };
    });

    DynamicsOptions dyn_opt;
    double dyn_pump = 0.0;
    double t_max = 0.0;
    auto* dynamics = app.add_subcommand("dynamics", "Integrate the Bloch equations to steady state");
    dynamics->add_option("--config", shared.config_path, "JSON run configuration")->required();
    auto* d_pump = dynamics->add_option("--pump", dyn_pump, "Relative pump (default: configured pump)");
    auto* d_tmax = dynamics->add_option("--t-max", t_max, "Integration horizon");
    dynamics->add_option("--seed-field", dyn_opt.seed_field, "Initial field amplitude x(0)");
    dynamics->add_option("--out", dyn_opt.out_path, "Output CSV path ('-' for stdout)");
    dynamics->callback([&] {
        action = [&] {
            dyn_opt.pump = opt_value(d_pump, dyn_pump);
            dyn_opt.t_max = opt_value(d_tmax, t_max);
            return with_config(shared.config_path, [&](const RunConfig& c) {
                return cmd_dynamics(c, dyn_opt, std::cout, std::cerr);
            });
        };
    });

    FigureOptions fig_opt;
    std::string figure_name;
    auto* figure = app.add_subcommand("figure", "Write the CSV curves of a figure preset");
    figure->add_option("name", figure_name, "fig2, fig4a or fig4b")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig4a", "fig4b"}));
    figure->add_option("--out", fig_opt.out_dir, "Output directory");
    figure->callback([&] {
        action = [&] { return cmd_figure(figure_name, fig_opt, std::cout, std::cerr); };
    });

    try {
        app.parse(argc, argv);
        return action();
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }
}
