#ifndef LASEKIT_CLI_COMMANDS_HPP
#define LASEKIT_CLI_COMMANDS_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "csv.hpp"

namespace lasekit::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitConfig = 2,
    kExitIo = 3,
    kExitIntegrator = 4,
};

enum class OutputFormat { Json, Csv };

std::optional<OutputFormat> parse_format(const std::string& text);

struct SteadyOptions {
    std::optional<double> pump;
    OutputFormat format = OutputFormat::Json;
};

struct RegionOptions {
    OutputFormat format = OutputFormat::Json;
};

struct SweepOptionsCli {
    std::optional<double> pump_min;
    std::optional<double> pump_max;
    std::size_t points = 200;
    std::string scale = "linear";
    std::string out_path = "-";
    unsigned threads = 1;
    std::size_t oracle_every = 0;
};

struct DynamicsOptions {
    std::optional<double> pump;
    std::optional<double> t_max;
    double seed_field = 1e-3;
    std::string out_path = "-";
};

struct FigureOptions {
    std::string out_dir = ".";
};

/// Presets reproduced by `figure`: a model kind, the fixed reduced
/// parameters and one varied value per curve.
struct FigurePreset {
    std::string name;
    lk_model_kind kind;
    double lambda;
    double eps;
    double delta;
    std::vector<double> s_values;
    std::optional<double> upper_override;
};

const std::vector<FigurePreset>& figure_presets();
const FigurePreset* find_figure(const std::string& name);

/// Default pump range [max(1e-2, 0.5 threshold), 1.2 upper edge].
std::pair<double, double> preset_range(const lk_model* model, std::optional<double> upper_override = {});

/// Parameter record of a model as CSV metadata.
Metadata model_metadata(const lk_model* model);

int cmd_steady(const RunConfig& cfg, const SteadyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_region(const RunConfig& cfg, const RegionOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, const SweepOptionsCli& opt, std::ostream& out, std::ostream& err);
int cmd_dynamics(const RunConfig& cfg, const DynamicsOptions& opt, std::ostream& out, std::ostream& err);
int cmd_figure(const std::string& name, const FigureOptions& opt, std::ostream& out, std::ostream& err);

/// Writes one figure curve as a sweep table; used by cmd_figure and tests.
SweepTable figure_curve(const FigurePreset& preset, std::size_t curve);

}  // namespace lasekit::cli

#endif
