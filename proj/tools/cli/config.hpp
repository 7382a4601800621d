#ifndef LASEKIT_CLI_CONFIG_HPP
#define LASEKIT_CLI_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "handles.hpp"
#include "lasekit/lasekit.h"

namespace lasekit::cli {

/// Invalid or incomplete run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Parameterization { Physical, Dimensionless };

/// Parsed form of a JSON document such as
///
///   { "model": "three-b", "parameterization": "physical",
///     "params": { "n_atoms": 100, "coupling_g": 1, ... },
///     "integrator": { "rel_tol": 1e-9 }, "expand_gauge": false }
struct RunConfig {
    lk_model_kind model = LK_MODEL_TWO_LEVEL;
    Parameterization parameterization = Parameterization::Dimensionless;
    std::vector<std::pair<std::string, double>> params;
    lk_integrator_config integrator{};
    bool expand_gauge = false;

    double param(const std::string& key) const;
    /// Builds the model through the C API; invalid values become ConfigError.
    ModelHandle build() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

const char* to_string(Parameterization p);

}  // namespace lasekit::cli

#endif
