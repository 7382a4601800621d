#ifndef LASEKIT_LASER_HPP
#define LASEKIT_LASER_HPP

// One value type for "a configured laser" regardless of model or
// parameterization, plus the pump-sweep engine built on it.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lasekit/dynamics.hpp"
#include "lasekit/model.hpp"
#include "lasekit/steady.hpp"

namespace lasekit {

enum class ModelKind { TwoLevel, SchemeA, SchemeB };

/// "two-level", "three-a", "three-b"
const char* to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(const std::string& text);

struct RegionReport {
    std::optional<double> threshold;
    std::optional<WindowReport> window;
    std::optional<LasingWindow> pump_restriction;  ///< two-level only
    std::optional<ExtremumReport> extremum;        ///< two-level and scheme B
    std::optional<double> n_min;                   ///< scheme A, physical configs
    std::optional<double> s_bound;                 ///< scheme A
    std::optional<double> saturation;              ///< scheme A, n as P1 -> inf
    std::optional<WindowReport> depletion_window;  ///< scheme A, gamma_02/gamma_10
};

class LaserModel {
public:
    using Reduced = std::variant<DimensionlessTwoLevel, DimensionlessSchemeA, DimensionlessSchemeB>;

    static LaserModel physical(const PhysicalTwoLevel& p);
    static LaserModel physical(const PhysicalThreeLevel& p);
    static LaserModel dimensionless(const DimensionlessTwoLevel& d);
    static LaserModel dimensionless(const DimensionlessSchemeA& d);
    static LaserModel dimensionless(const DimensionlessSchemeB& d);

    ModelKind kind() const { return m_kind; }
    bool is_physical() const { return m_physical.index() != 0; }
    const Reduced& reduced() const { return m_reduced; }
    /// Relative pump of a physical configuration; empty for dimensionless ones.
    std::optional<double> configured_pump() const { return m_pump; }

    /// Physical rate set at the given relative pump. Dimensionless models use
    /// the canonical gauge (kappa = 1, reference rate = 1).
    PhysicalTwoLevel physical_two(double pump) const;
    PhysicalThreeLevel physical_three(double pump) const;

    /// Unclamped bracket of the reduced photon-number formula.
    double raw_bracket(double pump) const;
    SteadyResult steady(double pump) const;
    std::optional<double> threshold() const;
    std::optional<LasingWindow> exact_window() const;
    RegionReport region() const;

    /// ODE fixed point from the default seeded initial state.
    SteadyResult settle_at(double pump, const IntegratorConfig& cfg, double seed_field = 1e-3,
                           bool* converged = nullptr) const;

    /// Ordered (name, value) record of every parameter, for file metadata.
    std::vector<std::pair<std::string, double>> parameter_record() const;

private:
    LaserModel() = default;

    ModelKind m_kind = ModelKind::TwoLevel;
    Reduced m_reduced;
    std::variant<std::monostate, PhysicalTwoLevel, PhysicalThreeLevel> m_physical;
    std::optional<double> m_pump;
};

enum class SweepScale { Linear, Log };

struct SweepOptions {
    unsigned threads = 1;
    /// Attach an ODE fixed point to every k-th sample (0 = none).
    std::size_t oracle_every = 0;
    IntegratorConfig integrator;
    double seed_field = 1e-3;
};

struct SweepSeries {
    std::vector<double> pump_values;
    std::vector<double> photon_numbers;
    std::vector<Regime> regime_flags;
    /// Same length as pump_values when an oracle was requested, NaN where
    /// skipped or unconverged; otherwise empty.
    std::vector<double> ode_photon_numbers;
    ModelKind model = ModelKind::TwoLevel;
    std::vector<std::pair<std::string, double>> metadata;

    std::size_t size() const { return pump_values.size(); }
};

/// count points spanning [lo, hi] inclusive; log spacing needs lo > 0.
std::vector<double> pump_grid(double lo, double hi, std::size_t count, SweepScale scale);

/// Analytic photon number over a pump grid. Points are independent; with
/// threads > 1 they are evaluated concurrently and assembled in order, so
/// the result is identical to the sequential one.
SweepSeries sweep(const LaserModel& model, double lo, double hi, std::size_t count,
                  SweepScale scale, const SweepOptions& options = {});

}  // namespace lasekit

#endif
