#ifndef LASEKIT_STEADY_HPP
#define LASEKIT_STEADY_HPP

// Closed-form steady states of the two-level and three-level lasers.
//
// Every bound that is usually quoted under a "much greater than one"
// assumption is returned twice: as the exact root/maximizer of the photon
// number expression and as the simplified asymptotic form, so the quality of
// the approximation can be inspected. An empty std::optional means the laser
// cannot lase for any pump value (no lasing window).

#include <optional>

#include "lasekit/model.hpp"

namespace lasekit {

/// Pump interval on which the photon number is positive.
struct LasingWindow {
    double lower = 0.0;
    double upper = 0.0;  ///< +inf when the window is unbounded
    bool exact = true;   ///< false for the asymptotic (simplified) form
};

struct WindowReport {
    LasingWindow exact;
    LasingWindow asymptotic;
    /// |asymptotic.upper - exact.upper| / exact.upper
    double upper_relative_error = 0.0;
};

struct ExtremumReport {
    double p_closed_form = 0.0;       ///< closed-form (approximate) optimum pump
    double p_exact = 0.0;       ///< numerically maximized optimum pump
    double n_at_exact = 0.0;
    double n_at_closed_form = 0.0;
    double discrepancy = 0.0;   ///< |p_closed_form - p_exact| / p_exact
    /// Two-level only: (1/8)(N g / kappa)^2 = lambda / 4 s and its relative
    /// error against n_at_exact.
    std::optional<double> n_max_approx;
    std::optional<double> n_max_relative_error;
};

// --- two-level -------------------------------------------------------------

/// P - 1 - (P + 1)(P + 1 + delta) s
double raw_bracket_two(const DimensionlessTwoLevel& d, double pump);
SteadyResult n_two_level(const DimensionlessTwoLevel& d, double pump);
/// Two-level closed form with gamma_perp from the physical rates.
SteadyResult n_two_physical(const PhysicalTwoLevel& p);

std::optional<double> threshold_two(const DimensionlessTwoLevel& d);
std::optional<WindowReport> window_two(const DimensionlessTwoLevel& d);
/// Necessary (not sufficient) pump restriction 1 < P < 1/s - 1 - delta.
LasingWindow pump_restriction_two(const DimensionlessTwoLevel& d);
std::optional<ExtremumReport> optimum_two(const DimensionlessTwoLevel& d);

// --- three-level -----------------------------------------------------------

/// Unclamped photon number of the three-level steady state.
double raw_photon_number_three(const PhysicalThreeLevel& p);
/// Same quantity through the gamma_parallel / Delta decomposition.
double photon_number_decomposed(const PhysicalThreeLevel& p);
SteadyResult n_three_physical(const PhysicalThreeLevel& p);

/// [P (1 - eps) - s (1 + eps + delta)(P (1 + eps) + eps)] / (1 + 2 P)
double raw_bracket_scheme_a(const DimensionlessSchemeA& d, double pump);
SteadyResult n_scheme_a(const DimensionlessSchemeA& d, double pump);
std::optional<double> threshold_scheme_a(const DimensionlessSchemeA& d);
/// Upper bound on s1 for lasing to be possible at any pump.
double s_bound_scheme_a(const DimensionlessSchemeA& d);
/// Photon number approached as P1 -> infinity (may be negative).
double saturation_scheme_a(const DimensionlessSchemeA& d);
/// Window for the depletion ratio gamma_02 / gamma_10 (requires eps1 > 0).
std::optional<WindowReport> depletion_window_scheme_a(const DimensionlessSchemeA& d);
/// Minimum atom number; empty when eps1 >= 1.
std::optional<double> n_min_atoms(const PhysicalThreeLevel& p);

/// Numerator of the scheme-B photon number (quadratic in P2).
double numerator_scheme_b(const DimensionlessSchemeB& d, double pump);
double raw_bracket_scheme_b(const DimensionlessSchemeB& d, double pump);
SteadyResult n_scheme_b(const DimensionlessSchemeB& d, double pump);
std::optional<WindowReport> window_scheme_b(const DimensionlessSchemeB& d);
std::optional<double> threshold_scheme_b(const DimensionlessSchemeB& d);
std::optional<ExtremumReport> optimum_scheme_b(const DimensionlessSchemeB& d);

}  // namespace lasekit

#endif
