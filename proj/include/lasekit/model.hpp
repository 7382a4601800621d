#ifndef LASEKIT_MODEL_HPP
#define LASEKIT_MODEL_HPP

// Parameter and state types shared by every part of the library, plus the
// conversions between physical rate sets and the reduced (dimensionless)
// parameterizations used by the closed-form results.
//
// All rates share one arbitrary unit. Nothing here carries dimensions beyond
// that convention.

#include <variant>

namespace lasekit {

/// Which rate of the three-level atom acts as the pump.
///  A: pump is gamma_21 (lower lasing level drains to ground at gamma_02).
///  B: pump is gamma_02 (pump empties the lower lasing level directly).
enum class Scheme { A, B };

/// Closed two-level laser: upper level |1>, lower level |0>.
struct PhysicalTwoLevel {
    double n_atoms = 1.0;
    double coupling_g = 1.0;
    double cavity_kappa = 1.0;
    double gamma_decay = 1.0;  ///< spontaneous decay of the upper level
    double pump_Gamma = 0.0;
    double gamma_ph = 0.0;     ///< collisional dephasing

    /// Throws Error(InvalidArgument) naming the offending field.
    void validate() const;
    double relative_pump() const { return pump_Gamma / gamma_decay; }
};

/// Closed three-level laser. Populations flow 0 -> 2 (gamma_02),
/// 2 -> 1 (gamma_21), 1 -> 0 (gamma_10); the lasing transition is 1 <-> 0.
struct PhysicalThreeLevel {
    double n_atoms = 1.0;
    double coupling_g = 1.0;
    double cavity_kappa = 1.0;
    double gamma_21 = 0.0;
    double gamma_02 = 0.0;
    double gamma_10 = 0.0;
    double gamma_ph = 0.0;
    Scheme scheme = Scheme::A;

    void validate() const;
    /// gamma_21 for scheme A, gamma_02 for scheme B.
    double pump_rate() const;
    /// gamma_02 for scheme A, gamma_21 for scheme B.
    double reference_rate() const;
    /// Copy with the pump rate set to `relative_pump * reference_rate()`.
    PhysicalThreeLevel with_relative_pump(double relative_pump) const;
};

struct DimensionlessTwoLevel {
    double lambda = 1.0;  ///< N gamma / 4 kappa
    double s = 0.0;       ///< kappa gamma / 2 N g^2
    double delta = 0.0;   ///< gamma_ph / gamma

    void validate() const;
};

struct DimensionlessSchemeA {
    double lambda1 = 1.0;  ///< N gamma_02 / 2 kappa
    double s1 = 0.0;       ///< kappa gamma_02 / 2 N g^2
    double eps1 = 0.0;     ///< gamma_10 / gamma_02
    double delta1 = 0.0;   ///< gamma_ph / gamma_02

    void validate() const;
};

struct DimensionlessSchemeB {
    double lambda2 = 1.0;  ///< N gamma_21 / 2 kappa
    double s2 = 0.0;       ///< kappa gamma_21 / 2 N g^2
    double eps2 = 0.0;     ///< gamma_10 / gamma_21
    double delta2 = 0.0;   ///< gamma_ph / gamma_21

    void validate() const;
};

/// Phase-reduced two-level state. The field amplitude is the real quadrature
/// x (photon number x^2) and the lasing coherence is rho_10 = i y.
struct BlochState2 {
    double rho11 = 0.0;
    double y = 0.0;
    double x = 0.0;

    double rho00() const { return 1.0 - rho11; }
    double photon_number() const { return x * x; }
};

struct BlochState3 {
    double rho11 = 0.0;
    double rho22 = 0.0;
    double y = 0.0;
    double x = 0.0;

    double rho00() const { return 1.0 - rho11 - rho22; }
    double photon_number() const { return x * x; }
};

enum class Regime { BelowThreshold, Lasing, AboveUpperBound };

const char* to_string(Regime regime);

struct Populations {
    double rho00 = 1.0;
    double rho11 = 0.0;
    double rho22 = 0.0;  ///< always 0 for the two-level model
};

struct SteadyResult {
    double photon_number = 0.0;  ///< max(0, raw_photon_number)
    Regime regime = Regime::BelowThreshold;
    Populations populations;
    double gamma_perp = 0.0;
    /// Unclamped bracket of the closed form; photon number = scale * bracket.
    double raw_bracket = 0.0;
    double raw_photon_number = 0.0;
};

/// A reduced parameter set together with the relative pump it was taken at.
template <class Params>
struct Reduced {
    Params params;
    double pump = 0.0;
};

double gamma_perp_two(const PhysicalTwoLevel& p);
/// Independent of gamma_21.
double gamma_perp_three(const PhysicalThreeLevel& p);

Reduced<DimensionlessTwoLevel> reduce_two(const PhysicalTwoLevel& p);
Reduced<DimensionlessSchemeA> reduce_scheme_a(const PhysicalThreeLevel& p);
Reduced<DimensionlessSchemeB> reduce_scheme_b(const PhysicalThreeLevel& p);
/// Dispatches on p.scheme.
std::variant<Reduced<DimensionlessSchemeA>, Reduced<DimensionlessSchemeB>>
reduce_three(const PhysicalThreeLevel& p);

// Canonical physical realization of a reduced point. The reduction loses one
// scale, so expansion fixes kappa = 1 and the reference decay rate = 1; then
// N = 4 lambda (two-level) or 2 lambda (three-level) and
// g^2 = reference / (2 N s). Requires s > 0.
PhysicalTwoLevel expand_two(const DimensionlessTwoLevel& d, double pump);
PhysicalThreeLevel expand_scheme_a(const DimensionlessSchemeA& d, double pump);
PhysicalThreeLevel expand_scheme_b(const DimensionlessSchemeB& d, double pump);

struct LongitudinalDecomposition {
    double gamma_parallel = 0.0;
    double inversion = 0.0;  ///< equilibrium inversion Delta
};

/// Effective longitudinal rate and equilibrium inversion of the three-level
/// atom. With these, n = N gamma_par Delta / 4 kappa - gamma_perp gamma_par / 4 g^2.
LongitudinalDecomposition gamma_parallel_and_inversion(const PhysicalThreeLevel& p);

}  // namespace lasekit

#endif
