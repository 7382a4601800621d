#include "lasekit/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lasekit/error.hpp"
#include "lasekit/numerics.hpp"

namespace lasekit {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require_pump(double pump)
{
    if (!std::isfinite(pump) || pump < 0.0)
        fail(ErrorCode::InvalidArgument, "relative pump must be finite and >= 0");
}

double relative_error(double approx, double exact)
{
    if (std::isinf(approx) && std::isinf(exact))
        return 0.0;
    return std::abs(approx - exact) / std::abs(exact);
}

// Window where a concave quadratic a P^2 + b P + c (a <= 0) is positive.
// a == 0 is the linear case with an unbounded upper edge.
std::optional<LasingWindow> positive_window(double a, double b, double c)
{
    if (a == 0.0) {
        if (b <= 0.0)
            return std::nullopt;
        return LasingWindow{std::max(-c / b, 0.0), inf, true};
    }
    auto roots = solve_quadratic(a, b, c);
    if (!roots || roots->upper <= 0.0)
        return std::nullopt;
    // pumps are nonnegative; a negative lower root means lasing from P = 0
    return LasingWindow{std::max(roots->lower, 0.0), roots->upper, true};
}

Regime classify(double raw, double pump, const std::optional<LasingWindow>& window)
{
    if (raw > 0.0)
        return Regime::Lasing;
    if (window && pump >= window->upper)
        return Regime::AboveUpperBound;
    return Regime::BelowThreshold;
}

// Populations of the three-level atom at rest, with rates in any common unit.
// On the lasing branch the inversion rho11 - rho00 is pinned at `inversion`.
Populations populations_three(double g21, double g02, double g10, double inversion, bool lasing)
{
    Populations out;
    if (lasing) {
        out.rho11 = (g21 * (1.0 + inversion) + g02 * inversion) / (g02 + 2.0 * g21);
        out.rho22 = 1.0 + inversion - 2.0 * out.rho11;
        out.rho00 = out.rho11 - inversion;
        return out;
    }
    const double flux = g21 * g10 + g02 * g21 + g02 * g10;
    if (flux <= 0.0) {
        // at least two rates vanish; everything stays where it is pumped from
        if (g02 == 0.0) {
            out = {1.0, 0.0, 0.0};
        } else if (g21 == 0.0) {
            out = {0.0, 0.0, 1.0};
        } else {
            out = {0.0, 1.0, 0.0};
        }
        return out;
    }
    out.rho00 = g21 * g10 / flux;
    out.rho11 = g02 * g21 / flux;
    out.rho22 = g02 * g10 / flux;
    return out;
}

Populations populations_two(double pump, double inversion, bool lasing)
{
    Populations out;
    out.rho11 = lasing ? 0.5 * (1.0 + inversion) : pump / (pump + 1.0);
    out.rho00 = 1.0 - out.rho11;
    out.rho22 = 0.0;
    return out;
}

}  // namespace

// --- two-level -------------------------------------------------------------

double raw_bracket_two(const DimensionlessTwoLevel& d, double pump)
{
    return pump - 1.0 - (pump + 1.0) * (pump + 1.0 + d.delta) * d.s;
}

namespace {

std::optional<LasingWindow> exact_window_two(const DimensionlessTwoLevel& d)
{
    // -s P^2 + (1 - s (2 + delta)) P - (1 + s (1 + delta))
    return positive_window(-d.s, 1.0 - d.s * (2.0 + d.delta), -(1.0 + d.s * (1.0 + d.delta)));
}

}  // namespace

SteadyResult n_two_level(const DimensionlessTwoLevel& d, double pump)
{
    d.validate();
    require_pump(pump);
    SteadyResult r;
    r.raw_bracket = raw_bracket_two(d, pump);
    r.raw_photon_number = d.lambda * r.raw_bracket;
    r.photon_number = r.raw_bracket > 0.0 ? r.raw_photon_number : 0.0;
    r.regime = classify(r.raw_bracket, pump, exact_window_two(d));
    r.gamma_perp = 0.5 * (pump + 1.0 + d.delta);
    r.populations = populations_two(pump, d.s * (pump + 1.0 + d.delta), r.regime == Regime::Lasing);
    return r;
}

SteadyResult n_two_physical(const PhysicalTwoLevel& p)
{
    const auto reduced = reduce_two(p);
    const double pump = reduced.pump;
    const double gamma_perp = gamma_perp_two(p);
    const double inversion = p.cavity_kappa * gamma_perp / (p.n_atoms * p.coupling_g * p.coupling_g);
    const double scale = p.n_atoms * p.gamma_decay / (4.0 * p.cavity_kappa);

    SteadyResult r;
    r.raw_bracket = pump - 1.0 - (pump + 1.0) * inversion;
    r.raw_photon_number = scale * r.raw_bracket;
    r.photon_number = r.raw_bracket > 0.0 ? r.raw_photon_number : 0.0;
    r.regime = classify(r.raw_bracket, pump, exact_window_two(reduced.params));
    r.gamma_perp = gamma_perp;
    r.populations = populations_two(pump, inversion, r.regime == Regime::Lasing);
    return r;
}

std::optional<double> threshold_two(const DimensionlessTwoLevel& d)
{
    d.validate();
    auto w = exact_window_two(d);
    if (!w)
        return std::nullopt;
    return w->lower;
}

std::optional<WindowReport> window_two(const DimensionlessTwoLevel& d)
{
    d.validate();
    auto w = exact_window_two(d);
    if (!w)
        return std::nullopt;
    WindowReport out;
    out.exact = *w;
    out.asymptotic = {1.0, d.s > 0.0 ? 1.0 / d.s - d.delta - 3.0 : inf, false};
    out.upper_relative_error = relative_error(out.asymptotic.upper, out.exact.upper);
    return out;
}

LasingWindow pump_restriction_two(const DimensionlessTwoLevel& d)
{
    d.validate();
    return {1.0, d.s > 0.0 ? 1.0 / d.s - 1.0 - d.delta : inf, false};
}

std::optional<ExtremumReport> optimum_two(const DimensionlessTwoLevel& d)
{
    d.validate();
    auto w = exact_window_two(d);
    if (!w || !(d.s > 0.0))
        return std::nullopt;

    ExtremumReport out;
    out.p_closed_form = 1.0 / (2.0 * d.s) - 1.0 - 0.5 * d.delta;
    if (w->upper > w->lower) {
        auto bracket = [&](double p) { return raw_bracket_two(d, p); };
        out.p_exact = maximize(bracket, w->lower, w->upper).argmax;
    } else {
        out.p_exact = w->lower;
    }
    out.n_at_exact = std::max(0.0, d.lambda * raw_bracket_two(d, out.p_exact));
    out.n_at_closed_form = std::max(0.0, d.lambda * raw_bracket_two(d, out.p_closed_form));
    out.discrepancy = std::abs(out.p_closed_form - out.p_exact) / std::abs(out.p_exact);
    out.n_max_approx = d.lambda / (4.0 * d.s);
    if (out.n_at_exact > 0.0)
        out.n_max_relative_error = relative_error(*out.n_max_approx, out.n_at_exact);
    return out;
}

// --- three-level -----------------------------------------------------------

double raw_photon_number_three(const PhysicalThreeLevel& p)
{
    p.validate();
    const double denom = p.gamma_02 + 2.0 * p.gamma_21;
    if (!(denom > 0.0))
        fail(ErrorCode::Singular, "gamma_02 + 2 gamma_21 must be > 0");
    const double gain = p.n_atoms / (2.0 * p.cavity_kappa) * p.gamma_21 * (p.gamma_02 - p.gamma_10) / denom;
    const double flux = p.gamma_02 * p.gamma_21 + p.gamma_02 * p.gamma_10 + p.gamma_21 * p.gamma_10;
    const double loss = gamma_perp_three(p) / (2.0 * p.coupling_g * p.coupling_g) * flux / denom;
    return gain - loss;
}

double photon_number_decomposed(const PhysicalThreeLevel& p)
{
    p.validate();
    const auto dec = gamma_parallel_and_inversion(p);
    return p.n_atoms * dec.gamma_parallel * dec.inversion / (4.0 * p.cavity_kappa) -
           gamma_perp_three(p) * dec.gamma_parallel / (4.0 * p.coupling_g * p.coupling_g);
}

SteadyResult n_three_physical(const PhysicalThreeLevel& p)
{
    SteadyResult r;
    r.raw_photon_number = raw_photon_number_three(p);
    r.raw_bracket = r.raw_photon_number;
    r.photon_number = std::max(0.0, r.raw_photon_number);
    r.gamma_perp = gamma_perp_three(p);

    std::optional<LasingWindow> window;
    double pump = p.pump_rate();
    if (p.reference_rate() > 0.0) {
        if (p.scheme == Scheme::A) {
            const auto red = reduce_scheme_a(p);
            pump = red.pump;
            if (auto thr = threshold_scheme_a(red.params))
                window = LasingWindow{*thr, inf, true};
        } else {
            const auto red = reduce_scheme_b(p);
            pump = red.pump;
            if (auto w = window_scheme_b(red.params))
                window = w->exact;
        }
    }
    r.regime = classify(r.raw_photon_number, pump, window);
    const double inversion = p.cavity_kappa * r.gamma_perp / (p.n_atoms * p.coupling_g * p.coupling_g);
    r.populations = populations_three(p.gamma_21, p.gamma_02, p.gamma_10, inversion,
                                      r.regime == Regime::Lasing);
    return r;
}

double raw_bracket_scheme_a(const DimensionlessSchemeA& d, double pump)
{
    const double loss = d.s1 * (1.0 + d.eps1 + d.delta1) * (pump * (1.0 + d.eps1) + d.eps1);
    return (pump * (1.0 - d.eps1) - loss) / (1.0 + 2.0 * pump);
}

SteadyResult n_scheme_a(const DimensionlessSchemeA& d, double pump)
{
    d.validate();
    require_pump(pump);
    SteadyResult r;
    r.raw_bracket = raw_bracket_scheme_a(d, pump);
    r.raw_photon_number = d.lambda1 * r.raw_bracket;
    r.photon_number = r.raw_bracket > 0.0 ? r.raw_photon_number : 0.0;
    r.regime = r.raw_bracket > 0.0 ? Regime::Lasing : Regime::BelowThreshold;
    // rates in units of gamma_02
    r.gamma_perp = 0.5 * (d.eps1 + 1.0 + d.delta1);
    r.populations = populations_three(pump, 1.0, d.eps1, d.s1 * (1.0 + d.eps1 + d.delta1),
                                      r.regime == Regime::Lasing);
    return r;
}

namespace {

double slope_scheme_a(const DimensionlessSchemeA& d)
{
    return (1.0 - d.eps1) - d.s1 * (1.0 + d.eps1 + d.delta1) * (1.0 + d.eps1);
}

}  // namespace

std::optional<double> threshold_scheme_a(const DimensionlessSchemeA& d)
{
    d.validate();
    const double slope = slope_scheme_a(d);
    if (d.eps1 >= 1.0 || !(slope > 0.0))
        return std::nullopt;
    return d.eps1 * d.s1 * (1.0 + d.eps1 + d.delta1) / slope;
}

double s_bound_scheme_a(const DimensionlessSchemeA& d)
{
    return (1.0 - d.eps1) / ((1.0 + d.eps1 + d.delta1) * (1.0 + d.eps1));
}

double saturation_scheme_a(const DimensionlessSchemeA& d)
{
    return 0.5 * d.lambda1 * slope_scheme_a(d);
}

std::optional<WindowReport> depletion_window_scheme_a(const DimensionlessSchemeA& d)
{
    d.validate();
    if (!(d.eps1 > 0.0))
        return std::nullopt;
    // With r = gamma_02 / gamma_10 the s1 bound becomes the two-level window
    // with s -> kappa gamma_10 / 2 N g^2 and delta -> gamma_ph / gamma_10.
    return window_two(DimensionlessTwoLevel{1.0, d.s1 * d.eps1, d.delta1 / d.eps1});
}

std::optional<double> n_min_atoms(const PhysicalThreeLevel& p)
{
    p.validate();
    if (!(p.gamma_02 > 0.0))
        fail(ErrorCode::InvalidArgument, "N_min needs gamma_02 > 0");
    const double eps = p.gamma_10 / p.gamma_02;
    const double delta = p.gamma_ph / p.gamma_02;
    if (eps >= 1.0)
        return std::nullopt;
    return p.cavity_kappa * p.gamma_02 / (2.0 * p.coupling_g * p.coupling_g) * (1.0 + eps + delta) *
           (1.0 + eps) / (1.0 - eps);
}

double numerator_scheme_b(const DimensionlessSchemeB& d, double pump)
{
    return pump - d.eps2 - d.s2 * (pump + d.eps2 + d.delta2) * (pump + d.eps2 + pump * d.eps2);
}

double raw_bracket_scheme_b(const DimensionlessSchemeB& d, double pump)
{
    return numerator_scheme_b(d, pump) / (pump + 2.0);
}

namespace {

std::optional<LasingWindow> exact_window_scheme_b(const DimensionlessSchemeB& d)
{
    const double e = d.eps2;
    const double a = -d.s2 * (1.0 + e);
    const double b = 1.0 - d.s2 * (e + (e + d.delta2) * (1.0 + e));
    const double c = -e - d.s2 * e * (e + d.delta2);
    return positive_window(a, b, c);
}

}  // namespace

SteadyResult n_scheme_b(const DimensionlessSchemeB& d, double pump)
{
    d.validate();
    require_pump(pump);
    SteadyResult r;
    r.raw_bracket = raw_bracket_scheme_b(d, pump);
    r.raw_photon_number = d.lambda2 * r.raw_bracket;
    r.photon_number = r.raw_bracket > 0.0 ? r.raw_photon_number : 0.0;
    r.regime = classify(r.raw_bracket, pump, exact_window_scheme_b(d));
    // rates in units of gamma_21
    r.gamma_perp = 0.5 * (d.eps2 + pump + d.delta2);
    r.populations = populations_three(1.0, pump, d.eps2, d.s2 * (pump + d.eps2 + d.delta2),
                                      r.regime == Regime::Lasing);
    return r;
}

std::optional<WindowReport> window_scheme_b(const DimensionlessSchemeB& d)
{
    d.validate();
    auto w = exact_window_scheme_b(d);
    if (!w)
        return std::nullopt;
    WindowReport out;
    out.exact = *w;
    out.asymptotic = {1.0, d.s2 > 0.0 ? 1.0 / d.s2 - d.delta2 : inf, false};
    out.upper_relative_error = relative_error(out.asymptotic.upper, out.exact.upper);
    return out;
}

std::optional<double> threshold_scheme_b(const DimensionlessSchemeB& d)
{
    d.validate();
    auto w = exact_window_scheme_b(d);
    if (!w)
        return std::nullopt;
    return w->lower;
}

std::optional<ExtremumReport> optimum_scheme_b(const DimensionlessSchemeB& d)
{
    d.validate();
    auto w = exact_window_scheme_b(d);
    if (!w || !(d.s2 > 0.0))
        return std::nullopt;

    ExtremumReport out;
    out.p_closed_form = 1.0 / (2.0 * d.s2) - 0.5 * d.delta2 - d.eps2;
    if (w->upper > w->lower) {
        auto bracket = [&](double p) { return raw_bracket_scheme_b(d, p); };
        out.p_exact = maximize(bracket, w->lower, w->upper).argmax;
    } else {
        out.p_exact = w->lower;
    }
    out.n_at_exact = std::max(0.0, d.lambda2 * raw_bracket_scheme_b(d, out.p_exact));
    out.n_at_closed_form = std::max(0.0, d.lambda2 * raw_bracket_scheme_b(d, out.p_closed_form));
    out.discrepancy = std::abs(out.p_closed_form - out.p_exact) / std::abs(out.p_exact);
    return out;
}

}  // namespace lasekit
