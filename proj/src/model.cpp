#include "lasekit/model.hpp"

#include <cmath>
#include <string>

#include "lasekit/error.hpp"

namespace lasekit {

namespace {

void require_rate(double value, const char* name)
{
    if (!std::isfinite(value) || value < 0.0)
        fail(ErrorCode::InvalidArgument,
             std::string(name) + " must be a finite rate >= 0 (got " + std::to_string(value) + ")");
}

void require_positive(double value, const char* name)
{
    if (!std::isfinite(value) || value <= 0.0)
        fail(ErrorCode::InvalidArgument,
             std::string(name) + " must be finite and > 0 (got " + std::to_string(value) + ")");
}

void require_atoms(double n_atoms)
{
    if (!std::isfinite(n_atoms) || n_atoms < 1.0)
        fail(ErrorCode::InvalidArgument,
             "n_atoms must be >= 1 (got " + std::to_string(n_atoms) + ")");
}

}  // namespace

const char* to_string(Regime regime)
{
    switch (regime) {
    case Regime::BelowThreshold:
        return "BelowThreshold";
    case Regime::Lasing:
        return "Lasing";
    case Regime::AboveUpperBound:
        return "AboveUpperBound";
    }
    return "?";
}

void PhysicalTwoLevel::validate() const
{
    require_atoms(n_atoms);
    require_positive(coupling_g, "coupling_g");
    require_positive(cavity_kappa, "cavity_kappa");
    require_positive(gamma_decay, "gamma_decay");
    require_rate(pump_Gamma, "pump_Gamma");
    require_rate(gamma_ph, "gamma_ph");
}

void PhysicalThreeLevel::validate() const
{
    require_atoms(n_atoms);
    require_positive(coupling_g, "coupling_g");
    require_positive(cavity_kappa, "cavity_kappa");
    require_rate(gamma_21, "gamma_21");
    require_rate(gamma_02, "gamma_02");
    require_rate(gamma_10, "gamma_10");
    require_rate(gamma_ph, "gamma_ph");
}

double PhysicalThreeLevel::pump_rate() const
{
    return scheme == Scheme::A ? gamma_21 : gamma_02;
}

double PhysicalThreeLevel::reference_rate() const
{
    return scheme == Scheme::A ? gamma_02 : gamma_21;
}

PhysicalThreeLevel PhysicalThreeLevel::with_relative_pump(double relative_pump) const
{
    PhysicalThreeLevel out = *this;
    if (scheme == Scheme::A)
        out.gamma_21 = relative_pump * gamma_02;
    else
        out.gamma_02 = relative_pump * gamma_21;
    return out;
}

void DimensionlessTwoLevel::validate() const
{
    require_positive(lambda, "lambda");
    require_rate(s, "s");
    require_rate(delta, "delta");
}

void DimensionlessSchemeA::validate() const
{
    require_positive(lambda1, "lambda1");
    require_rate(s1, "s1");
    require_rate(eps1, "eps1");
    require_rate(delta1, "delta1");
}

void DimensionlessSchemeB::validate() const
{
    require_positive(lambda2, "lambda2");
    require_rate(s2, "s2");
    require_rate(eps2, "eps2");
    require_rate(delta2, "delta2");
}

double gamma_perp_two(const PhysicalTwoLevel& p)
{
    return 0.5 * (p.pump_Gamma + p.gamma_decay + p.gamma_ph);
}

double gamma_perp_three(const PhysicalThreeLevel& p)
{
    return 0.5 * (p.gamma_10 + p.gamma_02 + p.gamma_ph);
}

Reduced<DimensionlessTwoLevel> reduce_two(const PhysicalTwoLevel& p)
{
    p.validate();
    const double g2 = p.coupling_g * p.coupling_g;
    Reduced<DimensionlessTwoLevel> r;
    r.params.lambda = p.n_atoms * p.gamma_decay / (4.0 * p.cavity_kappa);
    r.params.s = p.cavity_kappa * p.gamma_decay / (2.0 * p.n_atoms * g2);
    r.params.delta = p.gamma_ph / p.gamma_decay;
    r.pump = p.pump_Gamma / p.gamma_decay;
    return r;
}

Reduced<DimensionlessSchemeA> reduce_scheme_a(const PhysicalThreeLevel& p)
{
    p.validate();
    if (p.gamma_02 <= 0.0)
        fail(ErrorCode::InvalidArgument, "scheme A reduction needs gamma_02 > 0");
    const double g2 = p.coupling_g * p.coupling_g;
    Reduced<DimensionlessSchemeA> r;
    r.params.lambda1 = p.n_atoms * p.gamma_02 / (2.0 * p.cavity_kappa);
    r.params.s1 = p.cavity_kappa * p.gamma_02 / (2.0 * p.n_atoms * g2);
    r.params.eps1 = p.gamma_10 / p.gamma_02;
    r.params.delta1 = p.gamma_ph / p.gamma_02;
    r.pump = p.gamma_21 / p.gamma_02;
    return r;
}

Reduced<DimensionlessSchemeB> reduce_scheme_b(const PhysicalThreeLevel& p)
{
    p.validate();
    if (p.gamma_21 <= 0.0)
        fail(ErrorCode::InvalidArgument, "scheme B reduction needs gamma_21 > 0");
    const double g2 = p.coupling_g * p.coupling_g;
    Reduced<DimensionlessSchemeB> r;
    r.params.lambda2 = p.n_atoms * p.gamma_21 / (2.0 * p.cavity_kappa);
    r.params.s2 = p.cavity_kappa * p.gamma_21 / (2.0 * p.n_atoms * g2);
    r.params.eps2 = p.gamma_10 / p.gamma_21;
    r.params.delta2 = p.gamma_ph / p.gamma_21;
    r.pump = p.gamma_02 / p.gamma_21;
    return r;
}

std::variant<Reduced<DimensionlessSchemeA>, Reduced<DimensionlessSchemeB>>
reduce_three(const PhysicalThreeLevel& p)
{
    if (p.scheme == Scheme::A)
        return reduce_scheme_a(p);
    return reduce_scheme_b(p);
}

namespace {

// kappa = 1, reference rate = 1.
double gauge_coupling(double n_atoms, double s)
{
    if (!(s > 0.0))
        fail(ErrorCode::InvalidArgument, "gauge expansion needs s > 0 (s = 0 means infinite coupling)");
    return std::sqrt(1.0 / (2.0 * n_atoms * s));
}

void require_pump(double pump)
{
    if (!std::isfinite(pump) || pump < 0.0)
        fail(ErrorCode::InvalidArgument, "relative pump must be finite and >= 0");
}

}  // namespace

PhysicalTwoLevel expand_two(const DimensionlessTwoLevel& d, double pump)
{
    d.validate();
    require_pump(pump);
    PhysicalTwoLevel p;
    p.cavity_kappa = 1.0;
    p.gamma_decay = 1.0;
    p.n_atoms = 4.0 * d.lambda;
    p.coupling_g = gauge_coupling(p.n_atoms, d.s);
    p.gamma_ph = d.delta;
    p.pump_Gamma = pump;
    return p;
}

PhysicalThreeLevel expand_scheme_a(const DimensionlessSchemeA& d, double pump)
{
    d.validate();
    require_pump(pump);
    PhysicalThreeLevel p;
    p.scheme = Scheme::A;
    p.cavity_kappa = 1.0;
    p.gamma_02 = 1.0;
    p.n_atoms = 2.0 * d.lambda1;
    p.coupling_g = gauge_coupling(p.n_atoms, d.s1);
    p.gamma_10 = d.eps1;
    p.gamma_ph = d.delta1;
    p.gamma_21 = pump;
    return p;
}

PhysicalThreeLevel expand_scheme_b(const DimensionlessSchemeB& d, double pump)
{
    d.validate();
    require_pump(pump);
    PhysicalThreeLevel p;
    p.scheme = Scheme::B;
    p.cavity_kappa = 1.0;
    p.gamma_21 = 1.0;
    p.n_atoms = 2.0 * d.lambda2;
    p.coupling_g = gauge_coupling(p.n_atoms, d.s2);
    p.gamma_10 = d.eps2;
    p.gamma_ph = d.delta2;
    p.gamma_02 = pump;
    return p;
}

LongitudinalDecomposition gamma_parallel_and_inversion(const PhysicalThreeLevel& p)
{
    const double denom = p.gamma_02 + 2.0 * p.gamma_21;
    if (!(denom > 0.0))
        fail(ErrorCode::Singular, "gamma_02 + 2 gamma_21 must be > 0");
    const double flux = p.gamma_21 * p.gamma_02 + p.gamma_02 * p.gamma_10 + p.gamma_21 * p.gamma_10;
    LongitudinalDecomposition out;
    out.gamma_parallel = 2.0 * flux / denom;
    // flux == 0 forces the numerator to 0 as well
    out.inversion = flux > 0.0 ? p.gamma_21 * (p.gamma_02 - p.gamma_10) / flux : 0.0;
    return out;
}

}  // namespace lasekit
