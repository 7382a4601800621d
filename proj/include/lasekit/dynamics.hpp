#ifndef LASEKIT_DYNAMICS_HPP
#define LASEKIT_DYNAMICS_HPP

// Time-domain integration of the phase-reduced Maxwell-Bloch equations.
//
// The global phase is fixed so that the field amplitude is the real
// quadrature x (n = x^2) and the lasing coherence is rho_10 = i y. With that
// choice the complex Bloch equations close on real variables:
//
//   two-level:   rho11' = -gamma rho11 + Gamma (1 - rho11) - 2 g x y
//                y'     = -gamma_perp y + g x (2 rho11 - 1)
//                x'     = -kappa x + N g y
//
//   three-level: rho11' = g21 rho22 - g10 rho11 - 2 g x y
//                rho22' = g02 (1 - rho11 - rho22) - g21 rho22
//                y'     = -gamma_perp y + g x (rho11 - rho00)
//                x'     = -kappa x + N g y
//
// and n' = 2 x x' = -2 kappa n + 2 N g x y in both cases.

#include <cstdint>
#include <limits>
#include <vector>

#include "lasekit/model.hpp"

namespace lasekit {

struct IntegratorConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    /// <= 0 selects 1e3 / (slowest nonzero rate of the model).
    double t_max = 0.0;
    /// Settled when the estimated distance to a fixed point is below
    /// steady_tol (|state| + 1).
    double steady_tol = 1e-9;
    /// Minimum spacing of recorded samples; 0 records every accepted step.
    double output_every = 0.0;
    std::uint64_t max_steps = 50'000'000;

    void validate() const;
};

template <class State>
struct TimeSeries {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> photon_numbers;

    void push(double t, const State& s)
    {
        times.push_back(t);
        states.push_back(s);
        photon_numbers.push_back(s.photon_number());
    }
    std::size_t size() const { return times.size(); }
};

struct BlochDerivative2 {
    double rho11 = 0.0;
    double y = 0.0;
    double x = 0.0;
};

struct BlochDerivative3 {
    double rho11 = 0.0;
    double rho22 = 0.0;
    double y = 0.0;
    double x = 0.0;
};

BlochDerivative2 derivs_two(const BlochState2& s, const PhysicalTwoLevel& p);
BlochDerivative3 derivs_three(const BlochState3& s, const PhysicalThreeLevel& p);

/// No-field rate-equation equilibrium populations, y = 0, x = seed_field.
BlochState2 default_initial_two(const PhysicalTwoLevel& p, double seed_field = 1e-3);
BlochState3 default_initial_three(const PhysicalThreeLevel& p, double seed_field = 1e-3);

double default_t_max(const PhysicalTwoLevel& p);
double default_t_max(const PhysicalThreeLevel& p);

/// Dormand-Prince 5(4) integration up to cfg.t_max (resolved).
/// Throws Error(Stiffness) on step-size underflow, Error(StepLimit) when
/// cfg.max_steps accepted+rejected steps are exhausted.
TimeSeries<BlochState2> integrate(const PhysicalTwoLevel& p, const BlochState2& initial,
                                  const IntegratorConfig& cfg);
TimeSeries<BlochState3> integrate(const PhysicalThreeLevel& p, const BlochState3& initial,
                                  const IntegratorConfig& cfg);

template <class State>
struct SettleOutcome {
    bool converged = false;
    State state;
    double t = 0.0;
    double photon_number = 0.0;
    /// Populated when converged.
    SteadyResult steady;
};

/// Integrates until the Newton step |J^{-1} f| falls below
/// steady_tol (|state| + 1) on two consecutive steps, or t_max.
/// Not converging is reported through `converged`, not thrown; integrator
/// failures still throw. When `record` is given every sample is appended.
SettleOutcome<BlochState2> settle(const PhysicalTwoLevel& p, const BlochState2& initial,
                                  const IntegratorConfig& cfg,
                                  TimeSeries<BlochState2>* record = nullptr);
SettleOutcome<BlochState3> settle(const PhysicalThreeLevel& p, const BlochState3& initial,
                                  const IntegratorConfig& cfg,
                                  TimeSeries<BlochState3>* record = nullptr);

}  // namespace lasekit

#endif
