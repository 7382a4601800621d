#ifndef LASEKIT_NUMERICS_HPP
#define LASEKIT_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <optional>

#include "lasekit/model.hpp"

namespace lasekit {

using ScalarFunction = std::function<double(double)>;

/// Sign-change interval [lo, hi] with f_lo * f_hi <= 0.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;

    /// Evaluates f at both ends; throws InvalidArgument if they share a sign.
    static Bracket around(const ScalarFunction& f, double lo, double hi);
    bool valid() const;
};

struct RootResult {
    double root = 0.0;
    double width = 0.0;  ///< final bracket width
    int iterations = 0;
};

/// Bracketing root finder: inverse-quadratic / secant steps, each iteration
/// followed by a bisection whenever the bracket failed to halve. The width
/// therefore at least halves per iteration. `tol <= 0` selects
/// 1e-10 * max(1, |hi|).
RootResult find_root_detailed(const ScalarFunction& f, Bracket b, double tol = 0.0);
double find_root(const ScalarFunction& f, Bracket b, double tol = 0.0);

struct Maximum {
    double argmax = 0.0;
    double value = 0.0;
};

/// Golden-section maximization on [lo, hi] seeded by a uniform grid pre-scan
/// of `grid` points. The result is never worse than the best grid point.
Maximum maximize(const ScalarFunction& f, double lo, double hi, double tol = 0.0,
                 std::size_t grid = 1000);

/// Real roots of a x^2 + b x + c = 0, ascending. Uses the cancellation-free
/// pairing q = -(b + sign(b) sqrt(disc)) / 2, roots q/a and c/q.
/// a == 0 degrades to the linear root (returned twice).
struct QuadraticRoots {
    double lower = 0.0;
    double upper = 0.0;
};
std::optional<QuadraticRoots> solve_quadratic(double a, double b, double c);

// Steady state of the reduced Bloch systems found by pinning the inversion at
// kappa gamma_perp / N g^2 (field and coherence equations at rest) and solving
// the remaining population balance as a linear system. Shares no code with the
// closed-form photon numbers. Returns 0 when the lasing branch is unphysical.
double algebraic_oracle_two(const PhysicalTwoLevel& p);
/// Throws Error(Singular) when gamma_02 + 2 gamma_21 == 0.
double algebraic_oracle_three(const PhysicalThreeLevel& p);

}  // namespace lasekit

#endif
