#include "lasekit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lasekit/error.hpp"

namespace lasekit {

Bracket Bracket::around(const ScalarFunction& f, double lo, double hi)
{
    Bracket b{lo, hi, f(lo), f(hi)};
    if (!b.valid())
        fail(ErrorCode::InvalidArgument, "interval does not bracket a sign change");
    return b;
}

bool Bracket::valid() const
{
    return std::isfinite(lo) && std::isfinite(hi) && lo <= hi && !std::isnan(f_lo) &&
           !std::isnan(f_hi) && !(std::signbit(f_lo) == std::signbit(f_hi) && f_lo != 0.0 && f_hi != 0.0);
}

RootResult find_root_detailed(const ScalarFunction& f, Bracket b, double tol)
{
    if (!b.valid())
        fail(ErrorCode::InvalidArgument, "invalid bracket");
    if (tol <= 0.0)
        tol = 1e-10 * std::max(1.0, std::abs(b.hi));

    double a = b.lo, fa = b.f_lo;
    double c = b.hi, fc = b.f_hi;
    if (fa == 0.0)
        return {a, 0.0, 0};
    if (fc == 0.0)
        return {c, 0.0, 0};

    // previous interior iterate, for inverse quadratic interpolation
    double d = a, fd = fa;
    bool have_d = false;
    int it = 0;
    constexpr int max_iter = 400;

    while (c - a > tol && it < max_iter) {
        ++it;
        const double width = c - a;
        double x;
        if (have_d && fd != fa && fd != fc && fa != fc) {
            x = a * fc * fd / ((fa - fc) * (fa - fd)) + c * fa * fd / ((fc - fa) * (fc - fd)) +
                d * fa * fc / ((fd - fa) * (fd - fc));
        } else {
            x = a - fa * (c - a) / (fc - fa);
        }
        // keep the trial point strictly inside, away from the ends
        const double guard = 0.5 * tol;
        if (!(x > a + guard && x < c - guard))
            x = 0.5 * (a + c);

        double fx = f(x);
        if (fx == 0.0)
            return {x, 0.0, it};
        d = x;
        fd = fx;
        have_d = true;
        if (std::signbit(fx) == std::signbit(fa)) {
            a = x;
            fa = fx;
        } else {
            c = x;
            fc = fx;
        }

        if (c - a > 0.5 * width) {
            const double m = 0.5 * (a + c);
            const double fm = f(m);
            if (fm == 0.0)
                return {m, 0.0, it};
            if (std::signbit(fm) == std::signbit(fa)) {
                a = m;
                fa = fm;
            } else {
                c = m;
                fc = fm;
            }
        }
    }
    const double root = std::abs(fa) <= std::abs(fc) ? a : c;
    return {root, c - a, it};
}

double find_root(const ScalarFunction& f, Bracket b, double tol)
{
    return find_root_detailed(f, b, tol).root;
}

Maximum maximize(const ScalarFunction& f, double lo, double hi, double tol, std::size_t grid)
{
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        fail(ErrorCode::InvalidArgument, "maximize needs lo < hi");
    grid = std::max<std::size_t>(grid, 3);
    if (tol <= 0.0)
        tol = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));

    const double step = (hi - lo) / static_cast<double>(grid - 1);
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid; ++i) {
        const double x = i + 1 == grid ? hi : lo + step * static_cast<double>(i);
        const double v = f(x);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    auto grid_point = [&](std::size_t i) {
        return i + 1 == grid ? hi : lo + step * static_cast<double>(i);
    };
    Maximum result{grid_point(best), best_value};

    double a = grid_point(best == 0 ? 0 : best - 1);
    double b = grid_point(std::min(best + 1, grid - 1));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 300 && (b - a) > tol; ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    const double candidates[] = {x1, x2, xm};
    const double values[] = {f1, f2, f(xm)};
    for (int i = 0; i < 3; ++i) {
        if (values[i] > result.value) {
            result = {candidates[i], values[i]};
        }
    }
    return result;
}

std::optional<QuadraticRoots> solve_quadratic(double a, double b, double c)
{
    if (a == 0.0) {
        if (b == 0.0)
            return std::nullopt;
        const double r = -c / b;
        return QuadraticRoots{r, r};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        return std::nullopt;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    double r1, r2;
    if (q == 0.0) {
        // b == 0 and c == 0
        r1 = r2 = 0.0;
    } else {
        r1 = q / a;
        r2 = c / q;
    }
    if (r1 > r2)
        std::swap(r1, r2);
    return QuadraticRoots{r1, r2};
}

double algebraic_oracle_two(const PhysicalTwoLevel& p)
{
    p.validate();
    const double gamma_perp = 0.5 * (p.pump_Gamma + p.gamma_decay + p.gamma_ph);
    const double inversion = p.cavity_kappa * gamma_perp / (p.n_atoms * p.coupling_g * p.coupling_g);
    const double rho11 = 0.5 * (1.0 + inversion);
    // stimulated flux 2 g x y = 2 kappa n / N balances the population equation
    const double flux = p.pump_Gamma * (1.0 - rho11) - p.gamma_decay * rho11;
    const double n = p.n_atoms * flux / (2.0 * p.cavity_kappa);
    return n > 0.0 ? n : 0.0;
}

double algebraic_oracle_three(const PhysicalThreeLevel& p)
{
    p.validate();
    const double gamma_perp = 0.5 * (p.gamma_10 + p.gamma_02 + p.gamma_ph);
    const double inversion = p.cavity_kappa * gamma_perp / (p.n_atoms * p.coupling_g * p.coupling_g);

    // rho00 = rho11 - inversion, then
    //   2 rho11 +     rho22   = 1 + inversion      (closure)
    //   g02 rho11 - g21 rho22 = g02 inversion      (level-2 balance)
    const double m00 = 2.0, m01 = 1.0, r0 = 1.0 + inversion;
    const double m10 = p.gamma_02, m11 = -p.gamma_21, r1 = p.gamma_02 * inversion;
    const double det = m00 * m11 - m01 * m10;
    if (det == 0.0)
        fail(ErrorCode::Singular, "population balance is singular (gamma_02 + 2 gamma_21 == 0)");
    const double rho11 = (r0 * m11 - m01 * r1) / det;
    const double rho22 = (m00 * r1 - r0 * m10) / det;

    const double flux = p.gamma_21 * rho22 - p.gamma_10 * rho11;
    const double n = p.n_atoms * flux / (2.0 * p.cavity_kappa);
    return n > 0.0 ? n : 0.0;
}

}  // namespace lasekit
