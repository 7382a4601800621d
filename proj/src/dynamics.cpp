#include "lasekit/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "lasekit/error.hpp"

namespace lasekit {

void IntegratorConfig::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(steady_tol > 0.0))
        fail(ErrorCode::InvalidArgument, "integrator tolerances must be > 0");
    if (!(max_step > 0.0))
        fail(ErrorCode::InvalidArgument, "max_step must be > 0");
    if (std::isnan(t_max) || std::isnan(output_every) || output_every < 0.0)
        fail(ErrorCode::InvalidArgument, "t_max/output_every must be numbers, output_every >= 0");
    if (max_steps == 0)
        fail(ErrorCode::InvalidArgument, "max_steps must be > 0");
}

BlochDerivative2 derivs_two(const BlochState2& s, const PhysicalTwoLevel& p)
{
    const double gamma_perp = gamma_perp_two(p);
    const double g = p.coupling_g;
    BlochDerivative2 d;
    d.rho11 = -p.gamma_decay * s.rho11 + p.pump_Gamma * (1.0 - s.rho11) - 2.0 * g * s.x * s.y;
    d.y = -gamma_perp * s.y + g * s.x * (2.0 * s.rho11 - 1.0);
    d.x = -p.cavity_kappa * s.x + p.n_atoms * g * s.y;
    return d;
}

BlochDerivative3 derivs_three(const BlochState3& s, const PhysicalThreeLevel& p)
{
    const double gamma_perp = gamma_perp_three(p);
    const double g = p.coupling_g;
    const double rho00 = s.rho00();
    BlochDerivative3 d;
    d.rho11 = p.gamma_21 * s.rho22 - p.gamma_10 * s.rho11 - 2.0 * g * s.x * s.y;
    d.rho22 = p.gamma_02 * rho00 - p.gamma_21 * s.rho22;
    d.y = -gamma_perp * s.y + g * s.x * (s.rho11 - rho00);
    d.x = -p.cavity_kappa * s.x + p.n_atoms * g * s.y;
    return d;
}

BlochState2 default_initial_two(const PhysicalTwoLevel& p, double seed_field)
{
    BlochState2 s;
    s.rho11 = p.pump_Gamma / (p.pump_Gamma + p.gamma_decay);
    s.y = 0.0;
    s.x = seed_field;
    return s;
}

BlochState3 default_initial_three(const PhysicalThreeLevel& p, double seed_field)
{
    BlochState3 s;
    const double flux = p.gamma_21 * p.gamma_10 + p.gamma_02 * p.gamma_21 + p.gamma_02 * p.gamma_10;
    if (flux > 0.0) {
        s.rho11 = p.gamma_02 * p.gamma_21 / flux;
        s.rho22 = p.gamma_02 * p.gamma_10 / flux;
    } else if (p.gamma_02 == 0.0) {
        s.rho11 = s.rho22 = 0.0;
    } else if (p.gamma_21 == 0.0) {
        s.rho11 = 0.0;
        s.rho22 = 1.0;
    } else {
        s.rho11 = 1.0;
        s.rho22 = 0.0;
    }
    s.y = 0.0;
    s.x = seed_field;
    return s;
}

namespace {

double slowest_rate(std::initializer_list<double> rates)
{
    double slowest = std::numeric_limits<double>::infinity();
    for (double r : rates)
        if (r > 0.0)
            slowest = std::min(slowest, r);
    return std::isinf(slowest) ? 1.0 : slowest;
}

}  // namespace

double default_t_max(const PhysicalTwoLevel& p)
{
    return 1e3 / slowest_rate({p.cavity_kappa, p.gamma_decay, p.pump_Gamma, gamma_perp_two(p)});
}

double default_t_max(const PhysicalThreeLevel& p)
{
    return 1e3 / slowest_rate({p.cavity_kappa, p.gamma_21, p.gamma_02, p.gamma_10, gamma_perp_three(p)});
}

namespace {

template <std::size_t N>
using Vec = std::array<double, N>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
double norm2(const Vec<N>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

// Drives an accepted-step observer until t_end or until the observer asks to
// stop. The observer sees (t, y, f(y)) and returns true to stop.
template <std::size_t N, class Rhs, class Observer>
void dopri_run(Rhs&& rhs, Vec<N> y, double t_end, const IntegratorConfig& cfg, Observer&& observe)
{
    double t = 0.0;
    Vec<N> k1 = rhs(y);
    if (observe(t, y, k1))
        return;

    auto scale = [&](const Vec<N>& a, const Vec<N>& b, std::size_t i) {
        return cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
    };

    // initial step guess
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = scale(y, y, i);
        d0 += (y[i] / sc) * (y[i] / sc);
        d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min({h, cfg.max_step, t_end});

    std::uint64_t steps = 0;
    Vec<N> k2, k3, k4, k5, k6, k7, tmp, y_new;
    while (t < t_end) {
        if (++steps > cfg.max_steps)
            fail(ErrorCode::StepLimit, "step limit of " + std::to_string(cfg.max_steps) +
                                           " reached at t = " + std::to_string(t));
        if (t + h > t_end)
            h = t_end - t;
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1e-300)) {
            std::string state;
            for (double v : y)
                state += " " + std::to_string(v);
            fail(ErrorCode::Stiffness, "step size underflow at t = " + std::to_string(t) +
                                           ", state:" + state);
        }

        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * a21 * k1[i];
        k2 = rhs(tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = rhs(tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs(tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs(tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = rhs(tmp);
        for (std::size_t i = 0; i < N; ++i)
            y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = rhs(y_new);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double r = e / scale(y, y_new, i);
            err += r * r;
        }
        err = std::sqrt(err / N);

        if (!std::isfinite(err)) {
            h *= 0.1;
            continue;
        }
        if (err <= 1.0) {
            t = (t + h >= t_end) ? t_end : t + h;
            y = y_new;
            k1 = k7;
            if (observe(t, y, k1))
                return;
            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h = std::min(h * factor, cfg.max_step);
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
        }
    }
}

Vec<3> pack(const BlochState2& s) { return {s.rho11, s.y, s.x}; }
Vec<4> pack(const BlochState3& s) { return {s.rho11, s.rho22, s.y, s.x}; }
BlochState2 unpack(const Vec<3>& v) { return {v[0], v[1], v[2]}; }
BlochState3 unpack(const Vec<4>& v) { return {v[0], v[1], v[2], v[3]}; }

auto rhs_for(const PhysicalTwoLevel& p)
{
    return [&p](const Vec<3>& v) {
        const auto d = derivs_two(unpack(v), p);
        return Vec<3>{d.rho11, d.y, d.x};
    };
}

auto rhs_for(const PhysicalThreeLevel& p)
{
    return [&p](const Vec<4>& v) {
        const auto d = derivs_three(unpack(v), p);
        return Vec<4>{d.rho11, d.rho22, d.y, d.x};
    };
}

template <class State>
class Sampler {
public:
    Sampler(TimeSeries<State>* out, double every) : m_out(out), m_every(every) {}

    void offer(double t, const State& s, bool force)
    {
        if (!m_out)
            return;
        if (force || m_out->size() == 0 || m_every <= 0.0 || t >= m_next) {
            if (m_out->size() == 0 || t > m_out->times.back())
                m_out->push(t, s);
            m_next = t + m_every;
        }
    }

private:
    TimeSeries<State>* m_out;
    double m_every;
    double m_next = 0.0;
};

template <class Params, class State>
TimeSeries<State> integrate_impl(const Params& p, const State& initial, const IntegratorConfig& cfg)
{
    p.validate();
    cfg.validate();
    const double t_end = cfg.t_max > 0.0 ? cfg.t_max : default_t_max(p);
    TimeSeries<State> out;
    Sampler<State> sampler(&out, cfg.output_every);
    dopri_run(rhs_for(p), pack(initial), t_end, cfg, [&](double t, const auto& y, const auto&) {
        sampler.offer(t, unpack(y), t >= t_end);
        return false;
    });
    return out;
}

SteadyResult steady_from_state(const BlochState2& s, const PhysicalTwoLevel& p, double abs_tol)
{
    SteadyResult r;
    const double n = s.photon_number();
    r.photon_number = n < abs_tol ? 0.0 : n;
    r.raw_photon_number = n;
    r.raw_bracket = n;
    r.regime = r.photon_number > 0.0 ? Regime::Lasing : Regime::BelowThreshold;
    r.gamma_perp = gamma_perp_two(p);
    r.populations = {s.rho00(), s.rho11, 0.0};
    return r;
}

SteadyResult steady_from_state(const BlochState3& s, const PhysicalThreeLevel& p, double abs_tol)
{
    SteadyResult r;
    const double n = s.photon_number();
    r.photon_number = n < abs_tol ? 0.0 : n;
    r.raw_photon_number = n;
    r.raw_bracket = n;
    r.regime = r.photon_number > 0.0 ? Regime::Lasing : Regime::BelowThreshold;
    r.gamma_perp = gamma_perp_three(p);
    r.populations = {s.rho00(), s.rho11, s.rho22};
    return r;
}

// Length of the Newton step -J^{-1} f at y, i.e. the estimated distance to the
// nearest fixed point. The vector fields are quadratic, so central differences
// give J exactly up to rounding. Infinite when J is numerically singular.
template <std::size_t N, class Rhs>
double newton_distance(const Rhs& rhs, const Vec<N>& y, const Vec<N>& f)
{
    std::array<Vec<N>, N> jac{};  // jac[row][col]
    for (std::size_t j = 0; j < N; ++j) {
        const double h = 1e-4 * (std::abs(y[j]) + 1.0);
        Vec<N> up = y, down = y;
        up[j] += h;
        down[j] -= h;
        const auto fu = rhs(up);
        const auto fd = rhs(down);
        for (std::size_t i = 0; i < N; ++i)
            jac[i][j] = (fu[i] - fd[i]) / (2.0 * h);
    }
    double jac_scale = 0.0;
    for (const auto& row : jac)
        for (double v : row)
            jac_scale = std::max(jac_scale, std::abs(v));
    Vec<N> rhs_vec = f;
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::abs(jac[r][col]) > std::abs(jac[piv][col]))
                piv = r;
        if (!(std::abs(jac[piv][col]) > 1e-13 * jac_scale))
            return std::numeric_limits<double>::infinity();
        std::swap(jac[piv], jac[col]);
        std::swap(rhs_vec[piv], rhs_vec[col]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double m = jac[r][col] / jac[col][col];
            for (std::size_t c = col; c < N; ++c)
                jac[r][c] -= m * jac[col][c];
            rhs_vec[r] -= m * rhs_vec[col];
        }
    }
    Vec<N> d{};
    for (std::size_t k = N; k-- > 0;) {
        double acc = rhs_vec[k];
        for (std::size_t c = k + 1; c < N; ++c)
            acc -= jac[k][c] * d[c];
        d[k] = acc / jac[k][k];
    }
    return norm2(d);
}

template <class Params, class State>
SettleOutcome<State> settle_impl(const Params& p, const State& initial, const IntegratorConfig& cfg,
                                 TimeSeries<State>* record)
{
    p.validate();
    cfg.validate();
    const double t_end = cfg.t_max > 0.0 ? cfg.t_max : default_t_max(p);
    SettleOutcome<State> out;
    Sampler<State> sampler(record, cfg.output_every);
    int quiet_steps = 0;
    const auto rhs = rhs_for(p);
    dopri_run(rhs, pack(initial), t_end, cfg, [&](double t, const auto& y, const auto& f) {
        out.state = unpack(y);
        out.t = t;
        const double bound = cfg.steady_tol * (norm2(y) + 1.0);
        // residual pre-filter skips the Jacobian far from a fixed point
        const bool quiet = norm2(f) < bound * 1e6 && newton_distance(rhs, y, f) < bound;
        quiet_steps = quiet ? quiet_steps + 1 : 0;
        // two consecutive quiet steps rule out a momentary turning point
        const bool done = quiet_steps >= 2;
        sampler.offer(t, out.state, done || t >= t_end);
        if (done)
            out.converged = true;
        return done;
    });
    out.photon_number = out.state.photon_number();
    if (out.converged)
        out.steady = steady_from_state(out.state, p, cfg.abs_tol);
    return out;
}

}  // namespace

TimeSeries<BlochState2> integrate(const PhysicalTwoLevel& p, const BlochState2& initial,
                                  const IntegratorConfig& cfg)
{
    return integrate_impl(p, initial, cfg);
}

TimeSeries<BlochState3> integrate(const PhysicalThreeLevel& p, const BlochState3& initial,
                                  const IntegratorConfig& cfg)
{
    return integrate_impl(p, initial, cfg);
}

SettleOutcome<BlochState2> settle(const PhysicalTwoLevel& p, const BlochState2& initial,
                                  const IntegratorConfig& cfg, TimeSeries<BlochState2>* record)
{
    return settle_impl(p, initial, cfg, record);
}

SettleOutcome<BlochState3> settle(const PhysicalThreeLevel& p, const BlochState3& initial,
                                  const IntegratorConfig& cfg, TimeSeries<BlochState3>* record)
{
    return settle_impl(p, initial, cfg, record);
}

}  // namespace lasekit
