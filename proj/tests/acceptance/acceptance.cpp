// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   lasekit_acceptance [--golden-dir DIR] [--update-goldens]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "csv.hpp"
#include "lasekit/dynamics.hpp"
#include "lasekit/laser.hpp"
#include "lasekit/numerics.hpp"
#include "lasekit/steady.hpp"
#include "stability.hpp"

using namespace lasekit;

namespace {

#ifndef LASEKIT_GOLDEN_DIR
#define LASEKIT_GOLDEN_DIR "tests/golden"
#endif

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& why)
    {
        if (!ok && pass) {
            pass = false;
            detail = why;
        }
    }
};

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double rel(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// ---- linear stability (Routh-Hurwitz on the Jacobian) ---------------------

using testing::char_poly;
using testing::hurwitz;
using testing::Mat;

bool stable_two(const PhysicalTwoLevel& p, const BlochState2& s)
{
    const double gp = gamma_perp_two(p);
    const double g = p.coupling_g;
    const Mat<3> j{{{-p.gamma_decay - p.pump_Gamma, -2 * g * s.x, -2 * g * s.y},
                    {2 * g * s.x, -gp, g * (2 * s.rho11 - 1)},
                    {0, p.n_atoms * g, -p.cavity_kappa}}};
    return hurwitz(char_poly(j));
}

bool stable_three(const PhysicalThreeLevel& p, const BlochState3& s)
{
    const double gp = gamma_perp_three(p);
    const double g = p.coupling_g;
    const Mat<4> j{{{-p.gamma_10, p.gamma_21, -2 * g * s.x, -2 * g * s.y},
                    {-p.gamma_02, -p.gamma_21 - p.gamma_02, 0, 0},
                    {2 * g * s.x, g * s.x, -gp, g * (s.rho11 - s.rho00())},
                    {0, 0, p.n_atoms * g, -p.cavity_kappa}}};
    return hurwitz(char_poly(j));
}

BlochState2 lasing_state(const PhysicalTwoLevel& p, const SteadyResult& r)
{
    const double x = std::sqrt(r.photon_number);
    return {r.populations.rho11, p.cavity_kappa * x / (p.n_atoms * p.coupling_g), x};
}

BlochState3 lasing_state(const PhysicalThreeLevel& p, const SteadyResult& r)
{
    const double x = std::sqrt(r.photon_number);
    return {r.populations.rho11, r.populations.rho22, p.cavity_kappa * x / (p.n_atoms * p.coupling_g), x};
}

// ---- random draws ---------------------------------------------------------

// Good-cavity three-level draw with n = (1 - q) * gain term, q in [0.05, 0.9].
PhysicalThreeLevel draw_three(std::mt19937_64& rng)
{
    PhysicalThreeLevel p;
    p.scheme = rng() % 2 ? Scheme::A : Scheme::B;
    p.n_atoms = std::round(log_uniform(rng, 50, 1e5));
    p.gamma_21 = log_uniform(rng, 0.1, 10);
    p.gamma_02 = log_uniform(rng, 0.1, 10);
    p.gamma_10 = p.gamma_02 * uniform(rng, 0.0, 0.5);
    p.gamma_ph = uniform(rng, 0.0, 1.0) < 0.3 ? 0.0 : log_uniform(rng, 1e-3, 2);
    const double gp = gamma_perp_three(p);
    p.cavity_kappa = gp * log_uniform(rng, 0.01, 0.5);
    const double denom = p.gamma_02 + 2 * p.gamma_21;
    const double gain = p.n_atoms / (2 * p.cavity_kappa) * p.gamma_21 * (p.gamma_02 - p.gamma_10) / denom;
    const double sum = p.gamma_02 * p.gamma_21 + p.gamma_02 * p.gamma_10 + p.gamma_21 * p.gamma_10;
    const double q = uniform(rng, 0.05, 0.9);
    p.coupling_g = std::sqrt(gp * sum / (2 * q * gain * denom));
    return p;
}

// Good-cavity two-level draw with the pump inside the exact window and the
// loss at most 90% of the gain.
bool draw_two(std::mt19937_64& rng, PhysicalTwoLevel& p, DimensionlessTwoLevel& d, double& pump)
{
    d.lambda = log_uniform(rng, 1e2, 1e5);
    d.s = log_uniform(rng, 1e-6, 2e-2);
    d.delta = uniform(rng, 0.0, 1.0) < 0.3 ? 0.0 : log_uniform(rng, 1e-3, 50);
    const auto w = window_two(d);
    if (!w || !(w->exact.upper > 2 * w->exact.lower))
        return false;
    pump = log_uniform(rng, w->exact.lower, w->exact.upper);
    if (raw_bracket_two(d, pump) < 0.1 * (pump - 1))
        return false;
    const double gamma = log_uniform(rng, 0.1, 10);
    const double gp = (gamma * pump + gamma + gamma * d.delta) / 2;
    const double kappa = gp * log_uniform(rng, 0.01, 0.5);
    const double n_atoms = 4 * kappa * d.lambda / gamma;
    if (n_atoms < 1)
        return false;
    p = {n_atoms, std::sqrt(kappa * gamma / (2 * n_atoms * d.s)), kappa, gamma, pump * gamma,
         d.delta * gamma};
    return true;
}

// ---- criteria -------------------------------------------------------------

Outcome criterion1()
{
    Outcome o;
    std::mt19937_64 rng(20240601);
    const auto start = std::chrono::steady_clock::now();
    int accepted = 0, unstable = 0;
    double worst_alg = 0.0, worst_ode = 0.0;
    IntegratorConfig cfg;
    while (accepted < 200) {
        const auto p = draw_three(rng);
        const auto r = n_three_physical(p);
        if (r.regime != Regime::Lasing)
            continue;
        if (!stable_three(p, lasing_state(p, r))) {
            ++unstable;
            continue;
        }
        ++accepted;
        const double analytic = r.photon_number;
        const double algebraic = algebraic_oracle_three(p);
        const auto s = settle(p, default_initial_three(p), cfg);
        worst_alg = std::max(worst_alg, rel(analytic, algebraic));
        o.require(s.converged, "ODE did not settle for draw " + std::to_string(accepted));
        if (s.converged)
            worst_ode = std::max(worst_ode, rel(analytic, s.steady.photon_number));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(worst_alg <= 1e-12, fmt("analytic vs algebraic %.3g > 1e-12", worst_alg));
    o.require(worst_ode <= 1e-5, fmt("analytic vs ODE %.3g > 1e-5", worst_ode));
    o.require(secs < 60, fmt("runtime %.1f s >= 60 s", secs));
    if (o.pass)
        o.detail = fmt("200 draws, max rel analytic/algebraic %.2g, analytic/ODE %.2g", worst_alg, worst_ode) +
                   fmt(", %.1f s", secs) + ", " + std::to_string(unstable) +
                   " unstable-fixed-point draws skipped";
    return o;
}

Outcome criterion2()
{
    Outcome o;
    std::mt19937_64 rng(424242);
    IntegratorConfig cfg;
    int accepted = 0, unstable = 0;
    double worst = 0.0, worst_below = 0.0;
    while (accepted < 100) {
        PhysicalTwoLevel p;
        DimensionlessTwoLevel d;
        double pump = 0;
        if (!draw_two(rng, p, d, pump))
            continue;
        const auto r = n_two_level(d, pump);
        if (!stable_two(p, lasing_state(p, n_two_physical(p)))) {
            ++unstable;
            continue;
        }
        ++accepted;
        const auto s = settle(p, default_initial_two(p), cfg);
        o.require(s.converged, "ODE did not settle (lasing) for draw " + std::to_string(accepted));
        if (s.converged)
            worst = std::max(worst, rel(r.photon_number, s.steady.photon_number));

        const double below = 0.5 * *threshold_two(d);
        PhysicalTwoLevel pb = p;
        pb.pump_Gamma = below * p.gamma_decay;
        const auto sb = settle(pb, default_initial_two(pb), cfg);
        o.require(sb.converged, "ODE did not settle (below threshold) for draw " + std::to_string(accepted));
        worst_below = std::max(worst_below, sb.photon_number);
    }
    o.require(worst <= 1e-5, fmt("closed form vs ODE %.3g > 1e-5", worst));
    o.require(worst_below < 1e-8, fmt("below-threshold ODE photon number %.3g >= 1e-8", worst_below));
    if (o.pass)
        o.detail = fmt("100 draws, max rel closed form/ODE %.2g, max below-threshold n %.2g", worst, worst_below) +
                   ", " + std::to_string(unstable) + " unstable-fixed-point draws skipped";
    return o;
}

Outcome criterion3()
{
    Outcome o;
    PhysicalThreeLevel ex{100, 1, 1, 1, 2, 0.1, 0, Scheme::B};
    const double direct = raw_photon_number_three(ex);
    const auto b = reduce_scheme_b(ex);
    ex.scheme = Scheme::A;
    const auto a = reduce_scheme_a(ex);
    const double via_b = b.params.lambda2 * raw_bracket_scheme_b(b.params, b.pump);
    const double via_a = a.params.lambda1 * raw_bracket_scheme_a(a.params, a.pump);
    for (double v : {direct, via_a, via_b})
        o.require(rel(v, 23.448125) <= 1e-12, fmt("example route gives %.12g", v));

    std::mt19937_64 rng(777);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        PhysicalThreeLevel p;
        p.n_atoms = std::round(log_uniform(rng, 1, 1e6));
        p.coupling_g = log_uniform(rng, 1e-3, 10);
        p.cavity_kappa = log_uniform(rng, 1e-2, 1e2);
        p.gamma_21 = log_uniform(rng, 1e-2, 1e2);
        p.gamma_02 = log_uniform(rng, 1e-2, 1e2);
        p.gamma_10 = log_uniform(rng, 1e-3, 1e2);
        p.gamma_ph = uniform(rng, 0, 1) < 0.3 ? 0.0 : log_uniform(rng, 1e-3, 1e2);
        const double ref = raw_photon_number_three(p);
        const auto rb = reduce_scheme_b(p);
        p.scheme = Scheme::A;
        const auto ra = reduce_scheme_a(p);
        worst = std::max(worst, rel(ref, rb.params.lambda2 * raw_bracket_scheme_b(rb.params, rb.pump)));
        worst = std::max(worst, rel(ref, ra.params.lambda1 * raw_bracket_scheme_a(ra.params, ra.pump)));
    }
    o.require(worst <= 1e-12, fmt("max relative deviation %.3g > 1e-12", worst));
    if (o.pass)
        o.detail = fmt("example 23.448125 by all three routes; 500 draws, max rel %.2g", worst);
    return o;
}

Outcome criterion4()
{
    Outcome o;
    std::mt19937_64 rng(4444);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        PhysicalThreeLevel p;
        p.n_atoms = std::round(log_uniform(rng, 1, 1e6));
        p.coupling_g = log_uniform(rng, 1e-3, 10);
        p.cavity_kappa = log_uniform(rng, 1e-2, 1e2);
        p.gamma_21 = log_uniform(rng, 1e-2, 1e2);
        p.gamma_02 = log_uniform(rng, 1e-2, 1e2);
        p.gamma_10 = log_uniform(rng, 1e-3, 1e2);
        p.gamma_ph = uniform(rng, 0, 1) < 0.3 ? 0.0 : log_uniform(rng, 1e-3, 1e2);
        worst = std::max(worst, rel(raw_photon_number_three(p), photon_number_decomposed(p)));
    }
    o.require(worst <= 1e-12, fmt("max relative deviation %.3g > 1e-12", worst));
    if (o.pass)
        o.detail = fmt("500 draws, max rel %.2g", worst);
    return o;
}

Outcome criterion5()
{
    Outcome o;
    const auto e = optimum_two({1e3, 1e-6, 0});
    if (!e || !e->n_max_approx || !e->n_max_relative_error) {
        o.require(false, "no extremum report");
        return o;
    }
    const double arg_err = rel(e->p_closed_form, e->p_exact);
    o.require(arg_err <= 1e-6, fmt("vertex vs golden-section argmax %.3g > 1e-6", arg_err));
    o.require(*e->n_max_relative_error <= 1e-2, fmt("n_max vs lambda/4s %.3g > 1%%", *e->n_max_relative_error));
    if (o.pass)
        o.detail = fmt("argmax rel %.2g, n_max rel %.2g", arg_err, *e->n_max_relative_error);
    return o;
}

Outcome criterion6()
{
    Outcome o;
    double worst = 0.0;
    for (double s : {0.01, 0.1, 1e-3, 0.05})
        for (double delta : {0.0, 0.1, 2.5}) {
            const auto w = window_scheme_b({1e5, s, 0, delta});
            if (!w) {
                o.require(false, fmt("no scheme B window for s2=%g, delta2=%g", s, delta));
                continue;
            }
            worst = std::max(worst, rel(w->exact.upper, 1 / s - delta));
        }
    o.require(worst <= 1e-12, fmt("scheme B upper edge vs 1/s - delta %.3g > 1e-12", worst));
    const auto w2 = window_two({1e3, 1e-6, 1e5});
    const double err2 = w2 ? rel(w2->exact.upper, 899997) : 1.0;
    o.require(err2 <= 1e-4, fmt("two-level upper root vs 899997 %.3g > 1e-4", err2));
    if (o.pass)
        o.detail = fmt("scheme B max rel %.2g; two-level upper %.10g", worst, w2->exact.upper) +
                   fmt(" (rel %.2g)", err2);
    return o;
}

Outcome criterion7()
{
    Outcome o;
    const auto e = optimum_scheme_b({1e5, 0.01, 0, 0.1});
    if (!e) {
        o.require(false, "no extremum report");
        return o;
    }
    const double stationary = -2 + std::sqrt(203.8);
    const double err = std::abs(e->p_exact - stationary);
    o.require(err <= 1e-6, fmt("golden-section %.12g vs stationary point", e->p_exact) + fmt(" (%.3g)", err));
    o.require(std::abs(e->p_closed_form - 49.95) <= 1e-12, fmt("closed-form optimum %.12g != 49.95", e->p_closed_form));
    o.require(e->discrepancy > 3, fmt("discrepancy %.3g <= 3", e->discrepancy));
    if (o.pass)
        o.detail = fmt("exact %.9f (|err| %.2g)", e->p_exact, err) +
                   fmt(", closed form %.2f, ratio %.3f", e->p_closed_form, e->p_closed_form / e->p_exact);
    return o;
}

Outcome criterion8()
{
    Outcome o;
    PhysicalThreeLevel p{10, 1, 1, 1, 2, 0.02, 0, Scheme::A};
    const auto nmin = n_min_atoms(p);
    if (!nmin) {
        o.require(false, "no N_min");
        return o;
    }
    PhysicalThreeLevel above = p;
    above.n_atoms = *nmin * (1 + 1e-9);
    const auto ra = reduce_scheme_a(above);
    const auto thr = threshold_scheme_a(ra.params);
    o.require(thr.has_value(), "no threshold just above N_min");
    if (thr)
        o.require(raw_bracket_scheme_a(ra.params, 2 * *thr) > 0, "bracket not positive above threshold");

    PhysicalThreeLevel below = p;
    below.n_atoms = *nmin * (1 - 1e-6);
    const auto rb = reduce_scheme_a(below);
    double max_bracket = raw_bracket_scheme_a(rb.params, 0.0);
    for (int i = 0; i < 2000; ++i) {
        const double pump = std::pow(10.0, -8 + 12.0 * i / 1999);
        max_bracket = std::max(max_bracket, raw_bracket_scheme_a(rb.params, pump));
    }
    o.require(max_bracket <= 0, fmt("bracket %.3g > 0 below N_min", max_bracket));
    if (o.pass)
        o.detail = fmt("N_min %.10g, threshold just above %.4g", *nmin, *thr) +
                   fmt(", max bracket below %.3g", max_bracket);
    return o;
}

std::string render(const cli::SweepTable& t)
{
    std::ostringstream ss;
    cli::write_sweep_csv(ss, t);
    return ss.str();
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return {};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int sign_changes(const std::vector<double>& v)
{
    int changes = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if ((v[i - 1] > 0) != (v[i] > 0))
            ++changes;
    return changes;
}

Outcome criterion9(const std::filesystem::path& golden_dir, bool update)
{
    Outcome o;
    int curves = 0;
    for (const auto& preset : cli::figure_presets()) {
        for (std::size_t k = 0; k < preset.s_values.size(); ++k) {
            const auto table = cli::figure_curve(preset, k);
            const auto text = render(table);
            const auto name = preset.name + "_curve" + std::to_string(k + 1) + ".csv";
            const auto path = golden_dir / name;
            if (update) {
                std::filesystem::create_directories(golden_dir);
                std::ofstream(path, std::ios::binary) << text;
            }
            o.require(text == render(cli::figure_curve(preset, k)), name + " differs between two runs");
            o.require(text == slurp(path), name + " differs from golden " + path.string());

            const double s = preset.s_values[k];
            std::vector<double> pumps, n;
            for (const auto& row : table.rows) {
                pumps.push_back(row.pump);
                n.push_back(row.photon_number);
            }
            if (preset.name == "fig2") {
                const DimensionlessTwoLevel d{preset.lambda, s, preset.delta};
                std::vector<double> raw;
                for (double p : pumps)
                    raw.push_back(raw_bracket_two(d, p));
                o.require(sign_changes(raw) == 2, name + ": raw bracket does not change sign exactly twice");
                const double scale = *std::max_element(n.begin(), n.end());
                for (std::size_t i = 1; i + 1 < n.size(); ++i) {
                    if (!(n[i - 1] > 0 && n[i] > 0 && n[i + 1] > 0))
                        continue;
                    const double left = (n[i] - n[i - 1]) / (pumps[i] - pumps[i - 1]);
                    const double right = (n[i + 1] - n[i]) / (pumps[i + 1] - pumps[i]);
                    o.require(right <= left + 1e-9 * scale / (pumps[i + 1] - pumps[i - 1]),
                              name + ": not concave at P = " + cli::format_double(pumps[i]));
                }
            } else if (preset.name == "fig4a") {
                const DimensionlessSchemeA d{preset.lambda, s, preset.eps, preset.delta};
                const double bound = saturation_scheme_a(d);
                for (std::size_t i = 0; i < n.size(); ++i) {
                    if (i > 0)
                        o.require(n[i] >= n[i - 1], name + ": decreasing at P = " + cli::format_double(pumps[i]));
                    o.require(n[i] <= bound, name + ": exceeds the large-pump asymptote");
                }
            } else {
                const DimensionlessSchemeB d{preset.lambda, s, preset.eps, preset.delta};
                const auto w = window_scheme_b(d);
                o.require(w.has_value(), name + ": no window");
                if (!w)
                    continue;
                const auto peak = static_cast<std::size_t>(std::max_element(n.begin(), n.end()) - n.begin());
                o.require(peak > 0 && n[peak] > n.front(), name + ": does not rise");
                for (std::size_t i = 1; i <= peak; ++i)
                    o.require(n[i] >= n[i - 1], name + ": not rising before the peak");
                for (std::size_t i = peak + 1; i < n.size(); ++i)
                    o.require(n[i] <= n[i - 1], name + ": not falling after the peak");
                for (std::size_t i = 0; i < n.size(); ++i) {
                    if (pumps[i] < w->exact.upper)
                        o.require(n[i] > 0, name + ": zero inside the window");
                    else
                        o.require(n[i] == 0, name + ": nonzero beyond the window edge");
                }
                const double at_edge = n_scheme_b(d, w->exact.upper).raw_photon_number;
                o.require(std::abs(at_edge) <= 1e-9 * n[peak], name + ": photon number at the edge is not zero");
            }
            ++curves;
        }
    }
    if (o.pass)
        o.detail = std::to_string(curves) + " curves byte-identical to goldens; shape checks hold";
    return o;
}

// Every edge e > 0 must separate opposite signs of the raw expression at
// e (1 - h) and e (1 + h).
void check_edge(Outcome& o, int& edges, const std::string& what, double edge,
                const std::function<double(double)>& raw)
{
    constexpr double h = 1e-6;
    if (!(edge > 0) || !std::isfinite(edge))
        return;
    ++edges;
    const double lo = raw(edge * (1 - h));
    const double hi = raw(edge * (1 + h));
    o.require((lo > 0) != (hi > 0) && lo != 0 && hi != 0,
              what + fmt(": no sign change around %.12g", edge) + fmt(" (%.3g, %.3g)", lo, hi));
}

void check_region(Outcome& o, int& edges, const std::string& label, const LaserModel& m)
{
    const auto r = m.region();
    auto raw = [&](double p) { return m.raw_bracket(p); };
    if (r.threshold)
        check_edge(o, edges, label + " threshold", *r.threshold, raw);
    if (r.window) {
        check_edge(o, edges, label + " window lower", r.window->exact.lower, raw);
        check_edge(o, edges, label + " window upper", r.window->exact.upper, raw);
    }
    if (r.depletion_window) {
        const auto& d = std::get<DimensionlessSchemeA>(m.reduced());
        const double s_over_r = d.s1 * d.eps1;
        const double delta_times_r = d.delta1 / d.eps1;
        // large-pump bracket as a function of r = gamma_02 / gamma_10
        auto sat = [&](double ratio) {
            return saturation_scheme_a({1.0, s_over_r * ratio, 1.0 / ratio, delta_times_r / ratio});
        };
        check_edge(o, edges, label + " depletion lower", r.depletion_window->exact.lower, sat);
        check_edge(o, edges, label + " depletion upper", r.depletion_window->exact.upper, sat);
    }
    if (r.n_min && m.is_physical()) {
        const auto base = m.physical_three(*m.configured_pump());
        auto margin = [&](double n_atoms) {
            PhysicalThreeLevel q = base;
            q.n_atoms = n_atoms;
            return saturation_scheme_a(reduce_scheme_a(q).params);
        };
        check_edge(o, edges, label + " N_min", *r.n_min, margin);
    }
}

Outcome criterion10()
{
    Outcome o;
    int edges = 0;
    check_region(o, edges, "two-level fig2", LaserModel::dimensionless(DimensionlessTwoLevel{1e3, 1e-6, 1e5}));
    check_region(o, edges, "scheme A", LaserModel::dimensionless(DimensionlessSchemeA{1e6, 0.2, 0.01, 0}));
    check_region(o, edges, "scheme A depleted", LaserModel::dimensionless(DimensionlessSchemeA{1e6, 0.1, 1, 0}));
    check_region(o, edges, "scheme B", LaserModel::dimensionless(DimensionlessSchemeB{1e5, 0.01, 0, 0.1}));
    check_region(o, edges, "scheme A physical",
                 LaserModel::physical(PhysicalThreeLevel{10, 1, 1, 1, 2, 0.02, 0, Scheme::A}));

    std::mt19937_64 rng(1010);
    for (int i = 0; i < 200; ++i) {
        const double s = log_uniform(rng, 1e-7, 0.1);
        const double delta = uniform(rng, 0, 1) < 0.3 ? 0.0 : log_uniform(rng, 1e-3, 1e3);
        const double eps = log_uniform(rng, 1e-3, 0.9);
        check_region(o, edges, "two-level draw " + std::to_string(i),
                     LaserModel::dimensionless(DimensionlessTwoLevel{1e3, s, delta}));
        check_region(o, edges, "scheme A draw " + std::to_string(i),
                     LaserModel::dimensionless(DimensionlessSchemeA{1e3, s * 10, eps, delta}));
        check_region(o, edges, "scheme B draw " + std::to_string(i),
                     LaserModel::dimensionless(DimensionlessSchemeB{1e3, s, eps, delta}));
    }
    if (o.pass)
        o.detail = std::to_string(edges) + " edges bracket a sign change at h = 1e-6";
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    std::filesystem::path golden_dir = LASEKIT_GOLDEN_DIR;
    bool update = false;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--golden-dir" && i + 1 < argc)
            golden_dir = argv[++i];
        else if (arg == "--update-goldens")
            update = true;
        else {
            std::fprintf(stderr, "usage: %s [--golden-dir DIR] [--update-goldens]\n", argv[0]);
            return 2;
        }
    }
    ::unsetenv("LASEKIT_PRECISION");

    struct Entry {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> entries{
        {1, "three-level oracle triangle", criterion1},
        {2, "two-level oracle", criterion2},
        {3, "re-parameterization identity", criterion3},
        {4, "decomposition identity", criterion4},
        {5, "two-level extremum and maximum", criterion5},
        {6, "window endpoints", criterion6},
        {7, "scheme B optimum discrepancy", criterion7},
        {8, "minimal atom number", criterion8},
        {9, "figure regression", [&] { return criterion9(golden_dir, update); }},
        {10, "threshold sign change", criterion10},
    };
    int failed = 0;
    for (const auto& e : entries) {
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s criterion %2d: %s -- %s\n", o.pass ? "PASS" : "FAIL", e.id, e.title, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
    return failed == 0 ? 0 : 1;
}
