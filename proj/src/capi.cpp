#include "lasekit/lasekit.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "lasekit/dynamics.hpp"
#include "lasekit/error.hpp"
#include "lasekit/laser.hpp"

struct lk_model {
    lasekit::LaserModel model;
    bool gauge_physical = false;
    std::vector<std::pair<std::string, double>> record;
};

struct lk_series {
    lasekit::SweepSeries series;
};

struct lk_trajectory {
    std::vector<double> times;
    std::vector<lk_state> states;
};

namespace {

using namespace lasekit;

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

thread_local std::string last_error;

lk_status set_error(lk_status status, const std::string& message)
{
    last_error = message;
    return status;
}

lk_status map_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument:
        return LK_E_INVALID_ARGUMENT;
    case ErrorCode::Singular:
        return LK_E_SINGULAR;
    case ErrorCode::Stiffness:
        return LK_E_STIFFNESS;
    case ErrorCode::StepLimit:
        return LK_E_STEP_LIMIT;
    case ErrorCode::NotPhysical:
        return LK_E_NOT_PHYSICAL;
    }
    return LK_E_INTERNAL;
}

template <class Fn>
lk_status guarded(Fn&& fn)
{
    try {
        last_error.clear();
        return fn();
    } catch (const Error& e) {
        return set_error(map_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(LK_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(LK_E_INTERNAL, e.what());
    } catch (...) {
        return set_error(LK_E_INTERNAL, "unknown exception");
    }
}

lk_model* wrap(LaserModel m, bool gauge_physical = false)
{
    auto* out = new lk_model{std::move(m), gauge_physical, {}};
    out->record = out->model.parameter_record();
    return out;
}

bool dynamics_allowed(const lk_model* m)
{
    return m->model.is_physical() || m->gauge_physical;
}

lk_model_kind to_c(ModelKind k)
{
    switch (k) {
    case ModelKind::TwoLevel:
        return LK_MODEL_TWO_LEVEL;
    case ModelKind::SchemeA:
        return LK_MODEL_SCHEME_A;
    case ModelKind::SchemeB:
        return LK_MODEL_SCHEME_B;
    }
    return LK_MODEL_TWO_LEVEL;
}

lk_regime to_c(Regime r)
{
    switch (r) {
    case Regime::BelowThreshold:
        return LK_REGIME_BELOW_THRESHOLD;
    case Regime::Lasing:
        return LK_REGIME_LASING;
    case Regime::AboveUpperBound:
        return LK_REGIME_ABOVE_UPPER_BOUND;
    }
    return LK_REGIME_BELOW_THRESHOLD;
}

lk_window to_c(const std::optional<LasingWindow>& w)
{
    if (!w)
        return {0, nan_value, nan_value, 0};
    return {1, w->lower, w->upper, w->exact ? 1 : 0};
}

IntegratorConfig from_c(const lk_integrator_config& c)
{
    IntegratorConfig cfg;
    cfg.rel_tol = c.rel_tol;
    cfg.abs_tol = c.abs_tol;
    cfg.max_step = c.max_step;
    cfg.t_max = c.t_max;
    cfg.steady_tol = c.steady_tol;
    cfg.output_every = c.output_every;
    cfg.max_steps = c.max_steps;
    return cfg;
}

BlochState2 state2(const lk_state& s) { return {s.rho11, s.y, s.x}; }
BlochState3 state3(const lk_state& s) { return {s.rho11, s.rho22, s.y, s.x}; }
lk_state to_c(const BlochState2& s) { return {s.rho11, 0.0, s.y, s.x}; }
lk_state to_c(const BlochState3& s) { return {s.rho11, s.rho22, s.y, s.x}; }

template <class State>
lk_trajectory* to_c(const TimeSeries<State>& ts)
{
    auto* out = new lk_trajectory;
    out->times = ts.times;
    out->states.reserve(ts.size());
    for (const auto& s : ts.states)
        out->states.push_back(to_c(s));
    return out;
}

#define LK_REQUIRE(ptr)                                                      \
    do {                                                                     \
        if (!(ptr))                                                          \
            return set_error(LK_E_NULL_ARGUMENT, #ptr " must not be NULL");  \
    } while (0)

}  // namespace

extern "C" {

const char* lk_status_string(lk_status status)
{
    switch (status) {
    case LK_OK:
        return "ok";
    case LK_E_NULL_ARGUMENT:
        return "null argument";
    case LK_E_INVALID_ARGUMENT:
        return "invalid argument";
    case LK_E_SINGULAR:
        return "singular system";
    case LK_E_NOT_PHYSICAL:
        return "physical parameterization required";
    case LK_E_NO_CONVERGENCE:
        return "no convergence";
    case LK_E_STIFFNESS:
        return "step size underflow (stiff system)";
    case LK_E_STEP_LIMIT:
        return "step limit reached";
    case LK_E_OUT_OF_RANGE:
        return "index out of range";
    case LK_E_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char* lk_last_error(void)
{
    return last_error.c_str();
}

const char* lk_model_kind_name(lk_model_kind kind)
{
    switch (kind) {
    case LK_MODEL_TWO_LEVEL:
        return to_string(ModelKind::TwoLevel);
    case LK_MODEL_SCHEME_A:
        return to_string(ModelKind::SchemeA);
    case LK_MODEL_SCHEME_B:
        return to_string(ModelKind::SchemeB);
    }
    return "?";
}

const char* lk_regime_name(lk_regime regime)
{
    switch (regime) {
    case LK_REGIME_BELOW_THRESHOLD:
        return to_string(Regime::BelowThreshold);
    case LK_REGIME_LASING:
        return to_string(Regime::Lasing);
    case LK_REGIME_ABOVE_UPPER_BOUND:
        return to_string(Regime::AboveUpperBound);
    }
    return "?";
}

lk_status lk_model_from_physical_two(const lk_physical_two* p, lk_model** out)
{
    LK_REQUIRE(p);
    LK_REQUIRE(out);
    return guarded([&] {
        PhysicalTwoLevel phys{p->n_atoms, p->coupling_g, p->cavity_kappa,
                              p->gamma_decay, p->pump_Gamma, p->gamma_ph};
        *out = wrap(LaserModel::physical(phys));
        return LK_OK;
    });
}

lk_status lk_model_from_physical_three(const lk_physical_three* p, lk_model_kind kind, lk_model** out)
{
    LK_REQUIRE(p);
    LK_REQUIRE(out);
    if (kind != LK_MODEL_SCHEME_A && kind != LK_MODEL_SCHEME_B)
        return set_error(LK_E_INVALID_ARGUMENT, "three-level models are scheme A or scheme B");
    return guarded([&] {
        PhysicalThreeLevel phys{p->n_atoms, p->coupling_g, p->cavity_kappa, p->gamma_21,
                                p->gamma_02,  p->gamma_10,   p->gamma_ph,
                                kind == LK_MODEL_SCHEME_A ? Scheme::A : Scheme::B};
        *out = wrap(LaserModel::physical(phys));
        return LK_OK;
    });
}

lk_status lk_model_from_dimensionless(lk_model_kind kind, const lk_dimensionless* d, lk_model** out)
{
    LK_REQUIRE(d);
    LK_REQUIRE(out);
    return guarded([&] {
        switch (kind) {
        case LK_MODEL_TWO_LEVEL:
            *out = wrap(LaserModel::dimensionless(DimensionlessTwoLevel{d->lambda, d->s, d->delta}));
            return LK_OK;
        case LK_MODEL_SCHEME_A:
            *out = wrap(LaserModel::dimensionless(DimensionlessSchemeA{d->lambda, d->s, d->eps, d->delta}));
            return LK_OK;
        case LK_MODEL_SCHEME_B:
            *out = wrap(LaserModel::dimensionless(DimensionlessSchemeB{d->lambda, d->s, d->eps, d->delta}));
            return LK_OK;
        }
        return set_error(LK_E_INVALID_ARGUMENT, "unknown model kind");
    });
}

lk_status lk_model_gauge_expand(const lk_model* model, lk_model** out)
{
    LK_REQUIRE(model);
    LK_REQUIRE(out);
    return guarded([&] {
        if (!model->model.is_physical()) {
            // the canonical gauge needs a finite coupling
            if (model->model.kind() == ModelKind::TwoLevel)
                (void)model->model.physical_two(0.0);
            else
                (void)model->model.physical_three(0.0);
        }
        *out = wrap(model->model, true);
        return LK_OK;
    });
}

void lk_model_free(lk_model* model)
{
    delete model;
}

lk_status lk_model_get_info(const lk_model* model, lk_model_info* out)
{
    LK_REQUIRE(model);
    LK_REQUIRE(out);
    const auto& m = model->model;
    out->kind = to_c(m.kind());
    out->is_physical = m.is_physical() ? 1 : 0;
    out->has_configured_pump = m.configured_pump() ? 1 : 0;
    out->configured_pump = m.configured_pump().value_or(nan_value);
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, DimensionlessTwoLevel>)
                out->reduced = {d.lambda, d.s, 0.0, d.delta};
            else if constexpr (std::is_same_v<T, DimensionlessSchemeA>)
                out->reduced = {d.lambda1, d.s1, d.eps1, d.delta1};
            else
                out->reduced = {d.lambda2, d.s2, d.eps2, d.delta2};
        },
        m.reduced());
    return LK_OK;
}

size_t lk_model_parameter_count(const lk_model* model)
{
    return model ? model->record.size() : 0;
}

lk_status lk_model_parameter(const lk_model* model, size_t index, const char** name, double* value)
{
    LK_REQUIRE(model);
    if (index >= model->record.size())
        return set_error(LK_E_OUT_OF_RANGE, "parameter index out of range");
    if (name)
        *name = model->record[index].first.c_str();
    if (value)
        *value = model->record[index].second;
    return LK_OK;
}

lk_status lk_steady(const lk_model* model, double pump, lk_steady_report* out)
{
    LK_REQUIRE(model);
    LK_REQUIRE(out);
    return guarded([&] {
        const auto& m = model->model;
        const auto r = m.steady(pump);
        out->photon_number = r.photon_number;
        out->raw_bracket = r.raw_bracket;
        out->raw_photon_number = r.raw_photon_number;
        out->regime = to_c(r.regime);
        out->gamma_perp = r.gamma_perp;
        out->rho00 = r.populations.rho00;
        out->rho11 = r.populations.rho11;
        out->rho22 = r.populations.rho22;
        out->gamma_parallel = nan_value;
        out->inversion = nan_value;
        if (m.kind() != ModelKind::TwoLevel) {
            // dimensionless configs report these in units of the reference rate
            const auto phys = m.is_physical() ? m.physical_three(pump)
                              : m.kind() == ModelKind::SchemeA
                                  ? PhysicalThreeLevel{1.0, 1.0, 1.0, pump, 1.0,
                                                       std::get<DimensionlessSchemeA>(m.reduced()).eps1,
                                                       0.0, Scheme::A}
                                  : PhysicalThreeLevel{1.0, 1.0, 1.0, 1.0, pump,
                                                       std::get<DimensionlessSchemeB>(m.reduced()).eps2,
                                                       0.0, Scheme::B};
            const auto dec = gamma_parallel_and_inversion(phys);
            out->gamma_parallel = dec.gamma_parallel;
            out->inversion = dec.inversion;
        }
        return LK_OK;
    });
}

lk_status lk_raw_bracket(const lk_model* model, double pump, double* out)
{
    LK_REQUIRE(model);
    LK_REQUIRE(out);
    return guarded([&] {
        *out = model->model.raw_bracket(pump);
        return LK_OK;
    });
}

lk_status lk_region(const lk_model* model, lk_region_report* out)
{
    LK_REQUIRE(model);
    LK_REQUIRE(out);
    return guarded([&] {
        const auto r = model->model.region();
        *out = lk_region_report{};
        out->lasing_possible = r.window ? 1 : 0;
        out->has_threshold = r.threshold ? 1 : 0;
        out->threshold = r.threshold.value_or(nan_value);
        out->window = to_c(r.window ? std::optional<LasingWindow>(r.window->exact) : std::nullopt);
        out->window_asymptotic =
            to_c(r.window ? std::optional<LasingWindow>(r.window->asymptotic) : std::nullopt);
        out->window_upper_relative_error = r.window ? r.window->upper_relative_error : nan_value;
        out->pump_restriction = to_c(r.pump_restriction);
        out->has_extremum = r.extremum ? 1 : 0;
        out->p_closed_form = r.extremum ? r.extremum->p_closed_form : nan_value;
        out->p_exact = r.extremum ? r.extremum->p_exact : nan_value;
        out->n_at_exact = r.extremum ? r.extremum->n_at_exact : nan_value;
        out->n_at_closed_form = r.extremum ? r.extremum->n_at_closed_form : nan_value;
        out->extremum_discrepancy = r.extremum ? r.extremum->discrepancy : nan_value;
        out->has_n_max_approx = (r.extremum && r.extremum->n_max_approx) ? 1 : 0;
        out->n_max_approx = out->has_n_max_approx ? *r.extremum->n_max_approx : nan_value;
        out->n_max_relative_error = (r.extremum && r.extremum->n_max_relative_error)
                                        ? *r.extremum->n_max_relative_error
                                        : nan_value;
        out->has_n_min = r.n_min ? 1 : 0;
        out->n_min = r.n_min.value_or(nan_value);
        out->has_s_bound = r.s_bound ? 1 : 0;
        out->s_bound = r.s_bound.value_or(nan_value);
        out->has_saturation = r.saturation ? 1 : 0;
        out->saturation = r.saturation.value_or(nan_value);
        out->depletion_window = to_c(r.depletion_window
                                         ? std::optional<LasingWindow>(r.depletion_window->exact)
                                         : std::nullopt);
        out->depletion_window_asymptotic =
            to_c(r.depletion_window ? std::optional<LasingWindow>(r.depletion_window->asymptotic)
                                    : std::nullopt);
        return LK_OK;
    });
}

void lk_integrator_config_default(lk_integrator_config* out)
{
    if (!out)
        return;
    const IntegratorConfig cfg;
    *out = {cfg.rel_tol,    cfg.abs_tol,      cfg.max_step, cfg.t_max,
            cfg.steady_tol, cfg.output_every, cfg.max_steps};
}

void lk_sweep_options_default(lk_sweep_options* out)
{
    if (!out)
        return;
    *out = lk_sweep_options{};
    out->pump_min = 0.0;
    out->pump_max = 1.0;
    out->count = 2;
    out->scale = LK_SCALE_LINEAR;
    out->threads = 1;
    out->oracle_every = 0;
    lk_integrator_config_default(&out->integrator);
    out->seed_field = 1e-3;
}

lk_status lk_sweep(const lk_model* model, const lk_sweep_options* options, lk_series** out)
{
    LK_REQUIRE(model);
    LK_REQUIRE(options);
    LK_REQUIRE(out);
    if (options->oracle_every > 0 && !dynamics_allowed(model))
        return set_error(LK_E_NOT_PHYSICAL, "ODE oracle values need a physical (or gauge-expanded) model");
    return guarded([&] {
        SweepOptions opts;
        opts.threads = options->threads;
        opts.oracle_every = options->oracle_every;
        opts.integrator = from_c(options->integrator);
        opts.seed_field = options->seed_field;
        const auto scale = options->scale == LK_SCALE_LOG ? SweepScale::Log : SweepScale::Linear;
        auto series = sweep(model->model, options->pump_min, options->pump_max, options->count,
                            scale, opts);
        *out = new lk_series{std::move(series)};
        return LK_OK;
    });
}

size_t lk_series_size(const lk_series* series)
{
    return series ? series->series.size() : 0;
}

lk_status lk_series_get(const lk_series* series, size_t index, double* pump, double* photon_number,
                        lk_regime* regime, double* ode_photon_number)
{
    LK_REQUIRE(series);
    const auto& s = series->series;
    if (index >= s.size())
        return set_error(LK_E_OUT_OF_RANGE, "series index out of range");
    if (pump)
        *pump = s.pump_values[index];
    if (photon_number)
        *photon_number = s.photon_numbers[index];
    if (regime)
        *regime = to_c(s.regime_flags[index]);
    if (ode_photon_number)
        *ode_photon_number = s.ode_photon_numbers.empty() ? nan_value : s.ode_photon_numbers[index];
    return LK_OK;
}

int lk_series_has_oracle(const lk_series* series)
{
    return (series && !series->series.ode_photon_numbers.empty()) ? 1 : 0;
}

void lk_series_free(lk_series* series)
{
    delete series;
}

lk_status lk_default_initial_state(const lk_model* model, double pump, double seed_field, lk_state* out)
{
    LK_REQUIRE(model);
    LK_REQUIRE(out);
    return guarded([&] {
        const auto& m = model->model;
        if (m.kind() == ModelKind::TwoLevel)
            *out = to_c(default_initial_two(m.physical_two(pump), seed_field));
        else
            *out = to_c(default_initial_three(m.physical_three(pump), seed_field));
        return LK_OK;
    });
}

lk_status lk_derivatives(const lk_model* model, double pump, const lk_state* state, lk_state* out)
{
    LK_REQUIRE(model);
    LK_REQUIRE(state);
    LK_REQUIRE(out);
    return guarded([&] {
        const auto& m = model->model;
        if (m.kind() == ModelKind::TwoLevel) {
            const auto d = derivs_two(state2(*state), m.physical_two(pump));
            *out = {d.rho11, 0.0, d.y, d.x};
        } else {
            const auto d = derivs_three(state3(*state), m.physical_three(pump));
            *out = {d.rho11, d.rho22, d.y, d.x};
        }
        return LK_OK;
    });
}

lk_status lk_default_t_max(const lk_model* model, double pump, double* out)
{
    LK_REQUIRE(model);
    LK_REQUIRE(out);
    return guarded([&] {
        const auto& m = model->model;
        *out = m.kind() == ModelKind::TwoLevel ? default_t_max(m.physical_two(pump))
                                               : default_t_max(m.physical_three(pump));
        return LK_OK;
    });
}

lk_status lk_integrate(const lk_model* model, double pump, const lk_state* initial,
                       const lk_integrator_config* cfg, lk_trajectory** out)
{
    LK_REQUIRE(model);
    LK_REQUIRE(initial);
    LK_REQUIRE(cfg);
    LK_REQUIRE(out);
    if (!dynamics_allowed(model))
        return set_error(LK_E_NOT_PHYSICAL, "dynamics needs a physical (or gauge-expanded) model");
    return guarded([&] {
        const auto& m = model->model;
        const auto c = from_c(*cfg);
        if (m.kind() == ModelKind::TwoLevel)
            *out = to_c(integrate(m.physical_two(pump), state2(*initial), c));
        else
            *out = to_c(integrate(m.physical_three(pump), state3(*initial), c));
        return LK_OK;
    });
}

lk_status lk_settle(const lk_model* model, double pump, const lk_state* initial,
                    const lk_integrator_config* cfg, lk_settle_result* result,
                    lk_trajectory** trajectory)
{
    LK_REQUIRE(model);
    LK_REQUIRE(initial);
    LK_REQUIRE(cfg);
    LK_REQUIRE(result);
    if (!dynamics_allowed(model))
        return set_error(LK_E_NOT_PHYSICAL, "dynamics needs a physical (or gauge-expanded) model");
    return guarded([&] {
        const auto& m = model->model;
        const auto c = from_c(*cfg);
        auto fill = [&](const auto& outcome, const auto& series) {
            result->converged = outcome.converged ? 1 : 0;
            result->t_final = outcome.t;
            result->photon_number = outcome.converged ? outcome.steady.photon_number : outcome.photon_number;
            result->state = to_c(outcome.state);
            if (trajectory)
                *trajectory = to_c(series);
        };
        if (m.kind() == ModelKind::TwoLevel) {
            TimeSeries<BlochState2> ts;
            const auto o = settle(m.physical_two(pump), state2(*initial), c, trajectory ? &ts : nullptr);
            fill(o, ts);
        } else {
            TimeSeries<BlochState3> ts;
            const auto o = settle(m.physical_three(pump), state3(*initial), c, trajectory ? &ts : nullptr);
            fill(o, ts);
        }
        if (!result->converged)
            return set_error(LK_E_NO_CONVERGENCE, "steady state not reached before t_max");
        return LK_OK;
    });
}

size_t lk_trajectory_size(const lk_trajectory* trajectory)
{
    return trajectory ? trajectory->times.size() : 0;
}

lk_status lk_trajectory_get(const lk_trajectory* trajectory, size_t index, double* t, lk_state* state)
{
    LK_REQUIRE(trajectory);
    if (index >= trajectory->times.size())
        return set_error(LK_E_OUT_OF_RANGE, "trajectory index out of range");
    if (t)
        *t = trajectory->times[index];
    if (state)
        *state = trajectory->states[index];
    return LK_OK;
}

void lk_trajectory_free(lk_trajectory* trajectory)
{
    delete trajectory;
}

}  // extern "C"
