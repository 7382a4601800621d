#include "lasekit/laser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "lasekit/error.hpp"

namespace lasekit {

const char* to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::TwoLevel:
        return "two-level";
    case ModelKind::SchemeA:
        return "three-a";
    case ModelKind::SchemeB:
        return "three-b";
    }
    return "?";
}

std::optional<ModelKind> parse_model_kind(const std::string& text)
{
    if (text == "two-level")
        return ModelKind::TwoLevel;
    if (text == "three-a")
        return ModelKind::SchemeA;
    if (text == "three-b")
        return ModelKind::SchemeB;
    return std::nullopt;
}

LaserModel LaserModel::physical(const PhysicalTwoLevel& p)
{
    const auto red = reduce_two(p);
    LaserModel m;
    m.m_kind = ModelKind::TwoLevel;
    m.m_reduced = red.params;
    m.m_physical = p;
    m.m_pump = red.pump;
    return m;
}

LaserModel LaserModel::physical(const PhysicalThreeLevel& p)
{
    LaserModel m;
    m.m_physical = p;
    if (p.scheme == Scheme::A) {
        const auto red = reduce_scheme_a(p);
        m.m_kind = ModelKind::SchemeA;
        m.m_reduced = red.params;
        m.m_pump = red.pump;
    } else {
        const auto red = reduce_scheme_b(p);
        m.m_kind = ModelKind::SchemeB;
        m.m_reduced = red.params;
        m.m_pump = red.pump;
    }
    return m;
}

LaserModel LaserModel::dimensionless(const DimensionlessTwoLevel& d)
{
    d.validate();
    LaserModel m;
    m.m_kind = ModelKind::TwoLevel;
    m.m_reduced = d;
    return m;
}

LaserModel LaserModel::dimensionless(const DimensionlessSchemeA& d)
{
    d.validate();
    LaserModel m;
    m.m_kind = ModelKind::SchemeA;
    m.m_reduced = d;
    return m;
}

LaserModel LaserModel::dimensionless(const DimensionlessSchemeB& d)
{
    d.validate();
    LaserModel m;
    m.m_kind = ModelKind::SchemeB;
    m.m_reduced = d;
    return m;
}

PhysicalTwoLevel LaserModel::physical_two(double pump) const
{
    if (m_kind != ModelKind::TwoLevel)
        fail(ErrorCode::InvalidArgument, "not a two-level model");
    if (auto p = std::get_if<PhysicalTwoLevel>(&m_physical)) {
        PhysicalTwoLevel out = *p;
        out.pump_Gamma = pump * out.gamma_decay;
        return out;
    }
    return expand_two(std::get<DimensionlessTwoLevel>(m_reduced), pump);
}

PhysicalThreeLevel LaserModel::physical_three(double pump) const
{
    if (m_kind == ModelKind::TwoLevel)
        fail(ErrorCode::InvalidArgument, "not a three-level model");
    if (auto p = std::get_if<PhysicalThreeLevel>(&m_physical))
        return p->with_relative_pump(pump);
    if (m_kind == ModelKind::SchemeA)
        return expand_scheme_a(std::get<DimensionlessSchemeA>(m_reduced), pump);
    return expand_scheme_b(std::get<DimensionlessSchemeB>(m_reduced), pump);
}

double LaserModel::raw_bracket(double pump) const
{
    switch (m_kind) {
    case ModelKind::TwoLevel:
        return raw_bracket_two(std::get<DimensionlessTwoLevel>(m_reduced), pump);
    case ModelKind::SchemeA:
        return raw_bracket_scheme_a(std::get<DimensionlessSchemeA>(m_reduced), pump);
    case ModelKind::SchemeB:
        return raw_bracket_scheme_b(std::get<DimensionlessSchemeB>(m_reduced), pump);
    }
    return 0.0;
}

SteadyResult LaserModel::steady(double pump) const
{
    if (is_physical()) {
        if (m_kind == ModelKind::TwoLevel)
            return n_two_physical(physical_two(pump));
        return n_three_physical(physical_three(pump));
    }
    switch (m_kind) {
    case ModelKind::TwoLevel:
        return n_two_level(std::get<DimensionlessTwoLevel>(m_reduced), pump);
    case ModelKind::SchemeA:
        return n_scheme_a(std::get<DimensionlessSchemeA>(m_reduced), pump);
    case ModelKind::SchemeB:
        return n_scheme_b(std::get<DimensionlessSchemeB>(m_reduced), pump);
    }
    return {};
}

std::optional<double> LaserModel::threshold() const
{
    switch (m_kind) {
    case ModelKind::TwoLevel:
        return threshold_two(std::get<DimensionlessTwoLevel>(m_reduced));
    case ModelKind::SchemeA:
        return threshold_scheme_a(std::get<DimensionlessSchemeA>(m_reduced));
    case ModelKind::SchemeB:
        return threshold_scheme_b(std::get<DimensionlessSchemeB>(m_reduced));
    }
    return std::nullopt;
}

std::optional<LasingWindow> LaserModel::exact_window() const
{
    switch (m_kind) {
    case ModelKind::TwoLevel:
        if (auto w = window_two(std::get<DimensionlessTwoLevel>(m_reduced)))
            return w->exact;
        return std::nullopt;
    case ModelKind::SchemeA:
        if (auto thr = threshold_scheme_a(std::get<DimensionlessSchemeA>(m_reduced)))
            return LasingWindow{*thr, std::numeric_limits<double>::infinity(), true};
        return std::nullopt;
    case ModelKind::SchemeB:
        if (auto w = window_scheme_b(std::get<DimensionlessSchemeB>(m_reduced)))
            return w->exact;
        return std::nullopt;
    }
    return std::nullopt;
}

RegionReport LaserModel::region() const
{
    RegionReport r;
    r.threshold = threshold();
    switch (m_kind) {
    case ModelKind::TwoLevel: {
        const auto& d = std::get<DimensionlessTwoLevel>(m_reduced);
        r.window = window_two(d);
        r.pump_restriction = pump_restriction_two(d);
        r.extremum = optimum_two(d);
        break;
    }
    case ModelKind::SchemeA: {
        const auto& d = std::get<DimensionlessSchemeA>(m_reduced);
        if (r.threshold) {
            WindowReport w;
            w.exact = {*r.threshold, std::numeric_limits<double>::infinity(), true};
            w.asymptotic = w.exact;
            w.asymptotic.exact = false;
            w.upper_relative_error = 0.0;
            r.window = w;
        }
        r.s_bound = s_bound_scheme_a(d);
        r.saturation = saturation_scheme_a(d);
        r.depletion_window = depletion_window_scheme_a(d);
        if (auto p = std::get_if<PhysicalThreeLevel>(&m_physical))
            r.n_min = n_min_atoms(*p);
        break;
    }
    case ModelKind::SchemeB: {
        const auto& d = std::get<DimensionlessSchemeB>(m_reduced);
        r.window = window_scheme_b(d);
        r.extremum = optimum_scheme_b(d);
        break;
    }
    }
    return r;
}

SteadyResult LaserModel::settle_at(double pump, const IntegratorConfig& cfg, double seed_field,
                                   bool* converged) const
{
    if (m_kind == ModelKind::TwoLevel) {
        const auto p = physical_two(pump);
        const auto out = settle(p, default_initial_two(p, seed_field), cfg);
        if (converged)
            *converged = out.converged;
        return out.steady;
    }
    const auto p = physical_three(pump);
    const auto out = settle(p, default_initial_three(p, seed_field), cfg);
    if (converged)
        *converged = out.converged;
    return out.steady;
}

std::vector<std::pair<std::string, double>> LaserModel::parameter_record() const
{
    std::vector<std::pair<std::string, double>> rec;
    if (auto p = std::get_if<PhysicalTwoLevel>(&m_physical)) {
        rec = {{"n_atoms", p->n_atoms},       {"coupling_g", p->coupling_g},
               {"cavity_kappa", p->cavity_kappa}, {"gamma_decay", p->gamma_decay},
               {"pump_Gamma", p->pump_Gamma}, {"gamma_ph", p->gamma_ph}};
    } else if (auto p3 = std::get_if<PhysicalThreeLevel>(&m_physical)) {
        rec = {{"n_atoms", p3->n_atoms},   {"coupling_g", p3->coupling_g},
               {"cavity_kappa", p3->cavity_kappa}, {"gamma_21", p3->gamma_21},
               {"gamma_02", p3->gamma_02}, {"gamma_10", p3->gamma_10},
               {"gamma_ph", p3->gamma_ph}};
    }
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, DimensionlessTwoLevel>) {
                rec.insert(rec.end(), {{"lambda", d.lambda}, {"s", d.s}, {"delta", d.delta}});
            } else if constexpr (std::is_same_v<T, DimensionlessSchemeA>) {
                rec.insert(rec.end(), {{"lambda1", d.lambda1}, {"s1", d.s1}, {"eps1", d.eps1},
                                       {"delta1", d.delta1}});
            } else {
                rec.insert(rec.end(), {{"lambda2", d.lambda2}, {"s2", d.s2}, {"eps2", d.eps2},
                                       {"delta2", d.delta2}});
            }
        },
        m_reduced);
    return rec;
}

std::vector<double> pump_grid(double lo, double hi, std::size_t count, SweepScale scale)
{
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        fail(ErrorCode::InvalidArgument, "pump range needs finite lo < hi");
    if (count < 2)
        fail(ErrorCode::InvalidArgument, "sweep needs at least 2 points");
    if (scale == SweepScale::Log && !(lo > 0.0))
        fail(ErrorCode::InvalidArgument, "log sweep needs pump_min > 0");

    std::vector<double> grid(count);
    const double last = static_cast<double>(count - 1);
    if (scale == SweepScale::Linear) {
        for (std::size_t i = 0; i < count; ++i)
            grid[i] = lo + (hi - lo) * (static_cast<double>(i) / last);
    } else {
        const double a = std::log(lo), b = std::log(hi);
        for (std::size_t i = 0; i < count; ++i)
            grid[i] = std::exp(a + (b - a) * (static_cast<double>(i) / last));
    }
    grid.front() = lo;
    grid.back() = hi;
    for (std::size_t i = 1; i < count; ++i)
        if (!(grid[i] > grid[i - 1]))
            fail(ErrorCode::InvalidArgument, "pump range too narrow for the requested point count");
    return grid;
}

SweepSeries sweep(const LaserModel& model, double lo, double hi, std::size_t count,
                  SweepScale scale, const SweepOptions& options)
{
    SweepSeries out;
    out.pump_values = pump_grid(lo, hi, count, scale);
    out.photon_numbers.resize(count);
    out.regime_flags.resize(count);
    out.model = model.kind();
    out.metadata = model.parameter_record();
    const bool oracle = options.oracle_every > 0;
    if (oracle)
        out.ode_photon_numbers.assign(count, std::numeric_limits<double>::quiet_NaN());

    auto evaluate = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto r = model.steady(out.pump_values[i]);
            out.photon_numbers[i] = r.photon_number;
            out.regime_flags[i] = r.regime;
            if (oracle && i % options.oracle_every == 0) {
                bool ok = false;
                const auto s = model.settle_at(out.pump_values[i], options.integrator,
                                               options.seed_field, &ok);
                if (ok)
                    out.ode_photon_numbers[i] = s.photon_number;
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, count);
    if (workers == 1) {
        evaluate(0, count);
        return out;
    }
    // Exceptions inside workers are captured and rethrown in index order.
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (count + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk, end = std::min(count, begin + chunk);
            pool.emplace_back([&, w, begin, end] {
                try {
                    evaluate(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

}  // namespace lasekit
