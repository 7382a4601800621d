#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>

#include "lasekit/lasekit.h"

using doctest::Approx;

namespace {

struct Model {
    lk_model* ptr = nullptr;
    ~Model() { lk_model_free(ptr); }
};

const lk_physical_three kExample{100, 1, 1, 1, 2, 0.1, 0};

}  // namespace

TEST_CASE("status and name strings")
{
    CHECK(std::string(lk_status_string(LK_OK)) == "ok");
    CHECK(std::strlen(lk_status_string(LK_E_STIFFNESS)) > 0);
    CHECK(std::string(lk_model_kind_name(LK_MODEL_SCHEME_B)) == "three-b");
    CHECK(std::string(lk_regime_name(LK_REGIME_LASING)) == "Lasing");
}

TEST_CASE("null arguments are rejected")
{
    lk_model* m = nullptr;
    CHECK(lk_model_from_physical_two(nullptr, &m) == LK_E_NULL_ARGUMENT);
    CHECK(lk_steady(nullptr, 1, nullptr) == LK_E_NULL_ARGUMENT);
    CHECK(std::strlen(lk_last_error()) > 0);
    lk_model_free(nullptr);
    lk_series_free(nullptr);
    lk_trajectory_free(nullptr);
}

TEST_CASE("invalid parameters report a message")
{
    const lk_physical_two bad{100, 1, -1, 1, 1, 0};
    lk_model* m = nullptr;
    CHECK(lk_model_from_physical_two(&bad, &m) == LK_E_INVALID_ARGUMENT);
    CHECK(m == nullptr);
    CHECK(std::string(lk_last_error()).find("cavity_kappa") != std::string::npos);

    CHECK(lk_model_from_physical_three(&kExample, LK_MODEL_TWO_LEVEL, &m) == LK_E_INVALID_ARGUMENT);
}

TEST_CASE("last error is per thread")
{
    lk_model* m = nullptr;
    const lk_physical_two bad{100, 1, -1, 1, 1, 0};
    REQUIRE(lk_model_from_physical_two(&bad, &m) != LK_OK);
    std::string other = "unset";
    std::thread([&] { other = lk_last_error(); }).join();
    CHECK(other.empty());
    CHECK_FALSE(std::string(lk_last_error()).empty());
}

TEST_CASE("steady report for the three-level example")
{
    Model m;
    REQUIRE(lk_model_from_physical_three(&kExample, LK_MODEL_SCHEME_B, &m.ptr) == LK_OK);
    lk_model_info info{};
    REQUIRE(lk_model_get_info(m.ptr, &info) == LK_OK);
    CHECK(info.kind == LK_MODEL_SCHEME_B);
    CHECK(info.is_physical == 1);
    CHECK(info.has_configured_pump == 1);
    CHECK(info.configured_pump == 2.0);
    CHECK(info.reduced.lambda == Approx(50));

    lk_steady_report r{};
    REQUIRE(lk_steady(m.ptr, info.configured_pump, &r) == LK_OK);
    CHECK(r.photon_number == Approx(23.448125).epsilon(1e-14));
    CHECK(r.regime == LK_REGIME_LASING);
    CHECK(r.gamma_perp == Approx(1.05));
    CHECK(r.gamma_parallel == Approx(1.15));
    CHECK(r.inversion == Approx(1.9 / 2.3));

    CHECK(lk_steady(m.ptr, -1, &r) == LK_E_INVALID_ARGUMENT);
}

TEST_CASE("parameter record")
{
    Model m;
    REQUIRE(lk_model_from_physical_three(&kExample, LK_MODEL_SCHEME_A, &m.ptr) == LK_OK);
    const std::size_t n = lk_model_parameter_count(m.ptr);
    REQUIRE(n == 11);
    const char* name = nullptr;
    double value = 0;
    REQUIRE(lk_model_parameter(m.ptr, 0, &name, &value) == LK_OK);
    CHECK(std::string(name) == "n_atoms");
    CHECK(value == 100);
    CHECK(lk_model_parameter(m.ptr, n, &name, &value) == LK_E_OUT_OF_RANGE);
}

TEST_CASE("region report and no-lasing outcome")
{
    Model m;
    const lk_dimensionless d{1e5, 0.01, 0, 0.1};
    REQUIRE(lk_model_from_dimensionless(LK_MODEL_SCHEME_B, &d, &m.ptr) == LK_OK);
    lk_region_report r{};
    REQUIRE(lk_region(m.ptr, &r) == LK_OK);
    CHECK(r.lasing_possible == 1);
    CHECK(r.window.present == 1);
    CHECK(r.window.upper == Approx(99.9).epsilon(1e-12));
    CHECK(r.has_extremum == 1);
    CHECK(r.p_closed_form == Approx(49.95));

    Model none;
    const lk_dimensionless e{1e6, 0.1, 1, 0};
    REQUIRE(lk_model_from_dimensionless(LK_MODEL_SCHEME_A, &e, &none.ptr) == LK_OK);
    REQUIRE(lk_region(none.ptr, &r) == LK_OK);
    CHECK(r.lasing_possible == 0);
    CHECK(r.window.present == 0);
}

TEST_CASE("sweep series access")
{
    Model m;
    const lk_dimensionless d{1e3, 1e-6, 0, 1e5};
    REQUIRE(lk_model_from_dimensionless(LK_MODEL_TWO_LEVEL, &d, &m.ptr) == LK_OK);
    lk_sweep_options so{};
    lk_sweep_options_default(&so);
    so.pump_min = 1;
    so.pump_max = 1e6;
    so.count = 50;
    so.scale = LK_SCALE_LOG;
    so.threads = 3;
    lk_series* s = nullptr;
    REQUIRE(lk_sweep(m.ptr, &so, &s) == LK_OK);
    CHECK(lk_series_size(s) == 50);
    CHECK(lk_series_has_oracle(s) == 0);
    double pump = 0, n = 0, ode = 0;
    lk_regime regime{};
    REQUIRE(lk_series_get(s, 0, &pump, &n, &regime, &ode) == LK_OK);
    CHECK(pump == 1.0);
    CHECK(regime == LK_REGIME_BELOW_THRESHOLD);
    CHECK(std::isnan(ode));
    REQUIRE(lk_series_get(s, 49, &pump, nullptr, &regime, nullptr) == LK_OK);
    CHECK(pump == 1e6);
    CHECK(regime == LK_REGIME_ABOVE_UPPER_BOUND);
    CHECK(lk_series_get(s, 50, &pump, nullptr, nullptr, nullptr) == LK_E_OUT_OF_RANGE);
    lk_series_free(s);

    so.pump_min = 0;
    CHECK(lk_sweep(m.ptr, &so, &s) == LK_E_INVALID_ARGUMENT);
    so.pump_min = 1;
    so.oracle_every = 1;
    CHECK(lk_sweep(m.ptr, &so, &s) == LK_E_NOT_PHYSICAL);
}

TEST_CASE("dynamics require a physical or gauge-expanded model")
{
    Model dim;
    const lk_dimensionless d{50, 0.005, 0.1, 0};
    REQUIRE(lk_model_from_dimensionless(LK_MODEL_SCHEME_B, &d, &dim.ptr) == LK_OK);
    lk_state init{};
    lk_integrator_config cfg{};
    lk_integrator_config_default(&cfg);
    lk_settle_result res{};
    REQUIRE(lk_default_initial_state(dim.ptr, 2, 1e-3, &init) == LK_OK);
    CHECK(lk_settle(dim.ptr, 2, &init, &cfg, &res, nullptr) == LK_E_NOT_PHYSICAL);

    Model expanded;
    REQUIRE(lk_model_gauge_expand(dim.ptr, &expanded.ptr) == LK_OK);
    REQUIRE(lk_settle(expanded.ptr, 2, &init, &cfg, &res, nullptr) == LK_OK);
    CHECK(res.converged == 1);
    lk_steady_report r{};
    REQUIRE(lk_steady(expanded.ptr, 2, &r) == LK_OK);
    CHECK(res.photon_number == Approx(r.photon_number).epsilon(1e-6));
}

TEST_CASE("settle with trajectory and non-convergence")
{
    Model m;
    REQUIRE(lk_model_from_physical_three(&kExample, LK_MODEL_SCHEME_B, &m.ptr) == LK_OK);
    lk_state init{};
    REQUIRE(lk_default_initial_state(m.ptr, 2, 1e-3, &init) == LK_OK);
    lk_state f{};
    REQUIRE(lk_derivatives(m.ptr, 2, &init, &f) == LK_OK);
    CHECK(f.x == Approx(-1e-3));
    CHECK(f.y > 0);

    double tmax = 0;
    REQUIRE(lk_default_t_max(m.ptr, 2, &tmax) == LK_OK);
    CHECK(tmax > 0);

    lk_integrator_config cfg{};
    lk_integrator_config_default(&cfg);
    lk_settle_result res{};
    lk_trajectory* traj = nullptr;
    REQUIRE(lk_settle(m.ptr, 2, &init, &cfg, &res, &traj) == LK_OK);
    CHECK(res.photon_number == Approx(23.448125).epsilon(1e-6));
    REQUIRE(lk_trajectory_size(traj) > 2);
    double t = -1;
    lk_state s{};
    REQUIRE(lk_trajectory_get(traj, 0, &t, &s) == LK_OK);
    CHECK(t == 0.0);
    CHECK(s.x == 1e-3);
    CHECK(lk_trajectory_get(traj, lk_trajectory_size(traj), &t, &s) == LK_E_OUT_OF_RANGE);
    lk_trajectory_free(traj);

    cfg.t_max = 0.1;
    traj = nullptr;
    CHECK(lk_settle(m.ptr, 2, &init, &cfg, &res, &traj) == LK_E_NO_CONVERGENCE);
    CHECK(res.converged == 0);
    CHECK(res.t_final == Approx(0.1));
    CHECK(traj != nullptr);
    lk_trajectory_free(traj);

    cfg.t_max = 100;
    cfg.max_steps = 2;
    CHECK(lk_settle(m.ptr, 2, &init, &cfg, &res, nullptr) == LK_E_STEP_LIMIT);

    lk_trajectory* out = nullptr;
    cfg.max_steps = 1000000;
    cfg.t_max = 5;
    cfg.output_every = 1;
    REQUIRE(lk_integrate(m.ptr, 2, &init, &cfg, &out) == LK_OK);
    CHECK(lk_trajectory_size(out) >= 6);
    lk_trajectory_free(out);
}
