#include <doctest.h>

#include <cmath>

#include "lasekit/error.hpp"
#include "lasekit/model.hpp"
#include "lasekit/numerics.hpp"
#include "lasekit/steady.hpp"

using namespace lasekit;
using doctest::Approx;

TEST_CASE("root finder on smooth functions")
{
    const auto f = [](double x) { return x * x - 2.0; };
    CHECK(find_root(f, Bracket::around(f, 0, 2), 1e-15) == Approx(std::sqrt(2.0)).epsilon(1e-14));

    const auto g = [](double x) { return std::cos(x) - x; };
    const auto r = find_root_detailed(g, Bracket::around(g, 0, 1), 1e-14);
    CHECK(std::abs(g(r.root)) < 1e-12);
    CHECK(r.iterations < 60);

    // flat then steep: bisection safeguard must still converge
    const auto h = [](double x) { return std::pow(x - 0.3, 9); };
    CHECK(find_root(h, Bracket::around(h, -1, 5)) == Approx(0.3).epsilon(1e-3));
}

TEST_CASE("root finder rejects a bracket without sign change")
{
    const auto f = [](double x) { return x * x + 1.0; };
    CHECK_THROWS_AS(Bracket::around(f, -1, 1), Error);
}

TEST_CASE("root finder returns exact endpoint roots")
{
    const auto f = [](double x) { return x; };
    CHECK(find_root(f, Bracket::around(f, 0, 1)) == 0.0);
}

TEST_CASE("maximizer")
{
    const auto f = [](double x) { return -(x - 1.7) * (x - 1.7) + 3.0; };
    const auto m = maximize(f, -10, 10);
    CHECK(m.argmax == Approx(1.7).epsilon(1e-7));
    CHECK(m.value == Approx(3.0).epsilon(1e-14));

    // endpoint maximum
    const auto g = [](double x) { return x; };
    CHECK(maximize(g, 0, 5).argmax == Approx(5.0).epsilon(1e-9));

    // never worse than the best grid point on a multimodal function
    const auto k = [](double x) { return std::sin(7 * x) + 0.1 * x; };
    const auto mk = maximize(k, 0, 10);
    for (int i = 0; i <= 1000; ++i)
        CHECK(mk.value >= k(10.0 * i / 1000) - 1e-15);
}

TEST_CASE("stable quadratic roots")
{
    auto r = solve_quadratic(1, -3, 2);
    REQUIRE(r);
    CHECK(r->lower == Approx(1));
    CHECK(r->upper == Approx(2));

    r = solve_quadratic(1, -1e8, 1);  // cancellation-prone small root
    REQUIRE(r);
    CHECK(r->lower == Approx(1e-8).epsilon(1e-12));
    CHECK(r->upper == Approx(1e8).epsilon(1e-12));

    CHECK_FALSE(solve_quadratic(1, 0, 1));

    r = solve_quadratic(0, 2, -4);
    REQUIRE(r);
    CHECK(r->lower == 2.0);
    CHECK(r->upper == 2.0);

    r = solve_quadratic(-1, 6, -9);  // double root
    REQUIRE(r);
    CHECK(r->lower == Approx(3));
    CHECK(r->upper == Approx(3));
}

TEST_CASE("algebraic oracles")
{
    const PhysicalThreeLevel p{100, 1, 1, 1, 2, 0.1, 0, Scheme::B};
    CHECK(algebraic_oracle_three(p) == Approx(23.448125).epsilon(1e-13));

    const auto two = expand_two({1e3, 1e-6, 1e5}, 449999);
    CHECK(algebraic_oracle_two(two) == Approx(2.02498e8).epsilon(1e-12));
    CHECK(algebraic_oracle_two(expand_two({1e3, 1e-6, 1e5}, 1.0)) == 0.0);
}
