#include <doctest.h>

#include "../acceptance/stability.hpp"

using namespace lasekit::testing;
using doctest::Approx;

TEST_CASE("characteristic polynomial of known matrices")
{
    // companion-like upper triangular: eigenvalues -1, -2, -3
    const Mat<3> a{{{-1, 5, 7}, {0, -2, 11}, {0, 0, -3}}};
    const auto c = char_poly(a);
    CHECK(c[1] == Approx(6));
    CHECK(c[2] == Approx(11));
    CHECK(c[3] == Approx(6));

    // rotation with damping: eigenvalues -0.5 +- 3i, so t^2 + t + 9.25
    const Mat<2> r{{{-0.5, 3}, {-3, -0.5}}};
    const auto cr = char_poly(r);
    CHECK(cr[1] == Approx(1));
    CHECK(cr[2] == Approx(9.25));

    const Mat<4> d{{{-1, 0, 0, 0}, {0, -2, 0, 0}, {0, 0, -3, 0}, {0, 0, 0, 4}}};
    const auto cd = char_poly(d);
    // (t+1)(t+2)(t+3)(t-4) = t^4 + 2t^3 - 13t^2 - 38t - 24
    CHECK(cd[1] == Approx(2));
    CHECK(cd[2] == Approx(-13));
    CHECK(cd[3] == Approx(-38));
    CHECK(cd[4] == Approx(-24));
}

TEST_CASE("Routh-Hurwitz classification")
{
    CHECK(hurwitz(std::array<double, 4>{1, 6, 11, 6}));           // -1, -2, -3
    CHECK_FALSE(hurwitz(std::array<double, 4>{1, -2, -13, 14})); // 7, -2, ... unstable
    CHECK(hurwitz(std::array<double, 3>{1, 1, 9.25}));            // -0.5 +- 3i
    CHECK_FALSE(hurwitz(std::array<double, 3>{1, -1, 9.25}));     // 0.5 +- 3i
    // (t^2 + 0.1 t + 4)(t + 1)(t + 2): stable, lightly damped pair
    CHECK(hurwitz(std::array<double, 5>{1, 3.1, 6.3, 12.2, 8}));
    // (t^2 - 0.1 t + 4)(t + 1)(t + 2): unstable pair
    CHECK_FALSE(hurwitz(std::array<double, 5>{1, 2.9, 5.7, 11.8, 8}));
}
