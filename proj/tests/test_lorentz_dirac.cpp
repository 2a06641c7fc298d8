#include <doctest.h>

#include <cmath>

#include "xcharge/lorentz_dirac.hpp"

using namespace xcharge;

namespace {
const ParticleModel kModel(1.0, 1.0, 1.0);
}

TEST_CASE("ld_selfforce: zero jerk reproduces the 4/3 term exactly") {
    const LDState state{{1.0, 0.0}, {0.0, 0.7}, {0.0, 0.0}};
    const TwoVector F = ld_selfforce(state, kModel);
    CHECK(F.t == -(4.0 / 3.0) * kModel.m1 * 0.0);
    CHECK(F.x == -(4.0 / 3.0) * kModel.m1 * 0.7);
    const LDState still{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
    const TwoVector Z = ld_selfforce(still, kModel);
    CHECK(Z.t == 0.0);
    CHECK(Z.x == 0.0);
}

TEST_CASE("ld_selfforce: orthogonal to the velocity on consistent states") {
    for (double f : {0.2, 1.0, 3.0})
        for (double tau : {-0.8, 0.0, 1.2}) {
            const double c = std::cosh(f * tau), s = std::sinh(f * tau);
            const LDState state{{c, s}, {f * s, f * c}, {f * f * c, f * f * s}};
            const TwoVector F = ld_selfforce(state, kModel);
            CHECK(std::fabs(dot2(state.u, F)) < 1e-10);
        }
}

TEST_CASE("ld_selfforce: complex plane form") {
    const std::complex<double> a(0.3, -0.4), adot(0.0, 0.0);
    CHECK(ld_selfforce(a, adot, kModel) == -(4.0 / 3.0) * kModel.m1 * a);
}

TEST_CASE("ld_hyperbolic_reaction: the notorious zero, against the extended value") {
    for (double f : {0.1, 1.0, 10.0}) CHECK(ld_hyperbolic_reaction(f, kModel) == 0.0);
    CHECK_THROWS_AS(ld_hyperbolic_reaction(0.0, kModel), std::invalid_argument);
    // the extended model's reaction force at r1 f = 1 is m1 f mu_r(1) != 0
    const double f = 1.0 / kModel.r1;
    const double extended = kModel.m1 * f * mu_r(kModel.r1 * f);
    CHECK(extended == doctest::Approx(kModel.m1 * f * 0.2582).epsilon(1e-3));
    CHECK(extended > 0.0);
    // both vanish together as f -> 0
    const double small = kModel.m1 * 0.01 * mu_r(0.01);
    CHECK(std::fabs(small) < 1e-12);
}

TEST_CASE("compare_selfforce: ratio runs from 3/4 to 0") {
    const auto rows = compare_selfforce({0.0, 0.01, 1.0, 10.0}, kModel);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].Fs_extended == 0.0);
    CHECK(rows[0].Fs_ld_linear == 0.0);
    CHECK(rows[0].ratio == 0.75);
    CHECK(rows[1].ratio == doctest::Approx(0.75).epsilon(1e-3));
    // delta = 10: extended ~ -1.368 m1/r1 vs LD linear -13.33 m1/r1
    const double scale = kModel.m1 / kModel.r1;
    CHECK(rows[3].Fs_extended == doctest::Approx(-1.3679 * scale).epsilon(1e-3));
    CHECK(rows[3].Fs_ld_linear == doctest::Approx(-13.333 * scale).epsilon(1e-3));
    CHECK(rows[3].ratio < 0.11);
    CHECK_THROWS_AS(compare_selfforce({-1.0}, kModel), std::invalid_argument);
}

TEST_CASE("compare_selfforce: extended force saturates while the baseline grows") {
    std::vector<double> grid;
    for (double d = 0.25; d <= 64.0; d *= 2.0) grid.push_back(d);
    const auto rows = compare_selfforce(grid, kModel);
    const double bound = 1.5 * kModel.m1 / kModel.r1;
    double prev_ratio = 1.0;
    for (const auto& r : rows) {
        CHECK(std::fabs(r.Fs_extended) < bound);
        CHECK(r.ratio < prev_ratio);
        prev_ratio = r.ratio;
    }
    CHECK(std::fabs(rows.back().Fs_ld_linear) > bound);  // unbounded baseline
}
