#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <thread>

#include "xcharge/hyperbolic.hpp"
#include "xcharge/selfforce.hpp"

using namespace xcharge;

namespace {

// 20-term series oracles, the tie-breaker for the kernel closed forms
double a_par_series(double alpha) {
    double fact = 6.0, pow = 1.0, sum = 0.0;
    for (int n = 0; n < 20; ++n) {
        sum += 6.0 * (1.0 + n) / fact * pow;
        pow *= alpha * alpha;
        fact *= (4.0 + 2.0 * n) * (5.0 + 2.0 * n);
    }
    return sum;
}

double a_perp_series(double alpha) {
    double fact = 6.0, pow = 1.0, sum = 0.0;
    for (int n = 0; n < 20; ++n) {
        sum += 6.0 * (1.0 + n) * (1.0 + n) / fact * pow;
        pow *= alpha * alpha;
        fact *= (4.0 + 2.0 * n) * (5.0 + 2.0 * n);
    }
    return sum;
}

// Delta(delta) references computed independently at 40-digit precision
struct Ref {
    double delta, value;
};
constexpr Ref kDeltaRefs[] = {
    {0.1, 0.099999008769577}, {0.2, 0.19953021149295}, {0.5, 0.46246573817951},
    {1.0, 0.74181252602632},  {5.0, 1.258291546725},   {10.0, 1.3679172775487},
    {100.0, 1.4852931892679}, {1000.0, 1.4985040820615},
};

}  // namespace

TEST_CASE("anisotropy kernels: values and series agreement") {
    CHECK(a_parallel(0.0) == 1.0);
    CHECK(a_perp(0.0) == 1.0);
    // frozen from the series oracle (1 + a^2/10 + a^4/280 + ...)
    CHECK(a_parallel(0.1) == doctest::Approx(1.0010003572090005).epsilon(1e-14));
    CHECK(a_perp(0.1) == doctest::Approx(1.0020010716931538).epsilon(1e-14));

    for (double a = 0.0; a <= 2.0; a += 0.05) {
        CHECK(std::fabs(a_parallel(a) - a_par_series(a)) < 1e-12 * a_par_series(a));
        CHECK(std::fabs(a_perp(a) - a_perp_series(a)) < 1e-12 * a_perp_series(a));
    }
    CHECK_THROWS_AS(a_parallel(-0.1), std::invalid_argument);
}

TEST_CASE("anisotropy kernels: perpendicular dominates parallel") {
    for (double a = 0.05; a <= 3.0; a += 0.05) CHECK(a_perp(a) > a_parallel(a));
}

TEST_CASE("anisotropy kernels: difference avoids cancellation at small alpha") {
    // leading behaviour -(alpha^2/10 + alpha^4/140)
    CHECK(a_parallel_minus_perp(0.0) == 0.0);
    for (double a : {1e-4, 1e-3, 1e-2, 0.1, 0.4}) {
        const double lead = -(a * a / 10.0 + a * a * a * a / 140.0);
        CHECK(a_parallel_minus_perp(a) == doctest::Approx(lead).epsilon(1e-6));
    }
    for (double a : {0.6, 1.0, 2.0, 5.0, 20.0})
        CHECK(std::fabs(a_parallel_minus_perp(a) - (a_parallel(a) - a_perp(a))) <
              1e-11 * std::fabs(a_perp(a)));
}

TEST_CASE("anisotropy kernels: scaled forms match and stay finite") {
    for (double a : {0.5, 2.0, 10.0, 29.0, 31.0, 100.0, 600.0}) {
        if (a < 700.0) {
            CHECK(a_parallel_scaled(a) ==
                  doctest::Approx(a_parallel(a) * std::exp(-a)).epsilon(1e-10));
            CHECK(a_perp_scaled(a) == doctest::Approx(a_perp(a) * std::exp(-a)).epsilon(1e-10));
        }
    }
    // asymptotically 1.5/alpha^2 and 0.75/alpha
    CHECK(a_parallel_scaled(1e8) == doctest::Approx(1.5e-16).epsilon(1e-6));
    CHECK(a_perp_scaled(1e8) == doctest::Approx(0.75e-8).epsilon(1e-6));
    CHECK(std::isfinite(a_parallel_scaled(1e300)));
    CHECK(std::isfinite(a_parallel_minus_perp_scaled(1e300)));
}

TEST_CASE("factorial_fn: limits and small-delta behaviour") {
    for (int n = 0; n <= 4; ++n) CHECK(factorial_fn(n, 0.0) == 0.0);
    double fact = 1.0;
    for (int n = 0; n <= 4; ++n) {
        if (n > 0) fact *= n;
        CHECK(std::fabs(factorial_fn(n, 1e6) - fact) < 1e-3 * fact);
    }
    // f_0(delta) ~ delta for small delta
    CHECK(factorial_fn(0, 1e-3) == doctest::Approx(1e-3).epsilon(5e-3));
    // f_1(delta) ~ (2!/2) delta^2 = delta^2
    CHECK(factorial_fn(1, 1e-3) == doctest::Approx(1e-6).epsilon(1e-2));
    // odd extension
    CHECK(factorial_fn(2, -0.7) == -factorial_fn(2, 0.7));
    CHECK_THROWS_AS(factorial_fn(-1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(factorial_fn(171, 1.0), std::overflow_error);
    // scaled form consistent with the plain one
    for (int n : {0, 1, 5, 20}) {
        const double sc = factorial_fn_scaled(n, 2.0);
        CHECK(std::fabs(factorial_fn(n, 2.0) - std::exp(std::lgamma(n + 1.0)) * sc) <
              1e-12 * std::exp(std::lgamma(n + 1.0)));
    }
    // large-n scaled values approach e^{-1/delta}
    CHECK(factorial_fn_scaled(200, 10.0) ==
          doctest::Approx(std::exp(-0.1)).epsilon(1e-4));
}

TEST_CASE("delta_fn: high-precision references") {
    for (const auto& r : kDeltaRefs)
        CHECK(delta_fn(r.delta) == doctest::Approx(r.value).epsilon(5e-9));
}

TEST_CASE("delta_fn: oddness, saturation, linear onset") {
    CHECK(delta_fn(0.0) == 0.0);
    for (double d : {0.3, 1.0, 7.0}) CHECK(delta_fn(-d) == -delta_fn(d));
    for (const auto& r : kDeltaRefs) CHECK(delta_fn(r.delta) < delta_saturation);
    CHECK(delta_fn(0.01) / 0.01 == doctest::Approx(1.0).epsilon(1e-9));
    // monotone increasing
    double prev = 0.0;
    for (double d : {0.05, 0.1, 0.3, 0.8, 2.0, 6.0, 20.0, 200.0}) {
        const double v = delta_fn(d);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("delta_fn: concurrent grid sweeps are bit-identical to serial ones") {
    const std::vector<double> grid{0.05, 0.3, 0.9, 2.0, 7.0, 40.0};
    std::vector<double> serial;
    for (double d : grid) serial.push_back(delta_fn(d));
    std::vector<double> parallel(grid.size());
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < grid.size(); ++i)
        pool.emplace_back([&parallel, &grid, i] { parallel[i] = delta_fn(grid[i]); });
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(parallel[i] == serial[i]);
}

TEST_CASE("delta_series: agrees with the quadrature route") {
    CHECK(delta_series(0.0) == 0.0);
    CHECK(delta_series(-1.0) == -delta_series(1.0));
    for (double d : {0.1, 0.5, 1.0, 5.0, 10.0, 100.0})
        CHECK(std::fabs(delta_series(d) - delta_fn(d)) < 1e-6);
    CHECK_THROWS_AS(delta_series(1.0, 0.0), std::invalid_argument);
    // an unreachable settling tolerance is reported, with the estimate kept
    CHECK_THROWS_AS(delta_series(1.0, 1e-300), NumericsError);
}

TEST_CASE("mu_r: table values against the independent references") {
    CHECK(mu_r(0.0) == 0.0);
    for (const auto& r : kDeltaRefs) {
        const double expect = 1.0 - r.value / r.delta;
        CHECK(mu_r(r.delta) == doctest::Approx(expect).epsilon(1e-6));
    }
    CHECK(mu_r(1.0) == doctest::Approx(0.2582).epsilon(5e-4));
    CHECK(std::fabs(mu_r(0.2) - 0.00236) < 2e-5);
    CHECK(std::fabs(mu_r(0.1) - 1.0e-5) < 1e-6);
}

TEST_CASE("mu_r: nonanalytic onset at delta = 0") {
    CHECK(mu_r(0.1) / (0.1 * 0.1 * 0.1) < 0.011);
    // mu_r / delta^n vanishes with delta for n = 1, 2, 3
    double prev3 = std::numeric_limits<double>::max();
    for (double d : {0.2, 0.15, 0.1, 0.08}) {
        const double m = mu_r(d);
        const double r3 = m / (d * d * d);
        CHECK(r3 < prev3);
        prev3 = r3;
    }
}

TEST_CASE("mu_r_approx: fitted values") {
    CHECK(mu_r_approx(0.0) == 0.0);
    CHECK(mu_r_approx(1.0) == doctest::Approx(0.2582).epsilon(4e-4));
    CHECK(std::fabs(mu_r_approx(0.5) - 0.0740) < 1e-4);
    CHECK(std::fabs(mu_r_approx(10.0) - 0.8650) < 1e-4);
    CHECK(mu_r_approx(-2.0) == mu_r_approx(2.0));
}

TEST_CASE("selfforce_zeroth") {
    CHECK(selfforce_zeroth(0.0, 0.5) == 0.0);
    const double m1 = 1.0 / (8.0 * 3.14159265358979323846);
    CHECK(selfforce_zeroth(1.0, m1) == -m1);
    const Vec3 F = selfforce_zeroth(Vec3{1.0, -2.0, 0.5}, m1);
    CHECK(F.x == -m1);
    CHECK(F.y == 2.0 * m1);
    // matches the delta-based form within 1% in the linear regime
    const ParticleModel model(1.0, 1.0, 1.0);
    const double a = 0.01;  // r1 a = 0.01
    const double exact = -(model.m1 / model.r1) * delta_fn(model.r1 * a);
    CHECK(selfforce_zeroth(a, model.m1) == doctest::Approx(exact).epsilon(0.01));
}

TEST_CASE("selfforce_first: vanishing, constant-acceleration, and oscillatory histories") {
    const ParticleModel model(1.0, 1.0, 1.0);
    // constant velocity: no force
    VelocityHistory<double> rest{[](double) { return 0.7; }, [](double) { return 0.0; },
                                 [](double) { return 0.0; }};
    CHECK(selfforce_first(rest, model) == 0.0);

    // constant acceleration: the memory term vanishes
    const double a = 0.3;
    VelocityHistory<double> uniform{[a](double t) { return a * t; }, [a](double) { return a; },
                                    [](double) { return 0.0; }};
    CHECK(selfforce_first(uniform, model) == doctest::Approx(-model.m1 * a).epsilon(1e-12));

    // u = u0 e^{i w t}: F = -m1 a / (1 + i r1 w), a = i w u0
    using cplx = std::complex<double>;
    const double w = 1.3;
    const cplx u0(1.0, 0.0), iw(0.0, w);
    VelocityHistory<cplx> osc{[=](double t) { return u0 * std::exp(iw * t); },
                              [=](double t) { return iw * u0 * std::exp(iw * t); },
                              [=](double t) { return iw * iw * u0 * std::exp(iw * t); }};
    const cplx got = selfforce_first(osc, model);
    const cplx want = -model.m1 * (iw * u0) / (1.0 + cplx(0.0, model.r1 * w));
    CHECK(std::abs(got - want) < 1e-8);
}

TEST_CASE("selfforce_second: static history gives zero") {
    const ParticleModel model(1.0, 1.0, 1.0);
    WorldlineHistory still{[](double) { return Vec3{}; }, [](double) { return Vec3{}; },
                           [](double t) { return t; }};
    const Vec3 F = selfforce_second(still, model);
    CHECK(norm3(F) == 0.0);
}

TEST_CASE("selfforce_second: hyperbolic history reproduces the closed form") {
    const ParticleModel model(1.0, 1.0, 1.0);
    for (double delta : {0.1, 1.0, 10.0}) {
        const double f = delta / model.r1;
        const Vec3 F = selfforce_second(hyperbolic_history(f), model);
        const double want = -(model.m1 / model.r1) * delta_fn(delta);
        CHECK(std::fabs(F.x - want) < 1e-5 * std::fabs(want));
        CHECK(F.y == 0.0);
    }
    // linear regime within 1%
    const double f = 0.01;
    const Vec3 F = selfforce_second(hyperbolic_history(f), model);
    CHECK(F.x == doctest::Approx(-model.m1 * f).epsilon(0.01));
}

TEST_CASE("selfforce_second: plane cycloid history against two independent routes") {
    // small-amplitude cycloid z = A((1 - cos wt) x + (wt - sin wt) y): both
    // kernel projections act, and for A << r1 the force has the closed form
    // (m1/r1^2) int v e^{t/r1} dt with a = 1/r1:
    //   F_x = (m1/r1^2) A w (-w/(a^2 + w^2))
    //   F_y = (m1/r1^2) A w (1/a - a/(a^2 + w^2))
    const ParticleModel model(1.0, 1.0, 1.0);
    const double A = 1e-4, w = 1.7, a = 1.0 / model.r1;
    WorldlineHistory cyc{
        [=](double t) {
            return Vec3{A * (1.0 - std::cos(w * t)), A * (w * t - std::sin(w * t)), 0.0};
        },
        [=](double t) { return Vec3{A * w * std::sin(w * t), A * w * (1.0 - std::cos(w * t)), 0.0}; },
        [](double t) { return t; }};
    const Vec3 F = selfforce_second(cyc, model);
    const double scale = model.m1 / (model.r1 * model.r1);
    const double Fx = scale * A * w * (-w / (a * a + w * w));
    const double Fy = scale * A * w * (1.0 / a - a / (a * a + w * w));
    CHECK(F.x == doctest::Approx(Fx).epsilon(1e-6));
    CHECK(F.y == doctest::Approx(Fy).epsilon(1e-6));
    CHECK(F.z == 0.0);

    // same motion through the first approximation (exact identity at u(0)=0)
    using cplx = std::complex<double>;
    VelocityHistory<cplx> first{
        [=](double t) { return cplx(A * w * std::sin(w * t), A * w * (1.0 - std::cos(w * t))); },
        [=](double t) { return cplx(A * w * w * std::cos(w * t), A * w * w * std::sin(w * t)); },
        [=](double t) {
            return cplx(-A * w * w * w * std::sin(w * t), A * w * w * w * std::cos(w * t));
        }};
    const cplx F1 = selfforce_first(first, model);
    CHECK(std::fabs(F1.real() - F.x) < 1e-9);
    CHECK(std::fabs(F1.imag() - F.y) < 1e-9);
}

TEST_CASE("validate_history: rejects inconsistent histories") {
    WorldlineHistory offset{[](double) { return Vec3{1.0, 0.0, 0.0}; },
                            [](double) { return Vec3{}; }, [](double t) { return t; }};
    CHECK_THROWS_AS(validate_history(offset), std::invalid_argument);
    WorldlineHistory wrong_velocity{[](double t) { return Vec3{0.5 * t, 0.0, 0.0}; },
                                    [](double) { return Vec3{2.0, 0.0, 0.0}; },
                                    [](double t) { return t; }};
    CHECK_THROWS_AS(validate_history(wrong_velocity), std::invalid_argument);
    WorldlineHistory frozen_clock{[](double t) { return Vec3{0.1 * t, 0.0, 0.0}; },
                                  [](double) { return Vec3{0.1, 0.0, 0.0}; },
                                  [](double) { return 0.0; }};
    CHECK_THROWS_AS(validate_history(frozen_clock), std::invalid_argument);
}

TEST_CASE("selfforce_second: non-finite history values are reported") {
    const ParticleModel model(1.0, 1.0, 1.0);
    WorldlineHistory drift{
        [](double t) { return Vec3{-0.5 * t, 0.0, 0.0}; },
        [](double t) {
            return t < -5.0 ? Vec3{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0}
                            : Vec3{-0.5, 0.0, 0.0};
        },
        [](double t) { return t; }};
    CHECK_THROWS_AS(selfforce_second(drift, model), NumericsError);
}

TEST_CASE("DeltaTable: rows carry the delta grid") {
    const DeltaTable t = DeltaTable::build({0.0, 0.5, 1.0});
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].Delta == 0.0);
    CHECK(t.rows[2].delta == 1.0);
    CHECK(t.rows[2].Delta == doctest::Approx(0.74181252602632).epsilon(1e-8));
    CHECK(t.rows[2].mu_r == doctest::Approx(0.2582).epsilon(1e-3));
    CHECK(t.rows[1].mu_r_approx == doctest::Approx(0.0740).epsilon(2e-3));
}
