#include "xcharge/selfforce.hpp"

#include <cmath>
#include <numbers>

namespace xcharge {

namespace {

// series 6 sum w(n) a^2n / (3+2n)! with caller-chosen weight w(n); the
// difference kernel has w(0) = 0, so the cutoff only fires past n = 1
double kernel_series(double alpha, const std::function<double(int)>& w) {
    const double a2 = alpha * alpha;
    double pow = 1.0, fact = 6.0, sum = 0.0;  // fact = (3+2n)!
    for (int n = 0; n < 40; ++n) {
        const double term = 6.0 * w(n) / fact * pow;
        sum += term;
        if (n >= 1 && std::fabs(term) < 1e-18 * std::max(std::fabs(sum), 1e-30)) break;
        pow *= a2;
        fact *= (4.0 + 2.0 * n) * (5.0 + 2.0 * n);
    }
    return sum;
}

constexpr double series_cut = 1.0;   // below: series; above: closed form
constexpr double scaled_cut = 30.0;  // above: e^-a scaled kernels in integrands

}  // namespace

double a_parallel(double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("a_parallel: requires alpha >= 0");
    if (alpha < series_cut) return kernel_series(alpha, [](int n) { return 1.0 + n; });
    return 3.0 / (alpha * alpha * alpha) * (alpha * std::cosh(alpha) - std::sinh(alpha));
}

double a_perp(double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("a_perp: requires alpha >= 0");
    if (alpha < series_cut)
        return kernel_series(alpha, [](int n) { return (1.0 + n) * (1.0 + n); });
    return 1.5 / (alpha * alpha * alpha) *
           ((1.0 + alpha * alpha) * std::sinh(alpha) - alpha * std::cosh(alpha));
}

double a_parallel_minus_perp(double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("a_parallel_minus_perp: requires alpha >= 0");
    if (alpha < series_cut)
        return kernel_series(alpha, [](int n) { return -static_cast<double>(n) * (1.0 + n); });
    return a_parallel(alpha) - a_perp(alpha);
}

// e^-a A_par = (3/2a^3) ((a-1) + (a+1) e^-2a), written with 1/a powers so the
// a -> inf limit evaluates to 0 instead of inf/inf.
double a_parallel_scaled(double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("a_parallel_scaled: requires alpha > 0");
    if (alpha < scaled_cut) return a_parallel(alpha) * std::exp(-alpha);
    const double inv = 1.0 / alpha;
    return 1.5 * inv * inv * ((1.0 - inv) + (1.0 + inv) * std::exp(-2.0 * alpha));
}

// e^-a A_perp = (3/4a^3) ((a^2 - a + 1) - (a^2 + a + 1) e^-2a)
double a_perp_scaled(double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("a_perp_scaled: requires alpha > 0");
    if (alpha < scaled_cut) return a_perp(alpha) * std::exp(-alpha);
    const double inv = 1.0 / alpha;
    return 0.75 * inv * ((1.0 - inv + inv * inv) - (1.0 + inv + inv * inv) * std::exp(-2.0 * alpha));
}

double a_parallel_minus_perp_scaled(double alpha) {
    if (alpha <= 0.0)
        throw std::invalid_argument("a_parallel_minus_perp_scaled: requires alpha > 0");
    if (alpha < scaled_cut) return a_parallel_minus_perp(alpha) * std::exp(-alpha);
    return a_parallel_scaled(alpha) - a_perp_scaled(alpha);
}

namespace {

// f_n after t = (cosh x - 1)/delta, which removes the sqrt-kink of the raw
// integrand at t = 0:
//   f_n(delta)/n! = int_0^inf exp(phi(x)) dx,
//   phi = ln sinh x + 2n ln sinh(x/2) + n ln 2 - (n+1) ln delta
//         - sinh(x)/delta - lgamma(n+1).
// phi is strictly concave with a single peak.
struct ScaledLogIntegrand {
    int n;
    double delta;
    double lgam;

    static double log_sinh(double x) {
        return x > 30.0 ? x - std::numbers::ln2 : std::log(std::sinh(x));
    }
    double phi(double x) const {
        if (x > 700.0) return -1e300;  // sinh overflow region: dead anyway
        return log_sinh(x) + 2.0 * n * log_sinh(0.5 * x) + n * std::numbers::ln2 -
               (n + 1.0) * std::log(delta) - std::sinh(x) / delta - lgam;
    }
    double dphi(double x) const {
        if (x > 700.0) return -1e300;
        return 1.0 / std::tanh(x) + n / std::tanh(0.5 * x) - std::cosh(x) / delta;
    }
};

}  // namespace

double factorial_fn_scaled(int n, double delta, const QuadratureConfig& cfg) {
    if (n < 0) throw std::invalid_argument("factorial_fn_scaled: requires n >= 0");
    if (delta == 0.0) return 0.0;
    if (delta < 0.0) return -factorial_fn_scaled(n, -delta, cfg);
    QuadratureConfig c = cfg;
    c.abs_tol = 1e-300;  // pure relative control; the scaled integrand can be tiny
    c.rel_tol = std::min(cfg.rel_tol, 1e-12);
    const ScaledLogIntegrand g{n, delta, std::lgamma(n + 1.0)};
    // bracket and bisect the peak (dphi positive near 0, eventually negative)
    double hi = std::max(std::asinh((n + 1.0) * delta), 1.0);
    while (g.dphi(hi) > 0.0) hi *= 2.0;
    double lo = 1e-12;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g.dphi(mid) > 0.0 ? lo : hi) = mid;
    }
    const double xstar = 0.5 * (lo + hi);
    const double drop = g.phi(xstar) - 42.0;
    // window edges where phi falls 42 below the peak
    double a_lo = 1e-300, a_hi = xstar;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (a_lo + a_hi);
        (g.phi(mid) < drop ? a_lo : a_hi) = mid;
    }
    double b = xstar + 1.0;
    while (g.phi(b) > drop) b = xstar + 2.0 * (b - xstar);
    const auto f = [&g](double x) { return std::exp(g.phi(x)); };
    return detail::simpson_impl<double>(f, a_lo, b, c);
}

double factorial_fn(int n, double delta, const QuadratureConfig& cfg) {
    if (n < 0) throw std::invalid_argument("factorial_fn: requires n >= 0");
    if (n > 170) throw std::overflow_error("factorial_fn: n! overflows double; use the scaled form");
    return std::exp(std::lgamma(n + 1.0)) * factorial_fn_scaled(n, delta, cfg);
}

double delta_fn(double delta, const QuadratureConfig& cfg) {
    if (!std::isfinite(delta)) throw std::invalid_argument("delta_fn: delta must be finite");
    if (delta == 0.0) return 0.0;
    if (delta < 0.0) return -delta_fn(-delta, cfg);
    if (delta > 1e280)
        throw std::invalid_argument("delta_fn: delta beyond the supported range (cosh overflow)");
    // integrand in x after a = (cosh x - 1)/delta; combined with the weight
    // through exp((e^-x - 1)/delta) once the kernel would overflow
    const auto integrand = [delta](double x) {
        const double s = std::sinh(x);
        const double alpha = (std::cosh(x) - 1.0) / delta;
        if (alpha < scaled_cut) return (s / delta) * std::exp(-s / delta) * a_parallel(alpha);
        return (s / delta) * a_parallel_scaled(alpha) * std::exp(std::expm1(-x) / delta);
    };
    QuadratureConfig c = cfg;
    c.abs_tol = 0.5 * cfg.abs_tol;
    const double x1 = std::asinh(60.0 * delta);  // boundary-layer piece ends here
    const double v1 = detail::simpson_impl<double>(integrand, 0.0, x1, c);
    const double v2 = detail::simpson_impl<double>(integrand, x1, x1 + 45.0, c);
    return v1 + v2;
}

double delta_series(double delta, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("delta_series: tol must be > 0");
    if (delta == 0.0) return 0.0;
    if (delta < 0.0) return -delta_series(-delta, tol);
    // c_2n f_2n = [3/((2n+1)(2n+3))] * (f_2n / (2n)!)
    const auto term = [delta](int n) {
        const double w = 3.0 / ((2.0 * n + 1.0) * (2.0 * n + 3.0));
        return w * factorial_fn_scaled(2 * n, delta);
    };
    double prev = series_limit(term, 16, 3);
    for (int levels = 4; levels <= 6; ++levels) {
        const double next = series_limit(term, 16, levels);
        if (std::fabs(next - prev) < tol) return next;
        prev = next;
    }
    throw NumericsError("delta_series: extrapolation did not settle within tol", prev, tol);
}

double mu_r(double delta, const QuadratureConfig& cfg) {
    if (delta == 0.0) return 0.0;
    return 1.0 - delta_fn(delta, cfg) / delta;
}

double mu_r_approx(double delta) {
    if (delta == 0.0) return 0.0;
    const double rt = std::sqrt(std::fabs(delta));
    return std::exp(-1.5 / (rt * (0.1078 + rt)));
}

double selfforce_zeroth(double accel, double m1) { return -m1 * accel; }

Vec3 selfforce_zeroth(const Vec3& accel, double m1) { return accel * (-m1); }

void validate_history(const WorldlineHistory& h, double probe_scale) {
    if (!h.position || !h.velocity || !h.lab_time)
        throw std::invalid_argument("WorldlineHistory: missing evaluator");
    if (norm3(h.position(0.0)) > 1e-10 * probe_scale)
        throw std::invalid_argument("WorldlineHistory: position(0) must vanish");
    if (std::fabs(h.lab_time(0.0)) > 1e-10 * probe_scale)
        throw std::invalid_argument("WorldlineHistory: lab_time(0) must vanish");
    const double eps = 1e-5 * probe_scale;
    double t_prev = h.lab_time(0.0);
    for (double tau : {-0.25 * probe_scale, -1.0 * probe_scale, -3.0 * probe_scale}) {
        const Vec3 v = h.velocity(tau);
        // two step sizes: a defect that shrinks ~4x under halving is finite-
        // difference truncation, not a wrong velocity
        const Vec3 fd1 = (h.position(tau + eps) - h.position(tau - eps)) * (0.5 / eps);
        const Vec3 fd2 = (h.position(tau + 0.5 * eps) - h.position(tau - 0.5 * eps)) * (1.0 / eps);
        const double d1 = norm3(fd1 - v), d2 = norm3(fd2 - v);
        if (d2 > 1e-6 * std::max(1.0, norm3(v)) && d2 > 0.5 * d1)
            throw std::invalid_argument(
                "WorldlineHistory: velocity is not the derivative of position");
        const double t = h.lab_time(tau);
        if (!(t < t_prev))
            throw std::invalid_argument("WorldlineHistory: lab_time must be strictly increasing");
        t_prev = t;
    }
}

Vec3 selfforce_second(const WorldlineHistory& h, const ParticleModel& model,
                      const QuadratureConfig& cfg) {
    validate_history(h, model.r1);
    const double r1 = model.r1;
    const double scale = model.m1 / (r1 * r1);
    const auto integrand = [&](double tau) -> Vec3 {
        const Vec3 r = h.position(tau);
        const Vec3 v = h.velocity(tau);
        const double tprime = h.lab_time(tau);
        if (!std::isfinite(r.x) || !std::isfinite(r.y) || !std::isfinite(r.z) ||
            !std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z) ||
            !std::isfinite(tprime))
            throw NumericsError("selfforce_second: non-finite history value", tau, 0.0);
        const double rho = norm3(r);
        const double alpha = rho / r1;
        Vec3 val;
        if (alpha < scaled_cut) {
            val = v * a_perp(alpha);
            if (alpha > 1e-8) val = val + r * (dot3(v, r) / (rho * rho) * a_parallel_minus_perp(alpha));
            return val * (scale * std::exp(tprime / r1));
        }
        // causality keeps rho + t' <= 0; fold the kernel growth into the weight
        const double expo = (rho + tprime) / r1;
        val = v * a_perp_scaled(alpha);
        val = val + r * (dot3(v, r) / (rho * rho) * a_parallel_minus_perp_scaled(alpha));
        return val * (scale * std::exp(expo));
    };
    return detail::integrate_past_impl<Vec3>(integrand, r1, cfg);
}

DeltaTable DeltaTable::build(const std::vector<double>& deltas, const QuadratureConfig& cfg) {
    DeltaTable t;
    t.rows.reserve(deltas.size());
    for (const double d : deltas) {
        const double D = delta_fn(d, cfg);
        t.rows.push_back({d, D, d == 0.0 ? 0.0 : 1.0 - D / d, mu_r_approx(d)});
    }
    return t;
}

}  // namespace xcharge
