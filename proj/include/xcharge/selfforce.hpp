#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "xcharge/minkowski.hpp"
#include "xcharge/numerics.hpp"
#include "xcharge/particle.hpp"

namespace xcharge {

// Anisotropy kernels of the retarded self-force.
//   A_par(a)  = (3/a^3) (a cosh a - sinh a)          = 6 sum (1+n)   a^2n / (3+2n)!
//   A_perp(a) = (3/2a^3) ((1+a^2) sinh a - a cosh a) = 6 sum (1+n)^2 a^2n / (3+2n)!
// Small arguments go through the series to dodge the cancellation in the
// closed forms; *_scaled are e^-a A(a), finite for arbitrarily large a.
double a_parallel(double alpha);
double a_perp(double alpha);
double a_parallel_minus_perp(double alpha);
double a_parallel_scaled(double alpha);
double a_perp_scaled(double alpha);
double a_parallel_minus_perp_scaled(double alpha);

/// Generalized factorial function
///   f_n(delta) = int_0^inf t^n exp(-sqrt(t^2 + 2t/delta)) dt,
/// odd in delta, rising from f_n(0) = 0 to f_n(inf) = n!.
double factorial_fn(int n, double delta, const QuadratureConfig& cfg = {});

/// f_n(delta) / n!, computed in log space; usable for any n.
double factorial_fn_scaled(int n, double delta, const QuadratureConfig& cfg = {});

/// Rectilinear self-force function
///   Delta(delta) = int_0^inf exp(-sqrt(a^2 + 2a/delta)) A_par(a) da,
/// odd, monotone, saturating at 1.5. Evaluated after the substitution
/// a = (cosh x - 1)/delta, which resolves both the small-delta boundary
/// layer and the algebraically decaying large-a tail.
double delta_fn(double delta, const QuadratureConfig& cfg = {});

/// Saturation value Delta(inf) = sum 3/((2n+1)(2n+3)) = 1.5.
inline constexpr double delta_saturation = 1.5;

/// Delta(delta) as the series sum c_2n f_2n(delta), c_2n = 6(1+n)/(3+2n)!.
/// The partial sums close like 1/N, so the limit is taken by Richardson
/// extrapolation over checkpointed partial sums; tol steers the depth.
double delta_series(double delta, double tol = 1e-9);

/// Relative reactive mass mu_r(delta) = 1 - Delta(delta)/delta, with the
/// limit value 0 at delta = 0. Nonanalytic there: every Taylor coefficient
/// vanishes.
double mu_r(double delta, const QuadratureConfig& cfg = {});

/// Fitted approximation exp(-1.5 / (sqrt|d| (0.1078 + sqrt|d|))), 0 at 0.
double mu_r_approx(double delta);

/// Zeroth approximation F_s = -m1 a, valid for |a| << <r>^-1.
double selfforce_zeroth(double accel, double m1);
Vec3 selfforce_zeroth(const Vec3& accel, double m1);

/// Velocity history on tau <= 0 with explicit first and second derivatives.
template <class T>
struct VelocityHistory {
    std::function<T(double)> u;    // velocity
    std::function<T(double)> du;   // acceleration
    std::function<T(double)> ddu;  // jerk
};

/// First approximation
///   F_s = -m1 zdd(0) + m1 int_{-inf}^0 zddd(t) exp(t / r1) dt.
template <class T>
T selfforce_first(const VelocityHistory<T>& h, const ParticleModel& model,
                  const QuadratureConfig& cfg = {}) {
    const double r1 = model.r1;
    const auto integrand = [&](double t) { return h.ddu(t) * std::exp(t / r1); };
    const T tail = detail::integrate_past_impl<T>(integrand, r1, cfg);
    return h.du(0.0) * (-model.m1) + tail * model.m1;
}

/// Worldline history in the local rest frame anchored at tau = 0:
/// position(0) = 0, velocity is its derivative, lab_time is t'(tau') <= 0
/// and strictly increasing.
struct WorldlineHistory {
    std::function<Vec3(double)> position;
    std::function<Vec3(double)> velocity;
    std::function<double(double)> lab_time;
};

/// Spot-checks the anchoring and that velocity differentiates position
/// (central differences at a few past instants); throws on violation.
void validate_history(const WorldlineHistory& h, double probe_scale = 1.0);

/// Second approximation: the retarded history integral
///   F_s = (m1/r1^2) int_{-inf}^0 { (v.r/|r|^2) r [A_par - A_perp] + v A_perp }
///         exp(t'/r1) dtau'.
/// Causality gives |r| <= -t', so A(a) exp(t'/r1) is evaluated through the
/// scaled kernels once a is large.
Vec3 selfforce_second(const WorldlineHistory& h, const ParticleModel& model,
                      const QuadratureConfig& cfg = {});

/// Sampled (delta, Delta, mu_r, mu_r_approx) rows.
struct DeltaTable {
    struct Row {
        double delta, Delta, mu_r, mu_r_approx;
    };
    std::vector<Row> rows;

    static DeltaTable build(const std::vector<double>& deltas, const QuadratureConfig& cfg = {});
};

}  // namespace xcharge
