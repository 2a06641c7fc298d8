#pragma once

#include <vector>

#include "xcharge/minkowski.hpp"
#include "xcharge/particle.hpp"
#include "xcharge/selfforce.hpp"

namespace xcharge {

/// Worldline of a charge in a constant electric field of effective strength
/// f: z(tau) = (sinh(f tau)/f, (cosh(f tau) - 1)/f), with the free-motion
/// limit (tau, 0) as f -> 0.
TwoVector hyperbola(double f, double tau);

/// Velocity (cosh f tau, sinh f tau); unit timelike for all tau.
TwoVector hyperbola_velocity(double f, double tau);

/// The same worldline bundled with its field strength.
struct HyperbolicWorldline {
    double f = 0.0;

    TwoVector position(double tau) const { return hyperbola(f, tau); }
    TwoVector velocity(double tau) const { return hyperbola_velocity(f, tau); }
};

/// Position-time law x(t) = (sqrt(1 + f^2 t^2) - 1)/f.
double position_time_law(double f, double t);

/// Inverse |t|(x) = sqrt(x (x + 2/f)) for x >= 0.
double time_of_position(double f, double x);

struct SampledWorldline {
    std::vector<double> tau;
    std::vector<TwoVector> z;
    std::vector<TwoVector> u;
};

struct PicardResult {
    std::vector<SampledWorldline> iterates;
    std::vector<double> distance_to_closed_form;  // sup over the grid, per iterate
    std::vector<double> iterate_change;           // sup |z^(n) - z^(n-1)|
    bool converged = false;
    double contraction = 0.0;  // geometric mean ratio of successive changes
};

/// Successive substitution into the twice-integrated equation of motion with
/// initial data z(0) = 0, zdot(0) = e0 and the constant-field dyadic action
/// u -> (u^1, u^0). Nested integrals by the trapezoid rule on a uniform grid;
/// convergence is declared when the sup change drops below 1e-10.
PicardResult picard_iterate(double f, double tau_max, int grid_n, int iters);

/// Rebases the hyperbola at tau1 into the local rest frame there and returns
/// the worst componentwise defect against the original form at tau_probe.
/// Zero up to round-off: the worldline is forminvariant under proper-time
/// translations.
double translation_invariance_check(double f, double tau1, double tau_probe);

/// Self-force on the hyperbolic worldline, F_s = -(m1/r1) Delta(r1 f),
/// evaluated through the same quadrature as delta_fn.
double selfforce_hyperbolic(double f, const ParticleModel& model,
                            const QuadratureConfig& cfg = {});

/// The hyperbolic worldline packaged as a history for selfforce_second
/// (motion along x, local rest frame at tau = 0).
WorldlineHistory hyperbolic_history(double f);

}  // namespace xcharge
