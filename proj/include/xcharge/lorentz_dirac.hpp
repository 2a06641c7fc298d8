#pragma once

#include <complex>
#include <vector>

#include "xcharge/minkowski.hpp"
#include "xcharge/particle.hpp"
#include "xcharge/selfforce.hpp"

namespace xcharge {

/// Comparison baseline only: the point-charge self-force with the 4/3 mass
/// and the Schott term. No trajectory integration (runaways would need the
/// ad hoc boundary conditions this model is a foil for).
struct LDState {
    TwoVector u;      // 2-velocity
    TwoVector a;      // 2-acceleration
    TwoVector a_dot;  // jerk
};

/// F_s = -(4/3) m1 a + (q^2 / 6 pi) (1 - u u) . a_dot. Orthogonal to u for
/// consistent states (u.a = 0).
TwoVector ld_selfforce(const LDState& state, const ParticleModel& model);

/// Nonrelativistic plane-motion form, no projector.
std::complex<double> ld_selfforce(std::complex<double> a, std::complex<double> a_dot,
                                  const ParticleModel& model);

/// Reaction force m0 a - F_e predicted for hyperbolic motion: identically 0
/// (the Schott term cancels the radiated momentum bookkeeping), although
/// a != 0. The extended-charge model gives m1 a mu_r(r1 f) != 0 instead.
double ld_hyperbolic_reaction(double f, const ParticleModel& model);

struct SelfforceComparison {
    double delta;
    double Fs_extended;   // -(m1/r1) Delta(delta)
    double Fs_ld_linear;  // -(4/3)(m1/r1) delta
    double ratio;         // 3/4 Delta(delta)/delta -> 3/4 as delta -> 0
};

std::vector<SelfforceComparison> compare_selfforce(const std::vector<double>& deltas,
                                                   const ParticleModel& model,
                                                   const QuadratureConfig& cfg = {});

}  // namespace xcharge
