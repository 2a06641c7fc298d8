#pragma once

#include <string>

#include "xcharge/particle.hpp"
#include "xcharge/selfforce.hpp"

namespace xcharge {

/// Field strengths of one solved rectilinear balance, all per unit mass:
/// f = F_e/m (the acceleration), f0 = F_e/m0, f_inf = F_e/m_inf,
/// f_s = F_s/m_inf, f_r = F_r/m0. They satisfy f = f_inf + f_s = f0 + f_r.
struct FieldStrengths {
    double f, f0, f_inf, f_s, f_r;
};

/// Mass chain of the same balance: m0 = m_inf + m1 > m = m_inf + m_s
/// = m0 - m_r > m_inf for 0 < |a| < inf.
struct MassChain {
    double m_inf, m1, m0, m, m_s, m_r;
};

/// All balance quantities at acceleration a = delta / r1.
FieldStrengths field_strengths(double delta, const ParticleModel& model,
                               const QuadratureConfig& cfg = {});
MassChain mass_chain(double delta, const ParticleModel& model, const QuadratureConfig& cfg = {});

/// delta_inf = delta + (m1/m_inf) Delta(delta); strictly increasing.
double delta_infinity_of_delta(double delta, const ParticleModel& model,
                               const QuadratureConfig& cfg = {});

/// Inverse map, by bracketed root finding on [0, delta_inf] (mirrored for
/// negative arguments).
double delta_of_delta_infinity(double delta_inf, const ParticleModel& model, double tol,
                               const QuadratureConfig& cfg = {});

/// f0(f) = f [1 - mu1 mu_r(f r0 / mu1)]; note f r0 / mu1 = f r1.
double f0_of_f(double f, const ParticleModel& model, const QuadratureConfig& cfg = {});

/// Relative effective mass mu(delta0) = 1 - mu1 mu_r(delta0 / mu1),
/// decreasing from 1 to 1 - mu1 as |delta0| grows.
double effective_mass_ratio(double delta0, double mu1, const QuadratureConfig& cfg = {});

struct StabilityReport {
    bool stable;
    std::string diagnostic;
};

/// mu1 = r0/r1 < 1 check on raw parameters; names the excluded cases
/// (m_inf = 0: electrodynamic-only mass; r1 = 0: point charge).
StabilityReport stability_check(double q, double m_inf, double r1);
StabilityReport stability_check(const ParticleModel& model);

/// SI-facing estimate: field strength at which delta = ratio_target for a
/// charge q [C] of mass m0 [kg], E = 2 delta m0^2 c^3 / (q hbar), and the
/// matching acceleration a = qE/m0.
struct CriticalField {
    double field_V_per_m;
    double accel_m_per_s2;
};
CriticalField critical_field(double q_SI, double m0_SI, double ratio_target = 0.1);

/// Pointwise improved equation of motion a = f0 (1 + mu1 mu~_r(r1 f0)).
double improved_accel(double f0, const ParticleModel& model);

/// Reaction force F_r = m0 a - F_e (= m1 a + F_s for a solved balance).
double reaction_force(double a, double F_e, const ParticleModel& model);

}  // namespace xcharge
