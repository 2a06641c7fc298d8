#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "xcharge/particle.hpp"

namespace xcharge {

using cplx = std::complex<double>;

/// Complex eigenfrequency of the magnetic spiral u = u0 e^{i omega tau}.
/// Omega = omega / omega0 with omega0 = q B_e / m0 and b = r0 omega0.
struct ComplexFrequency {
    cplx Omega;
    cplx omega;
    double omega0;
    double b;
    double mu1;
    bool closed_form_valid;  // false when mu1 >= 0.5 forced the direct quadratic
};

/// Residual of the frequency quadratic
///   (1 - mu1) Omega^2 - (1 + i mu1/b) Omega + i mu1/b.
cplx omega_residual(cplx Omega, double mu1, double b);

/// Closed-form physical branch for 0 <= mu1 < 0.5 (pinned by Omega -> 1 as
/// mu1 -> 0). b = 0 returns omega = 0 (no field, straight line). The smaller
/// of (w -+ alpha)/2 is computed from the product identity to avoid
/// cancellation.
ComplexFrequency omega_closed_form(double mu1, double b, double omega0 = 1.0);
ComplexFrequency omega_closed_form(const ParticleModel& model, double B_e);

/// Same frequency from the equivalent second-order differential equation
///   m0 udot - i q B_e u = -r1 d/dtau (m_inf udot - i q B_e u):
/// an independent derivation path used as a cross-check. The physical root
/// is the one with the larger real part (the spurious root is ~ i mu1 / b).
ComplexFrequency omega_from_characteristic(double mu1, double b, const ParticleModel& model);

/// Solver that falls back to the direct quadratic outside mu1 < 0.5, with
/// closed_form_valid = false on the fallback.
ComplexFrequency omega_solve(double mu1, double b, double omega0 = 1.0);

/// Spiral trajectory z(tau) = (u0 / i omega)(e^{i omega tau} - 1); u0 tau
/// when omega = 0. The asymptotic point is z_inf = i u0 / omega.
cplx spiral(double tau, cplx u0, cplx omega);

/// Complex masses of the spiral solution:
///   m_s = m1 / (1 + i r1 omega),  m_r = m1 - m_s,  m = m_inf + m_s.
struct ComplexMasses {
    cplx m, m_s, m_r;
};
ComplexMasses complex_masses(cplx omega, const ParticleModel& model);

/// Total energy W0(tau) = m0 sqrt(1 + |u|^2), |u| = u0 exp(-omega_i tau).
double total_energy(double tau, double u0, const ParticleModel& model,
                    const ComplexFrequency& freq);

/// Mass/kernel parameters of the memory solver; constructible from a model
/// or raw (the m1 = 0 foil is allowed here, unlike in ParticleModel).
struct MemoryOdeParams {
    double m_inf, m1, r1;
    MemoryOdeParams(const ParticleModel& m) : m_inf(m.m_inf), m1(m.m1), r1(m.r1) {}
    MemoryOdeParams(double m_inf_, double m1_, double r1_);
};

/// One sample of the complex plane motion: position z = x + iy, velocity
/// u = dz/dtau, plus the memory state S and the acceleration actually used.
struct ComplexMotionState {
    double tau;
    cplx z, u, S, u_dot;
};

/// Integro-differential equation of plane motion,
///   m_inf udot = F_e(tau, u) - (m1/r1) S,
///   S(tau) = int_{-inf}^tau udot(t') e^{-(tau - t')/r1} dt',
/// reduced exactly to the augmented ODE Sdot = udot - S/r1 and integrated
/// with fixed-step RK4. S_init encodes the pre-history (0 for a free past).
std::vector<ComplexMotionState> memory_ode_solve(const std::function<cplx(double, cplx)>& F_e,
                                          const MemoryOdeParams& p, cplx u_init,
                                          std::pair<double, double> tau_span, int steps,
                                          cplx S_init = 0.0, cplx z_init = 0.0);

}  // namespace xcharge
