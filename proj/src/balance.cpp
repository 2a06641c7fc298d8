#include "xcharge/balance.hpp"

#include <cmath>

namespace xcharge {

FieldStrengths field_strengths(double delta, const ParticleModel& model,
                               const QuadratureConfig& cfg) {
    const double a = delta / model.r1;
    const double Fs = -(model.m1 / model.r1) * delta_fn(delta, cfg);
    const double Fe = model.m_inf * a - Fs;
    FieldStrengths out;
    out.f = a;
    out.f_inf = Fe / model.m_inf;
    out.f_s = Fs / model.m_inf;
    out.f0 = Fe / model.m0;
    out.f_r = a - out.f0;
    return out;
}

MassChain mass_chain(double delta, const ParticleModel& model, const QuadratureConfig& cfg) {
    MassChain out;
    out.m_inf = model.m_inf;
    out.m1 = model.m1;
    out.m0 = model.m0;
    if (delta == 0.0) {
        out.m = model.m0;
        out.m_s = model.m1;
        out.m_r = 0.0;
        return out;
    }
    const double D = delta_fn(delta, cfg);
    out.m_s = model.m1 * D / delta;          // -F_s / a
    out.m_r = model.m1 * (1.0 - D / delta);  // m1 mu_r
    out.m = model.m_inf + out.m_s;
    return out;
}

double delta_infinity_of_delta(double delta, const ParticleModel& model,
                               const QuadratureConfig& cfg) {
    return delta + (model.m1 / model.m_inf) * delta_fn(delta, cfg);
}

double delta_of_delta_infinity(double delta_inf, const ParticleModel& model, double tol,
                               const QuadratureConfig& cfg) {
    if (delta_inf == 0.0) return 0.0;
    const double lo = std::min(0.0, delta_inf);
    const double hi = std::max(0.0, delta_inf);
    const auto g = [&](double d) { return delta_infinity_of_delta(d, model, cfg); };
    return solve_monotone(g, delta_inf, lo, hi, tol);
}

double f0_of_f(double f, const ParticleModel& model, const QuadratureConfig& cfg) {
    if (f == 0.0) return 0.0;
    return f * (1.0 - model.mu1 * mu_r(f * model.r1, cfg));
}

double effective_mass_ratio(double delta0, double mu1, const QuadratureConfig& cfg) {
    if (!(mu1 >= 0.0 && mu1 < 1.0))
        throw std::invalid_argument("effective_mass_ratio: requires 0 <= mu1 < 1");
    if (mu1 == 0.0 || delta0 == 0.0) return 1.0;
    return 1.0 - mu1 * mu_r(delta0 / mu1, cfg);
}

StabilityReport stability_check(double q, double m_inf, double r1) {
    if (r1 <= 0.0)
        return {false, "point charge (r1 = 0) excluded: electrostatic mass diverges"};
    if (m_inf <= 0.0)
        return {false,
                "m1 = m0 (the Abraham-Lorentz hypothesis) excluded: runaway already at "
                "f0 = 1.5 / r0"};
    const double m1 = electrostatic_mass(q, r1);
    const double mu1 = m1 / (m_inf + m1);
    if (!(mu1 < 1.0)) return {false, "mu1 = r0/r1 >= 1: r1 must be larger than r0"};
    return {true, "mu1 = r0/r1 < 1"};
}

StabilityReport stability_check(const ParticleModel& model) {
    return stability_check(model.q, model.m_inf, model.r1);
}

CriticalField critical_field(double q_SI, double m0_SI, double ratio_target) {
    if (!(q_SI > 0.0 && m0_SI > 0.0 && ratio_target > 0.0))
        throw std::invalid_argument("critical_field: inputs must be positive");
    constexpr double c = 299792458.0;          // m/s
    constexpr double hbar = 1.054571817e-34;   // J s
    const double E = 2.0 * ratio_target * m0_SI * m0_SI * c * c * c / (q_SI * hbar);
    return {E, q_SI * E / m0_SI};
}

double improved_accel(double f0, const ParticleModel& model) {
    if (f0 == 0.0) return 0.0;
    return f0 * (1.0 + model.mu1 * mu_r_approx(model.r1 * f0));
}

double reaction_force(double a, double F_e, const ParticleModel& model) {
    return model.m0 * a - F_e;
}

}  // namespace xcharge
