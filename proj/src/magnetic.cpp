#include "xcharge/magnetic.hpp"

#include <cmath>

#include "xcharge/numerics.hpp"

namespace xcharge {

cplx omega_residual(cplx Omega, double mu1, double b) {
    if (b == 0.0) throw std::invalid_argument("omega_residual: requires b != 0");
    const cplx i_mu_b(0.0, mu1 / b);
    return (1.0 - mu1) * Omega * Omega - (1.0 + i_mu_b) * Omega + i_mu_b;
}

ComplexFrequency omega_closed_form(double mu1, double b, double omega0) {
    if (!(mu1 >= 0.0 && mu1 < 0.5))
        throw std::domain_error("omega_closed_form: stated validity is 0 <= mu1 < 0.5");
    if (b == 0.0) return {cplx(1.0, 0.0), cplx(0.0, 0.0), omega0, b, mu1, true};
    const double alpha = mu1 * mu1 / (b * b) - 1.0;
    const double beta = 2.0 * mu1 - 1.0;
    const double w = std::sqrt(alpha * alpha + 4.0 * mu1 * mu1 * beta * beta / (b * b));
    // p = (w - alpha)/2, q = (w + alpha)/2; p q = (mu1 beta / b)^2 exactly,
    // so the smaller one comes from the product, never from subtraction
    const double pq = (mu1 * beta / b) * (mu1 * beta / b);
    double p, q;
    if (alpha >= 0.0) {
        q = 0.5 * (w + alpha);
        p = q > 0.0 ? pq / q : 0.0;
    } else {
        p = 0.5 * (w - alpha);
        q = p > 0.0 ? pq / p : 0.0;
    }
    const double sgn_b = b > 0.0 ? 1.0 : -1.0;
    const cplx Omega(1.0 + std::sqrt(p), mu1 / b - sgn_b * std::sqrt(q));
    const cplx Om = Omega / (2.0 * (1.0 - mu1));
    return {Om, omega0 * Om, omega0, b, mu1, true};
}

ComplexFrequency omega_closed_form(const ParticleModel& model, double B_e) {
    const double omega0 = model.q * B_e / model.m0;
    const double b = model.r0 * omega0;
    return omega_closed_form(model.mu1, b, omega0);
}

namespace {

// physical root of A Omega^2 + B Omega + C: the one with the larger real
// part (the spurious companion sits near i mu1 / (b (1 - mu1)))
cplx quadratic_physical_root(cplx A, cplx B, cplx C) {
    const cplx disc = std::sqrt(B * B - 4.0 * A * C);
    const cplx r1 = (-B + disc) / (2.0 * A);
    const cplx r2 = (-B - disc) / (2.0 * A);
    return r1.real() >= r2.real() ? r1 : r2;
}

}  // namespace

ComplexFrequency omega_from_characteristic(double mu1, double b, const ParticleModel& model) {
    if (!(mu1 >= 0.0 && mu1 < 1.0))
        throw std::domain_error("omega_from_characteristic: requires 0 <= mu1 < 1");
    // scales: keep the model's r0/m0, let (mu1, b) pick the operating point
    const double r1 = model.r0 / std::max(mu1, 1e-300);
    const double m0 = model.m0;
    const double m_inf = m0 * (1.0 - mu1);
    const double omega0 = mu1 > 0.0 ? b / model.r0 : b / model.r1;  // mu1 = 0: no self-force scale
    const double qBe = m0 * omega0;
    if (b == 0.0) return {cplx(1.0, 0.0), cplx(0.0, 0.0), 0.0, b, mu1, true};
    if (mu1 == 0.0) return {cplx(1.0, 0.0), cplx(omega0, 0.0), omega0, b, mu1, true};
    // substituting u = e^{i omega tau} into the equivalent differential
    // equation gives  r1 m_inf omega^2 - (r1 qBe + i m0) omega + i qBe = 0
    const cplx A(r1 * m_inf, 0.0);
    const cplx B(-r1 * qBe, -m0);
    const cplx C(0.0, qBe);
    const cplx omega = quadratic_physical_root(A, B, C);
    return {omega / omega0, omega, omega0, b, mu1, true};
}

ComplexFrequency omega_solve(double mu1, double b, double omega0) {
    if (mu1 < 0.5) return omega_closed_form(mu1, b, omega0);
    if (!(mu1 < 1.0)) throw std::domain_error("omega_solve: requires mu1 < 1");
    if (b == 0.0) return {cplx(1.0, 0.0), cplx(0.0, 0.0), omega0, b, mu1, false};
    const cplx i_mu_b(0.0, mu1 / b);
    const cplx Om = quadratic_physical_root(cplx(1.0 - mu1, 0.0), -(1.0 + i_mu_b), i_mu_b);
    return {Om, omega0 * Om, omega0, b, mu1, false};
}

cplx spiral(double tau, cplx u0, cplx omega) {
    if (omega == cplx(0.0, 0.0)) return u0 * tau;
    const cplx i(0.0, 1.0);
    return u0 / (i * omega) * (std::exp(i * omega * tau) - 1.0);
}

ComplexMasses complex_masses(cplx omega, const ParticleModel& model) {
    const cplx denom = 1.0 + cplx(0.0, model.r1) * omega;
    if (std::abs(denom) < 1e-14)
        throw std::domain_error("complex_masses: pole at 1 + i r1 omega = 0");
    ComplexMasses out;
    out.m_s = model.m1 / denom;
    out.m_r = model.m1 - out.m_s;
    out.m = model.m_inf + out.m_s;
    return out;
}

double total_energy(double tau, double u0, const ParticleModel& model,
                    const ComplexFrequency& freq) {
    const double speed = u0 * std::exp(-freq.omega.imag() * tau);
    return model.m0 * std::sqrt(1.0 + speed * speed);
}

MemoryOdeParams::MemoryOdeParams(double m_inf_, double m1_, double r1_)
    : m_inf(m_inf_), m1(m1_), r1(r1_) {
    if (!(m_inf > 0.0)) throw std::invalid_argument("MemoryOdeParams: m_inf must be > 0");
    if (m1 < 0.0) throw std::invalid_argument("MemoryOdeParams: m1 must be >= 0");
    if (!(r1 > 0.0)) throw std::invalid_argument("MemoryOdeParams: r1 must be > 0");
}

std::vector<ComplexMotionState> memory_ode_solve(const std::function<cplx(double, cplx)>& F_e,
                                          const MemoryOdeParams& p, cplx u_init,
                                          std::pair<double, double> tau_span, int steps,
                                          cplx S_init, cplx z_init) {
    // state = (Re u, Im u, Re S, Im S, Re z, Im z)
    const auto deriv = [&](double tau, const std::vector<double>& s) {
        const cplx u(s[0], s[1]), S(s[2], s[3]);
        const cplx u_dot = (F_e(tau, u) - (p.m1 / p.r1) * S) / p.m_inf;
        const cplx S_dot = u_dot - S / p.r1;
        return std::vector<double>{u_dot.real(), u_dot.imag(), S_dot.real(),
                                   S_dot.imag(), u.real(),     u.imag()};
    };
    const auto traj = ode_rk4(
        deriv, {u_init.real(), u_init.imag(), S_init.real(), S_init.imag(), z_init.real(),
                z_init.imag()},
        tau_span.first, tau_span.second, steps);
    const double h = (tau_span.second - tau_span.first) / steps;
    std::vector<ComplexMotionState> out;
    out.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto& s = traj[k];
        const double tau = tau_span.first + static_cast<double>(k) * h;
        const cplx u(s[0], s[1]), S(s[2], s[3]), z(s[4], s[5]);
        const cplx u_dot = (F_e(tau, u) - (p.m1 / p.r1) * S) / p.m_inf;
        out.push_back({tau, z, u, S, u_dot});
    }
    return out;
}

}  // namespace xcharge
