#include "xcharge/lorentz_dirac.hpp"

#include <cmath>
#include <numbers>

namespace xcharge {

TwoVector ld_selfforce(const LDState& state, const ParticleModel& model) {
    const double schott = model.q * model.q / (6.0 * std::numbers::pi);
    const TwoVector projected = state.a_dot - state.u * dot2(state.u, state.a_dot);
    return state.a * (-(4.0 / 3.0) * model.m1) + projected * schott;
}

std::complex<double> ld_selfforce(std::complex<double> a, std::complex<double> a_dot,
                                  const ParticleModel& model) {
    const double schott = model.q * model.q / (6.0 * std::numbers::pi);
    return -(4.0 / 3.0) * model.m1 * a + schott * a_dot;
}

double ld_hyperbolic_reaction(double f, const ParticleModel& model) {
    if (f == 0.0) throw std::invalid_argument("ld_hyperbolic_reaction: requires f != 0");
    // state at tau = 0 of the hyperbolic worldline
    const TwoVector u{1.0, 0.0};
    const TwoVector a{0.0, f};
    const TwoVector a_dot{f * f, 0.0};
    // reaction force (q^2/6pi)(udd + ud^2 u): udd = a_dot, ud^2 = a.a = -f^2
    const double schott = model.q * model.q / (6.0 * std::numbers::pi);
    const TwoVector Fr = (a_dot + u * dot2(a, a)) * schott;
    return Fr.x;
}

std::vector<SelfforceComparison> compare_selfforce(const std::vector<double>& deltas,
                                                   const ParticleModel& model,
                                                   const QuadratureConfig& cfg) {
    const double scale = model.m1 / model.r1;
    std::vector<SelfforceComparison> out;
    out.reserve(deltas.size());
    for (const double d : deltas) {
        if (d < 0.0) throw std::invalid_argument("compare_selfforce: deltas must be >= 0");
        SelfforceComparison row;
        row.delta = d;
        if (d == 0.0) {
            row.Fs_extended = 0.0;
            row.Fs_ld_linear = 0.0;
            row.ratio = 0.75;  // limit of (3/4) Delta/delta
        } else {
            const double D = delta_fn(d, cfg);
            row.Fs_extended = -scale * D;
            row.Fs_ld_linear = -(4.0 / 3.0) * scale * d;
            row.ratio = 0.75 * D / d;
        }
        out.push_back(row);
    }
    return out;
}

}  // namespace xcharge
