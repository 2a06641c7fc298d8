#include "xcharge/hyperbolic.hpp"

#include <cmath>

namespace xcharge {

TwoVector hyperbola(double f, double tau) {
    const double ft = f * tau;
    if (std::fabs(ft) < 1e-6) {
        // sinh(ft)/f = tau (1 + (ft)^2/6 + ...), (cosh(ft)-1)/f = f tau^2/2 (1 + (ft)^2/12 + ...)
        const double ft2 = ft * ft;
        return {tau * (1.0 + ft2 / 6.0), 0.5 * f * tau * tau * (1.0 + ft2 / 12.0)};
    }
    return {std::sinh(ft) / f, (std::cosh(ft) - 1.0) / f};
}

TwoVector hyperbola_velocity(double f, double tau) {
    return {std::cosh(f * tau), std::sinh(f * tau)};
}

double position_time_law(double f, double t) {
    if (f == 0.0) throw std::invalid_argument("position_time_law: requires f != 0");
    const double u = f * t;
    // (sqrt(1+u^2)-1)/f without cancellation at small u
    return (u * t) / (std::sqrt(1.0 + u * u) + 1.0);
}

double time_of_position(double f, double x) {
    if (f == 0.0) throw std::invalid_argument("time_of_position: requires f != 0");
    if (x < 0.0) throw std::invalid_argument("time_of_position: requires x >= 0");
    return std::sqrt(x * (x + 2.0 / f));
}

PicardResult picard_iterate(double f, double tau_max, int grid_n, int iters) {
    if (grid_n < 16) throw std::invalid_argument("picard_iterate: grid_n must be >= 16");
    if (iters < 1) throw std::invalid_argument("picard_iterate: iters must be >= 1");
    const int m = grid_n + 1;
    const double h = tau_max / grid_n;

    PicardResult out;
    std::vector<double> taus(m);
    for (int j = 0; j < m; ++j) taus[j] = j * h;
    std::vector<TwoVector> closed(m);
    for (int j = 0; j < m; ++j) closed[j] = hyperbola(f, taus[j]);

    // z^(0) = 0, u^(0) = 0; each sweep applies
    //   u_new(tau) = e0 + f int_0^tau (u . dbar),   z_new(tau) = int_0^tau u_new
    // with u . dbar = (u^1, u^0).
    std::vector<TwoVector> u(m), z(m), unew(m), znew(m);
    for (int it = 0; it < iters; ++it) {
        unew[0] = {1.0, 0.0};
        for (int j = 1; j < m; ++j) {
            const TwoVector swapped_prev{u[j - 1].x, u[j - 1].t};
            const TwoVector swapped{u[j].x, u[j].t};
            unew[j] = unew[j - 1] + (swapped_prev + swapped) * (0.5 * h * f);
        }
        znew[0] = {0.0, 0.0};
        for (int j = 1; j < m; ++j)
            znew[j] = znew[j - 1] + (unew[j - 1] + unew[j]) * (0.5 * h);

        double change = 0.0, dist = 0.0;
        for (int j = 0; j < m; ++j) {
            change = std::max({change, std::fabs(znew[j].t - z[j].t), std::fabs(znew[j].x - z[j].x)});
            dist = std::max({dist, std::fabs(znew[j].t - closed[j].t),
                             std::fabs(znew[j].x - closed[j].x)});
        }
        u = unew;
        z = znew;
        out.iterates.push_back({taus, z, u});
        out.iterate_change.push_back(change);
        out.distance_to_closed_form.push_back(dist);
        if (change < 1e-10) {
            out.converged = true;
            break;
        }
    }
    int ratios = 0;
    double logsum = 0.0;
    for (std::size_t k = 1; k < out.iterate_change.size(); ++k) {
        if (out.iterate_change[k] > 0.0 && out.iterate_change[k - 1] > 0.0) {
            logsum += std::log(out.iterate_change[k] / out.iterate_change[k - 1]);
            ++ratios;
        }
    }
    out.contraction = ratios > 0 ? std::exp(logsum / ratios) : 0.0;
    return out;
}

double translation_invariance_check(double f, double tau1, double tau_probe) {
    const TwoVector z1 = hyperbola(f, tau1);
    const TwoVector U = hyperbola_velocity(f, tau1);  // e0' of the rebased frame
    const TwoVector z = hyperbola(f, tau1 + tau_probe);
    const TwoVector d{z.t - z1.t, z.x - z1.x};
    // primed components: contravariant t via dot with e0' = (U0, U1),
    // x via minus the dot with e1' = (U1, U0)
    const double tp = d.t * U.t - d.x * U.x;
    const double xp = -(d.t * U.x - d.x * U.t);
    const TwoVector expect = hyperbola(f, tau_probe);
    return std::max(std::fabs(tp - expect.t), std::fabs(xp - expect.x));
}

double selfforce_hyperbolic(double f, const ParticleModel& model, const QuadratureConfig& cfg) {
    if (f == 0.0) return 0.0;
    return -(model.m1 / model.r1) * delta_fn(model.r1 * f, cfg);
}

WorldlineHistory hyperbolic_history(double f) {
    WorldlineHistory h;
    h.position = [f](double tau) -> Vec3 {
        const TwoVector z = hyperbola(f, tau);
        return {z.x, 0.0, 0.0};
    };
    h.velocity = [f](double tau) -> Vec3 { return {std::sinh(f * tau), 0.0, 0.0}; };
    h.lab_time = [f](double tau) { return hyperbola(f, tau).t; };
    return h;
}

}  // namespace xcharge
