#include "xcharge/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace xcharge {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
    if (max_panels < 4 || max_panels % 2 != 0)
        throw std::invalid_argument("QuadratureConfig: max_panels must be even and >= 4");
    if (!(tail_cut > 0.0)) throw std::invalid_argument("QuadratureConfig: tail_cut must be > 0");
}

double simpson(const std::function<double(double)>& f, double a, double b,
               const QuadratureConfig& cfg) {
    return detail::simpson_impl<double>(f, a, b, cfg);
}

namespace {

// Smallest cut T (doubling from cfg.tail_cut) at which the integrand has
// died out: |f| * T < abs_tol at T and two nearby probes.
double find_tail_cut(const std::function<double(double)>& f, const QuadratureConfig& cfg) {
    double T = cfg.tail_cut;
    for (int k = 0; k < 24; ++k) {
        const double probe =
            std::max({std::fabs(f(T)), std::fabs(f(T * 1.093)), std::fabs(f(T * 1.217))});
        if (probe * T < cfg.abs_tol) return T;
        T *= 2.0;
    }
    std::ostringstream msg;
    msg << "integrate_semi_infinite: integrand has not decayed at tail_cut = " << T;
    throw NumericsError(msg.str(), 0.0, 0.0);
}

}  // namespace

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureConfig& cfg) {
    cfg.validate();
    const double T = find_tail_cut(f, cfg);
    return simpson(f, 0.0, T, cfg);
}

double integrate_semi_infinite_sinh(const std::function<double(double)>& f,
                                    const QuadratureConfig& cfg) {
    cfg.validate();
    const double T = find_tail_cut(f, cfg);
    const auto g = [&f](double x) { return f(std::sinh(x)) * std::cosh(x); };
    return simpson(g, 0.0, std::asinh(T), cfg);
}

double integrate_past(const std::function<double(double)>& f, double first_block,
                      const QuadratureConfig& cfg) {
    return detail::integrate_past_impl<double>(f, first_block, cfg);
}

double solve_monotone(const std::function<double(double)>& g, double target, double lo,
                      double hi, double tol) {
    if (!(lo <= hi)) throw std::invalid_argument("solve_monotone: requires lo <= hi");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_monotone: tol must be > 0");
    double glo = g(lo), ghi = g(hi);
    if (std::fabs(glo - target) <= tol) return lo;
    if (std::fabs(ghi - target) <= tol) return hi;
    const bool increasing = glo < ghi;
    const double lo_val = std::min(glo, ghi), hi_val = std::max(glo, ghi);
    if (target < lo_val || target > hi_val) {
        std::ostringstream msg;
        msg << "solve_monotone: target " << target << " outside bracket values g(" << lo
            << ") = " << glo << ", g(" << hi << ") = " << ghi;
        throw NumericsError(msg.str(), 0.0, 0.0);
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (lo + hi);
        // secant candidate from the bracket endpoints; accept when strictly inside
        const double denom = ghi - glo;
        if (denom != 0.0) {
            const double sec = lo + (target - glo) * (hi - lo) / denom;
            if (sec > lo && sec < hi) mid = 0.5 * (mid + sec);
        }
        const double gm = g(mid);
        x = mid;
        if (std::fabs(gm - target) <= tol) return x;
        if ((gm < target) == increasing) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(mid)))
            break;
    }
    const double resid = std::fabs(g(x) - target);
    if (resid <= tol) return x;
    throw NumericsError("solve_monotone: bracket collapsed before meeting tol", x, resid);
}

std::vector<std::vector<double>> ode_rk4(
    const std::function<std::vector<double>(double, const std::vector<double>&)>& deriv,
    std::vector<double> state0, double tau0, double tau1, int steps) {
    if (steps < 1) throw std::invalid_argument("ode_rk4: steps must be >= 1");
    const double h = (tau1 - tau0) / steps;
    const std::size_t dim = state0.size();
    std::vector<std::vector<double>> out;
    out.reserve(steps + 1);
    out.push_back(state0);
    std::vector<double> y = std::move(state0), tmp(dim), ynew(dim);
    for (int k = 0; k < steps; ++k) {
        const double tau = tau0 + k * h;
        const auto k1 = deriv(tau, y);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        const auto k2 = deriv(tau + 0.5 * h, tmp);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        const auto k3 = deriv(tau + 0.5 * h, tmp);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
        const auto k4 = deriv(tau + h, tmp);
        for (std::size_t i = 0; i < dim; ++i)
            ynew[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (double v : ynew) {
            if (!std::isfinite(v)) {
                std::ostringstream msg;
                msg << "ode_rk4: non-finite state at tau = " << tau + h;
                throw NumericsError(msg.str(), tau + h, 0.0);
            }
        }
        y = ynew;
        out.push_back(y);
    }
    return out;
}

double sum_series(const std::function<double(int)>& term, double tol, int max_terms) {
    if (!(tol >= 0.0)) throw std::invalid_argument("sum_series: tol must be >= 0");
    if (max_terms < 1) throw std::invalid_argument("sum_series: max_terms must be >= 1");
    double sum = 0.0, comp = 0.0, last = 0.0;
    int quiet = 0;
    for (int n = 0; n < max_terms; ++n) {
        last = term(n);
        const double y = last - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        quiet = (std::fabs(last) < tol) ? quiet + 1 : 0;
        if (quiet >= 2) return sum;
    }
    std::ostringstream msg;
    msg << "sum_series: max_terms = " << max_terms << " reached with |term| = " << std::fabs(last);
    throw NumericsError(msg.str(), sum, std::fabs(last));
}

double series_limit(const std::function<double(int)>& term, int n0, int levels) {
    if (n0 < 1 || levels < 1 || levels > 24)
        throw std::invalid_argument("series_limit: need n0 >= 1 and 1 <= levels <= 24");
    std::vector<double> S, h;
    double sum = 0.0, comp = 0.0;
    int n = 0;
    for (int k = 0; k <= levels; ++k) {
        const int Nk = n0 << k;
        while (n < Nk) {
            const double y = term(n) - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            ++n;
        }
        S.push_back(sum);
        h.push_back(1.0 / Nk);
    }
    // Neville tableau evaluated at h = 0
    std::vector<double> T = S;
    for (std::size_t j = 1; j < T.size(); ++j)
        for (std::size_t i = T.size() - 1; i >= j; --i)
            T[i] = T[i] + (T[i] - T[i - 1]) * h[i] / (h[i - j] - h[i]);
    return T.back();
}

}  // namespace xcharge
