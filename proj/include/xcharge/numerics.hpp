#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace xcharge {

/// Tolerances and limits shared by all quadrature-based routines.
struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_panels = 1 << 20;
    double tail_cut = 60.0;  // finite stand-in for the upper limit of semi-infinite integrals

    void validate() const;
};

/// Thrown when a numerical routine fails to meet its tolerance; carries the
/// last estimate and the remaining gap so callers can decide what to salvage.
class NumericsError : public std::runtime_error {
public:
    NumericsError(const std::string& what, double estimate, double gap)
        : std::runtime_error(what), estimate_(estimate), gap_(gap) {}
    double estimate() const { return estimate_; }
    double gap() const { return gap_; }

private:
    double estimate_;
    double gap_;
};

namespace detail {

inline double vabs(double x) { return std::fabs(x); }
inline double vabs(const std::complex<double>& z) { return std::abs(z); }

/// Composite Simpson with panel doubling, generic over the value type.
/// Stops when successive estimates differ by less than max(abs, rel*|S|).
template <class T, class F>
T simpson_impl(F&& f, double a, double b, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(a <= b)) throw std::invalid_argument("simpson: requires a <= b");
    if (a == b) return T{};

    const double h0 = b - a;
    T trap = (f(a) + f(b)) * 0.5 * h0;
    T simp_prev{};
    double last_gap = 0.0;
    bool have_prev = false;
    int n = 1;  // current trapezoid interval count
    while (n < cfg.max_panels) {
        const double h = h0 / (2 * n);
        T add{};
        T comp{};  // Kahan compensation for the midpoint sum
        for (int i = 0; i < n; ++i) {
            T y = f(a + (2 * i + 1) * h) - comp;
            T t = add + y;
            comp = (t - add) - y;
            add = t;
        }
        T trap2 = trap * 0.5 + add * h;
        T simp = (trap2 * 4.0 - trap) * (1.0 / 3.0);
        n *= 2;
        if (have_prev) {
            last_gap = vabs(simp - simp_prev);
            if (n >= 16 && last_gap <= std::max(cfg.abs_tol, cfg.rel_tol * vabs(simp)))
                return simp;
        }
        simp_prev = simp;
        have_prev = true;
        trap = trap2;
    }
    throw NumericsError("simpson: no convergence within max_panels", vabs(simp_prev), last_gap);
}

/// Integral over the past, int_{-inf}^0 f, for integrands that decay as
/// tau -> -inf. Panels [-2^{k+1} w, -2^k w] are added until two consecutive
/// blocks are negligible.
template <class T, class F>
T integrate_past_impl(F&& f, double first_block, const QuadratureConfig& cfg) {
    if (!(first_block > 0.0)) throw std::invalid_argument("integrate_past: block width must be > 0");
    QuadratureConfig block_cfg = cfg;
    block_cfg.abs_tol = cfg.abs_tol * 0.25;
    T total{};
    double right = 0.0, left = -first_block;
    int quiet = 0;
    for (int k = 0; k < 64; ++k) {
        T piece = simpson_impl<T>(f, left, right, block_cfg);
        total = total + piece;
        const double small = std::max(cfg.abs_tol, cfg.rel_tol * vabs(total));
        quiet = (vabs(piece) < small) ? quiet + 1 : 0;
        if (quiet >= 2 && k >= 2) return total;
        right = left;
        left *= 2.0;
    }
    throw NumericsError("integrate_past: integrand did not die out", vabs(total), 0.0);
}

}  // namespace detail

/// Composite Simpson estimate of int_a^b f, refined by interval halving.
double simpson(const std::function<double(double)>& f, double a, double b,
               const QuadratureConfig& cfg = {});

/// int_0^inf f for integrands with (at least) exponential decay. The cut T
/// starts at cfg.tail_cut and doubles until |f(T)| * T < abs_tol.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureConfig& cfg = {});

/// Same integral through the substitution t = sinh x; alternative path used
/// as a cross-check of plain tail truncation.
double integrate_semi_infinite_sinh(const std::function<double(double)>& f,
                                    const QuadratureConfig& cfg = {});

/// int_{-inf}^0 f for integrands decaying into the past.
double integrate_past(const std::function<double(double)>& f, double first_block,
                      const QuadratureConfig& cfg = {});

/// Solve g(x) = target for strictly monotone g on [lo, hi]. Bisection keeps
/// the bracket; a secant candidate is used when it falls strictly inside.
double solve_monotone(const std::function<double(double)>& g, double target, double lo,
                      double hi, double tol);

/// Classical fixed-step 4th-order Runge-Kutta. Returns the trajectory
/// including the initial state (steps + 1 entries).
std::vector<std::vector<double>> ode_rk4(
    const std::function<std::vector<double>(double, const std::vector<double>&)>& deriv,
    std::vector<double> state0, double tau0, double tau1, int steps);

/// Partial sum of term(0) + term(1) + ..., truncated once |term| < tol for
/// two consecutive indices.
double sum_series(const std::function<double(int)>& term, double tol, int max_terms);

/// Limit of the partial sums S_N for series whose tails fall off like 1/N:
/// Neville extrapolation in h = 1/N at checkpoints n0 * 2^k, k = 0..levels.
double series_limit(const std::function<double(int)>& term, int n0 = 32, int levels = 6);

}  // namespace xcharge
