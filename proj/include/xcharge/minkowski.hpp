#pragma once

#include <cmath>
#include <stdexcept>

namespace xcharge {

// Metric convention diag(1,-1,-1,-1) throughout.

/// 1+1 Minkowski vector for rectilinear problems.
struct TwoVector {
    double t = 0.0;
    double x = 0.0;

    TwoVector operator+(const TwoVector& o) const { return {t + o.t, x + o.x}; }
    TwoVector operator-(const TwoVector& o) const { return {t - o.t, x - o.x}; }
    TwoVector operator*(double s) const { return {t * s, x * s}; }
    TwoVector operator-() const { return {-t, -x}; }
};

inline TwoVector operator*(double s, const TwoVector& v) { return v * s; }

inline double dot2(const TwoVector& a, const TwoVector& b) { return a.t * b.t - a.x * b.x; }

/// 3+1 Minkowski vector, contravariant lab coordinates.
struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    FourVector operator+(const FourVector& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
    FourVector operator-(const FourVector& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
    FourVector operator*(double s) const { return {t * s, x * s, y * s, z * s}; }
};

inline FourVector operator*(double s, const FourVector& v) { return v * s; }

inline double dot4(const FourVector& a, const FourVector& b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

/// Euclidean 3-vector for rest-frame spatial quantities.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot3(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

/// magnitude hook used by the generic quadrature templates (found by ADL)
inline double vabs(const Vec3& a) { return norm3(a); }

/// Lorentz map on the t-x plane, stored as a 2x2 matrix acting from the left.
struct BoostDyadic {
    double m[2][2] = {{1.0, 0.0}, {0.0, 1.0}};

    TwoVector apply(const TwoVector& v) const {
        return {m[0][0] * v.t + m[0][1] * v.x, m[1][0] * v.t + m[1][1] * v.x};
    }
    BoostDyadic compose(const BoostDyadic& o) const {
        BoostDyadic r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }
};

/// exp(tau f dbar) with dbar^2 the identity on the t-x plane: the boost
/// [[cosh, sinh], [sinh, cosh]] of rapidity f*tau. Maps e0 to
/// (cosh f tau, sinh f tau).
inline BoostDyadic boost_exp(double f, double tau) {
    const double c = std::cosh(f * tau), s = std::sinh(f * tau);
    BoostDyadic b;
    b.m[0][0] = c;
    b.m[0][1] = s;
    b.m[1][0] = s;
    b.m[1][1] = c;
    return b;
}

/// Functional determinant D = 1 - rbar.abar of the comoving-coordinate map;
/// the caller supplies the rest-frame scalar product rbar.abar.
inline double functional_determinant(double r_dot_a) { return 1.0 - r_dot_a; }

/// Whether <r> a << 1 holds, i.e. the D ~ 1 rigid-motion approximation is
/// trusted at this acceleration.
inline bool rigidity_valid(double mean_radius, double accel_mag, double threshold = 0.1) {
    if (mean_radius < 0.0 || accel_mag < 0.0)
        throw std::invalid_argument("rigidity_valid: radius and acceleration must be >= 0");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("rigidity_valid: threshold must lie in (0,1)");
    return mean_radius * accel_mag < threshold;
}

}  // namespace xcharge
