#pragma once

#include <functional>
#include <string>

#include "xcharge/numerics.hpp"

namespace xcharge {

// Natural units c = eps0 = mu0 = 1 throughout the library.

/// Extended-charge model with the (1 + r1^2 k^2)^(-1/2) structure function.
/// Primary parameters are (q, m_inf, r1); everything else is derived.
struct ParticleModel {
    double q;      // charge
    double m_inf;  // mechanical (bare) mass
    double r1;     // quasi-radius of the structure function

    // derived, never stored externally
    double m1;      // electrostatic mass  q^2 / (8 pi r1)
    double m0;      // observable mass     m_inf + m1
    double r0;      // q^2 / (8 pi m0)
    double r_inf;   // q^2 / (8 pi m_inf)
    double mean_r;  // mean radius 4 r1 / pi
    double mu1;     // m1 / m0 = r0 / r1, < 1 for any m_inf > 0

    ParticleModel(double q, double m_inf, double r1);

    /// Flat key=value config with exactly the keys q, m_inf, r1.
    static ParticleModel from_config_text(const std::string& text);
    static ParticleModel from_config_file(const std::string& path);
    std::string to_config_text() const;
};

/// Structure function rho~(kappa) = (1 + r1^2 kappa^2)^(-1/2); even in kappa
/// and normalized to 1 at kappa = 0.
double structure_function(double kappa, double r1);

/// Extension point for user-supplied structure functions. Everything with a
/// closed form in this library assumes the default family; a custom rho~
/// gets its electrostatic mass and memory kernel by quadrature instead.
/// rho~ must be even, normalized to rho~(0) = 1, and decay at least like
/// 1/kappa for the self-energy integral to exist.
struct StructureFunction {
    std::function<double(double)> rho;
    std::string family;

    static StructureFunction default_family(double r1);

    /// spot-checks normalization and evenness; throws on violation
    void validate() const;

    /// m1 = (q^2 / 8 pi^2) int_-inf^inf rho~^2 dk, via kappa = tan(theta)
    double self_energy_mass(double q, const QuadratureConfig& cfg = {}) const;

    /// Q(t) = (q^2 / 8 pi^2) int_-inf^inf rho~^2 cos(kappa t) dk. The
    /// oscillatory tail beyond the window K is folded in by two integrations
    /// by parts (rho~^2 and a finite-difference derivative at K).
    double memory_kernel(double q, double t, double window = 400.0,
                         const QuadratureConfig& cfg = {}) const;
};

/// Modified Bessel function K1, series for x <= 2 and the exact Laplace-type
/// integral for x > 2. Domain x > 0.
double bessel_k1(double x);

/// K1 through its defining integral int_0^inf cosh z exp(-x cosh z) dz;
/// slower, kept as the independent route for cross-checks.
double bessel_k1_integral(double x, const QuadratureConfig& cfg = {});

/// Real-space density rho1(r) = K1(r/r1) / (2 pi^2 r r1^2).
double density(double r, double r1);

/// Mean radius <r> = 4 r1 / pi of the rho1 density.
double mean_radius(double r1);

/// Electrostatic mass m1 = q^2 / (8 pi r1).
double electrostatic_mass(double q, double r1);

/// Quasi-radius from the Compton-scale identification r1 = hbar / (2 m0).
double compton_quasi_radius(double m0, double hbar);

/// Memory function Q1(t) = m1 exp(-|t| / r1).
double memory_function(double t, const ParticleModel& model);

}  // namespace xcharge
