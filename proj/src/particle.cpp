#include "xcharge/particle.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace xcharge {

namespace {
constexpr double pi = std::numbers::pi;
}

ParticleModel::ParticleModel(double q_, double m_inf_, double r1_) : q(q_), m_inf(m_inf_), r1(r1_) {
    if (q == 0.0) throw std::invalid_argument("ParticleModel: q must be nonzero");
    if (!(m_inf > 0.0))
        throw std::invalid_argument(
            "ParticleModel: m_inf must be > 0 (m_inf = 0 means m1 = m0, the excluded "
            "Abraham-Lorentz hypothesis)");
    if (!(r1 > 0.0))
        throw std::invalid_argument(
            "ParticleModel: r1 must be > 0 (the point-charge limit has divergent m1)");
    if (!std::isfinite(q) || !std::isfinite(m_inf) || !std::isfinite(r1))
        throw std::invalid_argument("ParticleModel: parameters must be finite");
    m1 = q * q / (8.0 * pi * r1);
    m0 = m_inf + m1;
    r0 = q * q / (8.0 * pi * m0);
    r_inf = q * q / (8.0 * pi * m_inf);
    mean_r = 4.0 * r1 / pi;
    mu1 = m1 / m0;
    if (!(mu1 < 1.0)) throw std::invalid_argument("ParticleModel: requires mu1 = m1/m0 < 1");
}

ParticleModel ParticleModel::from_config_text(const std::string& text) {
    std::map<std::string, double> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notspace = line.find_first_not_of(" \t\r\n");
        if (notspace == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            const auto e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key != "q" && key != "m_inf" && key != "r1")
            throw std::invalid_argument("config: unknown key '" + key + "'");
        std::size_t used = 0;
        const double x = std::stod(val, &used);
        if (used != val.size())
            throw std::invalid_argument("config: bad number '" + val + "' for key " + key);
        kv[key] = x;
    }
    for (const char* key : {"q", "m_inf", "r1"})
        if (!kv.count(key)) throw std::invalid_argument(std::string("config: missing key ") + key);
    return ParticleModel(kv["q"], kv["m_inf"], kv["r1"]);
}

ParticleModel ParticleModel::from_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_config_text(buf.str());
}

std::string ParticleModel::to_config_text() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "q = %.17g\nm_inf = %.17g\nr1 = %.17g\n", q, m_inf, r1);
    return buf;
}

double structure_function(double kappa, double r1) {
    if (!(r1 > 0.0)) throw std::invalid_argument("structure_function: r1 must be > 0");
    return 1.0 / std::sqrt(1.0 + r1 * r1 * kappa * kappa);
}

StructureFunction StructureFunction::default_family(double r1) {
    if (!(r1 > 0.0)) throw std::invalid_argument("StructureFunction: r1 must be > 0");
    return {[r1](double kappa) { return structure_function(kappa, r1); }, "default"};
}

void StructureFunction::validate() const {
    if (!rho) throw std::invalid_argument("StructureFunction: missing evaluator");
    if (std::fabs(rho(0.0) - 1.0) > 1e-12)
        throw std::invalid_argument("StructureFunction: rho~(0) must be 1");
    for (double kappa : {0.3, 1.7, 12.0})
        if (std::fabs(rho(kappa) - rho(-kappa)) > 1e-12)
            throw std::invalid_argument("StructureFunction: rho~ must be even");
}

double StructureFunction::self_energy_mass(double q, const QuadratureConfig& cfg) const {
    validate();
    const auto integrand = [this](double th) {
        const double t = std::tan(th);
        const double r = rho(t);
        return r * r * (1.0 + t * t);
    };
    const double whole_line =
        2.0 * detail::simpson_impl<double>(integrand, 0.0, 0.5 * pi - 1e-12, cfg);
    return q * q / (8.0 * pi * pi) * whole_line;
}

double StructureFunction::memory_kernel(double q, double t, double window,
                                        const QuadratureConfig& cfg) const {
    validate();
    if (t == 0.0) return self_energy_mass(q, cfg);
    const double at = std::fabs(t);
    const auto g = [this](double kappa) {
        const double r = rho(kappa);
        return r * r;
    };
    const double K = window;
    const double body = detail::simpson_impl<double>(
        [&](double k) { return g(k) * std::cos(k * at); }, 0.0, K, cfg);
    const double h = 1e-4 * K;
    const double gp = (g(K + h) - g(K - h)) / (2.0 * h);
    const double tail = -g(K) * std::sin(K * at) / at - gp * std::cos(K * at) / (at * at);
    return q * q / (8.0 * pi * pi) * 2.0 * (body + tail);
}

namespace {

// K1 for x <= 2: I1-coupled power series with digamma coefficients.
double k1_series(double x) {
    const double quarter = 0.25 * x * x;
    // I1(x) = (x/2) sum (x^2/4)^k / (k! (k+1)!)
    double term = 1.0, s = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= quarter / (static_cast<double>(k) * (k + 1));
        s += term;
        if (term < 1e-19 * s) break;
    }
    const double i1 = 0.5 * x * s;
    constexpr double euler_gamma = 0.57721566490153286061;
    double psi_k1 = -euler_gamma;       // psi(1)
    double psi_k2 = 1.0 - euler_gamma;  // psi(2)
    term = 1.0;
    double sum = psi_k1 + psi_k2;
    for (int k = 1; k < 64; ++k) {
        psi_k1 += 1.0 / k;
        psi_k2 += 1.0 / (k + 1);
        term *= quarter / (static_cast<double>(k) * (k + 1));
        const double add = (psi_k1 + psi_k2) * term;
        sum += add;
        if (std::fabs(add) < 1e-19 * std::fabs(sum)) break;
    }
    return std::log(0.5 * x) * i1 + 1.0 / x - 0.25 * x * sum;
}

// K1 for x > 2 via K1(x) = sqrt(pi/2x) e^-x (2/Gamma(3/2)) int_0^inf
// e^{-s^2} s^2 sqrt(1 + s^2/2x) ds, smooth after t = s^2.
double k1_laplace(double x) {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-16;
    cfg.rel_tol = 1e-14;
    const auto f = [x](double s) {
        return std::exp(-s * s) * s * s * std::sqrt(1.0 + s * s / (2.0 * x));
    };
    const double v = detail::simpson_impl<double>(f, 0.0, 9.0, cfg);
    return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * 4.0 /
           std::sqrt(std::numbers::pi) * v;
}

}  // namespace

double bessel_k1(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1: requires x > 0");
    return x <= 2.0 ? k1_series(x) : k1_laplace(x);
}

double bessel_k1_integral(double x, const QuadratureConfig& cfg) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1_integral: requires x > 0");
    // e^{-x cosh z} is dead once x cosh z > 745
    const double zmax = x < 700.0 ? std::acosh(745.0 / x) : 1.0;
    const auto f = [x](double z) { return std::cosh(z) * std::exp(-x * std::cosh(z)); };
    QuadratureConfig c = cfg;
    c.abs_tol = std::min(cfg.abs_tol, 1e-12 * std::max(1.0, 1.0 / x));
    return simpson(f, 0.0, zmax, c);
}

double density(double r, double r1) {
    if (!(r > 0.0)) throw std::domain_error("density: requires r > 0");
    if (!(r1 > 0.0)) throw std::invalid_argument("density: r1 must be > 0");
    return bessel_k1(r / r1) / (2.0 * pi * pi * r * r1 * r1);
}

double mean_radius(double r1) {
    if (!(r1 > 0.0)) throw std::invalid_argument("mean_radius: r1 must be > 0");
    return 4.0 * r1 / pi;
}

double electrostatic_mass(double q, double r1) {
    if (!(r1 > 0.0)) throw std::invalid_argument("electrostatic_mass: r1 must be > 0");
    return q * q / (8.0 * pi * r1);
}

double compton_quasi_radius(double m0, double hbar) {
    if (!(m0 > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("compton_quasi_radius: m0 and hbar must be > 0");
    return hbar / (2.0 * m0);
}

double memory_function(double t, const ParticleModel& model) {
    return model.m1 * std::exp(-std::fabs(t) / model.r1);
}

}  // namespace xcharge
