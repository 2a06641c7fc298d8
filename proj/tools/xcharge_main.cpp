// xcharge: tables and figure data for the extended-charge equation of motion.
// Output is CSV (full precision, deterministic) or JSON; all computations run
// in natural units c = eps0 = mu0 = 1 except `critical-field`, which is SI.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "xcharge/balance.hpp"
#include "xcharge/hyperbolic.hpp"
#include "xcharge/lorentz_dirac.hpp"
#include "xcharge/magnetic.hpp"
#include "xcharge/minkowski.hpp"
#include "xcharge/particle.hpp"
#include "xcharge/selfforce.hpp"
#include "xcharge/table.hpp"

using json = nlohmann::json;
using namespace xcharge;

namespace {

struct OutputOptions {
    std::string path = "-";
    std::string format = "csv";
};

struct ModelOptions {
    std::string config_path;
    std::optional<double> q, m_inf, r1;

    ParticleModel resolve() const {
        double vq = 1.0, vm = 1.0, vr = 1.0;
        if (!config_path.empty()) {
            const ParticleModel m = ParticleModel::from_config_file(config_path);
            vq = m.q;
            vm = m.m_inf;
            vr = m.r1;
        }
        if (q) vq = *q;
        if (m_inf) vm = *m_inf;
        if (r1) vr = *r1;
        const StabilityReport rep = stability_check(vq, vm, vr);
        if (!rep.stable) throw std::invalid_argument("model rejected: " + rep.diagnostic);
        return ParticleModel(vq, vm, vr);
    }
};

void emit(const OutputOptions& out, const std::string& command, const Table& table,
          const json& extras, const std::vector<std::string>& report) {
    std::ofstream file;
    const bool to_stdout = out.path == "-" || out.path.empty();
    if (!to_stdout) {
        file.open(out.path);
        if (!file) throw std::runtime_error("cannot open output file " + out.path);
    }
    std::ostream& os = to_stdout ? std::cout : file;
    if (out.format == "json") {
        json j;
        j["command"] = command;
        j["columns"] = table.columns;
        j["rows"] = table.rows;
        bool any_status = false;
        for (const auto& s : table.status)
            if (!s.empty()) any_status = true;
        if (any_status) {
            auto st = table.status;
            for (auto& s : st)
                if (s.empty()) s = "ok";
            j["status"] = st;
        }
        for (auto& [k, v] : extras.items()) j[k] = v;
        if (!report.empty()) j["report"] = report;
        os << j.dump(2) << '\n';
    } else {
        table.write_csv(os);
        // keep the CSV stream clean: the report goes to stderr when the
        // table itself is on stdout
        std::ostream& ros = to_stdout ? std::cerr : std::cout;
        for (const auto& line : report) ros << line << '\n';
    }
}

std::string sanitize(std::string msg) {
    for (auto& c : msg)
        if (c == ',' || c == '\n') c = ';';
    return msg;
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2) return {lo};
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
    return v;
}

int run_table1(const ModelOptions&, const OutputOptions& out, const std::vector<double>& deltas) {
    Table t;
    t.columns = {"delta", "Delta", "mu_r", "mu_r_approx"};
    for (const double d : deltas) {
        try {
            t.add_row({d, delta_fn(d), mu_r(d), mu_r_approx(d)});
        } catch (const std::exception& e) {
            t.add_row({d, 0.0, 0.0, 0.0}, sanitize(e.what()));
        }
    }
    emit(out, "table1", t, {}, {});
    return 0;
}

int run_curves(const ModelOptions& mopt, const OutputOptions& out, const std::string& which,
               double lo, double hi, int count, std::vector<double> mu1s,
               std::vector<double> bs) {
    if (!(lo <= hi)) throw CLI::ValidationError("curves", "--min must not exceed --max");
    if (mu1s.empty() || bs.empty())
        throw CLI::ValidationError("curves", "family grids must be non-empty");
    Table t;
    if (which == "balance") {
        const ParticleModel model = mopt.resolve();
        t.columns = {"f", "f_inf", "f_s", "f_r"};
        for (const double f : linspace(lo, hi, count)) {
            const FieldStrengths fs = field_strengths(f * model.r1, model);
            t.add_row({fs.f, fs.f_inf, fs.f_s, fs.f_r});
        }
    } else if (which == "mass") {
        t.columns = {"mu1", "delta0", "mu"};
        for (const double mu1 : mu1s)
            for (const double d0 : linspace(lo, hi, count))
                t.add_row({mu1, d0, effective_mass_ratio(d0, mu1)});
    } else if (which == "delta") {
        const ParticleModel model = mopt.resolve();
        t.columns = {"mu1", "f", "f0"};
        for (const double mu1 : mu1s)
            for (const double f : linspace(lo, hi, count))
                t.add_row({mu1, f, f * (1.0 - mu1 * mu_r(f * model.r1))});
    } else if (which == "omega") {
        t.columns = {"mu1", "b", "Omega_r", "Omega_i"};
        for (const double mu1 : mu1s)
            for (const double b : bs) {
                const ComplexFrequency w = omega_solve(mu1, b);
                if (!w.closed_form_valid)
                    std::cerr << "note: mu1 = " << mu1
                              << " lies outside the closed form's validity; direct root used\n";
                t.add_row({mu1, b, w.Omega.real(), w.Omega.imag()});
            }
    } else {
        throw CLI::ValidationError("--which must be one of balance|mass|delta|omega");
    }
    emit(out, "curves-" + which, t, {}, {});
    return 0;
}

int run_hyperbola(const OutputOptions& out, double f, double tau_max, int grid_n, int iters) {
    const PicardResult res = picard_iterate(f, tau_max, grid_n, iters);
    const PicardResult res2 = picard_iterate(f, tau_max, 2 * grid_n, iters);

    Table t;
    t.columns = {"tau", "t", "x", "u0", "u1"};
    const SampledWorldline& w = res.iterates.back();
    for (std::size_t j = 0; j < w.tau.size(); ++j)
        t.add_row({w.tau[j], w.z[j].t, w.z[j].x, w.u[j].t, w.u[j].x});

    std::vector<std::string> report;
    for (std::size_t k = 0; k < res.iterate_change.size(); ++k) {
        std::ostringstream line;
        line << "iteration " << k + 1 << ": change " << format_number(res.iterate_change[k])
             << ", distance to closed form " << format_number(res.distance_to_closed_form[k]);
        report.push_back(line.str());
    }
    {
        std::ostringstream line;
        line << (res.converged ? "converged" : "not converged") << " after "
             << res.iterates.size() << " iterations; contraction factor "
             << format_number(res.contraction);
        report.push_back(line.str());
        std::ostringstream grid;
        grid << "grid error (final distance, n vs 2n): "
             << format_number(res.distance_to_closed_form.back()) << " vs "
             << format_number(res2.distance_to_closed_form.back());
        report.push_back(grid.str());
    }
    json extras;
    extras["converged"] = res.converged;
    extras["iterations"] = res.iterates.size();
    extras["contraction"] = res.contraction;
    extras["distance_to_closed_form"] = res.distance_to_closed_form;
    extras["iterate_change"] = res.iterate_change;
    emit(out, "hyperbola", t, extras, report);
    return 0;
}

int run_spiral(const ModelOptions& mopt, const OutputOptions& out, double B_e, double u0,
               double tau_max, int steps) {
    const ParticleModel model = mopt.resolve();
    if (u0 >= 0.1)
        std::cerr << "note: u0 = " << u0 << " strains the nonrelativistic approximation\n";
    const double omega0 = model.q * B_e / model.m0;
    const ComplexFrequency freq = omega_solve(model.mu1, model.r0 * omega0, omega0);
    if (!freq.closed_form_valid)
        std::cerr << "note: mu1 = " << model.mu1
                  << " lies outside the closed form's validity; direct root used\n";
    const double qB = model.q * B_e;
    const auto F_e = [qB](double, cplx u) { return cplx(0.0, 1.0) * qB * u; };
    const auto traj =
        memory_ode_solve(F_e, MemoryOdeParams(model), cplx(u0, 0.0), {0.0, tau_max}, steps);

    Table t;
    t.columns = {"tau", "x", "y", "ux", "uy", "x_closed", "y_closed", "deviation", "W0"};
    for (const ComplexMotionState& s : traj) {
        const cplx zc = spiral(s.tau, cplx(u0, 0.0), freq.omega);
        t.add_row({s.tau, s.z.real(), s.z.imag(), s.u.real(), s.u.imag(), zc.real(), zc.imag(),
                   std::abs(s.z - zc), total_energy(s.tau, u0, model, freq)});
    }
    json extras;
    const cplx z_inf =
        freq.omega == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : cplx(0.0, 1.0) * cplx(u0, 0.0) / freq.omega;
    extras["omega"] = {{"re", freq.omega.real()}, {"im", freq.omega.imag()}};
    extras["Omega"] = {{"re", freq.Omega.real()}, {"im", freq.Omega.imag()}};
    extras["b"] = freq.b;
    extras["z_inf"] = {{"re", z_inf.real()}, {"im", z_inf.imag()}};
    std::vector<std::string> report;
    {
        std::ostringstream line;
        line << "omega = " << format_number(freq.omega.real()) << " + "
             << format_number(freq.omega.imag()) << " i, z_inf = " << format_number(z_inf.real())
             << " + " << format_number(z_inf.imag()) << " i";
        report.push_back(line.str());
    }
    emit(out, "spiral", t, extras, report);
    return 0;
}

int run_compare_ld(const ModelOptions& mopt, const OutputOptions& out,
                   const std::vector<double>& deltas) {
    const ParticleModel model = mopt.resolve();
    Table t;
    t.columns = {"delta", "Fs_extended", "Fs_LD_linear", "ratio"};
    for (const auto& row : compare_selfforce(deltas, model))
        t.add_row({row.delta, row.Fs_extended, row.Fs_ld_linear, row.ratio});
    emit(out, "compare-ld", t, {}, {});
    return 0;
}

int run_critical_field(const OutputOptions& out, double q_SI, double m0_SI, double delta) {
    const CriticalField cf = critical_field(q_SI, m0_SI, delta);
    Table t;
    t.columns = {"E_V_per_m", "accel_m_per_s2"};
    t.add_row({cf.field_V_per_m, cf.accel_m_per_s2});
    json extras;
    extras["q_SI"] = q_SI;
    extras["m0_SI"] = m0_SI;
    extras["delta"] = delta;
    emit(out, "critical-field", t, extras, {});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extended-charge self-force tables and trajectories"};
    app.require_subcommand(1);
    app.fallthrough();  // --out/--format/--config may follow the subcommand

    OutputOptions out;
    ModelOptions mopt;
    app.add_option("--config", mopt.config_path, "flat key=value model config (q, m_inf, r1)");
    app.add_option("--out", out.path, "output path ('-' for stdout)");
    app.add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--q", mopt.q, "charge (overrides config)");
    app.add_option("--m-inf", mopt.m_inf, "bare mass (overrides config)");
    app.add_option("--r1", mopt.r1, "quasi-radius (overrides config)");

    // table1
    auto* c_table = app.add_subcommand("table1", "Delta / mu_r / mu_r~ rows on a delta grid");
    std::vector<double> deltas{0.0, 0.1, 0.2, 0.5, 1.0, 5.0, 10.0, 100.0};
    c_table->add_option("--deltas", deltas, "delta grid");

    // curves
    auto* c_curves = app.add_subcommand("curves", "field-strength / mass / frequency curves");
    std::string which;
    double lo = 0.0, hi = 10.0;
    int count = 101;
    std::vector<double> mu1s{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45};
    std::vector<double> bs{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    c_curves->add_option("--which", which, "balance | mass | delta | omega")->required();
    c_curves->add_option("--min", lo, "grid start");
    c_curves->add_option("--max", hi, "grid end");
    c_curves->add_option("--count", count, "grid size")->check(CLI::PositiveNumber);
    c_curves->add_option("--mu1s", mu1s, "mu1 family values");
    c_curves->add_option("--bs", bs, "b values (omega curves)");

    // hyperbola
    auto* c_hyp = app.add_subcommand("hyperbola", "Picard iteration of the worldline");
    double f = 1.0, tau_max = 1.0;
    int grid_n = 4096, iters = 25;
    c_hyp->add_option("--f", f, "effective field strength");
    c_hyp->add_option("--tau-max", tau_max, "proper-time span")->check(CLI::PositiveNumber);
    c_hyp->add_option("--grid-n", grid_n, "grid intervals");
    c_hyp->add_option("--iters", iters, "maximum iterations");

    // spiral
    auto* c_spiral = app.add_subcommand("spiral", "magnetic spiral, closed form vs memory ODE");
    double B_e = 1.0, u0 = 0.05, s_tau_max = 200.0;
    int steps = 20000;
    c_spiral->add_option("--B", B_e, "magnetic field strength");
    c_spiral->add_option("--u0", u0, "initial speed");
    c_spiral->add_option("--tau-max", s_tau_max, "proper-time span")->check(CLI::PositiveNumber);
    c_spiral->add_option("--steps", steps, "integration steps")->check(CLI::PositiveNumber);

    // compare-ld
    auto* c_ld = app.add_subcommand("compare-ld", "extended self-force vs point-charge baseline");
    std::vector<double> ld_deltas{0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0};
    c_ld->add_option("--deltas", ld_deltas, "delta grid");

    // critical-field
    auto* c_crit = app.add_subcommand("critical-field", "SI field/acceleration at delta target");
    double q_SI = 1.602176634e-19, m0_SI = 9.1093837015e-31, delta_target = 0.1;
    c_crit->add_option("--q-si", q_SI, "charge in C");
    c_crit->add_option("--m0-si", m0_SI, "mass in kg");
    c_crit->add_option("--delta", delta_target, "dimensionless acceleration target");

    try {
        app.parse(argc, argv);
        if (*c_table) return run_table1(mopt, out, deltas);
        if (*c_curves) return run_curves(mopt, out, which, lo, hi, count, mu1s, bs);
        if (*c_hyp) return run_hyperbola(out, f, tau_max, grid_n, iters);
        if (*c_spiral) return run_spiral(mopt, out, B_e, u0, s_tau_max, steps);
        if (*c_ld) return run_compare_ld(mopt, out, ld_deltas);
        if (*c_crit) return run_critical_field(out, q_SI, m0_SI, delta_target);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NumericsError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}
