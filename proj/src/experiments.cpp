// experiments.cpp: figure data tables and CSV writer

#include "gmn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "gmn/channels.hpp"
#include "gmn/errors.hpp"
#include "gmn/lindblad.hpp"
#include "gmn/metrics.hpp"
#include "gmn/rational.hpp"
#include "gmn/solver.hpp"

namespace gmn {

void check_table(const ResultTable& t) {
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size()) throw InvalidArgument("result table is not rectangular");
    }
    if (t.time_ordered) {
        for (std::size_t i = 1; i < t.rows.size(); ++i) {
            if (!(t.rows[i][0] > t.rows[i - 1][0])) {
                throw InvalidArgument("result table: time column is not strictly increasing");
            }
        }
    }
}

void write_csv(const ResultTable& t, std::ostream& out) {
    check_table(t);
    for (const auto& line : t.header) out << "# " << line << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    char buf[64];
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << '\n';
    }
}

std::string to_csv(const ResultTable& t) {
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

DephasingPair dephasing_pair(double gamma, int axis, int qubits) {
    return {build_generator(dephasing_generator(gamma, axis, qubits)),
            build_generator(dephasing_generator(0.5, axis, qubits))};
}

ComplexMatrix coherence_probe(int axis, int qubits) {
    if (axis < 1 || axis > 3) throw InvalidArgument("coherence_probe: axis must be 1, 2 or 3");
    std::vector<int> idx(static_cast<std::size_t>(qubits), 0);
    idx[0] = axis % 3 + 1;
    return pauli_string(PauliString(idx));
}

double coherence_factor(const SuperOp& phi, int axis, int qubits) {
    const ComplexMatrix p = coherence_probe(axis, qubits);
    return (p * phi.apply(p)).trace().real() / static_cast<double>(p.rows());
}

double interpolate(const std::vector<double>& ts, const std::vector<double>& ys, double t) {
    if (ts.empty() || ts.size() != ys.size()) throw InvalidArgument("interpolate: bad samples");
    if (t <= ts.front()) return ys.front();
    if (t >= ts.back()) return ys.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - ts.begin());
    const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
    return (1.0 - w) * ys[i - 1] + w * ys[i];
}

std::vector<double> coherence_series(const std::string& solver, double gamma, const MemoryKernel& k,
                                     int axis, int qubits, const std::vector<double>& times, double dt) {
    std::vector<double> out;
    out.reserve(times.size());
    if (solver == "laplace") {
        const PartialFraction pf = partial_fractions(lambda_tilde(Complex(-2.0 * gamma), Complex(-1.0), k));
        for (double t : times) out.push_back(pf_eval_time(pf, t).real());
    } else if (solver == "embedded") {
        const DephasingPair g = dephasing_pair(gamma, axis, qubits);
        for (double t : times) out.push_back(coherence_factor(embedded_propagator(g.l0, g.l1, k, t), axis, qubits));
    } else if (solver == "volterra") {
        const DephasingPair g = dephasing_pair(gamma, axis, qubits);
        const ComplexMatrix p = coherence_probe(axis, qubits);
        const double dim = static_cast<double>(p.rows());
        const ComplexMatrix rho0 = (ComplexMatrix::Identity(p.rows(), p.cols()) + p) / dim;
        const double horizon = times.empty() ? 0.0 : *std::max_element(times.begin(), times.end());
        const Trajectory tr = volterra_solve(g.l0, g.l1, k, QuantumState::from_matrix(rho0), dt, horizon);
        std::vector<double> lam;
        lam.reserve(tr.states.size());
        for (const auto& s : tr.states) lam.push_back((p * s).trace().real());
        for (double t : times) out.push_back(interpolate(tr.times, lam, t));
    } else {
        throw InvalidArgument("coherence_series: unknown solver '" + solver + "'");
    }
    return out;
}

namespace {

std::vector<std::string> header_for(const ExperimentConfig& c, const std::vector<std::string>& extra) {
    std::vector<std::string> h;
    h.push_back(std::string("gmn ") + version());
    h.push_back("config " + to_json(c).dump());
    for (const auto& e : extra) h.push_back(e);
    return h;
}

std::string fmt(const char* name, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s = %.17g", name, v);
    return buf;
}

std::vector<double> time_grid(const ExperimentConfig& c) {
    std::vector<double> t(static_cast<std::size_t>(c.points));
    for (int i = 0; i < c.points; ++i) {
        t[static_cast<std::size_t>(i)] = c.t_max * static_cast<double>(i) / static_cast<double>(c.points - 1);
    }
    return t;
}

// Figure time is in units of 1/gamma; gamma = 0 falls back to plain time.
double time_unit(double rate) {
    return rate > 0.0 ? 1.0 / rate : 1.0;
}

std::vector<double> scaled(const std::vector<double>& t, double unit) {
    std::vector<double> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i] * unit;
    return out;
}

std::vector<double> exp_coherence(const ExperimentConfig& c, const std::vector<double>& tp) {
    const double b = c.resolved_amplitude();
    if (c.solver == "analytic") {
        const ExpKernelParams p(c.gamma, b, c.tau_k);
        std::vector<double> out;
        for (double t : tp) out.push_back(lambda_exp(p, t));
        return out;
    }
    return coherence_series(c.solver, c.gamma, MemoryKernel(ExpDecayKernel{b, c.tau_k}), c.axis, c.qubits, tp, c.dt);
}

ResultTable fig1(const ExperimentConfig& c) {
    const double unit = time_unit(c.gamma);
    const std::vector<double> t = time_grid(c);
    const std::vector<double> tp = scaled(t, unit);
    const ExpKernelParams p(c.gamma, c.resolved_amplitude(), c.tau_k);
    const double g_eff = effective_gamma_exp(p);
    const std::vector<double> lam = exp_coherence(c, tp);

    ResultTable r;
    r.columns = {"t", "f_background", "f_combined", "f_rescaled"};
    r.header = header_for(c, {fmt("B", p.amplitude()), fmt("gamma_eff", g_eff),
                              "f = (1 + Lambda) / 2; t in units of 1/gamma"});
    for (std::size_t i = 0; i < t.size(); ++i) {
        r.rows.push_back({t[i], 0.5 * (1.0 + std::exp(-2.0 * c.gamma * tp[i])), 0.5 * (1.0 + lam[i]),
                          0.5 * (1.0 + std::exp(-2.0 * g_eff * tp[i]))});
    }
    return r;
}

ResultTable fig2(const ExperimentConfig& c) {
    using std::numbers::pi;
    const double tp = c.t_max * time_unit(c.gamma);
    const double lam = exp_coherence(c, {tp}).front();
    const double lam0 = std::exp(-2.0 * c.gamma * tp);
    const double p0 = 0.5 * (1.0 - lam0);
    const double p = 0.5 * (1.0 - lam);
    const ComplexMatrix a = pauli(c.axis);

    ResultTable r;
    r.time_ordered = false;
    r.columns = {"theta", "phi", "delta_F", "p0", "p"};
    r.header = header_for(c, {fmt("T", c.t_max), fmt("B", c.resolved_amplitude()), fmt("p0", p0), fmt("p", p),
                              "delta_F = F - F0 for |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>"});
    for (int ia = 0; ia < c.grid; ++ia) {
        const double theta = pi * ia / (c.grid - 1);
        for (int ib = 0; ib < c.grid; ++ib) {
            const double ph = 2.0 * pi * ib / c.grid;
            ComplexVector psi(2);
            psi(0) = std::cos(0.5 * theta);
            psi(1) = std::polar(std::sin(0.5 * theta), ph);
            // F = 1 - p (1 - <A>^2)
            const double ex = (psi.adjoint() * a * psi)(0, 0).real();
            const double f = 1.0 - p * (1.0 - ex * ex);
            const double f0 = 1.0 - p0 * (1.0 - ex * ex);
            r.rows.push_back({theta, ph, f - f0, p0, p});
        }
    }
    return r;
}

ResultTable fig3(const ExperimentConfig& c) {
    const double unit = time_unit(c.gamma);
    const std::vector<double> t = time_grid(c);
    const std::vector<double> tp = scaled(t, unit);
    const std::vector<double> lam = exp_coherence(c, tp);

    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix rho = bell * bell.adjoint();
    const ComplexMatrix zz = kron(ComplexMatrix::Identity(2, 2), pauli(3));
    auto evolved = [&](double l) {
        const double p = 0.5 * (1.0 - l);
        return ComplexMatrix((1.0 - p) * rho + p * zz * rho * zz);
    };

    ResultTable r;
    r.columns = {"t", "C_background", "C_combined"};
    r.header = header_for(c, {fmt("B", c.resolved_amplitude()),
                              "Bell state, z-dephasing on the second qubit; t in units of 1/gamma"});
    for (std::size_t i = 0; i < t.size(); ++i) {
        r.rows.push_back({t[i], concurrence(evolved(std::exp(-2.0 * c.gamma * tp[i]))), concurrence(evolved(lam[i]))});
    }
    return r;
}

ResultTable fig4(const ExperimentConfig& c) {
    const double unit = time_unit(c.gamma);
    const std::vector<double> t = time_grid(c);
    const std::vector<double> tp = scaled(t, unit);
    const ModKernelParams p(c.gamma, c.tau_k, c.nu);
    const double g_eff = effective_gamma_mod(p);
    std::vector<double> lam;
    if (c.solver == "analytic") {
        for (double x : tp) lam.push_back(lambda_modulated(p, x));
    } else {
        lam = coherence_series(c.solver, c.gamma, MemoryKernel(ModulatedExpKernel{p.amplitude(), c.tau_k, c.nu}),
                               c.axis, c.qubits, tp, c.dt);
    }

    ResultTable r;
    r.columns = {"t", "f_background", "f_combined", "f_rescaled"};
    r.header = header_for(c, {fmt("B", p.amplitude()), fmt("omega", p.omega()), fmt("c0", p.c0()),
                              fmt("gamma_eff", g_eff), "f = (1 + Lambda) / 2; t in units of 1/gamma"});
    for (std::size_t i = 0; i < t.size(); ++i) {
        r.rows.push_back({t[i], 0.5 * (1.0 + std::exp(-2.0 * c.gamma * tp[i])), 0.5 * (1.0 + lam[i]),
                          0.5 * (1.0 + std::exp(-2.0 * g_eff * tp[i]))});
    }
    return r;
}

ResultTable fig5(const ExperimentConfig& c) {
    const double unit = time_unit(c.gamma_minus);
    const std::vector<double> t = time_grid(c);
    const std::vector<double> tp = scaled(t, unit);
    const double b = c.resolved_amplitude();
    const MemoryKernel k(ExpDecayKernel{b, c.tau_k});

    const ThermalGenerators gens = thermal_generator(c.gamma_minus, c.gamma_plus, c.gamma_z);
    const ThermalSpectral ts = thermal_spectral(c.gamma_minus, c.gamma_plus);
    const SpectralDecomposition spec = ts.decomposition();
    const SuperOp p0 = ts.projector(0);

    ComplexVector psi(2);
    psi(0) = psi(1) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix rho0 = psi * psi.adjoint();
    auto overlap = [&](const ComplexMatrix& rho) { return (psi.adjoint() * rho * psi)(0, 0).real(); };
    const ComplexMatrix steady = p0.apply(rho0);

    std::vector<ComplexMatrix> states;
    if (c.solver == "laplace") {
        const std::vector<Complex> mu = block_eigenvalues(spec, gens.dephasing);
        for (double x : tp) states.push_back(assemble_propagator(spec, mu, k, x).apply(rho0));
    } else if (c.solver == "embedded") {
        for (double x : tp) states.push_back(embedded_propagator(gens.background, gens.dephasing, k, x).apply(rho0));
    } else {
        const Trajectory tr =
            volterra_solve(gens.background, gens.dephasing, k, QuantumState::from_matrix(rho0), c.dt, tp.back());
        for (double x : tp) {
            // componentwise interpolation of the density matrix
            const auto it = std::upper_bound(tr.times.begin(), tr.times.end(), x);
            std::size_t i = static_cast<std::size_t>(it - tr.times.begin());
            if (i == 0) i = 1;
            if (i >= tr.times.size()) {
                states.push_back(tr.states.back());
                continue;
            }
            const double w = (x - tr.times[i - 1]) / (tr.times[i] - tr.times[i - 1]);
            states.push_back((1.0 - w) * tr.states[i - 1] + w * tr.states[i]);
        }
    }

    ResultTable r;
    r.columns = {"t", "F_background", "F_combined", "dist_to_steady"};
    r.header = header_for(c, {"rho0 = |+><+|; F = <psi0|rho(t)|psi0>; dist = max singular value of rho(t) - P0 rho0",
                              "t in units of 1/gamma_minus"});
    for (std::size_t i = 0; i < t.size(); ++i) {
        SuperOp bg = SuperOp::zero(2);
        for (const auto& blk : spec.blocks) bg = bg + blk.projector * std::exp(blk.eigenvalue * tp[i]);
        r.rows.push_back({t[i], overlap(bg.apply(rho0)), overlap(states[i]), op_distance(states[i], steady)});
    }
    return r;
}

ResultTable custom(const ExperimentConfig& c) {
    const double unit = time_unit(c.gamma);
    const std::vector<double> t = time_grid(c);
    const std::vector<double> tp = scaled(t, unit);
    const double b = c.resolved_amplitude();
    ResultTable r;
    r.header = header_for(c, {fmt("B", b), "Lambda on the decaying block; p = (1 - Lambda) / 2; t in units of 1/gamma"});

    if (c.solver == "stochastic") {
        if (c.kernel != "exp") throw ConfigError("solver 'stochastic' needs kernel 'exp'");
        const DephasingPair g = dephasing_pair(c.gamma, c.axis, c.qubits);
        const ComplexMatrix probe = coherence_probe(c.axis, c.qubits);
        const double dim = static_cast<double>(probe.rows());
        const ComplexMatrix rho0 = (ComplexMatrix::Identity(probe.rows(), probe.cols()) + probe) / dim;
        // (A X A - X)/2 is the averaged generator of h = A/2
        const ComplexMatrix h = 0.5 * pauli_power(c.axis, c.qubits);
        const StochasticResult s = stochastic_average(g.l0, h, MemoryKernel(ExpDecayKernel{b, c.tau_k}),
                                                      QuantumState::from_matrix(rho0), c.dt, tp.back(),
                                                      c.trajectories, c.seed, probe);
        r.columns = {"t", "lambda", "lambda_stderr", "f", "p"};
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double lam = interpolate(s.mean.times, s.observable_mean, tp[i]);
            const double err = interpolate(s.mean.times, s.observable_stderr, tp[i]);
            r.rows.push_back({t[i], lam, err, 0.5 * (1.0 + lam), 0.5 * (1.0 - lam)});
        }
        return r;
    }

    std::vector<double> lam;
    if (c.kernel == "exp") {
        lam = exp_coherence(c, tp);
    } else {
        if (c.solver == "analytic") {
            throw ConfigError("kernel 'modulated' with a free B has no closed form; use laplace, embedded or volterra");
        }
        lam = coherence_series(c.solver, c.gamma, MemoryKernel(ModulatedExpKernel{b, c.tau_k, c.nu}), c.axis,
                               c.qubits, tp, c.dt);
    }
    r.columns = {"t", "lambda", "f", "p"};
    for (std::size_t i = 0; i < t.size(); ++i) {
        r.rows.push_back({t[i], lam[i], 0.5 * (1.0 + lam[i]), 0.5 * (1.0 - lam[i])});
    }
    return r;
}

} // namespace

ResultTable run_experiment(const ExperimentConfig& c) {
    ResultTable r;
    if (c.experiment == "fig1") r = fig1(c);
    else if (c.experiment == "fig2") r = fig2(c);
    else if (c.experiment == "fig3") r = fig3(c);
    else if (c.experiment == "fig4") r = fig4(c);
    else if (c.experiment == "fig5") r = fig5(c);
    else if (c.experiment == "custom") r = custom(c);
    else throw ConfigError("unknown experiment '" + c.experiment + "'");
    check_table(r);
    return r;
}

} // namespace gmn
