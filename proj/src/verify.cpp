// verify.cpp: self-check suite

#include "gmn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "gmn/errors.hpp"
#include "gmn/experiments.hpp"
#include "gmn/lindblad.hpp"
#include "gmn/metrics.hpp"
#include "gmn/rational.hpp"
#include "gmn/solver.hpp"

namespace gmn {

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::vector<std::string> VerifyReport::failed_names() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
        if (!c.passed) out.push_back(c.name);
    }
    return out;
}

double lambda_exp_phi_flipped(const ExpKernelParams& p, double t) {
    if (p.branch() != OmegaBranch::Real) return lambda_exp(p, t);
    const double w = std::sqrt(p.omega_squared());
    const double phi = p.phi();
    return std::exp(-t * p.decay_rate()) * std::cos(w * t - phi) / std::cos(phi);
}

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::vector<double> grid(double t_max, int n) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = t_max * i / (n - 1);
    return t;
}

template <class F>
VerifyCheck timed(const std::string& name, F&& body) {
    VerifyCheck c;
    c.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.passed = false;
        c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return c;
}

struct ExpCase {
    double gamma, b, tau_k;
};
struct ModCase {
    double gamma, tau_k, nu;
};

const std::vector<ExpCase> kExpCases = {
    {1.0, tune_B(1.0, 25.0, 1.0, 1), 25.0}, // tuned revival at T = 1
    {1.0, 5.0, 5.0},
    {1.0, 0.1, 25.0}, // imaginary omega
    {0.0, 0.3, 1.0},
    {0.2, 2.0, 0.5},
};
const std::vector<ModCase> kModCases = {{0.5, 25.0, 10.0}, {1.0, 5.0, 2.0}, {0.0, 3.0, 1.5}};

double max_sup(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

void analytic_vs(const std::string& solver, const VerifyOptions& opts, VerifyCheck& c) {
    const std::vector<double> t = grid(5.0, 101);
    double worst = 0.0;
    for (const auto& e : kExpCases) {
        const ExpKernelParams p(e.gamma, e.b, e.tau_k);
        std::vector<double> a;
        for (double x : t) a.push_back(opts.lambda_exp_impl(p, x));
        const auto n = coherence_series(solver, e.gamma, MemoryKernel(ExpDecayKernel{e.b, e.tau_k}), 3, 1, t, 0.0);
        worst = std::max(worst, max_sup(a, n));
    }
    for (const auto& m : kModCases) {
        const ModKernelParams p(m.gamma, m.tau_k, m.nu);
        std::vector<double> a;
        for (double x : t) a.push_back(lambda_modulated(p, x));
        const auto n = coherence_series(solver, m.gamma,
                                        MemoryKernel(ModulatedExpKernel{p.amplitude(), m.tau_k, m.nu}), 3, 1, t, 0.0);
        worst = std::max(worst, max_sup(a, n));
    }
    c.passed = worst < 1e-9;
    c.detail = "max |analytic - " + solver + "| = " + sci(worst) + " (tol 1e-9) over " +
               std::to_string(kExpCases.size() + kModCases.size()) + " parameter sets, 101 points on [0, 5]";
}

SuperOp random_lindbladian(Index d, int n_jumps, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    auto rand_op = [&] {
        ComplexMatrix m(d, d);
        for (Index i = 0; i < d; ++i) {
            for (Index j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
        }
        return m;
    };
    LindbladGenerator lg;
    const ComplexMatrix h = rand_op();
    lg.hamiltonian = 0.5 * (h + h.adjoint());
    std::uniform_real_distribution<double> rate(0.1, 1.0);
    for (int j = 0; j < n_jumps; ++j) lg.jumps.push_back({rand_op(), rate(rng)});
    return build_generator(lg);
}

double projector_defect(const SpectralDecomposition& s, const SuperOp& l) {
    const Index n = s.dim * s.dim;
    double worst = 0.0;
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < s.blocks.size(); ++i) {
        const ComplexMatrix& pi = s.blocks[i].projector.matrix;
        sum += pi;
        for (std::size_t j = 0; j < s.blocks.size(); ++j) {
            const ComplexMatrix& pj = s.blocks[j].projector.matrix;
            const ComplexMatrix expect = i == j ? pi : ComplexMatrix::Zero(n, n);
            worst = std::max(worst, max_abs_diff(pi * pj, expect));
        }
    }
    worst = std::max(worst, max_abs_diff(sum, ComplexMatrix::Identity(n, n)));
    worst = std::max(worst, max_abs_diff(s.reconstruct().matrix, l.matrix));
    return worst;
}

void projector_algebra(VerifyCheck& c) {
    double worst = 0.0;
    for (int n = 1; n <= 2; ++n) {
        for (int axis = 1; axis <= 3; ++axis) {
            const SuperOp l = build_generator(dephasing_generator(0.7, axis, n));
            const SpectralDecomposition s = dephasing_spectral(0.7, axis, n);
            worst = std::max(worst, projector_defect(s, l));
            const SuperOp p0 = steady_state_projector(l);
            worst = std::max(worst, (l.matrix * p0.matrix).cwiseAbs().maxCoeff());
        }
    }
    const ThermalGenerators tg = thermal_generator(1.0, 0.5, 2.0);
    const ThermalSpectral ts = thermal_spectral(1.0, 0.5);
    worst = std::max(worst, projector_defect(ts.decomposition(), tg.background));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Complex ip = (ts.left[static_cast<std::size_t>(i)] * ts.right[static_cast<std::size_t>(j)]).trace();
            worst = std::max(worst, std::abs(ip - Complex(i == j ? 1.0 : 0.0)));
        }
    }
    worst = std::max(worst, (tg.background.matrix * ts.projector(0).matrix).cwiseAbs().maxCoeff());

    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 5; ++trial) {
        const SuperOp l = random_lindbladian(2 + trial % 2, 2, rng);
        const SpectralDecomposition s = spectral_decompose(l);
        worst = std::max(worst, projector_defect(s, l));
        const SuperOp p0 = steady_state_projector(l);
        worst = std::max(worst, (l.matrix * p0.matrix).cwiseAbs().maxCoeff());
    }
    c.passed = worst < 1e-8;
    c.detail = "completeness, orthogonality, reconstruction, L0 P0 = 0, Tr[L_i R_j] = delta_ij: max defect " +
               sci(worst) + " (tol 1e-8)";
}

void volterra_convergence(VerifyCheck& c) {
    const std::vector<double> t = grid(5.0, 101);
    struct Case {
        std::string label;
        double gamma;
        MemoryKernel k;
        std::vector<double> exact;
    };
    std::vector<Case> cases;
    {
        const ExpKernelParams p(1.0, 5.0, 5.0);
        std::vector<double> ex;
        for (double x : t) ex.push_back(lambda_exp(p, x));
        cases.push_back({"exp(gamma=1,B=5,tau_k=5)", 1.0, MemoryKernel(ExpDecayKernel{5.0, 5.0}), ex});
    }
    {
        const ModKernelParams p(1.0, 5.0, 2.0);
        std::vector<double> ex;
        for (double x : t) ex.push_back(lambda_modulated(p, x));
        cases.push_back({"mod(gamma=1,tau_k=5,nu=2)", 1.0, MemoryKernel(ModulatedExpKernel{p.amplitude(), 5.0, 2.0}),
                         ex});
    }
    c.passed = true;
    for (const auto& cs : cases) {
        const double e1 = max_sup(coherence_series("volterra", cs.gamma, cs.k, 3, 1, t, 1e-3), cs.exact);
        const double e2 = max_sup(coherence_series("volterra", cs.gamma, cs.k, 3, 1, t, 2e-3), cs.exact);
        const double ratio = e2 / e1;
        const bool ok = e1 < 1e-4 && ratio >= 3.0 && ratio <= 5.0;
        c.passed = c.passed && ok;
        c.table.push_back(cs.label + ": err(dt=1e-3) = " + sci(e1) + ", err(2e-3)/err(1e-3) = " + sci(ratio));
    }
    c.detail = "err < 1e-4 at dt = 1e-3 and halving ratio in [3, 5]";
}

void monte_carlo(VerifyCheck& c) {
    const double b = 0.3;
    const double tau_k = 1.0;
    const MemoryKernel k(ExpDecayKernel{b, tau_k});
    const ComplexMatrix h = pauli(3);
    const SuperOp l0 = SuperOp::zero(2);
    // 2 h X h - {h^2, X} has eigenvalue -4 on the coherences
    const PartialFraction pf = partial_fractions(lambda_tilde(Complex(0.0), Complex(-4.0), k));
    ComplexVector plus(2);
    plus(0) = plus(1) = 1.0 / std::sqrt(2.0);
    const StochasticResult s = stochastic_average(l0, h, k, QuantumState::pure(plus), 1e-2, tau_k, 4000,
                                                  0x9e3779b97f4a7c15ULL, pauli(1));
    c.passed = true;
    double worst = 0.0;
    c.table.push_back("t,mean,stderr,kernel_me");
    for (std::size_t i = 0; i < s.mean.times.size(); i += 10) {
        const double t = s.mean.times[i];
        const double ref = pf_eval_time(pf, t).real();
        const double m = s.observable_mean[i];
        const double se = s.observable_stderr[i];
        const double gap = std::abs(m - ref);
        worst = std::max(worst, gap);
        if (gap >= std::max(3.0 * se, 0.02)) c.passed = false;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.2f,%.6f,%.6f,%.6f", t, m, se, ref);
        c.table.push_back(buf);
    }
    c.detail = "4000 trajectories, B = 0.3, tau_k = 1, h = sigma_3: max |mean - kernel ME| = " + sci(worst) +
               " (bound max(3 stderr, 0.02))";
}

void choi_scan(VerifyCheck& c) {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t n = 0;
    const std::vector<double> ts = grid(10.0, 26);
    for (int ig = 0; ig < 6; ++ig) {
        for (int ib = 0; ib < 6; ++ib) {
            for (int it = 0; it < 6; ++it) {
                const ExpKernelParams p(0.4 * ig, 2.0 * ib, 0.1 + 10.0 * it);
                for (double t : ts) {
                    const CPReport r = cp_check(pauli_channel(lambda_exp(p, t), 3, 1));
                    worst = std::min(worst, r.min_choi_eigenvalue);
                    ++n;
                }
            }
        }
    }
    const ThermalGenerators tg = thermal_generator(1.0, 0.5, 2.0);
    const ThermalSpectral th = thermal_spectral(1.0, 0.5);
    const SpectralDecomposition spec = th.decomposition();
    const std::vector<Complex> mu = block_eigenvalues(spec, tg.dephasing);
    const MemoryKernel k(ExpDecayKernel{1.0, 5.0});
    for (int i = 1; i <= 100; ++i) {
        const CPReport r = cp_check(assemble_propagator(spec, mu, k, 0.1 * i));
        worst = std::min(worst, r.min_choi_eigenvalue);
        ++n;
    }
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 4; ++trial) {
        const SuperOp l = random_lindbladian(2 + trial % 2, 2, rng);
        for (double t : {0.1, 1.0, 10.0}) {
            worst = std::min(worst, cp_check(evolve_markov(l, t)).min_choi_eigenvalue);
            ++n;
        }
    }
    c.passed = worst >= -1e-10;
    c.detail = std::to_string(n) + " Choi matrices (exponential-kernel Pauli grid, thermal model, Lindblad): min "
               "eigenvalue " + sci(worst) + " (tol -1e-10)";
}

} // namespace

VerifyReport run_verify(VerifyLevel level, const VerifyOptions& opts) {
    VerifyReport r;
    r.checks.push_back(timed("analytic-vs-embedded", [&](VerifyCheck& c) { analytic_vs("embedded", opts, c); }));
    r.checks.push_back(timed("analytic-vs-laplace", [&](VerifyCheck& c) { analytic_vs("laplace", opts, c); }));
    r.checks.push_back(timed("projector-algebra", projector_algebra));
    if (level == VerifyLevel::Full) {
        r.checks.push_back(timed("volterra-convergence", volterra_convergence));
        r.checks.push_back(timed("monte-carlo-weak-coupling", monte_carlo));
        r.checks.push_back(timed("choi-scan", choi_scan));
    }
    return r;
}

void print_report(const VerifyReport& r, std::ostream& out) {
    for (const auto& c : r.checks) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2fs", c.seconds);
        out << (c.passed ? "PASS " : "FAIL ") << c.name << " [" << buf << "] " << c.detail << '\n';
        for (const auto& line : c.table) out << "    " << line << '\n';
    }
    out << (r.passed() ? "verify: all checks passed" : "verify: FAILED") << '\n';
}

} // namespace gmn
