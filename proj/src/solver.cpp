// solver.cpp: Laplace assembly, embedding, Volterra stepping, stochastic average

#include "gmn/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "gmn/errors.hpp"

namespace gmn {

RationalFn lambda_tilde(Complex lambda, Complex mu, const MemoryKernel& k) {
    const KernelLaplace kl = to_rational(k);
    const Polynomial s_minus_lambda = Polynomial::monomial_root(lambda);
    RationalFn r{kl.denominator, s_minus_lambda * kl.denominator - kl.numerator * mu};
    return reduce(r);
}

SuperOp assemble_propagator(const SpectralDecomposition& spec0, const std::vector<Complex>& mu,
                            const MemoryKernel& k, double t) {
    if (mu.size() != spec0.blocks.size()) {
        throw DimensionMismatch("assemble_propagator: need one L1 eigenvalue per block");
    }
    if (t < 0.0) throw InvalidArgument("assemble_propagator: t must be >= 0");
    SuperOp phi = SuperOp::zero(spec0.dim);
    for (std::size_t i = 0; i < spec0.blocks.size(); ++i) {
        const SpectralBlock& block = spec0.blocks[i];
        const RationalFn lt = lambda_tilde(block.eigenvalue, mu[i], k);
        phi = phi + block.projector * pf_eval_time(partial_fractions(lt), t);
        if (!block.nilpotent) continue;
        SuperOp d_power = *block.nilpotent;
        for (int n = 1; n < block.nilpotency_index; ++n) {
            const RationalFn lt_pow = reduce(power(lt, n + 1));
            phi = phi + d_power * pf_eval_time(partial_fractions(lt_pow), t);
            d_power = d_power * *block.nilpotent;
        }
    }
    return phi;
}

std::string to_string(SolverMethod m) {
    switch (m) {
    case SolverMethod::Laplace: return "laplace";
    case SolverMethod::Embedded: return "embedded";
    case SolverMethod::Volterra: return "volterra";
    case SolverMethod::Stochastic: return "stochastic";
    }
    return "unknown";
}

namespace {

double spectral_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

// Slowest memory time of the kernel, used by the step-size precondition.
double kernel_memory_time(const MemoryKernel& k) {
    if (const auto* e = k.get_if<ExpDecayKernel>()) return e->memory_time;
    if (const auto* m = k.get_if<ModulatedExpKernel>()) return m->memory_time;
    if (const auto* r = k.get_if<RationalKernel>()) {
        double fastest = 0.0;
        for (const Complex& z : Polynomial::from_real(r->denominator).roots()) {
            fastest = std::max(fastest, std::abs(z));
        }
        return fastest > 0.0 ? 1.0 / fastest : std::numeric_limits<double>::infinity();
    }
    throw Unsupported("volterra_solve: the delta kernel has no memory to integrate");
}

std::size_t grid_steps(double dt, double horizon) {
    if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
    if (horizon < 0.0) throw InvalidArgument("horizon must be >= 0");
    return static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
}

void check_state_dim(const SuperOp& l0, const SuperOp& l1, const QuantumState& rho0) {
    if (l0.dim != l1.dim || l0.dim != rho0.dim()) {
        throw DimensionMismatch("solver: L0, L1 and rho0 must share the system dimension");
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Trajectory volterra_solve(const SuperOp& l0, const SuperOp& l1, const MemoryKernel& k,
                          const QuantumState& rho0, double dt, double horizon) {
    check_state_dim(l0, l1, rho0);
    const double tau = kernel_memory_time(k);
    const double n0 = spectral_norm(l0.matrix);
    const double n1 = spectral_norm(l1.matrix);
    double limit = tau;
    if (n0 > 0.0) limit = std::min(limit, 1.0 / n0);
    if (n1 > 0.0) limit = std::min(limit, 1.0 / n1);
    if (dt > limit / 20.0) {
        throw StepTooLarge("volterra_solve: dt = " + std::to_string(dt) + " exceeds " +
                           std::to_string(limit / 20.0));
    }

    const std::size_t steps = grid_steps(dt, horizon);
    const double h = steps > 0 ? horizon / static_cast<double>(steps) : dt;
    std::vector<double> kv(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) kv[j] = eval_time(k, static_cast<double>(j) * h);

    const Index d = rho0.dim();
    std::vector<ComplexVector> x;
    x.reserve(steps + 1);
    x.push_back(vectorize(rho0.matrix()));

    // history(n) = h [k_n x_0 / 2 + sum_{j=1}^{n-1} k_{n-j} x_j]; the trapezoid
    // endpoint h k_0 x_n / 2 is added where x_n is known.
    auto history = [&](std::size_t n) {
        ComplexVector acc = (0.5 * kv[n]) * x[0];
        for (std::size_t j = 1; j < n; ++j) acc += kv[n - j] * x[j];
        return ComplexVector(h * acc);
    };

    ComplexVector f = l0.matrix * x[0]; // memory integral vanishes at t = 0
    for (std::size_t n = 0; n < steps; ++n) {
        const ComplexVector hist = history(n + 1);
        const ComplexVector pred = x[n] + h * f;
        const ComplexVector f_pred = l0.matrix * pred + l1.matrix * (hist + (0.5 * h * kv[0]) * pred);
        x.push_back(x[n] + (0.5 * h) * (f + f_pred));
        f = l0.matrix * x.back() + l1.matrix * (hist + (0.5 * h * kv[0]) * x.back());
    }

    Trajectory traj;
    traj.method = SolverMethod::Volterra;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    for (std::size_t n = 0; n <= steps; ++n) {
        traj.times.push_back(static_cast<double>(n) * h);
        traj.states.push_back(devectorize(x[n], d));
    }
    return traj;
}

SuperOp embedded_propagator(const SuperOp& l0, const SuperOp& l1, const MemoryKernel& k, double t) {
    if (l0.dim != l1.dim) throw DimensionMismatch("embedded_propagator: L0 and L1 dimensions differ");
    if (t < 0.0) throw InvalidArgument("embedded_propagator: t must be >= 0");
    if (t == 0.0) return SuperOp::identity(l0.dim);
    const Index n = l0.matrix.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    ComplexMatrix g;
    if (const auto* e = k.get_if<ExpDecayKernel>()) {
        const double b2 = e->amplitude * e->amplitude;
        g = ComplexMatrix::Zero(2 * n, 2 * n);
        g.block(0, 0, n, n) = l0.matrix;
        g.block(0, n, n, n) = b2 * l1.matrix;
        g.block(n, 0, n, n) = id;
        g.block(n, n, n, n) = (-1.0 / e->memory_time) * id;
    } else if (const auto* m = k.get_if<ModulatedExpKernel>()) {
        const double b2 = m->amplitude * m->amplitude;
        const double a = 1.0 / m->memory_time;
        const double nu = m->frequency;
        g = ComplexMatrix::Zero(3 * n, 3 * n);
        g.block(0, 0, n, n) = l0.matrix;
        g.block(0, n, n, n) = b2 * l1.matrix;
        g.block(n, 0, n, n) = id;
        g.block(n, n, n, n) = -a * id;
        g.block(n, 2 * n, n, n) = -nu * id;
        g.block(2 * n, n, n, n) = nu * id;
        g.block(2 * n, 2 * n, n, n) = -a * id;
    } else {
        throw Unsupported("embedded_propagator: only exponential and modulated kernels embed exactly");
    }
    const ComplexMatrix scaled = g * Complex(t);
    const ComplexMatrix full = scaled.exp();
    return SuperOp(full.block(0, 0, n, n), l0.dim);
}

ComplexMatrix embedded_solve(const SuperOp& l0, const SuperOp& l1, const MemoryKernel& k,
                             const QuantumState& rho0, double t) {
    check_state_dim(l0, l1, rho0);
    return embedded_propagator(l0, l1, k, t).apply(rho0.matrix());
}

SuperOp stochastic_generator(const ComplexMatrix& h) {
    const Index d = h.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const ComplexMatrix h2 = h * h;
    return sandwich_superop(h, h) * Complex(2.0) - sandwich_superop(h2, id) - sandwich_superop(id, h2);
}

StochasticResult stochastic_average(const SuperOp& l0, const ComplexMatrix& h, const MemoryKernel& k,
                                    const QuantumState& rho0, double dt, double horizon,
                                    std::size_t n_traj, std::uint64_t seed,
                                    const ComplexMatrix& observable) {
    if (k.get_if<ExpDecayKernel>() == nullptr) {
        throw Unsupported("stochastic_average: only the exponential kernel has an OU unraveling");
    }
    if (n_traj < 1) throw InvalidArgument("stochastic_average: need at least one trajectory");
    if (h.rows() != l0.dim || h.cols() != l0.dim || rho0.dim() != l0.dim) {
        throw DimensionMismatch("stochastic_average: h, rho0 and L0 must share the system dimension");
    }
    if (!approx_equal(h, h.adjoint(), kStructuralTol)) {
        throw InvalidArgument("stochastic_average: h must be Hermitian");
    }
    if (observable.rows() != l0.dim || observable.cols() != l0.dim) {
        throw DimensionMismatch("stochastic_average: observable has the wrong dimension");
    }

    const std::size_t steps = grid_steps(dt, horizon);
    const double step = steps > 0 ? horizon / static_cast<double>(steps) : dt;
    const Index d = l0.dim;
    const Index n = d * d;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    // X -> -i [h, X]
    const ComplexMatrix ad_h = ((sandwich_superop(h, id) - sandwich_superop(id, h)) * Complex(0.0, -1.0)).matrix;
    const ComplexVector x0 = vectorize(rho0.matrix());
    // Re Tr[O X] = Re vec(O^T)^T vec(X)
    const ComplexVector obs_row = vectorize(observable.transpose());

    // noiseless path; observable sums are taken relative to it so the
    // variance does not cancel catastrophically
    std::vector<double> ref(steps + 1);
    {
        ComplexVector x = x0;
        for (std::size_t s = 0;; ++s) {
            ref[s] = (obs_row.transpose() * x)(0).real();
            if (s == steps) break;
            const ComplexVector f = l0.matrix * x;
            const ComplexVector pred = x + step * f;
            x += (0.5 * step) * (f + l0.matrix * pred);
        }
    }

    struct ChunkSums {
        std::vector<ComplexVector> state;
        std::vector<double> obs;
        std::vector<double> obs_sq;
    };
    constexpr std::size_t kChunks = 16;
    const std::size_t n_chunks = std::min(kChunks, n_traj);
    std::vector<ChunkSums> chunks(n_chunks);

    auto run_chunk = [&](std::size_t c) {
        ChunkSums sums{std::vector<ComplexVector>(steps + 1, ComplexVector::Zero(n)),
                       std::vector<double>(steps + 1, 0.0), std::vector<double>(steps + 1, 0.0)};
        const std::size_t begin = c * n_traj / n_chunks;
        const std::size_t end = (c + 1) * n_traj / n_chunks;
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint64_t child = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i)));
            const NoisePath path = sample_process(k, step, steps + 1, child);
            ComplexVector x = x0;
            for (std::size_t s = 0;; ++s) {
                sums.state[s] += x;
                const double o = (obs_row.transpose() * x)(0).real() - ref[s];
                sums.obs[s] += o;
                sums.obs_sq[s] += o * o;
                if (s == steps) break;
                const ComplexVector f = l0.matrix * x + path.samples[s] * (ad_h * x);
                const ComplexVector pred = x + step * f;
                const ComplexVector f_pred = l0.matrix * pred + path.samples[s + 1] * (ad_h * pred);
                x += (0.5 * step) * (f + f_pred);
            }
        }
        chunks[c] = std::move(sums);
    };

    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(n_chunks, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w + 1 < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < n_chunks; c = next++) run_chunk(c);
        });
    }
    for (std::size_t c = next++; c < n_chunks; c = next++) run_chunk(c);
    for (auto& t : pool) t.join();

    StochasticResult out;
    out.trajectories = n_traj;
    out.mean.method = SolverMethod::Stochastic;
    const double inv = 1.0 / static_cast<double>(n_traj);
    for (std::size_t s = 0; s <= steps; ++s) {
        ComplexVector state = ComplexVector::Zero(n);
        double obs = 0.0;
        double obs_sq = 0.0;
        for (const auto& c : chunks) {
            state += c.state[s];
            obs += c.obs[s];
            obs_sq += c.obs_sq[s];
        }
        const double shift = obs * inv;
        double var = 0.0;
        if (n_traj > 1) {
            var = std::max(0.0, (obs_sq - static_cast<double>(n_traj) * shift * shift) /
                                    static_cast<double>(n_traj - 1));
        }
        const double mean = ref[s] + shift;
        out.mean.times.push_back(static_cast<double>(s) * step);
        out.mean.states.push_back(devectorize(state * inv, d));
        out.observable_mean.push_back(mean);
        out.observable_stderr.push_back(std::sqrt(var * inv));
    }
    return out;
}

} // namespace gmn
