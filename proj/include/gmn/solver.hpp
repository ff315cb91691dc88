// solver.hpp: solvers for the memory-kernel master equation
//
//   d rho/dt = L0 rho(t) + L1 \int_0^t k(t - t') rho(t') dt'
//
// Three deterministic routes (Laplace/partial fractions, exact augmented-ODE
// embedding, Volterra time stepping) plus a Monte-Carlo average over a
// stochastic Hamiltonian whose noise autocorrelation is k.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmn/kernel.hpp"
#include "gmn/lindblad.hpp"
#include "gmn/rational.hpp"

namespace gmn {

/// Lambda~(s) = q(s) / [(s - lambda) q(s) - mu p(s)] for k~ = p/q, in lowest terms.
RationalFn lambda_tilde(Complex lambda, Complex mu, const MemoryKernel& k);

/// Phi(t) = sum_i Lambda_i(t) P_i + sum_{n>=1} InvLaplace[Lambda~_i^{n+1}](t) D_i^n.
/// `mu[i]` is the L1 eigenvalue on block i of `spec0`.
SuperOp assemble_propagator(const SpectralDecomposition& spec0, const std::vector<Complex>& mu,
                            const MemoryKernel& k, double t);

enum class SolverMethod { Laplace, Embedded, Volterra, Stochastic };

std::string to_string(SolverMethod m);

/// Density matrices on an increasing time grid. States are stored as plain
/// matrices: the solvers do not assume complete positivity.
struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexMatrix> states;
    SolverMethod method = SolverMethod::Volterra;
};

/// Heun predictor-corrector with trapezoidal memory quadrature on a fixed grid,
/// global error O(dt^2). Requires dt <= min(tau_k, 1/||L0||, 1/||L1||)/20
/// (spectral norms); throws StepTooLarge otherwise.
Trajectory volterra_solve(const SuperOp& l0, const SuperOp& l1, const MemoryKernel& k,
                          const QuantumState& rho0, double dt, double horizon);

/// Propagator Phi(t) from one matrix exponential of the augmented generator.
/// ExpDecay adds one auxiliary copy m(t) = int e^{-(t-s)/tau} rho(s) ds;
/// ModulatedExp adds the cosine and sine weighted pair.
SuperOp embedded_propagator(const SuperOp& l0, const SuperOp& l1, const MemoryKernel& k, double t);

ComplexMatrix embedded_solve(const SuperOp& l0, const SuperOp& l1, const MemoryKernel& k,
                             const QuantumState& rho0, double t);

struct StochasticResult {
    Trajectory mean;
    std::vector<double> observable_mean;   // Re Tr[O rho(t)]
    std::vector<double> observable_stderr; // standard error over trajectories
    std::size_t trajectories = 0;
};

/// Averages n_traj solutions of d rho/dt = L0 rho - i B(t) [h, rho] with B(t)
/// the exact OU path of `k` (ExpDecay only). Trajectory i draws its noise from
/// a child seed of (seed, i); the reduction order is fixed, so the result does
/// not depend on thread scheduling.
StochasticResult stochastic_average(const SuperOp& l0, const ComplexMatrix& h, const MemoryKernel& k,
                                    const QuantumState& rho0, double dt, double horizon,
                                    std::size_t n_traj, std::uint64_t seed,
                                    const ComplexMatrix& observable);

/// L1 X = 2 h X h - {h^2, X}: the generator produced by averaging the noise.
SuperOp stochastic_generator(const ComplexMatrix& h);

} // namespace gmn
