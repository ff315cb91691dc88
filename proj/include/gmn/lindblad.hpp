// lindblad.hpp: Lindblad generators, spectral decompositions, propagators and
// the two concrete generator families (Pauli dephasing, thermal qubit)

#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "gmn/operator_core.hpp"

namespace gmn {

struct Jump {
    ComplexMatrix op;
    double rate = 0.0; // > 0
};

/// L[X] = -i[H, X] + sum_j rate_j (A_j X A_j^dag - 1/2 {A_j^dag A_j, X})
struct LindbladGenerator {
    ComplexMatrix hamiltonian; // may be empty or zero
    std::vector<Jump> jumps;

    Index dim() const;
};

SuperOp build_generator(const LindbladGenerator& g);

struct SpectralBlock {
    Complex eigenvalue;
    SuperOp projector;
    std::optional<SuperOp> nilpotent;
    int nilpotency_index = 0; // smallest m with D^m = 0; 0 when there is no nilpotent part
};

/// L = sum_i (lambda_i P_i + D_i)
struct SpectralDecomposition {
    std::vector<SpectralBlock> blocks;
    Index dim = 0;

    SuperOp reconstruct() const;
};

struct SpectralOptions {
    double cluster_tol = 1e-7;
    double max_condition = 1e8;
};

/// Numerical diagonalization with eigenvalue clustering. Produced blocks never
/// carry a nilpotent part; throws DefectiveMatrix when the eigenvector matrix
/// condition number exceeds `max_condition`.
SpectralDecomposition spectral_decompose(const SuperOp& l, const SpectralOptions& opts = {});

/// e^{tL}
SuperOp evolve_markov(const SuperOp& l, double t);

/// Sum of the projectors whose eigenvalue is (numerically) zero. Throws
/// OscillatorySpectrum when a nonzero eigenvalue has |Re| < tol.
SuperOp steady_state_projector(const SuperOp& l, double tol = 1e-8);

/// (z - L)^{-1}; throws SingularPoint when z is within `tol` of the spectrum.
SuperOp resolvent(const SuperOp& l, Complex z, double tol = 1e-10);

/// Background dephasing gamma (A_k X A_k - X), A_k = sigma_k^{(x) N}.
/// A zero rate yields a generator without jumps.
LindbladGenerator dephasing_generator(double gamma, int axis, int qubits);

/// Analytic Pauli-basis decomposition of the dephasing generator scaled to
/// `gamma`: P_n[X] = 2^{-N} Tr(X sigma_n) sigma_n, merged by eigenvalue {0, -2 gamma}.
SpectralDecomposition dephasing_spectral(double gamma, int axis, int qubits);

struct ThermalGenerators {
    SuperOp background; // L_- + L_+
    SuperOp dephasing;  // gamma_z (sigma_3 X sigma_3 - X)
};

ThermalGenerators thermal_generator(double gamma_minus, double gamma_plus, double gamma_z);

/// Closed-form eigensystem of L_- + L_+ in biorthonormal left/right operators,
/// P_i[X] = Tr[L_i X] R_i.
struct ThermalSpectral {
    double total_rate = 0.0; // Gamma = gamma_- + gamma_+
    double ratio = 0.0;      // x = gamma_+ / gamma_-
    std::array<double, 4> eigenvalues{};
    std::array<ComplexMatrix, 4> left;
    std::array<ComplexMatrix, 4> right;

    SuperOp projector(int i) const;
    /// Blocks grouped by eigenvalue (the two -Gamma/2 modes share one block).
    SpectralDecomposition decomposition() const;
};

ThermalSpectral thermal_spectral(double gamma_minus, double gamma_plus);

/// Verifies L1 P_i = P_i L1 = mu_i P_i for every block and returns the mu_i.
/// Throws InvalidArgument when L1 does not share the block structure.
std::vector<Complex> block_eigenvalues(const SpectralDecomposition& spec, const SuperOp& l1,
                                       double tol = 1e-8);

} // namespace gmn
