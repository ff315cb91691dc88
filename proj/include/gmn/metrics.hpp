// metrics.hpp: fidelity, minimum channel fidelity, concurrence, Choi-based CP
// check and operator-norm distance

#pragma once

#include <cstdint>

#include "gmn/operator_core.hpp"

namespace gmn {

/// Hermitian square root with eigenvalues clamped at 0.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const QuantumState& rho, const QuantumState& sigma);

struct FidelityReport {
    double value = 1.0;
    QuantumState argmin_state = QuantumState::maximally_mixed(1);
    std::size_t samples = 0;
};

struct MinFidelityOptions {
    int grid = 64;            // d = 2: grid x grid Bloch angles
    int refine = 20;          // local refinement rounds
    std::size_t samples = 4096; // d > 2: Haar samples
    std::uint64_t seed = 0x5eed;
};

/// min over pure states of <psi| Phi(|psi><psi|) |psi>. The value is an upper
/// bound on the true minimum: the search is a grid (d = 2) or seeded Haar
/// sample (d > 2) followed by local polishing. Throws InvalidArgument when Phi
/// is not trace preserving within 1e-8.
FidelityReport min_channel_fidelity(const SuperOp& phi, const MinFidelityOptions& opts = {});

/// Wootters concurrence of a two-qubit state. Throws DimensionMismatch when d != 4.
double concurrence(const QuantumState& rho);
/// Same for a raw matrix (Hermitized first); used on solver output.
double concurrence(const ComplexMatrix& rho);

struct CPReport {
    double min_choi_eigenvalue = 0.0;
    double hermiticity_defect = 0.0; // max |C - C^dag| / 2 before Hermitizing
    double tp_defect = 0.0;          // max |Tr_out C - I|
    bool is_cp = false;              // min_choi_eigenvalue >= -tol
    bool is_tp = false;              // tp_defect <= 1e-8
    double tol = 1e-10;
};

CPReport cp_check(const SuperOp& phi, double tol = 1e-10);

/// Largest singular value of A - B. Throws DimensionMismatch.
double op_distance(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace gmn
