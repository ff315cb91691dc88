// operator_core.hpp: dense complex operators, Pauli strings, vectorization and
// superoperator matrices

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace gmn {

using Complex = std::complex<double>;

// Eigen's default column-major storage: entry (i, j) lives at offset i + j * rows.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Repo-wide default tolerances.
inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kAlgebraicTol = 1e-12;

/// Max-abs entrywise comparison; false when shapes differ.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// Largest absolute entry of A - B. Throws DimensionMismatch when shapes differ.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// A density matrix: Hermitian, unit trace, positive semidefinite.
class QuantumState {
public:
    /// Validates the invariants within `tol` (min eigenvalue >= -tol).
    /// Throws InvalidArgument on violation.
    static QuantumState from_matrix(ComplexMatrix rho, double tol = kStructuralTol);

    /// |psi><psi| for a (not necessarily normalized) nonzero ket.
    static QuantumState pure(const ComplexVector& psi);

    /// (1/d) I
    static QuantumState maximally_mixed(Index d);

    const ComplexMatrix& matrix() const { return rho_; }
    Index dim() const { return rho_.rows(); }

private:
    explicit QuantumState(ComplexMatrix rho) : rho_(std::move(rho)) {}
    ComplexMatrix rho_;
};

/// Indices (n_1, ..., n_N), each in {0, 1, 2, 3}.
class PauliString {
public:
    PauliString(std::initializer_list<int> indices);
    explicit PauliString(std::vector<int> indices);

    const std::vector<int>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }

private:
    std::vector<int> indices_;
};

// Single-qubit Paulis in the basis (|0>, |1>):
//   sigma_0 = I, sigma_1 = X, sigma_2 = -Y, sigma_3 = |1><1| - |0><0| = diag(-1, +1).
// sigma_2 carries the sign that keeps sigma_1 sigma_2 = i sigma_3 with this sigma_3.
ComplexMatrix pauli(int n);

/// sigma_{n_1} (x) ... (x) sigma_{n_N}, a 2^N x 2^N matrix.
ComplexMatrix pauli_string(const PauliString& n);

/// A_k = sigma_k^{(x) N}
ComplexMatrix pauli_power(int axis, int qubits);

/// (sigma_1 + i sigma_2) / 2 = |1><0|
ComplexMatrix sigma_plus();
/// (sigma_1 - i sigma_2) / 2 = |0><1|
ComplexMatrix sigma_minus();

/// (A (x) B)[i*rB + k, j*cB + l] = A[i,j] B[k,l]
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column stacking: vec(X)[i + j*d] = X(i, j).
ComplexVector vectorize(const ComplexMatrix& x);
ComplexMatrix devectorize(const ComplexVector& v, Index d);

/// Linear map on d x d operators, stored as the d^2 x d^2 matrix acting on vec(X).
struct SuperOp {
    ComplexMatrix matrix;
    Index dim = 0;

    SuperOp() = default;
    SuperOp(ComplexMatrix m, Index d);

    static SuperOp identity(Index d);
    static SuperOp zero(Index d);

    ComplexMatrix apply(const ComplexMatrix& x) const;

    SuperOp operator*(const SuperOp& rhs) const;
    SuperOp operator+(const SuperOp& rhs) const;
    SuperOp operator-(const SuperOp& rhs) const;
    SuperOp operator*(Complex c) const;
};

/// X -> A X B
SuperOp sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& b);

/// Unnormalized Choi matrix C = sum_{ij} |i><j| (x) Phi(|i><j|).
struct ChoiMatrix {
    ComplexMatrix matrix;
    Index dim = 0;
};

ChoiMatrix choi(const SuperOp& phi);

/// Operator basis element |i><j| in dimension d.
ComplexMatrix basis_op(Index d, Index i, Index j);

} // namespace gmn
