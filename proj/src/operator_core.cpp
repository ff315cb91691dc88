// operator_core.cpp: Pauli strings, kron, vectorization, superoperators

#include "gmn/operator_core.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gmn/errors.hpp"

namespace gmn {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(what) + ": shape " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
    }
}

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch(std::string(what) + ": matrix is not square");
    }
}

} // namespace

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if (a.size() == 0) return true;
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

QuantumState QuantumState::from_matrix(ComplexMatrix rho, double tol) {
    require_square(rho, "QuantumState");
    if (rho.rows() == 0) throw InvalidArgument("QuantumState: empty matrix");
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) {
        throw InvalidArgument("QuantumState: not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const Complex tr = rho.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
        throw InvalidArgument("QuantumState: trace " + std::to_string(tr.real()) + " != 1");
    }
    const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
        throw InvalidArgument("QuantumState: negative eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()));
    }
    return QuantumState(std::move(rho));
}

QuantumState QuantumState::pure(const ComplexVector& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) throw InvalidArgument("QuantumState::pure: zero vector");
    const ComplexVector u = psi / norm;
    return QuantumState(u * u.adjoint());
}

QuantumState QuantumState::maximally_mixed(Index d) {
    if (d <= 0) throw InvalidArgument("QuantumState::maximally_mixed: d must be positive");
    return QuantumState(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

PauliString::PauliString(std::initializer_list<int> indices)
    : PauliString(std::vector<int>(indices)) {}

PauliString::PauliString(std::vector<int> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) throw InvalidArgument("PauliString: length must be >= 1");
    for (int n : indices_) {
        if (n < 0 || n > 3) throw InvalidArgument("PauliString: index out of range " + std::to_string(n));
    }
}

ComplexMatrix pauli(int n) {
    const Complex i(0.0, 1.0);
    ComplexMatrix m(2, 2);
    switch (n) {
    case 0: m << 1.0, 0.0, 0.0, 1.0; break;
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, i, -i, 0.0; break;
    case 3: m << -1.0, 0.0, 0.0, 1.0; break;
    default: throw InvalidArgument("pauli: index must be in {0,1,2,3}");
    }
    return m;
}

ComplexMatrix pauli_string(const PauliString& n) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int k : n.indices()) out = kron(out, pauli(k));
    return out;
}

ComplexMatrix pauli_power(int axis, int qubits) {
    if (axis < 1 || axis > 3) throw InvalidArgument("pauli_power: axis must be 1, 2 or 3");
    if (qubits < 1) throw InvalidArgument("pauli_power: qubit count must be >= 1");
    return pauli_string(PauliString(std::vector<int>(static_cast<std::size_t>(qubits), axis)));
}

ComplexMatrix sigma_plus() {
    return 0.5 * (pauli(1) + Complex(0.0, 1.0) * pauli(2));
}

ComplexMatrix sigma_minus() {
    return 0.5 * (pauli(1) - Complex(0.0, 1.0) * pauli(2));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector vectorize(const ComplexMatrix& x) {
    require_square(x, "vectorize");
    return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix devectorize(const ComplexVector& v, Index d) {
    if (d <= 0 || v.size() != d * d) {
        throw DimensionMismatch("devectorize: vector of length " + std::to_string(v.size()) +
                                " cannot form a " + std::to_string(d) + "x" + std::to_string(d) +
                                " matrix");
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

SuperOp::SuperOp(ComplexMatrix m, Index d) : matrix(std::move(m)), dim(d) {
    if (matrix.rows() != d * d || matrix.cols() != d * d) {
        throw DimensionMismatch("SuperOp: matrix must be d^2 x d^2 with d = " + std::to_string(d));
    }
}

SuperOp SuperOp::identity(Index d) {
    return SuperOp(ComplexMatrix::Identity(d * d, d * d), d);
}

SuperOp SuperOp::zero(Index d) {
    return SuperOp(ComplexMatrix::Zero(d * d, d * d), d);
}

ComplexMatrix SuperOp::apply(const ComplexMatrix& x) const {
    if (x.rows() != dim || x.cols() != dim) {
        throw DimensionMismatch("SuperOp::apply: operand is not " + std::to_string(dim) + "x" +
                                std::to_string(dim));
    }
    return devectorize(matrix * vectorize(x), dim);
}

SuperOp SuperOp::operator*(const SuperOp& rhs) const {
    if (dim != rhs.dim) throw DimensionMismatch("SuperOp composition: dimension mismatch");
    return SuperOp(matrix * rhs.matrix, dim);
}

SuperOp SuperOp::operator+(const SuperOp& rhs) const {
    if (dim != rhs.dim) throw DimensionMismatch("SuperOp sum: dimension mismatch");
    return SuperOp(matrix + rhs.matrix, dim);
}

SuperOp SuperOp::operator-(const SuperOp& rhs) const {
    if (dim != rhs.dim) throw DimensionMismatch("SuperOp difference: dimension mismatch");
    return SuperOp(matrix - rhs.matrix, dim);
}

SuperOp SuperOp::operator*(Complex c) const {
    return SuperOp(matrix * c, dim);
}

SuperOp sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "sandwich_superop");
    require_same_shape(a, b, "sandwich_superop");
    // vec(A X B) = (B^T (x) A) vec(X) for column stacking.
    return SuperOp(kron(b.transpose(), a), a.rows());
}

ChoiMatrix choi(const SuperOp& phi) {
    const Index d = phi.dim;
    ChoiMatrix c{ComplexMatrix::Zero(d * d, d * d), d};
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            c.matrix.block(i * d, j * d, d, d) = phi.apply(basis_op(d, i, j));
        }
    }
    return c;
}

ComplexMatrix basis_op(Index d, Index i, Index j) {
    if (i < 0 || j < 0 || i >= d || j >= d) throw InvalidArgument("basis_op: index out of range");
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

} // namespace gmn
