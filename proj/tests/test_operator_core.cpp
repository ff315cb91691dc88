// test_operator_core.cpp: Pauli strings, kron, vectorization, superoperators, Choi

#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "gmn/errors.hpp"
#include "gmn/operator_core.hpp"

using namespace gmn;

namespace {

ComplexMatrix random_matrix(Index r, Index c, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

Eigen::VectorXd hermitian_eigs(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
    return es.eigenvalues();
}

} // namespace

TEST(PauliString, IdentityAndSigma3) {
    EXPECT_TRUE(approx_equal(pauli_string(PauliString{0}), ComplexMatrix::Identity(2, 2), 0.0));
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = -1.0;
    z(1, 1) = 1.0;
    EXPECT_TRUE(approx_equal(pauli_string(PauliString{3}), z, 0.0));
}

TEST(PauliString, XXIsAntiDiagonal) {
    const ComplexMatrix xx = pauli_string(PauliString{1, 1});
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) expect(i, 3 - i) = 1.0;
    EXPECT_TRUE(approx_equal(xx, expect, 0.0));
}

TEST(PauliString, RejectsBadIndex) {
    EXPECT_THROW(PauliString({4}), InvalidArgument);
    EXPECT_THROW(PauliString(std::vector<int>{}), InvalidArgument);
}

TEST(PauliString, AlgebraWithSigma3Convention) {
    // sigma_1 sigma_2 = i sigma_3 survives the sign flips on sigma_2 and sigma_3
    EXPECT_TRUE(approx_equal(pauli(1) * pauli(2), Complex(0, 1) * pauli(3), 1e-15));
    EXPECT_TRUE(approx_equal(sigma_plus(), 0.5 * (pauli(1) + Complex(0, 1) * pauli(2)), 1e-15));
    EXPECT_TRUE(approx_equal(sigma_plus(), basis_op(2, 1, 0), 1e-15));
    EXPECT_TRUE(approx_equal(sigma_minus(), basis_op(2, 0, 1), 1e-15));
}

TEST(PauliString, TraceOrthogonality) {
    for (int n = 1; n <= 2; ++n) {
        const int count = n == 1 ? 4 : 16;
        for (int a = 0; a < count; ++a) {
            for (int b = 0; b < count; ++b) {
                std::vector<int> ia, ib;
                for (int q = 0, x = a, y = b; q < n; ++q, x /= 4, y /= 4) {
                    ia.push_back(x % 4);
                    ib.push_back(y % 4);
                }
                const Complex tr = (pauli_string(PauliString(ia)) * pauli_string(PauliString(ib))).trace();
                EXPECT_NEAR(std::abs(tr - Complex(a == b ? (1 << n) : 0)), 0.0, 1e-12);
            }
        }
    }
}

TEST(Kron, Examples) {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    EXPECT_TRUE(approx_equal(kron(i2, i2), ComplexMatrix::Identity(4, 4), 0.0));
    const ComplexMatrix zi = kron(pauli(3), i2);
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect.diagonal() << -1.0, -1.0, 1.0, 1.0;
    EXPECT_TRUE(approx_equal(zi, expect, 0.0));
    // |1><1| (x) |0><1| puts its single 1 at (1*2 + 0, 1*2 + 1)
    const ComplexMatrix e = kron(basis_op(2, 1, 1), basis_op(2, 0, 1));
    EXPECT_EQ(e.cwiseAbs().sum(), 1.0);
    EXPECT_EQ(e(1 * 2 + 0, 1 * 2 + 1), Complex(1.0));
}

TEST(Kron, Associative) {
    std::mt19937_64 rng(1);
    const ComplexMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng), c = random_matrix(2, 2, rng);
    EXPECT_LT(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
}

TEST(Vectorize, ColumnStacking) {
    const ComplexVector v = vectorize(basis_op(2, 0, 0));
    ComplexVector e = ComplexVector::Zero(4);
    e(0) = 1.0;
    EXPECT_TRUE(approx_equal(v, e, 0.0));
    // (i, j) -> i + j d
    EXPECT_EQ(vectorize(basis_op(3, 2, 1))(2 + 1 * 3), Complex(1.0));
}

TEST(Vectorize, RoundTripAndDimensionCheck) {
    std::mt19937_64 rng(2);
    const ComplexMatrix x = random_matrix(3, 3, rng);
    EXPECT_TRUE(approx_equal(devectorize(vectorize(x), 3), x, 0.0));
    EXPECT_THROW(devectorize(ComplexVector::Zero(5), 2), DimensionMismatch);
    EXPECT_THROW(vectorize(ComplexMatrix::Zero(2, 3)), DimensionMismatch);
}

TEST(Sandwich, MatchesMatrixProduct) {
    std::mt19937_64 rng(3);
    for (Index d : {2, 3, 4}) {
        const ComplexMatrix a = random_matrix(d, d, rng), x = random_matrix(d, d, rng), b = random_matrix(d, d, rng);
        EXPECT_LT(max_abs_diff(sandwich_superop(a, b).matrix * vectorize(x), vectorize(a * x * b)), 1e-12);
    }
}

TEST(Sandwich, Examples) {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    EXPECT_TRUE(approx_equal(sandwich_superop(i2, i2).matrix, SuperOp::identity(2).matrix, 0.0));
    EXPECT_TRUE(approx_equal(sandwich_superop(pauli(3), pauli(3)).apply(pauli(1)), -pauli(1), 1e-15));
    // sigma_+ |0><0| sigma_- = |1><1|
    EXPECT_TRUE(approx_equal(sandwich_superop(sigma_plus(), sigma_minus()).apply(basis_op(2, 0, 0)),
                             basis_op(2, 1, 1), 1e-15));
    EXPECT_THROW(sandwich_superop(i2, ComplexMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST(Choi, IdentityMap) {
    const ChoiMatrix c = choi(SuperOp::identity(2));
    const Eigen::VectorXd ev = hermitian_eigs(c.matrix);
    EXPECT_NEAR(ev(3), 2.0, 1e-12);
    EXPECT_NEAR(ev(0), 0.0, 1e-12);
    EXPECT_NEAR(ev(1), 0.0, 1e-12);
    EXPECT_NEAR(ev(2), 0.0, 1e-12);
}

TEST(Choi, FullDephasing) {
    const SuperOp phi = SuperOp::identity(2) * Complex(0.5) + sandwich_superop(pauli(3), pauli(3)) * Complex(0.5);
    const ChoiMatrix c = choi(phi);
    const Eigen::VectorXd ev = hermitian_eigs(c.matrix);
    EXPECT_NEAR(ev.minCoeff(), 0.0, 1e-12);
    // only the |ii><ii| entries survive
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 1.0;
    EXPECT_LT(max_abs_diff(c.matrix, expect), 1e-12);
}

TEST(Choi, CompletelyDepolarizing) {
    // X -> Tr(X) I / 2
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    for (int out : {0, 3})
        for (int in : {0, 3}) m(out, in) = 0.5;
    const ChoiMatrix c = choi(SuperOp(m, 2));
    EXPECT_LT(max_abs_diff(c.matrix, 0.5 * ComplexMatrix::Identity(4, 4)), 1e-12);
}

TEST(Choi, Linear) {
    std::mt19937_64 rng(4);
    const SuperOp a(random_matrix(4, 4, rng), 2), b(random_matrix(4, 4, rng), 2);
    const ChoiMatrix cab = choi(a * Complex(0.3) + b * Complex(0.7));
    EXPECT_LT(max_abs_diff(cab.matrix, 0.3 * choi(a).matrix + 0.7 * choi(b).matrix), 1e-12);
}

TEST(QuantumState, Validation) {
    EXPECT_NO_THROW(QuantumState::maximally_mixed(2));
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    EXPECT_THROW(QuantumState::from_matrix(bad), InvalidArgument); // trace 2
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(QuantumState::from_matrix(neg), InvalidArgument);
    ComplexMatrix nonherm = 0.5 * ComplexMatrix::Identity(2, 2);
    nonherm(0, 1) = 0.1;
    EXPECT_THROW(QuantumState::from_matrix(nonherm), InvalidArgument);
    ComplexVector psi(2);
    psi << 3.0, Complex(0, 4.0);
    EXPECT_NEAR(QuantumState::pure(psi).matrix().trace().real(), 1.0, 1e-15);
}

TEST(SuperOp, ShapeChecks) {
    EXPECT_THROW(SuperOp(ComplexMatrix::Zero(3, 3), 2), DimensionMismatch);
    EXPECT_THROW(SuperOp::identity(2) * SuperOp::identity(3), DimensionMismatch);
    EXPECT_THROW(SuperOp::identity(2).apply(ComplexMatrix::Zero(3, 3)), DimensionMismatch);
}
