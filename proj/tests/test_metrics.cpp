// test_metrics.cpp: fidelity, minimum channel fidelity, concurrence, Choi CP check

#include <cmath>
#include <random>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "gmn/channels.hpp"
#include "gmn/errors.hpp"
#include "gmn/lindblad.hpp"
#include "gmn/metrics.hpp"
#include "gmn/solver.hpp"

using namespace gmn;

namespace {

QuantumState ket(std::initializer_list<Complex> amps) {
    ComplexVector v(static_cast<Index>(amps.size()));
    Index i = 0;
    for (Complex a : amps) v(i++) = a;
    return QuantumState::pure(v);
}

ComplexMatrix random_unitary(Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix z(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) z(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < d; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
    return q;
}

QuantumState random_mixed(Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix x(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) x(i, j) = Complex(g(rng), g(rng));
    const ComplexMatrix rho = x * x.adjoint();
    return QuantumState::from_matrix(rho / rho.trace().real());
}

// Bell state with z-dephasing applied to the second qubit only
ComplexMatrix dephased_bell(double lambda) {
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix bell = ket({s, 0.0, 0.0, s}).matrix();
    const ComplexMatrix a = kron(ComplexMatrix::Identity(2, 2), pauli(3));
    const double p = 0.5 * (1.0 - lambda);
    return (1.0 - p) * bell + p * a * bell * a;
}

} // namespace

TEST(Fidelity, Examples) {
    std::mt19937_64 rng(1);
    const QuantumState r = random_mixed(3, rng);
    EXPECT_NEAR(fidelity(r, r), 1.0, 1e-10);
    EXPECT_NEAR(fidelity(ket({1.0, 0.0}), ket({0.0, 1.0})), 0.0, 1e-12);
    const QuantumState plus = ket({1.0, 1.0});
    for (double p : {0.0, 0.1, 0.35, 0.5}) {
        const ComplexMatrix out = pauli_channel(1.0 - 2.0 * p, 3, 1).apply(plus.matrix());
        EXPECT_NEAR(fidelity(plus, QuantumState::from_matrix(out)), 1.0 - p, 1e-10);
    }
}

TEST(Fidelity, SymmetricAndBounded) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
        const QuantumState a = random_mixed(4, rng), b = random_mixed(4, rng);
        const double f = fidelity(a, b);
        EXPECT_NEAR(f, fidelity(b, a), 1e-10);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
    }
}

TEST(MinChannelFidelity, Identity) {
    const FidelityReport r = min_channel_fidelity(SuperOp::identity(2));
    EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(MinChannelFidelity, BackgroundDephasingAtUnitTime) {
    const double lam = std::exp(-2.0);
    const FidelityReport r = min_channel_fidelity(pauli_channel(lam, 3, 1));
    EXPECT_NEAR(r.value, 0.56767, 1e-5);
    EXPECT_NEAR(r.value, 0.5 * (1.0 + lam), 2e-3);
    EXPECT_GE(r.value, 0.5 * (1.0 + lam) - 1e-12);
    // on the equator: <sigma_3> = 0
    EXPECT_NEAR((pauli(3) * r.argmin_state.matrix()).trace().real(), 0.0, 1e-3);
    EXPECT_GT(r.samples, 64u * 64u - 1);
}

TEST(MinChannelFidelity, TunedCombinedChannel) {
    const ExpKernelParams p(1.0, tune_B(1.0, 25.0, 1.0, 1), 25.0);
    const FidelityReport r = min_channel_fidelity(pauli_channel(lambda_exp(p, 1.0), 3, 1));
    EXPECT_NEAR(r.value, 0.68030, 1e-5);
}

TEST(MinChannelFidelity, MatchesAnalyticOnDephasingFamily) {
    for (int axis : {1, 2, 3}) {
        for (double lam : {-0.8, -0.2, 0.0, 0.3, 0.9}) {
            const FidelityReport r = min_channel_fidelity(pauli_channel(lam, axis, 1));
            const double want = 0.5 * (1.0 + lam);
            EXPECT_NEAR(r.value, want, 2e-3) << "axis " << axis << " lambda " << lam;
        }
    }
}

TEST(MinChannelFidelity, MonotoneInFlipProbability) {
    double prev = 2.0;
    for (int i = 0; i <= 10; ++i) {
        const double p = 0.05 * i;
        const double f = min_channel_fidelity(pauli_channel(1.0 - 2.0 * p, 2, 1)).value;
        EXPECT_LE(f, prev + 1e-12);
        prev = f;
    }
}

TEST(MinChannelFidelity, TwoQubits) {
    // A = sigma_3 (x) sigma_3; the minimum over pure states is 1 - p
    const double lam = 0.2;
    const FidelityReport r = min_channel_fidelity(pauli_channel(lam, 3, 2));
    EXPECT_NEAR(r.value, 0.5 * (1.0 + lam), 2e-3);
    EXPECT_GE(r.value, 0.5 * (1.0 + lam) - 1e-9);
    const FidelityReport again = min_channel_fidelity(pauli_channel(lam, 3, 2));
    EXPECT_EQ(r.value, again.value);
}

TEST(MinChannelFidelity, RejectsNonTracePreserving) {
    EXPECT_THROW(min_channel_fidelity(SuperOp::identity(2) * Complex(0.5)), InvalidArgument);
}

TEST(Concurrence, Examples) {
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(concurrence(ket({s, 0.0, 0.0, s})), 1.0, 1e-10);
    EXPECT_NEAR(concurrence(ket({0.0, 1.0, 0.0, 0.0})), 0.0, 1e-10);
    for (double lam : {1.0, 0.6, 0.0, -0.35, -1.0}) EXPECT_NEAR(concurrence(dephased_bell(lam)), std::abs(lam), 1e-10);
    EXPECT_THROW(concurrence(ComplexMatrix::Identity(2, 2)), DimensionMismatch);
}

TEST(Concurrence, LocalUnitaryInvariance) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
        const QuantumState rho = i % 2 ? random_mixed(4, rng) : QuantumState::from_matrix(dephased_bell(0.7));
        const ComplexMatrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
        const ComplexMatrix moved = u * rho.matrix() * u.adjoint();
        EXPECT_LT(std::abs(concurrence(rho) - concurrence(moved)), 1e-9);
    }
}

TEST(CpCheck, PauliChannels) {
    const CPReport ok = cp_check(pauli_channel(1.0 - 2.0 * 0.3, 3, 1));
    EXPECT_TRUE(ok.is_cp);
    EXPECT_TRUE(ok.is_tp);
    const CPReport bad = cp_check(pauli_channel(-1.4, 3, 1));
    EXPECT_FALSE(bad.is_cp);
    EXPECT_TRUE(bad.is_tp);
    // Choi spectrum {2(1-p), 2p, 0, 0}
    EXPECT_NEAR(bad.min_choi_eigenvalue, 2.0 * (1.0 - 1.2), 1e-12);
    EXPECT_FALSE(cp_check(SuperOp::identity(2) * Complex(0.5)).is_tp);
}

TEST(CpCheck, ThermalPropagator) {
    const ThermalGenerators g = thermal_generator(1.0, 0.5, 2.0);
    const MemoryKernel k(ExpDecayKernel{1.0, 5.0});
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
        const CPReport r = cp_check(embedded_propagator(g.background, g.dephasing, k, t));
        EXPECT_TRUE(r.is_cp) << t << " " << r.min_choi_eigenvalue;
        EXPECT_TRUE(r.is_tp);
    }
}

TEST(CpCheck, LindbladSemigroups) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (Index d : {2, 3}) {
        for (int trial = 0; trial < 3; ++trial) {
            LindbladGenerator lg;
            ComplexMatrix h(d, d);
            for (Index i = 0; i < d; ++i)
                for (Index j = 0; j < d; ++j) h(i, j) = Complex(g(rng), g(rng));
            lg.hamiltonian = 0.5 * (h + h.adjoint());
            for (int j = 0; j < 2; ++j) {
                ComplexMatrix a(d, d);
                for (Index r = 0; r < d; ++r)
                    for (Index c = 0; c < d; ++c) a(r, c) = Complex(g(rng), g(rng));
                lg.jumps.push_back({a, u(rng)});
            }
            const SuperOp l = build_generator(lg);
            for (double t : {0.1, 1.0, 10.0}) {
                const CPReport r = cp_check(evolve_markov(l, t));
                EXPECT_TRUE(r.is_cp) << "d=" << d << " t=" << t << " min " << r.min_choi_eigenvalue;
                EXPECT_TRUE(r.is_tp);
            }
        }
    }
}

TEST(OpDistance, Examples) {
    EXPECT_NEAR(op_distance(pauli(1), pauli(1)), 0.0, 1e-15);
    EXPECT_NEAR(op_distance(pauli(3), ComplexMatrix::Zero(2, 2)), 1.0, 1e-15);
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 3.0;
    a(1, 0) = 4.0;
    EXPECT_NEAR(op_distance(a, ComplexMatrix::Zero(2, 2)), 4.0, 1e-14);
    EXPECT_THROW(op_distance(pauli(1), ComplexMatrix::Zero(3, 3)), DimensionMismatch);
}

TEST(OpDistance, ThermalPassesNearSteadyState) {
    const ThermalGenerators g = thermal_generator(1.0, 0.5, 2.0);
    const MemoryKernel k(ExpDecayKernel{1.0, 5.0});
    const ComplexMatrix rho_ss = thermal_steady_state(0.5).matrix();
    const ComplexMatrix rho0 = ket({1.0, 1.0}).matrix();
    // the distance is not monotone: it dips and rises again
    std::vector<double> dist;
    for (int i = 1; i <= 200; ++i) {
        const double t = 0.05 * i;
        dist.push_back(op_distance(embedded_propagator(g.background, g.dephasing, k, t).apply(rho0), rho_ss));
    }
    int dips = 0;
    for (std::size_t i = 1; i + 1 < dist.size(); ++i) dips += dist[i] < dist[i - 1] && dist[i] < dist[i + 1];
    EXPECT_GE(dips, 1);
}
