// test_polynomial_rational.cpp: polynomials, partial fractions, inverse Laplace

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "gmn/channels.hpp"
#include "gmn/errors.hpp"
#include "gmn/kernel.hpp"
#include "gmn/polynomial.hpp"
#include "gmn/rational.hpp"
#include "gmn/solver.hpp"

using namespace gmn;
using std::numbers::pi;

TEST(Polynomial, Arithmetic) {
    const Polynomial p = Polynomial::from_real({1.0, 2.0});  // 1 + 2s
    const Polynomial q = Polynomial::from_real({-1.0, 0.0, 1.0}); // s^2 - 1
    EXPECT_EQ((p * q).degree(), 3);
    EXPECT_NEAR(std::abs((p * q)(Complex(2.0)) - Complex(15.0)), 0.0, 1e-14);
    EXPECT_EQ((q - q).degree(), -1);
    EXPECT_NEAR(std::abs(q.derivative()(Complex(3.0)) - Complex(6.0)), 0.0, 1e-14);
    EXPECT_EQ(q.deflate(Complex(1.0)).degree(), 1);
    EXPECT_NEAR(std::abs(q.deflate(Complex(1.0))(Complex(5.0)) - Complex(6.0)), 0.0, 1e-14);
}

TEST(Polynomial, ShiftAndRoots) {
    const Polynomial q = Polynomial::from_real({6.0, -5.0, 1.0}); // (s-2)(s-3)
    const Polynomial sh = q.shifted(Complex(2.0));
    for (double u : {-1.0, 0.0, 0.5, 4.0}) EXPECT_NEAR(std::abs(sh(Complex(u)) - q(Complex(u + 2.0))), 0.0, 1e-12);
    std::vector<Complex> r = q.roots();
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(std::abs(r[0] - Complex(2.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r[1] - Complex(3.0)), 0.0, 1e-12);
}

TEST(PartialFractions, TunedEighteenHasExpectedRoots) {
    const double b = tune_B(1.0, 25.0, 1.0, 1);
    const RationalFn r = lambda_tilde(Complex(-2.0), Complex(-1.0), MemoryKernel(ExpDecayKernel{b, 25.0}));
    const PartialFraction pf = partial_fractions(r);
    ASSERT_EQ(pf.terms.size(), 2u);
    for (const auto& term : pf.terms) {
        EXPECT_EQ(term.multiplicity, 1);
        EXPECT_NEAR(term.root.real(), -1.02, 1e-10);
        EXPECT_NEAR(std::abs(term.root.imag()), 2.0 * pi, 1e-10);
        EXPECT_LT(std::abs(r.denominator(term.root)), 1e-9);
    }
}

TEST(PartialFractions, CoefficientsMatchClosedForm) {
    // c_{+-} = (1 +- i (tau_k/tau_0 - 1)/(2 omega tau_k)) / 2 on s_{+-} = -1/tau +- i omega
    const double gamma = 1.0, tau_k = 25.0;
    const double b = tune_B(gamma, tau_k, 1.0, 1);
    const ExpKernelParams p(gamma, b, tau_k);
    const double w = std::sqrt(p.omega_squared());
    const double tau0 = 1.0 / (2.0 * gamma);
    const PartialFraction pf =
        partial_fractions(lambda_tilde(Complex(-2.0 * gamma), Complex(-1.0), MemoryKernel(ExpDecayKernel{b, tau_k})));
    for (const auto& term : pf.terms) {
        const double sign = term.root.imag() > 0 ? 1.0 : -1.0;
        const Complex expect = 0.5 * Complex(1.0, sign * (tau_k / tau0 - 1.0) / (2.0 * w * tau_k));
        EXPECT_NEAR(std::abs(term.coefficients[0] - expect), 0.0, 1e-10);
    }
}

TEST(PartialFractions, DoublePole) {
    // 1/(s+1)^2
    const RationalFn r{Polynomial::from_real({1.0}), Polynomial::from_real({1.0, 2.0, 1.0})};
    const PartialFraction pf = partial_fractions(r);
    ASSERT_EQ(pf.terms.size(), 1u);
    EXPECT_EQ(pf.terms[0].multiplicity, 2);
    EXPECT_NEAR(std::abs(pf.terms[0].root - Complex(-1.0)), 0.0, 1e-7);
    EXPECT_NEAR(std::abs(pf.terms[0].coefficients[0]), 0.0, 1e-7);
    EXPECT_NEAR(std::abs(pf.terms[0].coefficients[1] - Complex(1.0)), 0.0, 1e-7);
    // t e^{-t}
    EXPECT_NEAR(pf_eval_time(pf, 2.0).real(), 2.0 * std::exp(-2.0), 1e-7);
}

TEST(PartialFractions, AmbiguousClusterRejected) {
    // roots 5e-7 apart: inside [1e-7, 1e-6]
    const Polynomial q = Polynomial::monomial_root(Complex(-1.0)) * Polynomial::monomial_root(Complex(-1.0 - 5e-7));
    EXPECT_THROW(partial_fractions(RationalFn{Polynomial::from_real({1.0}), q}), IllConditioned);
}

TEST(PartialFractions, DegreeCheck) {
    EXPECT_THROW(partial_fractions(RationalFn{Polynomial::from_real({1.0, 1.0}), Polynomial::from_real({1.0, 1.0})}),
                 InvalidArgument);
}

TEST(PartialFractions, ReconstructionAtRandomPoints) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const std::vector<MemoryKernel> kernels = {MemoryKernel(ExpDecayKernel{2.0, 5.0}),
                                               MemoryKernel(ModulatedExpKernel{1.5, 2.0, 3.0}),
                                               MemoryKernel(RationalKernel{{1.0, 0.5}, {2.0, 2.0, 1.0}})};
    for (const auto& k : kernels) {
        for (Complex mu : {Complex(-1.0), Complex(-4.0), Complex(0.5)}) {
            const RationalFn r = lambda_tilde(Complex(-1.3), mu, k);
            const PartialFraction pf = partial_fractions(r);
            for (int i = 0; i < 20; ++i) {
                const Complex s(u(rng), u(rng));
                const Complex a = r(s), b = pf(s);
                EXPECT_LT(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(a)));
            }
            // initial value theorem
            EXPECT_NEAR(std::abs(pf_eval_time(pf, 0.0) - Complex(1.0)), 0.0, 1e-10);
        }
    }
}

TEST(PfEvalTime, Examples) {
    const PartialFraction one = partial_fractions(RationalFn{Polynomial::from_real({1.0}), Polynomial::monomial_root(Complex(-0.7))});
    EXPECT_NEAR(pf_eval_time(one, 1.3).real(), std::exp(-0.7 * 1.3), 1e-14);

    const double b = tune_B(1.0, 25.0, 1.0, 1);
    const PartialFraction pf =
        partial_fractions(lambda_tilde(Complex(-2.0), Complex(-1.0), MemoryKernel(ExpDecayKernel{b, 25.0})));
    EXPECT_NEAR(pf_eval_time(pf, 0.0).real(), 1.0, 1e-12);
    const Complex at1 = pf_eval_time(pf, 1.0);
    EXPECT_NEAR(at1.real(), 0.36059494017307803, 1e-9);
    EXPECT_LT(std::abs(at1.imag()), 1e-10);
}

TEST(Reduce, CancelsCommonRoot) {
    // (s+1)/((s+1)(s+2)) -> 1/(s+2)
    const RationalFn r{Polynomial::from_real({1.0, 1.0}), Polynomial::from_real({2.0, 3.0, 1.0})};
    const RationalFn red = reduce(r);
    EXPECT_EQ(red.numerator.degree(), 0);
    EXPECT_EQ(red.denominator.degree(), 1);
    EXPECT_NEAR(std::abs(red(Complex(1.0)) - Complex(1.0 / 3.0)), 0.0, 1e-12);
}

TEST(Power, MatchesRepeatedProduct) {
    const RationalFn r{Polynomial::from_real({1.0}), Polynomial::from_real({2.0, 1.0})};
    const RationalFn r3 = power(r, 3);
    EXPECT_NEAR(std::abs(r3(Complex(1.0)) - Complex(1.0 / 27.0)), 0.0, 1e-14);
    EXPECT_THROW(power(r, 0), InvalidArgument);
}
