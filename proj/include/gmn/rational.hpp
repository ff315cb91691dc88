// rational.hpp: rational functions of s, partial fractions, and their inverse
// Laplace transform

#pragma once

#include <vector>

#include "gmn/polynomial.hpp"

namespace gmn {

/// P(s)/Q(s) with deg P < deg Q. Coefficients are complex so that blocks with
/// complex eigenvalues reuse the same machinery; real kernels give real ones.
struct RationalFn {
    Polynomial numerator;
    Polynomial denominator;

    Complex operator()(Complex s) const { return numerator(s) / denominator(s); }
};

/// sum_n c_n / (s - root)^n, n = 1..multiplicity; coefficients[n-1] = c_n.
struct PoleTerm {
    Complex root;
    int multiplicity = 1;
    std::vector<Complex> coefficients;
};

struct PartialFraction {
    std::vector<PoleTerm> terms;

    /// Evaluate as a function of s (reconstruction check).
    Complex operator()(Complex s) const;
};

struct PartialFractionOptions {
    double cluster_tol = 1e-7;
};

/// Roots of Q from companion-matrix eigenvalues, multiplicities by clustering,
/// coefficients by repeated synthetic deflation and a Taylor expansion at each
/// root. Throws IllConditioned when two roots sit in [tol, 10 tol] of each other.
PartialFraction partial_fractions(const RationalFn& r, const PartialFractionOptions& opts = {});

/// sum_j (sum_n c_n t^{n-1}/(n-1)!) e^{s_j t}
Complex pf_eval_time(const PartialFraction& pf, double t);

/// Cancels roots shared by numerator and denominator (relative tolerance).
RationalFn reduce(const RationalFn& r, double tol = 1e-9);

/// r^k for integer k >= 1.
RationalFn power(const RationalFn& r, int k);

} // namespace gmn
