// polynomial.hpp: dense complex polynomials in s, ascending coefficient order

#pragma once

#include <vector>

#include "gmn/operator_core.hpp"

namespace gmn {

/// p(s) = c[0] + c[1] s + ... + c[n] s^n
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);
    static Polynomial from_real(const std::vector<double>& coeffs);
    static Polynomial constant(Complex c);
    /// s - root
    static Polynomial monomial_root(Complex root);

    const std::vector<Complex>& coeffs() const { return c_; }
    /// Degree after trimming exact trailing zeros; -1 for the zero polynomial.
    int degree() const;
    Complex leading() const;
    bool is_zero() const { return degree() < 0; }

    Complex operator()(Complex s) const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(Complex k) const;

    Polynomial derivative() const;

    /// Synthetic division by (s - root); the remainder p(root) is dropped.
    Polynomial deflate(Complex root) const;

    /// Coefficients of q(u) = p(u + r).
    Polynomial shifted(Complex r) const;

    /// Roots from the eigenvalues of the companion matrix.
    std::vector<Complex> roots() const;

private:
    std::vector<Complex> c_;
};

} // namespace gmn
