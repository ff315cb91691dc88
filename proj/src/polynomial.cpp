// polynomial.cpp: complex polynomials: arithmetic, deflation, companion roots

#include "gmn/polynomial.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "gmn/errors.hpp"

namespace gmn {

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == Complex(0.0)) c_.pop_back();
}

Polynomial Polynomial::from_real(const std::vector<double>& coeffs) {
    return Polynomial(std::vector<Complex>(coeffs.begin(), coeffs.end()));
}

Polynomial Polynomial::constant(Complex c) {
    return Polynomial(std::vector<Complex>{c});
}

Polynomial Polynomial::monomial_root(Complex root) {
    return Polynomial(std::vector<Complex>{-root, Complex(1.0)});
}

int Polynomial::degree() const {
    return static_cast<int>(c_.size()) - 1;
}

Complex Polynomial::leading() const {
    return c_.empty() ? Complex(0.0) : c_.back();
}

Complex Polynomial::operator()(Complex s) const {
    Complex acc(0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<Complex> out(std::max(c_.size(), rhs.c_.size()), Complex(0.0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) out[i] += rhs.c_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    return *this + rhs * Complex(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (c_.empty() || rhs.c_.empty()) return Polynomial();
    std::vector<Complex> out(c_.size() + rhs.c_.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += c_[i] * rhs.c_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(Complex k) const {
    std::vector<Complex> out(c_);
    for (auto& v : out) v *= k;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Complex> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<double>(i);
    return Polynomial(std::move(out));
}

Polynomial Polynomial::deflate(Complex root) const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Complex> q(c_.size() - 1);
    Complex carry(0.0);
    for (std::size_t k = c_.size() - 1; k >= 1; --k) {
        carry = c_[k] + carry * root;
        q[k - 1] = carry;
    }
    return Polynomial(std::move(q));
}

Polynomial Polynomial::shifted(Complex r) const {
    // Repeated synthetic division: the remainders are the Taylor coefficients at r.
    std::vector<Complex> work(c_);
    std::vector<Complex> out;
    out.reserve(c_.size());
    while (!work.empty()) {
        Complex carry(0.0);
        for (std::size_t k = work.size(); k-- > 0;) {
            carry = work[k] + carry * r;
            work[k] = carry;
        }
        out.push_back(work.front());
        work.erase(work.begin());
    }
    return Polynomial(std::move(out));
}

std::vector<Complex> Polynomial::roots() const {
    const int n = degree();
    if (n < 0) throw InvalidArgument("Polynomial::roots: zero polynomial");
    if (n == 0) return {};
    const Complex lead = leading();
    ComplexMatrix comp = ComplexMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c_[static_cast<std::size_t>(i)] / lead;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(comp, false);
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return out;
}

} // namespace gmn
