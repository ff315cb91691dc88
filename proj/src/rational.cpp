// rational.cpp: rational functions, partial fractions, inverse Laplace

#include "gmn/rational.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "gmn/errors.hpp"

namespace gmn {

Complex PartialFraction::operator()(Complex s) const {
    Complex acc(0.0);
    for (const auto& term : terms) {
        Complex denom(1.0);
        for (int n = 1; n <= term.multiplicity; ++n) {
            denom *= (s - term.root);
            acc += term.coefficients[static_cast<std::size_t>(n - 1)] / denom;
        }
    }
    return acc;
}

namespace {

double magnitude_scale(const Polynomial& p, Complex z) {
    double scale = 0.0;
    double zp = 1.0;
    for (const auto& c : p.coeffs()) {
        scale += std::abs(c) * zp;
        zp *= std::abs(z);
    }
    return scale;
}

} // namespace

PartialFraction partial_fractions(const RationalFn& r, const PartialFractionOptions& opts) {
    const int deg_q = r.denominator.degree();
    if (deg_q < 0) throw InvalidArgument("partial_fractions: zero denominator");
    if (r.numerator.degree() >= deg_q) {
        throw InvalidArgument("partial_fractions: need deg P < deg Q (got " +
                              std::to_string(r.numerator.degree()) + " >= " + std::to_string(deg_q) + ")");
    }
    PartialFraction pf;
    if (r.numerator.is_zero()) return pf;

    const Complex lead = r.denominator.leading();
    const Polynomial q = r.denominator * (1.0 / lead);
    const Polynomial p = r.numerator * (1.0 / lead);
    const std::vector<Complex> roots = q.roots();
    const std::size_t n = roots.size();
    const double tol = opts.cluster_tol;

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = std::abs(roots[i] - roots[j]);
            if (dist < tol) {
                parent[find(i)] = find(j);
            } else if (dist <= 10.0 * tol) {
                throw IllConditioned("partial_fractions: roots " + std::to_string(dist) +
                                     " apart, inside the ambiguity band [" + std::to_string(tol) + ", " +
                                     std::to_string(10.0 * tol) + "]");
            }
        }
    }

    std::vector<std::vector<std::size_t>> clusters;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(clusters.size());
            clusters.emplace_back();
        }
        clusters[static_cast<std::size_t>(slot[root])].push_back(i);
    }

    for (const auto& cluster : clusters) {
        Complex root(0.0);
        for (std::size_t i : cluster) root += roots[i];
        root /= static_cast<double>(cluster.size());
        const int m = static_cast<int>(cluster.size());

        // Q = (s - root)^m * rest
        Polynomial rest = q;
        for (int k = 0; k < m; ++k) rest = rest.deflate(root);

        // Taylor coefficients of P/rest around the root, via shifted polynomials.
        const Polynomial p_shift = p.shifted(root);
        const Polynomial rest_shift = rest.shifted(root);
        const std::vector<Complex>& a = p_shift.coeffs();
        const std::vector<Complex>& b = rest_shift.coeffs();
        std::vector<Complex> f(static_cast<std::size_t>(m), Complex(0.0));
        for (int k = 0; k < m; ++k) {
            Complex acc = static_cast<std::size_t>(k) < a.size() ? a[static_cast<std::size_t>(k)] : Complex(0.0);
            for (int j = 1; j <= k; ++j) {
                if (static_cast<std::size_t>(j) < b.size()) {
                    acc -= b[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(k - j)];
                }
            }
            f[static_cast<std::size_t>(k)] = acc / b.front();
        }
        PoleTerm term{root, m, std::vector<Complex>(static_cast<std::size_t>(m))};
        for (int nn = 1; nn <= m; ++nn) {
            term.coefficients[static_cast<std::size_t>(nn - 1)] = f[static_cast<std::size_t>(m - nn)];
        }
        pf.terms.push_back(std::move(term));
    }
    return pf;
}

Complex pf_eval_time(const PartialFraction& pf, double t) {
    Complex acc(0.0);
    for (const auto& term : pf.terms) {
        Complex poly(0.0);
        double tp = 1.0; // t^{n-1}/(n-1)!
        for (int n = 1; n <= term.multiplicity; ++n) {
            poly += term.coefficients[static_cast<std::size_t>(n - 1)] * tp;
            tp *= t / static_cast<double>(n);
        }
        acc += poly * std::exp(term.root * t);
    }
    return acc;
}

RationalFn reduce(const RationalFn& r, double tol) {
    RationalFn out = r;
    bool changed = true;
    while (changed && out.numerator.degree() > 0 && out.denominator.degree() > 0) {
        changed = false;
        const std::vector<Complex> zs = out.numerator.roots();
        const std::vector<Complex> ps = out.denominator.roots();
        for (const Complex& z : zs) {
            const double scale = magnitude_scale(out.denominator, z);
            if (std::abs(out.denominator(z)) > tol * std::max(scale, 1.0)) continue;
            std::size_t best = 0;
            for (std::size_t i = 1; i < ps.size(); ++i) {
                if (std::abs(ps[i] - z) < std::abs(ps[best] - z)) best = i;
            }
            out.numerator = out.numerator.deflate(z);
            out.denominator = out.denominator.deflate(ps[best]);
            changed = true;
            break;
        }
    }
    return out;
}

RationalFn power(const RationalFn& r, int k) {
    if (k < 1) throw InvalidArgument("power: exponent must be >= 1");
    RationalFn out = r;
    for (int i = 1; i < k; ++i) {
        out.numerator = out.numerator * r.numerator;
        out.denominator = out.denominator * r.denominator;
    }
    return out;
}

} // namespace gmn
