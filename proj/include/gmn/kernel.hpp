// kernel.hpp: memory kernels k(t) with exact Laplace forms, and a sampler for
// the stationary Gaussian noise whose autocorrelation is the kernel

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "gmn/polynomial.hpp"

namespace gmn {

/// k(t) = w delta(t)
struct DeltaKernel {
    double weight = 1.0;
};

/// k(t) = B^2 exp(-t / tau_k)
struct ExpDecayKernel {
    double amplitude = 0.0;   // B
    double memory_time = 1.0; // tau_k
};

/// k(t) = B^2 exp(-t / tau_k) cos(nu t)
struct ModulatedExpKernel {
    double amplitude = 0.0;
    double memory_time = 1.0;
    double frequency = 0.0; // nu
};

/// Laplace transform p(s)/q(s) given directly, real coefficients in ascending order.
struct RationalKernel {
    std::vector<double> numerator;
    std::vector<double> denominator;
};

/// Tagged union over the supported kernel families. Construction validates
/// the invariants (tau_k > 0, deg p < deg q, no common roots of p and q).
class MemoryKernel {
public:
    using Variant = std::variant<DeltaKernel, ExpDecayKernel, ModulatedExpKernel, RationalKernel>;

    MemoryKernel(DeltaKernel k);
    MemoryKernel(ExpDecayKernel k);
    MemoryKernel(ModulatedExpKernel k);
    MemoryKernel(RationalKernel k);

    const Variant& variant() const { return v_; }
    bool is_delta() const { return std::holds_alternative<DeltaKernel>(v_); }

    template <class T>
    const T* get_if() const { return std::get_if<T>(&v_); }

private:
    Variant v_;
};

/// Laplace transform p(s)/q(s). For a delta kernel `is_constant` is set and the
/// transform is the constant p/q = w (deg p = deg q = 0).
struct KernelLaplace {
    Polynomial numerator;
    Polynomial denominator;
    bool is_constant = false;

    Complex operator()(Complex s) const { return numerator(s) / denominator(s); }
};

/// k(t) for t >= 0. Throws DeltaNotEvaluable for the delta kernel.
double eval_time(const MemoryKernel& k, double t);

KernelLaplace to_rational(const MemoryKernel& k);

struct NoisePath {
    double step = 0.0;
    std::vector<double> samples;
    std::uint64_t seed = 0;
};

/// Exact Ornstein-Uhlenbeck discretization: B_{n+1} = a B_n + sqrt(1 - a^2) B xi_n
/// with a = exp(-dt / tau_k) and B_0 drawn from the stationary law N(0, B^2).
/// Throws Unsupported for anything but ExpDecay.
NoisePath sample_process(const MemoryKernel& k, double dt, std::size_t n, std::uint64_t seed);

} // namespace gmn
