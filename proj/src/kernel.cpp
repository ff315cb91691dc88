// kernel.cpp: memory kernels, Laplace forms and the OU sampler

#include "gmn/kernel.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gmn/errors.hpp"
#include "gmn/rational.hpp"

namespace gmn {

namespace {

void check_memory_time(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw InvalidArgument("MemoryKernel: memory time must be positive and finite");
    }
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

MemoryKernel::MemoryKernel(DeltaKernel k) : v_(k) {
    if (k.weight < 0.0) throw InvalidArgument("DeltaKernel: weight must be >= 0");
}

MemoryKernel::MemoryKernel(ExpDecayKernel k) : v_(k) {
    check_memory_time(k.memory_time);
}

MemoryKernel::MemoryKernel(ModulatedExpKernel k) : v_(k) {
    check_memory_time(k.memory_time);
    if (k.frequency < 0.0) throw InvalidArgument("ModulatedExpKernel: frequency must be >= 0");
}

MemoryKernel::MemoryKernel(RationalKernel k) : v_(k) {
    const Polynomial p = Polynomial::from_real(k.numerator);
    const Polynomial q = Polynomial::from_real(k.denominator);
    if (q.degree() < 1) throw InvalidArgument("RationalKernel: denominator degree must be >= 1");
    if (p.degree() >= q.degree()) throw InvalidArgument("RationalKernel: need deg p < deg q");
    if (p.degree() >= 1) {
        const RationalFn reduced = reduce(RationalFn{p, q});
        if (reduced.denominator.degree() != q.degree()) {
            throw InvalidArgument("RationalKernel: p and q share a root");
        }
    }
}

double eval_time(const MemoryKernel& k, double t) {
    if (t < 0.0) throw InvalidArgument("eval_time: t must be >= 0");
    return std::visit(
        overloaded{
            [](const DeltaKernel&) -> double {
                throw DeltaNotEvaluable("eval_time: the delta kernel is a distribution");
            },
            [t](const ExpDecayKernel& e) {
                return e.amplitude * e.amplitude * std::exp(-t / e.memory_time);
            },
            [t](const ModulatedExpKernel& m) {
                return m.amplitude * m.amplitude * std::exp(-t / m.memory_time) * std::cos(m.frequency * t);
            },
            [t](const RationalKernel& r) {
                const RationalFn fn{Polynomial::from_real(r.numerator), Polynomial::from_real(r.denominator)};
                return pf_eval_time(partial_fractions(fn), t).real();
            },
        },
        k.variant());
}

KernelLaplace to_rational(const MemoryKernel& k) {
    return std::visit(
        overloaded{
            [](const DeltaKernel& d) {
                return KernelLaplace{Polynomial::constant(d.weight), Polynomial::constant(1.0), true};
            },
            [](const ExpDecayKernel& e) {
                const double b2 = e.amplitude * e.amplitude;
                return KernelLaplace{Polynomial::constant(b2),
                                     Polynomial::from_real({1.0 / e.memory_time, 1.0}), false};
            },
            [](const ModulatedExpKernel& m) {
                // B^2 (s + a) / ((s + a)^2 + nu^2), a = 1/tau_k
                const double b2 = m.amplitude * m.amplitude;
                const double a = 1.0 / m.memory_time;
                return KernelLaplace{Polynomial::from_real({b2 * a, b2}),
                                     Polynomial::from_real({a * a + m.frequency * m.frequency, 2.0 * a, 1.0}),
                                     false};
            },
            [](const RationalKernel& r) {
                return KernelLaplace{Polynomial::from_real(r.numerator), Polynomial::from_real(r.denominator),
                                     false};
            },
        },
        k.variant());
}

NoisePath sample_process(const MemoryKernel& k, double dt, std::size_t n, std::uint64_t seed) {
    const auto* e = k.get_if<ExpDecayKernel>();
    if (e == nullptr) throw Unsupported("sample_process: only the exponential kernel has an OU sampler");
    if (!(dt > 0.0)) throw InvalidArgument("sample_process: step must be positive");
    if (n < 1) throw InvalidArgument("sample_process: need at least one sample");

    NoisePath path{dt, std::vector<double>(n), seed};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sd = std::abs(e->amplitude);
    const double a = std::exp(-dt / e->memory_time);
    const double kick = sd * std::sqrt(1.0 - a * a);

    path.samples[0] = sd * normal(rng);
    for (std::size_t i = 1; i < n; ++i) path.samples[i] = a * path.samples[i - 1] + kick * normal(rng);
    return path;
}

} // namespace gmn
