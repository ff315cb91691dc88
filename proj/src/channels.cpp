// channels.cpp: closed-form Lambda(t), kernel tuning, revival times, CP envelope

#include "gmn/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gmn/errors.hpp"

namespace gmn {

using std::numbers::pi;

ExpKernelParams::ExpKernelParams(double gamma, double amplitude, double memory_time)
    : gamma_(gamma), amplitude_(amplitude), memory_time_(memory_time) {
    if (gamma < 0.0) throw InvalidArgument("ExpKernelParams: gamma must be >= 0");
    if (!(memory_time > 0.0)) throw InvalidArgument("ExpKernelParams: tau_k must be > 0");
    decay_rate_ = gamma + 0.5 / memory_time;
    offset_ = gamma - 0.5 / memory_time;
    omega_sq_ = amplitude * amplitude - offset_ * offset_;
}

double ExpKernelParams::background_time() const {
    return gamma_ > 0.0 ? 0.5 / gamma_ : std::numeric_limits<double>::infinity();
}

Complex ExpKernelParams::omega() const {
    return std::sqrt(Complex(omega_sq_, 0.0));
}

OmegaBranch ExpKernelParams::branch() const {
    if (std::sqrt(std::abs(omega_sq_)) < kOmegaZeroBand) return OmegaBranch::Zero;
    return omega_sq_ > 0.0 ? OmegaBranch::Real : OmegaBranch::Imaginary;
}

double ExpKernelParams::phi() const {
    if (branch() != OmegaBranch::Real) throw NonOscillatory("ExpKernelParams::phi: omega is not real");
    return std::atan(offset_ / std::sqrt(omega_sq_));
}

double lambda_exp(const ExpKernelParams& p, double t) {
    if (t < 0.0) throw InvalidArgument("lambda_exp: t must be >= 0");
    const double envelope = std::exp(-t * p.decay_rate());
    switch (p.branch()) {
    case OmegaBranch::Real: {
        const double w = std::sqrt(p.omega_squared());
        return envelope * (std::cos(w * t) - (p.offset() / w) * std::sin(w * t));
    }
    case OmegaBranch::Zero:
        return envelope * (1.0 - p.offset() * t);
    case OmegaBranch::Imaginary: {
        // cosh(wt) - (offset/w) sinh(wt) folded into the exponentials to avoid overflow
        const double w = std::sqrt(-p.omega_squared());
        const double r = p.offset() / w;
        return 0.5 * (1.0 - r) * std::exp((w - p.decay_rate()) * t) +
               0.5 * (1.0 + r) * std::exp((-w - p.decay_rate()) * t);
    }
    }
    return 0.0;
}

double tune_B(double gamma, double memory_time, double period, int n) {
    if (!(period > 0.0)) throw InvalidArgument("tune_B: period must be > 0");
    if (n < 1) throw InvalidArgument("tune_B: n must be >= 1");
    if (!(memory_time > 0.0)) throw InvalidArgument("tune_B: tau_k must be > 0");
    const double w = 2.0 * pi * n / period;
    const double off = gamma - 0.5 / memory_time;
    return std::sqrt(w * w + off * off);
}

std::vector<double> revival_times(const ExpKernelParams& p, int n_max) {
    if (p.branch() != OmegaBranch::Real) {
        throw NonOscillatory("revival_times: omega is not real");
    }
    const double w = std::sqrt(p.omega_squared());
    const double phi = p.phi();
    std::vector<double> out;
    for (int n = 1; n <= n_max; ++n) {
        out.push_back(2.0 * pi * n / w);
        out.push_back((2.0 * pi * n - 2.0 * phi) / w);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }),
              out.end());
    return out;
}

double effective_gamma_exp(const ExpKernelParams& p) {
    if (p.branch() == OmegaBranch::Imaginary) {
        throw NonOscillatory("effective_gamma_exp: omega is not real");
    }
    return 0.5 * (p.gamma() + 0.5 / p.memory_time());
}

ModKernelParams::ModKernelParams(double gamma, double memory_time, double frequency)
    : gamma_(gamma), memory_time_(memory_time), frequency_(frequency) {
    if (gamma < 0.0) throw InvalidArgument("ModKernelParams: gamma must be >= 0");
    if (!(memory_time > 0.0)) throw InvalidArgument("ModKernelParams: tau_k must be > 0");
    if (frequency < 0.0) throw InvalidArgument("ModKernelParams: nu must be >= 0");
    const double a = 2.0 * gamma - 1.0 / memory_time;
    b2_ = (2.0 / 9.0) * a * a + 2.0 * frequency * frequency;
    decay_rate_ = (2.0 * gamma + 2.0 / memory_time) / 3.0;
    omega_sq_ = 3.0 * frequency * frequency - a * a / 9.0;
}

double ModKernelParams::amplitude() const {
    return std::sqrt(b2_);
}

double ModKernelParams::omega() const {
    if (!omega_is_real()) {
        throw ComplexOmega("ModKernelParams: omega^2 = " + std::to_string(omega_sq_) + " is not positive");
    }
    return std::sqrt(omega_sq_);
}

double ModKernelParams::c0() const {
    const double a = 2.0 * gamma_ - 1.0 / memory_time_;
    return (a * a + 9.0 * frequency_ * frequency_) / (9.0 * omega() * omega());
}

double ModKernelParams::phi() const {
    // R cos(phi) = 1 - c0 and R sin(phi) = (2 gamma - tau^{-1}) / omega, which
    // makes Lambda'(0) = -2 gamma.
    return std::atan2((2.0 * gamma_ - decay_rate_) / omega(), 1.0 - c0());
}

std::vector<Complex> ModKernelParams::poles() const {
    const double w = omega();
    return {Complex(-decay_rate_, 0.0), Complex(-decay_rate_, w), Complex(-decay_rate_, -w)};
}

double lambda_modulated(const ModKernelParams& p, double t) {
    if (t < 0.0) throw InvalidArgument("lambda_modulated: t must be >= 0");
    const double w = p.omega();
    const double c0 = p.c0();
    const double s = (2.0 * p.gamma() - p.decay_rate()) / w;
    return std::exp(-t * p.decay_rate()) * (c0 + (1.0 - c0) * std::cos(w * t) - s * std::sin(w * t));
}

double effective_gamma_mod(const ModKernelParams& p) {
    if (!p.omega_is_real()) throw ComplexOmega("effective_gamma_mod: omega is not real");
    return (p.gamma() + 1.0 / p.memory_time()) / 3.0;
}

Polynomial modulated_cubic(double gamma, double memory_time, double frequency, double amplitude_squared) {
    const double a = 1.0 / memory_time;
    const double nu2 = frequency * frequency;
    return Polynomial::from_real({2.0 * gamma * (a * a + nu2) + amplitude_squared * a,
                                  nu2 + amplitude_squared + 4.0 * gamma * a + a * a, 2.0 * (gamma + a), 1.0});
}

CpEnvelopeReport cp_envelope_exp(const ExpKernelParams& p) {
    CpEnvelopeReport r;
    r.branch = p.branch();
    const double rate = p.decay_rate();
    switch (r.branch) {
    case OmegaBranch::Real: {
        const double w = std::sqrt(p.omega_squared());
        const double chi_minus = p.offset() / w;
        const double chi_plus = rate / w;
        r.turning_ratio = std::sqrt((1.0 + chi_minus * chi_minus) / (1.0 + chi_plus * chi_plus));
        // Turning points solve tan(omega t + phi) = -1/(omega tau).
        const double theta0 = std::atan(-1.0 / (w / rate));
        const double phi = p.phi();
        double t_hat = (theta0 - phi) / w;
        while (t_hat <= 1e-14 * std::max(1.0, 1.0 / w)) t_hat += pi / w;
        r.first_turning_time = t_hat;
        r.turning_value = std::exp(-t_hat * rate) * r.turning_ratio;
        r.is_cp = r.turning_ratio <= 1.0 + 1e-12 && r.turning_value <= 1.0;
        break;
    }
    case OmegaBranch::Zero:
        // |1 - offset t| <= 1 + tau^{-1} t <= e^{t/tau} whenever |offset| <= tau^{-1}
        r.is_cp = std::abs(p.offset()) <= rate * (1.0 + 1e-12);
        break;
    case OmegaBranch::Imaginary: {
        const double w = std::sqrt(-p.omega_squared());
        r.envelope_decreasing = w <= rate * (1.0 + 1e-12);
        r.is_cp = r.envelope_decreasing;
        break;
    }
    }
    r.max_abs_lambda = std::max(1.0, r.turning_value);
    return r;
}

ComplexMatrix pauli_channel_apply(double lambda, int axis, int qubits, const ComplexMatrix& x) {
    const ComplexMatrix a = pauli_power(axis, qubits);
    if (x.rows() != a.rows() || x.cols() != a.cols()) {
        throw DimensionMismatch("pauli_channel_apply: operand dimension does not match 2^N");
    }
    const double p = 0.5 * (1.0 - lambda);
    return (1.0 - p) * x + p * (a * x * a);
}

SuperOp pauli_channel(double lambda, int axis, int qubits) {
    const ComplexMatrix a = pauli_power(axis, qubits);
    const double p = 0.5 * (1.0 - lambda);
    return SuperOp::identity(a.rows()) * Complex(1.0 - p) + sandwich_superop(a, a) * Complex(p);
}

void ThermalParams::validate() const {
    if (!(gamma_minus > 0.0)) throw InvalidArgument("ThermalParams: gamma_minus must be > 0");
    if (gamma_plus < 0.0 || gamma_z < 0.0) throw InvalidArgument("ThermalParams: rates must be >= 0");
    if (!(tau_k > 0.0)) throw InvalidArgument("ThermalParams: tau_k must be > 0");
}

QuantumState thermal_steady_state(double x) {
    if (x < 0.0) throw InvalidArgument("thermal_steady_state: x must be >= 0");
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 1.0 / (1.0 + x);
    rho(1, 1) = x / (1.0 + x);
    return QuantumState::from_matrix(rho);
}

} // namespace gmn
