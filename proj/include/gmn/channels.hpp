// channels.hpp: closed-form coherence factors Lambda(t) for the dephasing
// channel assisted by exponential and modulated memory kernels

#pragma once

#include <vector>

#include "gmn/operator_core.hpp"
#include "gmn/polynomial.hpp"

namespace gmn {

enum class OmegaBranch { Real, Zero, Imaginary };

/// Background dephasing rate gamma plus kernel B^2 exp(-t/tau_k) acting on the
/// decaying block (L1 eigenvalue -1 absorbed into B).
class ExpKernelParams {
public:
    ExpKernelParams(double gamma, double amplitude, double memory_time);

    double gamma() const { return gamma_; }
    double amplitude() const { return amplitude_; }
    double memory_time() const { return memory_time_; }

    /// tau_0 = 1/(2 gamma); infinite when gamma = 0.
    double background_time() const;
    /// tau^{-1} = (tau_0^{-1} + tau_k^{-1}) / 2 = gamma + 1/(2 tau_k)
    double decay_rate() const { return decay_rate_; }
    /// gamma - 1/(2 tau_k)
    double offset() const { return offset_; }
    /// B^2 - offset^2
    double omega_squared() const { return omega_sq_; }
    /// sqrt(omega_squared) on the principal complex branch.
    Complex omega() const;
    /// |omega| < 1e-6 selects the analytic omega -> 0 limit.
    OmegaBranch branch() const;
    /// tan(phi) = offset / omega; only meaningful on the real branch.
    double phi() const;

private:
    double gamma_;
    double amplitude_;
    double memory_time_;
    double decay_rate_;
    double offset_;
    double omega_sq_;
};

inline constexpr double kOmegaZeroBand = 1e-6;

/// Lambda(t) on all three omega branches; Lambda(0) = 1.
double lambda_exp(const ExpKernelParams& p, double t);

/// B with omega T = 2 pi n.
double tune_B(double gamma, double memory_time, double period, int n);

/// Both revival families {2 pi n / omega} and {(2 pi n - 2 phi) / omega},
/// n = 1..n_max, merged, sorted and de-duplicated. Throws NonOscillatory unless
/// omega is real and outside the zero band.
std::vector<double> revival_times(const ExpKernelParams& p, int n_max);

/// (gamma + 1/(2 tau_k)) / 2
double effective_gamma_exp(const ExpKernelParams& p);

/// Modulated kernel B^2 exp(-t/tau_k) cos(nu t) with B fixed by
/// B^2 = (2/9)(2 gamma - 1/tau_k)^2 + 2 nu^2, which puts all three poles on
/// Re s = -tau^{-1}.
class ModKernelParams {
public:
    ModKernelParams(double gamma, double memory_time, double frequency);

    double gamma() const { return gamma_; }
    double memory_time() const { return memory_time_; }
    double frequency() const { return frequency_; }
    double amplitude_squared() const { return b2_; }
    double amplitude() const;
    /// (2 gamma + 2/tau_k) / 3
    double decay_rate() const { return decay_rate_; }
    double omega_squared() const { return omega_sq_; }
    bool omega_is_real() const { return omega_sq_ > 0.0; }
    /// Throws ComplexOmega when omega^2 <= 0.
    double omega() const;
    double c0() const;
    double phi() const;
    /// Poles -tau^{-1}, -tau^{-1} +- i omega.
    std::vector<Complex> poles() const;

private:
    double gamma_;
    double memory_time_;
    double frequency_;
    double b2_;
    double decay_rate_;
    double omega_sq_;
};

/// e^{-t/tau} [c0 + (1 - c0) cos(omega t + phi) / cos(phi)]. Throws ComplexOmega.
double lambda_modulated(const ModKernelParams& p, double t);

/// (gamma + 1/tau_k) / 3
double effective_gamma_mod(const ModKernelParams& p);

/// Denominator cubic of Lambda~(s) for the modulated kernel with general B^2.
Polynomial modulated_cubic(double gamma, double memory_time, double frequency, double amplitude_squared);

struct CpEnvelopeReport {
    OmegaBranch branch = OmegaBranch::Real;
    /// Real branch: sqrt((1 + chi_-^2)/(1 + chi_+^2)), the turning-point value of
    /// |cos(omega t + phi)| / cos(phi).
    double turning_ratio = 0.0;
    /// First turning point strictly after t = 0 (real branch), else 0.
    double first_turning_time = 0.0;
    /// |Lambda| at that turning point; bounds |Lambda(t)| for all later t.
    double turning_value = 0.0;
    /// Imaginary branch: d Lambda*/dt <= 0 for the monotone envelope.
    bool envelope_decreasing = true;
    /// sup_{t >= 0} |Lambda(t)|, attained at t = 0 when the channel is CP.
    double max_abs_lambda = 1.0;
    bool is_cp = false;
};

CpEnvelopeReport cp_envelope_exp(const ExpKernelParams& p);

/// (1 - p) X + p A_k X A_k with p = (1 - Lambda)/2.
ComplexMatrix pauli_channel_apply(double lambda, int axis, int qubits, const ComplexMatrix& x);

/// The same map as a superoperator.
SuperOp pauli_channel(double lambda, int axis, int qubits);

/// Thermal qubit: background decay/excitation rates, added dephasing rate
/// and kernel memory time.
struct ThermalParams {
    double gamma_minus = 1.0;
    double gamma_plus = 0.5;
    double gamma_z = 2.0;
    double tau_k = 5.0;

    /// Throws InvalidArgument unless gamma_- > 0, gamma_+ >= 0, gamma_z >= 0, tau_k > 0.
    void validate() const;
    double total_rate() const { return gamma_minus + gamma_plus; }
    double ratio() const { return gamma_plus / gamma_minus; }
};

/// (|0><0| + x |1><1|) / (1 + x)
QuantumState thermal_steady_state(double x);

} // namespace gmn
