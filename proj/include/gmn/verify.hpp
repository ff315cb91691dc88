// verify.hpp: self-check suite run by `gmn verify` (cross-solver oracles,
// spectral algebra, convergence, Monte-Carlo and Choi scans)

#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "gmn/channels.hpp"

namespace gmn {

enum class VerifyLevel { Fast, Full };

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
    std::vector<std::string> table; // optional extra lines (e.g. Monte-Carlo columns)
    double seconds = 0.0;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool passed() const;
    std::vector<std::string> failed_names() const;
};

struct VerifyOptions {
    /// Closed form under test in analytic-vs-embedded; swapped out by the
    /// mutation fixture.
    std::function<double(const ExpKernelParams&, double)> lambda_exp_impl = lambda_exp;
};

/// Fast: analytic-vs-embedded, analytic-vs-laplace, projector-algebra.
/// Full adds volterra-convergence, monte-carlo-weak-coupling, choi-scan.
VerifyReport run_verify(VerifyLevel level, const VerifyOptions& opts = {});

void print_report(const VerifyReport& r, std::ostream& out);

/// Mutation fixture: the closed form with the sign of phi flipped,
/// e^{-t/tau} cos(omega t - phi) / cos(phi).
double lambda_exp_phi_flipped(const ExpKernelParams& p, double t);

} // namespace gmn
