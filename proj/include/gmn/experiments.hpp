// experiments.hpp: figure reproductions as result tables, CSV output

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gmn/config.hpp"
#include "gmn/kernel.hpp"
#include "gmn/operator_core.hpp"

namespace gmn {

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> header; // comment lines, written with a "# " prefix
    bool time_ordered = true;        // first column strictly increasing (false for fig2)
};

/// Throws InvalidArgument when the table is ragged or the time column is not
/// strictly increasing.
void check_table(const ResultTable& t);

/// Comma separated, 17 significant digits, '#' comment header.
void write_csv(const ResultTable& t, std::ostream& out);
std::string to_csv(const ResultTable& t);

ResultTable run_experiment(const ExperimentConfig& c);

/// Background L0 = gamma (A X A - X) and the unit kernel generator
/// L1 = (A X A - X) / 2, whose eigenvalue on the decaying block is -1.
struct DephasingPair {
    SuperOp l0;
    SuperOp l1;
};
DephasingPair dephasing_pair(double gamma, int axis, int qubits);

/// A Pauli string anticommuting with A_k: sigma_j (x) I (x) ... with j != k.
ComplexMatrix coherence_probe(int axis, int qubits);

/// Lambda = Tr[P Phi(P)] / 2^N for the probe P; exact for any map of the
/// dephasing form.
double coherence_factor(const SuperOp& phi, int axis, int qubits);

/// Lambda(t) of the dephasing model with kernel k on the given times through
/// one solver route: "laplace", "embedded" or "volterra" (step dt).
std::vector<double> coherence_series(const std::string& solver, double gamma, const MemoryKernel& k,
                                     int axis, int qubits, const std::vector<double>& times, double dt);

/// Linear interpolation of a sampled curve at t (clamped to the sampled range).
double interpolate(const std::vector<double>& ts, const std::vector<double>& ys, double t);

} // namespace gmn
