// lindblad.cpp: Lindblad generators and spectral decompositions

#include "gmn/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "gmn/errors.hpp"

namespace gmn {

Index LindbladGenerator::dim() const {
    if (hamiltonian.size() > 0) return hamiltonian.rows();
    if (!jumps.empty()) return jumps.front().op.rows();
    return 0;
}

SuperOp build_generator(const LindbladGenerator& g) {
    const Index d = g.dim();
    if (d == 0) throw InvalidArgument("build_generator: generator has neither Hamiltonian nor jumps");
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    SuperOp l = SuperOp::zero(d);

    if (g.hamiltonian.size() > 0) {
        if (g.hamiltonian.rows() != d || g.hamiltonian.cols() != d) {
            throw DimensionMismatch("build_generator: Hamiltonian is not d x d");
        }
        const Complex minus_i(0.0, -1.0);
        l = l + (sandwich_superop(g.hamiltonian, id) - sandwich_superop(id, g.hamiltonian)) * minus_i;
    }
    for (const Jump& j : g.jumps) {
        if (j.op.rows() != d || j.op.cols() != d) {
            throw DimensionMismatch("build_generator: jump operator is not d x d");
        }
        if (!(j.rate > 0.0)) throw InvalidArgument("build_generator: jump rates must be positive");
        const ComplexMatrix ad = j.op.adjoint();
        const ComplexMatrix ada = ad * j.op;
        const SuperOp d_j = sandwich_superop(j.op, ad) -
                            (sandwich_superop(ada, id) + sandwich_superop(id, ada)) * Complex(0.5);
        l = l + d_j * Complex(j.rate);
    }
    return l;
}

SuperOp SpectralDecomposition::reconstruct() const {
    SuperOp out = SuperOp::zero(dim);
    for (const auto& b : blocks) {
        out = out + b.projector * b.eigenvalue;
        if (b.nilpotent) out = out + *b.nilpotent;
    }
    return out;
}

namespace {

// Union-find clustering of eigenvalues closer than tol.
std::vector<std::vector<Index>> cluster_eigenvalues(const ComplexVector& ev, double tol) {
    const Index n = ev.size();
    std::vector<Index> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (std::abs(ev(i) - ev(j)) < tol) parent[find(i)] = find(j);
        }
    }
    std::vector<std::vector<Index>> groups;
    std::vector<Index> slot(static_cast<std::size_t>(n), -1);
    for (Index i = 0; i < n; ++i) {
        const Index r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<Index>(groups.size());
            groups.emplace_back();
        }
        groups[slot[r]].push_back(i);
    }
    return groups;
}

void sort_blocks(std::vector<SpectralBlock>& blocks) {
    std::sort(blocks.begin(), blocks.end(), [](const SpectralBlock& a, const SpectralBlock& b) {
        if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() > b.eigenvalue.real();
        return a.eigenvalue.imag() < b.eigenvalue.imag();
    });
}

} // namespace

SpectralDecomposition spectral_decompose(const SuperOp& l, const SpectralOptions& opts) {
    const Index n = l.matrix.rows();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(l.matrix, true);
    if (es.info() != Eigen::Success) throw DefectiveMatrix("spectral_decompose: eigensolver failed");

    ComplexMatrix v = es.eigenvectors();
    for (Index k = 0; k < n; ++k) {
        const double norm = v.col(k).norm();
        if (norm > 0.0) v.col(k) /= norm;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(v);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= opts.max_condition)) {
        throw DefectiveMatrix("spectral_decompose: eigenvector condition number " + std::to_string(cond) +
                              " exceeds " + std::to_string(opts.max_condition));
    }
    const ComplexMatrix w = v.partialPivLu().inverse();

    SpectralDecomposition out;
    out.dim = l.dim;
    for (const auto& group : cluster_eigenvalues(es.eigenvalues(), opts.cluster_tol)) {
        Complex mean(0.0, 0.0);
        ComplexMatrix p = ComplexMatrix::Zero(n, n);
        for (Index k : group) {
            mean += es.eigenvalues()(k);
            p += v.col(k) * w.row(k);
        }
        mean /= static_cast<double>(group.size());
        out.blocks.push_back(SpectralBlock{mean, SuperOp(std::move(p), l.dim), std::nullopt, 0});
    }
    sort_blocks(out.blocks);
    return out;
}

SuperOp evolve_markov(const SuperOp& l, double t) {
    if (t < 0.0) throw InvalidArgument("evolve_markov: t must be >= 0");
    if (t == 0.0) return SuperOp::identity(l.dim);
    const ComplexMatrix scaled = l.matrix * Complex(t);
    return SuperOp(scaled.exp(), l.dim);
}

SuperOp steady_state_projector(const SuperOp& l, double tol) {
    const SpectralDecomposition spec = spectral_decompose(l);
    SuperOp p0 = SuperOp::zero(l.dim);
    for (const auto& b : spec.blocks) {
        if (std::abs(b.eigenvalue) < tol) {
            p0 = p0 + b.projector;
        } else if (std::abs(b.eigenvalue.real()) < tol) {
            throw OscillatorySpectrum("steady_state_projector: eigenvalue on the imaginary axis, Im = " +
                                      std::to_string(b.eigenvalue.imag()));
        }
    }
    return p0;
}

SuperOp resolvent(const SuperOp& l, Complex z, double tol) {
    const ComplexVector ev = l.matrix.eigenvalues();
    for (Index k = 0; k < ev.size(); ++k) {
        if (std::abs(z - ev(k)) <= tol) {
            throw SingularPoint("resolvent: z is an eigenvalue of L (distance " +
                                std::to_string(std::abs(z - ev(k))) + ")");
        }
    }
    const Index n = l.matrix.rows();
    const ComplexMatrix shifted = z * ComplexMatrix::Identity(n, n) - l.matrix;
    return SuperOp(shifted.partialPivLu().inverse(), l.dim);
}

LindbladGenerator dephasing_generator(double gamma, int axis, int qubits) {
    if (gamma < 0.0) throw InvalidArgument("dephasing_generator: gamma must be >= 0");
    const ComplexMatrix a = pauli_power(axis, qubits);
    LindbladGenerator g;
    g.hamiltonian = ComplexMatrix::Zero(a.rows(), a.cols());
    if (gamma > 0.0) g.jumps.push_back(Jump{a, gamma});
    return g;
}

SpectralDecomposition dephasing_spectral(double gamma, int axis, int qubits) {
    const ComplexMatrix a = pauli_power(axis, qubits);
    const Index d = a.rows();
    const auto n_strings = static_cast<std::size_t>(1) << (2 * qubits);
    const double norm = 1.0 / static_cast<double>(d);

    ComplexMatrix p_steady = ComplexMatrix::Zero(d * d, d * d);
    ComplexMatrix p_decay = ComplexMatrix::Zero(d * d, d * d);
    for (std::size_t code = 0; code < n_strings; ++code) {
        std::vector<int> idx(static_cast<std::size_t>(qubits));
        std::size_t c = code;
        for (int q = qubits - 1; q >= 0; --q) {
            idx[static_cast<std::size_t>(q)] = static_cast<int>(c & 3u);
            c >>= 2;
        }
        const ComplexMatrix s = pauli_string(PauliString(idx));
        // P_n = 2^{-N} vec(s) vec(s^dag)^dag, i.e. X -> 2^{-N} Tr(s X) s
        const ComplexVector vs = vectorize(s);
        const ComplexVector vsd = vectorize(s.adjoint());
        const ComplexMatrix p = norm * vs * vsd.adjoint();
        // sigma_n commutes with A_k iff it is an eigenvector with eigenvalue 0
        if (approx_equal(a * s, s * a, kAlgebraicTol)) {
            p_steady += p;
        } else {
            p_decay += p;
        }
    }
    SpectralDecomposition out;
    out.dim = d;
    out.blocks.push_back(SpectralBlock{Complex(0.0), SuperOp(p_steady, d), std::nullopt, 0});
    out.blocks.push_back(SpectralBlock{Complex(-2.0 * gamma), SuperOp(p_decay, d), std::nullopt, 0});
    return out;
}

ThermalGenerators thermal_generator(double gamma_minus, double gamma_plus, double gamma_z) {
    if (!(gamma_minus > 0.0)) throw InvalidArgument("thermal_generator: gamma_minus must be > 0");
    if (gamma_plus < 0.0 || gamma_z < 0.0) {
        throw InvalidArgument("thermal_generator: gamma_plus and gamma_z must be >= 0");
    }
    LindbladGenerator g;
    g.hamiltonian = ComplexMatrix::Zero(2, 2);
    g.jumps.push_back(Jump{sigma_minus(), gamma_minus});
    if (gamma_plus > 0.0) g.jumps.push_back(Jump{sigma_plus(), gamma_plus});

    const ComplexMatrix s3 = pauli(3);
    const SuperOp lz = (sandwich_superop(s3, s3) - SuperOp::identity(2)) * Complex(gamma_z);
    return ThermalGenerators{build_generator(g), lz};
}

SuperOp ThermalSpectral::projector(int i) const {
    const auto k = static_cast<std::size_t>(i);
    // Tr[L X] = vec(L^T)^T vec(X)
    const ComplexVector vl = vectorize(left[k].transpose());
    return SuperOp(vectorize(right[k]) * vl.transpose(), 2);
}

SpectralDecomposition ThermalSpectral::decomposition() const {
    SpectralDecomposition out;
    out.dim = 2;
    out.blocks.push_back(SpectralBlock{Complex(eigenvalues[0]), projector(0), std::nullopt, 0});
    out.blocks.push_back(SpectralBlock{Complex(eigenvalues[1]), projector(1) + projector(2), std::nullopt, 0});
    out.blocks.push_back(SpectralBlock{Complex(eigenvalues[3]), projector(3), std::nullopt, 0});
    return out;
}

ThermalSpectral thermal_spectral(double gamma_minus, double gamma_plus) {
    if (!(gamma_minus > 0.0) || gamma_plus < 0.0) {
        throw InvalidArgument("thermal_spectral: need gamma_minus > 0 and gamma_plus >= 0");
    }
    ThermalSpectral ts;
    ts.total_rate = gamma_minus + gamma_plus;
    ts.ratio = gamma_plus / gamma_minus;
    const double g = ts.total_rate;
    const double x = ts.ratio;
    ts.eigenvalues = {0.0, -0.5 * g, -0.5 * g, -g};

    const ComplexMatrix s0 = pauli(0);
    const ComplexMatrix s3 = pauli(3);
    ts.right = {s0 - ((1.0 - x) / (1.0 + x)) * s3, sigma_minus(), sigma_plus(), -0.5 * s3};
    ts.left = {0.5 * s0, sigma_plus(), sigma_minus(), ((x - 1.0) / (x + 1.0)) * s0 - s3};
    return ts;
}

std::vector<Complex> block_eigenvalues(const SpectralDecomposition& spec, const SuperOp& l1, double tol) {
    if (l1.dim != spec.dim) throw DimensionMismatch("block_eigenvalues: dimension mismatch");
    std::vector<Complex> mu;
    mu.reserve(spec.blocks.size());
    const double scale = std::max(1.0, l1.matrix.cwiseAbs().maxCoeff());
    for (const auto& b : spec.blocks) {
        const Complex tr_p = b.projector.matrix.trace();
        const Complex m = (b.projector.matrix * l1.matrix * b.projector.matrix).trace() / tr_p;
        const ComplexMatrix right = l1.matrix * b.projector.matrix - m * b.projector.matrix;
        const ComplexMatrix left = b.projector.matrix * l1.matrix - m * b.projector.matrix;
        const double dev = std::max(right.cwiseAbs().maxCoeff(), left.cwiseAbs().maxCoeff());
        if (dev > tol * scale) {
            throw InvalidArgument("block_eigenvalues: L1 does not act as a scalar on block with eigenvalue (" +
                                  std::to_string(b.eigenvalue.real()) + ", " +
                                  std::to_string(b.eigenvalue.imag()) + "); deviation " +
                                  std::to_string(dev));
        }
        mu.push_back(m);
    }
    return mu;
}

} // namespace gmn
