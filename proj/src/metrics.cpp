// metrics.cpp: fidelity, channel fidelity search, concurrence, Choi checks

#include "gmn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gmn/errors.hpp"

namespace gmn {

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
    return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const QuantumState& rho, const QuantumState& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("fidelity: states have different dimensions");
    const ComplexMatrix s = psd_sqrt(rho.matrix());
    const ComplexMatrix m = s * sigma.matrix() * s;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    double tr = 0.0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) tr += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
    return std::clamp(tr * tr, 0.0, 1.0);
}

namespace {

double pure_fidelity(const SuperOp& phi, const ComplexVector& psi) {
    const ComplexMatrix rho = psi * psi.adjoint();
    const ComplexMatrix out = phi.apply(rho);
    return (psi.adjoint() * out * psi)(0, 0).real();
}

ComplexVector bloch_ket(double theta, double phi) {
    ComplexVector psi(2);
    psi(0) = std::cos(0.5 * theta);
    psi(1) = std::polar(std::sin(0.5 * theta), phi);
    return psi;
}

ComplexVector ket_from_params(const std::vector<double>& x, Index d) {
    ComplexVector psi(d);
    for (Index i = 0; i < d; ++i) {
        psi(i) = Complex(x[static_cast<std::size_t>(2 * i)], x[static_cast<std::size_t>(2 * i + 1)]);
    }
    const double n = psi.norm();
    if (n < 1e-300) psi(0) = 1.0;
    else psi /= n;
    return psi;
}

// Plain Nelder-Mead on the unnormalized real parameters of the ket.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step, int max_iter) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];
        if (std::abs(fv[worst] - fv[best]) < 1e-15) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
        }
        auto along = [&](double c) {
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + c * (simplex[worst][j] - centroid[j]);
            return x;
        };
        const std::vector<double> xr = along(-1.0);
        const double fr = f(xr);
        if (fr < fv[best]) {
            const std::vector<double> xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
        } else {
            const std::vector<double> xc = along(fr < fv[worst] ? -0.5 : 0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = xc;
                fv[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j) {
                        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
                    }
                    fv[i] = f(simplex[i]);
                }
            }
        }
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    return simplex[static_cast<std::size_t>(it - fv.begin())];
}

} // namespace

FidelityReport min_channel_fidelity(const SuperOp& phi, const MinFidelityOptions& opts) {
    const Index d = phi.dim;
    if (d < 1) throw InvalidArgument("min_channel_fidelity: empty channel");
    // Trace preservation: Tr Phi(|i><j|) = delta_ij
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            const Complex tr = phi.apply(basis_op(d, i, j)).trace();
            if (std::abs(tr - Complex(i == j ? 1.0 : 0.0)) > 1e-8) {
                throw InvalidArgument("min_channel_fidelity: channel is not trace preserving");
            }
        }
    }

    FidelityReport rep;
    if (d == 1) {
        rep.argmin_state = QuantumState::maximally_mixed(1);
        rep.value = pure_fidelity(phi, ComplexVector::Ones(1));
        rep.samples = 1;
        return rep;
    }

    using std::numbers::pi;
    ComplexVector best_psi;
    double best = std::numeric_limits<double>::infinity();

    if (d == 2) {
        const int g = std::max(opts.grid, 2);
        double bt = 0.0, bp = 0.0;
        // theta on [0, pi] inclusive, phi on [0, 2 pi); the lowest grid index wins ties
        for (int a = 0; a < g; ++a) {
            const double theta = pi * a / (g - 1);
            for (int b = 0; b < g; ++b) {
                const double ph = 2.0 * pi * b / g;
                const double f = pure_fidelity(phi, bloch_ket(theta, ph));
                ++rep.samples;
                if (f < best) {
                    best = f;
                    bt = theta;
                    bp = ph;
                }
            }
        }
        double st = pi / (g - 1);
        double sp = 2.0 * pi / g;
        for (int r = 0; r < opts.refine; ++r) {
            bool moved = false;
            for (int dt = -1; dt <= 1; ++dt) {
                for (int dp = -1; dp <= 1; ++dp) {
                    if (dt == 0 && dp == 0) continue;
                    const double theta = std::clamp(bt + dt * st, 0.0, pi);
                    const double ph = bp + dp * sp;
                    const double f = pure_fidelity(phi, bloch_ket(theta, ph));
                    ++rep.samples;
                    if (f < best) {
                        best = f;
                        bt = theta;
                        bp = ph;
                        moved = true;
                    }
                }
            }
            if (!moved) {
                st *= 0.5;
                sp *= 0.5;
            }
        }
        best_psi = bloch_ket(bt, bp);
    } else {
        std::mt19937_64 rng(opts.seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> best_x;
        for (std::size_t s = 0; s < std::max<std::size_t>(opts.samples, 1); ++s) {
            std::vector<double> x(static_cast<std::size_t>(2 * d));
            for (auto& v : x) v = normal(rng);
            const double f = pure_fidelity(phi, ket_from_params(x, d));
            ++rep.samples;
            if (f < best) {
                best = f;
                best_x = x;
            }
        }
        std::size_t evals = 0;
        auto objective = [&](const std::vector<double>& x) {
            ++evals;
            return pure_fidelity(phi, ket_from_params(x, d));
        };
        double norm = 0.0;
        for (double v : best_x) norm += v * v;
        const std::vector<double> x = nelder_mead(objective, best_x, 0.1 * std::sqrt(norm), 50 * opts.refine);
        rep.samples += evals;
        const double f = pure_fidelity(phi, ket_from_params(x, d));
        if (f < best) {
            best = f;
            best_x = x;
        }
        best_psi = ket_from_params(best_x, d);
    }
    rep.value = std::clamp(best, 0.0, 1.0);
    rep.argmin_state = QuantumState::pure(best_psi);
    return rep;
}

double concurrence(const ComplexMatrix& rho_in) {
    if (rho_in.rows() != 4 || rho_in.cols() != 4) {
        throw DimensionMismatch("concurrence: needs a two-qubit (4 x 4) state");
    }
    const ComplexMatrix rho = 0.5 * (rho_in + rho_in.adjoint());
    // rho = W W^dag; the lambda_i are the singular values of W^T (sigma_y (x) sigma_y) W.
    // Going through W avoids square roots of the rounding-level eigenvalues of
    // rank-deficient states. The overall sign of sigma_y drops out.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
    Eigen::VectorXd w = es.eigenvalues();
    for (Index i = 0; i < 4; ++i) w(i) = std::sqrt(std::max(w(i), 0.0));
    const ComplexMatrix wm = es.eigenvectors() * w.cast<Complex>().asDiagonal();
    const ComplexMatrix yy = kron(pauli(2), pauli(2));
    const Eigen::JacobiSVD<ComplexMatrix> svd(wm.transpose() * yy * wm);
    std::vector<double> l(svd.singularValues().data(), svd.singularValues().data() + 4);
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double concurrence(const QuantumState& rho) {
    return concurrence(rho.matrix());
}

CPReport cp_check(const SuperOp& phi, double tol) {
    CPReport rep;
    rep.tol = tol;
    const ChoiMatrix c = choi(phi);
    const Index d = c.dim;
    const ComplexMatrix h = 0.5 * (c.matrix + c.matrix.adjoint());
    rep.hermiticity_defect = (0.5 * (c.matrix - c.matrix.adjoint())).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    rep.min_choi_eigenvalue = es.eigenvalues().minCoeff();
    rep.is_cp = rep.min_choi_eigenvalue >= -tol;

    // C[(i d + k), (j d + l)] = Phi(|i><j|)[k, l]; TP means sum_k C[i d + k, j d + k] = delta_ij
    double defect = 0.0;
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            Complex acc(0.0);
            for (Index k = 0; k < d; ++k) acc += c.matrix(i * d + k, j * d + k);
            defect = std::max(defect, std::abs(acc - Complex(i == j ? 1.0 : 0.0)));
        }
    }
    rep.tp_defect = defect;
    rep.is_tp = defect <= 1e-8;
    return rep;
}

double op_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("op_distance: operands have different shapes");
    }
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a - b);
    return svd.singularValues()(0);
}

} // namespace gmn
