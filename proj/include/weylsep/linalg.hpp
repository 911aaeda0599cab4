#pragma once

// Dense complex kernels shared by every other header: Kronecker products,
// partial trace/transpose on two-party states, spectra, and density-matrix
// validation.

#include "weylsep/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace weylsep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
} // namespace tol

enum class Subsystem { A, B };

inline const char* to_string(Subsystem s) { return s == Subsystem::A ? "A" : "B"; }

class DensityMatrix;
DensityMatrix validate_density(ComplexMatrix m, std::vector<int> dims);

// A trace-one Hermitian positive semidefinite matrix together with the
// dimensions of its tensor factors. Only obtainable through validate_density.
class DensityMatrix {
public:
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const std::vector<int>& dims() const noexcept { return dims_; }
    int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
    bool is_bipartite() const noexcept { return dims_.size() == 2; }

    double purity() const { return (matrix_ * matrix_).trace().real(); }

private:
    DensityMatrix(ComplexMatrix m, std::vector<int> dims) : matrix_(std::move(m)), dims_(std::move(dims)) {}
    friend DensityMatrix validate_density(ComplexMatrix m, std::vector<int> dims);

    ComplexMatrix matrix_;
    std::vector<int> dims_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermitian_violation(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

inline bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

// Eigenvalues of (h + h†)/2 in ascending order.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw DimensionError("hermitian_eigenvalues: matrix is not square");
    const double asym = hermitian_violation(h);
    if (asym > tol::hermitian) {
        std::ostringstream msg;
        msg << "hermitian_eigenvalues: input is not Hermitian (max |h - h^dagger| = " << asym << ")";
        throw DomainError(msg.str());
    }
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eigenvalues: eigensolver did not converge");
    return solver.eigenvalues();
}

inline double min_eigenvalue(const ComplexMatrix& h) {
    return hermitian_eigenvalues(h).minCoeff();
}

// Singular values in nonincreasing order, min(rows, cols) of them.
inline std::vector<double> singular_values(const ComplexMatrix& m) {
    if (m.size() == 0) return {};
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const RealVector& s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

inline DensityMatrix validate_density(ComplexMatrix m, std::vector<int> dims) {
    using Kind = ValidationError::Kind;
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError(Kind::NotSquare, static_cast<double>(m.cols()),
                              "density matrix must be square and non-empty (got " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) + ")");
    }
    if (dims.empty()) dims = {static_cast<int>(m.rows())};
    long long product = 1;
    for (int d : dims) {
        if (d < 1) throw ValidationError(Kind::DimensionMismatch, d, "subsystem dimension must be positive");
        product *= d;
    }
    if (product != m.rows()) {
        throw ValidationError(Kind::DimensionMismatch, static_cast<double>(product),
                              "product of subsystem dimensions (" + std::to_string(product) +
                                  ") does not match matrix dimension (" + std::to_string(m.rows()) + ")");
    }
    if (!all_finite(m)) throw ValidationError(Kind::NonFinite, NAN, "density matrix has non-finite entries");

    const double asym = hermitian_violation(m);
    if (asym > tol::hermitian) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian: max |rho - rho^dagger| = " << asym;
        throw ValidationError(Kind::NonHermitian, asym, msg.str());
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol::trace) {
        std::ostringstream msg;
        msg << "density matrix does not have unit trace: trace = " << tr;
        throw ValidationError(Kind::WrongTrace, tr, msg.str());
    }
    const double lo = min_eigenvalue(m);
    if (lo < -tol::psd) {
        std::ostringstream msg;
        msg << "density matrix is not positive semidefinite: smallest eigenvalue = " << lo;
        throw ValidationError(Kind::NegativeEigenvalue, lo, msg.str());
    }
    return DensityMatrix(std::move(m), std::move(dims));
}

namespace detail {

inline std::pair<int, int> bipartite_dims(const std::vector<int>& dims, const char* who) {
    if (dims.size() != 2) {
        throw DimensionError(std::string(who) + ": expected exactly 2 subsystems, got " + std::to_string(dims.size()));
    }
    return {dims[0], dims[1]};
}

} // namespace detail

// Composite index of |i>_A |j>_B is i * dB + j.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims, Subsystem keep) {
    const auto [dA, dB] = detail::bipartite_dims(dims, "partial_trace");
    if (rho.rows() != dA * dB || rho.cols() != dA * dB) throw DimensionError("partial_trace: matrix size does not match dims");
    if (keep == Subsystem::A) {
        ComplexMatrix out = ComplexMatrix::Zero(dA, dA);
        for (int i = 0; i < dA; ++i)
            for (int k = 0; k < dA; ++k)
                for (int j = 0; j < dB; ++j) out(i, k) += rho(i * dB + j, k * dB + j);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dB, dB);
    for (int j = 0; j < dB; ++j)
        for (int l = 0; l < dB; ++l)
            for (int i = 0; i < dA; ++i) out(j, l) += rho(i * dB + j, i * dB + l);
    return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    const ComplexMatrix red = partial_trace(rho.matrix(), rho.dims(), keep);
    const int d = static_cast<int>(red.rows());
    return validate_density(red, {d});
}

inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, const std::vector<int>& dims, Subsystem sys) {
    const auto [dA, dB] = detail::bipartite_dims(dims, "partial_transpose");
    if (rho.rows() != dA * dB || rho.cols() != dA * dB) {
        throw DimensionError("partial_transpose: matrix size does not match dims");
    }
    ComplexMatrix out(rho.rows(), rho.cols());
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dA; ++k)
                for (int l = 0; l < dB; ++l) {
                    const Complex v = rho(i * dB + j, k * dB + l);
                    if (sys == Subsystem::A)
                        out(k * dB + j, i * dB + l) = v;
                    else
                        out(i * dB + l, k * dB + j) = v;
                }
    return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem sys) {
    return partial_transpose(rho.matrix(), rho.dims(), sys);
}

} // namespace weylsep
