#pragma once

// Teleportation-usefulness detection.
//
// For a unitary U the detection operator is
//
//   O_U = sum_{(i,j)} (U W_ij U^dagger) (x) conj(W_ij) = d^2 (U (x) I)|psi+><psi+|(U^dagger (x) I),
//
// so <O_U>_rho = d^2 <psi+|(U^dagger (x) I) rho (U (x) I)|psi+>. The fully
// entangled fraction F(rho) is the maximum of that overlap over U, and rho is
// useful for teleportation iff F(rho) > 1/d, i.e. iff some U has <O_U> > d.

#include "weylsep/bipartite.hpp"
#include "weylsep/error.hpp"
#include "weylsep/linalg.hpp"
#include "weylsep/random.hpp"
#include "weylsep/states.hpp"
#include "weylsep/weyl.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace weylsep {

namespace detail {

inline void check_unitary(const ComplexMatrix& u, int d, const char* who) {
    if (u.rows() != d || u.cols() != d) {
        throw DimensionError(std::string(who) + ": expected a " + std::to_string(d) + "x" + std::to_string(d) +
                             " unitary, got " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
    }
    const double dev = max_abs(u * u.adjoint() - ComplexMatrix::Identity(d, d));
    if (dev > 1e-10) throw DomainError(std::string(who) + ": matrix is not unitary (max |U U^dagger - I| = " + std::to_string(dev) + ")");
}

inline int square_local_dim(const DensityMatrix& rho, const char* who) {
    const auto [dA, dB] = bipartite_dims(rho.dims(), who);
    if (dA != dB) throw DimensionError(std::string(who) + ": needs a d x d bipartition, got " + std::to_string(dA) + "x" + std::to_string(dB));
    if (dA < 2) throw DimensionError(std::string(who) + ": local dimension must be >= 2");
    return dA;
}

// Row-major flattening: (U (x) I)|psi+> = vec(U) / sqrt(d).
inline ComplexVector vec_rows(const ComplexMatrix& u) {
    ComplexVector v(u.size());
    for (Eigen::Index r = 0; r < u.rows(); ++r)
        for (Eigen::Index c = 0; c < u.cols(); ++c) v(r * u.cols() + c) = u(r, c);
    return v;
}

} // namespace detail

// Sum over the Weyl basis, U-conjugated on the left factor.
inline ComplexMatrix detection_operator_weyl_sum(const ComplexMatrix& u, int d) {
    const WeylBasis basis(d);
    ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
    for (int flat = 0; flat < d * d; ++flat) {
        const WeylIndex idx = WeylIndex::from_flat(d, flat);
        const ComplexMatrix p = u * basis[idx] * u.adjoint();
        out += kron(p, basis[weyl_conjugate_index(idx)]);
    }
    return out;
}

inline ComplexMatrix detection_operator_closed_form(const ComplexMatrix& u, int d) {
    const ComplexVector v = detail::vec_rows(u);
    return static_cast<double>(d) * (v * v.adjoint());
}

class DetectionOperator {
public:
    int d() const noexcept { return d_; }
    const ComplexMatrix& u() const noexcept { return u_; }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }

private:
    DetectionOperator(int d, ComplexMatrix u, ComplexMatrix m) : d_(d), u_(std::move(u)), matrix_(std::move(m)) {}
    friend DetectionOperator detection_operator(const ComplexMatrix& u, int d);

    int d_;
    ComplexMatrix u_;
    ComplexMatrix matrix_;
};

inline DetectionOperator detection_operator(const ComplexMatrix& u, int d) {
    if (d < 2) throw DomainError("detection_operator: dimension must be >= 2");
    detail::check_unitary(u, d, "detection_operator");
    ComplexMatrix m = detection_operator_weyl_sum(u, d);
    const double route_gap = max_abs(m - detection_operator_closed_form(u, d));
    if (route_gap > 1e-10) {
        throw NumericalError("detection_operator: Weyl sum disagrees with closed form by " + std::to_string(route_gap));
    }
    const double asym = hermitian_violation(m);
    if (asym > 1e-10) throw NumericalError("detection_operator: operator is not Hermitian (" + std::to_string(asym) + ")");
    const double tr = m.trace().real();
    if (std::abs(tr - d * d) > 1e-8) throw NumericalError("detection_operator: trace " + std::to_string(tr) + " != d^2");
    return {d, u, std::move(m)};
}

inline double mean_value(const DensityMatrix& rho, const DetectionOperator& op) {
    const int d = detail::square_local_dim(rho, "mean_value");
    if (d != op.d()) throw DimensionError("mean_value: state and operator dimensions differ");
    const Complex tr = rho.matrix().cwiseProduct(op.matrix().transpose()).sum();
    if (std::abs(tr.imag()) > 1e-8) {
        throw NumericalError("mean_value: <O_U> has imaginary part " + std::to_string(tr.imag()));
    }
    return tr.real();
}

// Optimal teleportation fidelity from the fully entangled fraction: (d F + 1)/(d + 1).
inline double optimal_fidelity(double f, int d) {
    if (d < 2) throw DomainError("optimal_fidelity: dimension must be >= 2");
    // Search results may overshoot 1 by roundoff.
    if (!(f >= -1e-9 && f <= 1.0 + 1e-9)) throw DomainError("optimal_fidelity: F must lie in [0, 1], got " + std::to_string(f));
    f = std::clamp(f, 0.0, 1.0);
    return (d * f + 1.0) / (d + 1.0);
}

// ---------------------------------------------------------------------------
// Fully entangled fraction search

struct SearchBudget {
    int starts = 64;  // Weyl unitaries first (identity included), Haar samples after
    int sweeps = 200; // coordinate-ascent sweeps per start
};

struct FefEstimate {
    double value = 0.0; // best <O_U>/d^2 found; a lower bound on F(rho)
    ComplexMatrix best_u;
    long long evaluations = 0;
    bool converged = false;
};

namespace detail {

// Coordinate ascent on U -> vec(U)^dagger rho vec(U) / d over right
// multiplication by Givens rotations (two phase choices per plane) and by
// single-column phases.
class FefRefiner {
public:
    FefRefiner(const ComplexMatrix& rho, int d) : rho_(rho), d_(d) {}

    long long evaluations() const noexcept { return evaluations_; }

    double value(const ComplexMatrix& u) {
        ++evaluations_;
        const ComplexVector v = vec_rows(u);
        return v.dot(rho_ * v).real() / d_;
    }

    // Returns the final objective value; `converged` is set when a sweep
    // gains less than the stall tolerance.
    double refine(ComplexMatrix& u, int sweeps, bool& converged) {
        double current = value(u);
        converged = false;
        for (int sweep = 0; sweep < sweeps; ++sweep) {
            const double before = current;
            for (int p = 0; p < d_; ++p)
                for (int q = p + 1; q < d_; ++q)
                    for (double phi : {0.0, std::numbers::pi / 2.0}) current = givens_step(u, p, q, phi, current);
            for (int p = 0; p < d_; ++p) current = phase_step(u, p, current);
            if (current - before < 1e-10) {
                converged = true;
                break;
            }
        }
        return current;
    }

private:
    ComplexVector column_vec(const ComplexMatrix& u, int col, Complex scale, int target) const {
        ComplexVector v = ComplexVector::Zero(d_ * d_);
        for (int r = 0; r < d_; ++r) v(r * d_ + target) = scale * u(r, col);
        return v;
    }

    // U <- U G(theta), G acting on columns p, q:
    //   col_p' =  c col_p + e^{i phi} s col_q
    //   col_q' = -e^{-i phi} s col_p + c col_q
    double givens_step(ComplexMatrix& u, int p, int q, double phi, double current) {
        const Complex e_phi = std::polar(1.0, phi);
        const ComplexVector x = column_vec(u, p, 1.0, p) + column_vec(u, q, 1.0, q);
        const ComplexVector y = column_vec(u, q, e_phi, p) + column_vec(u, p, -std::conj(e_phi), q);
        const ComplexVector z = vec_rows(u) - x;
        const ComplexVector rz = rho_ * z;
        const ComplexVector rx = rho_ * x;
        const ComplexVector ry = rho_ * y;
        const double zz = z.dot(rz).real();
        const double xx = x.dot(rx).real();
        const double yy = y.dot(ry).real();
        const double zx = z.dot(rx).real();
        const double zy = z.dot(ry).real();
        const double xy = x.dot(ry).real();
        auto f = [&](double t) {
            ++evaluations_;
            const double c = std::cos(t);
            const double s = std::sin(t);
            return (zz + c * c * xx + s * s * yy + 2.0 * c * zx + 2.0 * s * zy + 2.0 * c * s * xy) / d_;
        };
        const double theta = maximize_periodic(f);
        const double best = f(theta);
        if (!(best > current)) return current;
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Eigen::VectorXcd cp = u.col(p);
        const Eigen::VectorXcd cq = u.col(q);
        u.col(p) = c * cp + e_phi * s * cq;
        u.col(q) = -std::conj(e_phi) * s * cp + c * cq;
        return best;
    }

    // U <- U diag(.., e^{i theta} at p, ..); the optimum is closed-form.
    double phase_step(ComplexMatrix& u, int p, double current) {
        const ComplexVector w = column_vec(u, p, 1.0, p);
        const ComplexVector z = vec_rows(u) - w;
        const Complex cross = z.dot(rho_ * w);
        if (std::abs(cross) < 1e-300) return current;
        ++evaluations_;
        const double base = (z.dot(rho_ * z).real() + w.dot(rho_ * w).real()) / d_;
        const double best = base + 2.0 * std::abs(cross) / d_;
        if (!(best > current)) return current;
        u.col(p) *= std::polar(1.0, -std::arg(cross));
        return best;
    }

    // Coarse grid over one period, then golden-section search in the
    // bracket around the best grid point.
    template <class F>
    static double maximize_periodic(F&& f) {
        constexpr int grid = 48;
        const double step = 2.0 * std::numbers::pi / grid;
        int best_k = 0;
        double best_v = f(0.0);
        for (int k = 1; k < grid; ++k) {
            const double v = f(k * step);
            if (v > best_v) {
                best_v = v;
                best_k = k;
            }
        }
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = (best_k - 1) * step;
        double hi = (best_k + 1) * step;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = f(x1);
        double f2 = f(x2);
        while (hi - lo > 1e-12) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = f(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = f(x1);
            }
        }
        const double mid = 0.5 * (lo + hi);
        return f(mid) >= best_v ? mid : best_k * step;
    }

    const ComplexMatrix& rho_;
    int d_;
    long long evaluations_ = 0;
};

} // namespace detail

// Start unitary number `index`: the Weyl operators in canonical order
// (identity first), then Haar samples on streams derived from `seed`.
inline ComplexMatrix search_start(int d, int index, std::uint64_t seed) {
    if (index < d * d) return weyl_op(WeylIndex::from_flat(d, index));
    return haar_unitary(d, derive_seed(seed, static_cast<std::uint64_t>(index)));
}

inline FefEstimate fef_search(const DensityMatrix& rho, SearchBudget budget, std::uint64_t seed) {
    const int d = detail::square_local_dim(rho, "fef_search");
    if (budget.starts < 1 || budget.sweeps < 0) throw DomainError("fef_search: budget needs >= 1 start and >= 0 sweeps");
    detail::FefRefiner refiner(rho.matrix(), d);
    FefEstimate best;
    best.value = -1.0;
    for (int s = 0; s < budget.starts; ++s) {
        ComplexMatrix u = search_start(d, s, seed);
        bool converged = false;
        const double v = refiner.refine(u, budget.sweeps, converged);
        if (v > best.value) {
            best.value = v;
            best.best_u = u;
            best.converged = converged;
        }
    }
    best.evaluations = refiner.evaluations();
    return best;
}

inline Verdict teleportation_verdict(const FefEstimate& est, int d) {
    Verdict v;
    v.criterion = Criterion::Teleportation;
    v.statistic = static_cast<double>(d) * d * est.value;
    v.threshold = d;
    // A failed search proves nothing: the maximizer may have been missed.
    v.outcome = v.statistic > v.threshold + 1e-9 ? Outcome::Entangled : Outcome::Inconclusive;
    return v;
}

inline Verdict teleportation_verdict(const DensityMatrix& rho, SearchBudget budget, std::uint64_t seed) {
    const int d = detail::square_local_dim(rho, "teleportation_verdict");
    return teleportation_verdict(fef_search(rho, budget, seed), d);
}

} // namespace weylsep
