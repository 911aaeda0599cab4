#pragma once

// Single-system Bloch decomposition in the Weyl basis:
//
//   rho = (1/d) (I + sum_{(i,j) != (0,0)} a_ij W_ij),   a_ij = Tr(W_ij^dagger rho)

#include "weylsep/linalg.hpp"
#include "weylsep/weyl.hpp"

#include <cmath>
#include <string>

namespace weylsep {

// Coefficients a_ij for every non-identity Weyl index, canonical order with
// (0,0) removed. Hermiticity of the source state shows up as the checked
// symmetry conj(a_nm) = omega^{-nm} a_{-n,-m}, not as a constraint on storage.
class BlochVector {
public:
    BlochVector(int d, ComplexVector coeffs) : d_(d), coeffs_(std::move(coeffs)) {
        if (d < 2) throw DomainError("BlochVector: dimension must be >= 2");
        if (coeffs_.size() != static_cast<Eigen::Index>(d) * d - 1) {
            throw DimensionError("BlochVector: expected " + std::to_string(d * d - 1) + " coefficients, got " +
                                 std::to_string(coeffs_.size()));
        }
    }

    static BlochVector zero(int d) { return {d, ComplexVector::Zero(static_cast<Eigen::Index>(d) * d - 1)}; }

    int d() const noexcept { return d_; }
    const ComplexVector& coeffs() const noexcept { return coeffs_; }
    Eigen::Index size() const noexcept { return coeffs_.size(); }

    Complex operator[](const WeylIndex& idx) const {
        if (idx.is_identity()) return {1.0, 0.0}; // Tr(rho) for a state
        return coeffs_(idx.flat() - 1);
    }
    Complex at(int n, int m) const { return (*this)[WeylIndex(d_, n, m)]; }

    // Largest deviation from conj(a_nm) = omega^{-nm} a_{-n,-m}.
    double symmetry_violation() const {
        double worst = 0.0;
        for (const auto& idx : nontrivial_indices(d_)) {
            const Complex lhs = std::conj((*this)[idx]);
            const Complex rhs = root_of_unity(d_, -static_cast<long long>(idx.n()) * idx.m()) * (*this)[-idx];
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        return worst;
    }

private:
    int d_;
    ComplexVector coeffs_;
};

// Tr(X^dagger Y) without forming the product.
inline Complex hs_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
    return x.conjugate().cwiseProduct(y).sum();
}

inline BlochVector decompose(const DensityMatrix& rho, const WeylBasis& basis) {
    if (rho.dims().size() != 1 || rho.dim() != basis.d()) {
        throw DimensionError("decompose: expected a single system of dimension " + std::to_string(basis.d()) +
                             ", got dimension " + std::to_string(rho.dim()) + " with " +
                             std::to_string(rho.dims().size()) + " subsystem(s)");
    }
    const int d = basis.d();
    ComplexVector coeffs(static_cast<Eigen::Index>(d) * d - 1);
    for (int flat = 1; flat < d * d; ++flat) coeffs(flat - 1) = hs_inner(basis.ops()[flat], rho.matrix());
    return {d, std::move(coeffs)};
}

inline ComplexMatrix reconstruct(const BlochVector& v, const WeylBasis& basis) {
    if (v.d() != basis.d()) throw DimensionError("reconstruct: Bloch vector and basis dimensions differ");
    const int d = basis.d();
    ComplexMatrix out = ComplexMatrix::Identity(d, d);
    for (int flat = 1; flat < d * d; ++flat) out += v.coeffs()(flat - 1) * basis.ops()[flat];
    return out / static_cast<double>(d);
}

inline double bloch_length(const BlochVector& v) { return v.coeffs().norm(); }

// Tr rho^2 = (1 + |v|^2) / d
inline double purity_from_length(const BlochVector& v) {
    const double len = bloch_length(v);
    return (1.0 + len * len) / v.d();
}

inline double max_bloch_length(int d) { return std::sqrt(static_cast<double>(d - 1)); }

} // namespace weylsep
