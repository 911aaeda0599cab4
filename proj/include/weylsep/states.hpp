#pragma once

// Named example states and seeded random ensembles. Every function returns a
// validated DensityMatrix (or a unitary, for haar_unitary).

#include "weylsep/error.hpp"
#include "weylsep/linalg.hpp"
#include "weylsep/random.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace weylsep {

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

inline ComplexMatrix projector(const ComplexVector& ket) { return ket * ket.adjoint(); }

inline ComplexVector basis_ket(int d, int i) {
    ComplexVector v = ComplexVector::Zero(d);
    v(i) = 1.0;
    return v;
}

// (1/sqrt(d)) sum_i |ii>
inline ComplexVector max_entangled_ket(int d) {
    ComplexVector v = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return v;
}

inline DensityMatrix max_entangled(int d) {
    if (d < 2) throw DomainError("max_entangled: dimension must be >= 2");
    return validate_density(projector(max_entangled_ket(d)), {d, d});
}

namespace detail {
inline void check_probability(double p, const char* who) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(who) + ": p must lie in [0, 1], got " + std::to_string(p));
}
} // namespace detail

// ((1-p)/d^2) I + p |psi+><psi+|
inline DensityMatrix isotropic(int d, double p) {
    if (d < 2) throw DomainError("isotropic: dimension must be >= 2");
    detail::check_probability(p, "isotropic");
    const int n = d * d;
    ComplexMatrix m = (1.0 - p) / n * ComplexMatrix::Identity(n, n) + p * projector(max_entangled_ket(d));
    return validate_density(std::move(m), {d, d});
}

// Eigenvalues of (I + sum t_i sigma_i (x) sigma_i)/4 on the Bell basis.
inline std::array<double, 4> bell_diagonal_spectrum(double t1, double t2, double t3) {
    return {(1.0 - t1 - t2 - t3) / 4.0, (1.0 - t1 + t2 + t3) / 4.0, (1.0 + t1 - t2 + t3) / 4.0,
            (1.0 + t1 + t2 - t3) / 4.0};
}

inline bool bell_diagonal_valid(double t1, double t2, double t3) {
    for (double ev : bell_diagonal_spectrum(t1, t2, t3))
        if (ev < -tol::psd) return false;
    return true;
}

inline DensityMatrix bell_diagonal(double t1, double t2, double t3) {
    if (!bell_diagonal_valid(t1, t2, t3)) {
        throw DomainError("bell_diagonal: (" + std::to_string(t1) + ", " + std::to_string(t2) + ", " +
                          std::to_string(t3) + ") lies outside the positivity tetrahedron");
    }
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    m += t1 * kron(pauli_x(), pauli_x());
    m += t2 * kron(pauli_y(), pauli_y());
    m += t3 * kron(pauli_z(), pauli_z());
    return validate_density(m / 4.0, {2, 2});
}

// The five product vectors of the 3x3 "Tiles" construction. Orthonormal.
inline std::array<ComplexVector, 5> tiles_vectors() {
    const double s = 1.0 / std::sqrt(2.0);
    auto e = [](int i) { return basis_ket(3, i); };
    const ComplexVector uniform = ComplexVector::Constant(3, 1.0 / std::sqrt(3.0));
    return {kron(e(0), ComplexVector(s * (e(0) - e(1)))), kron(ComplexVector(s * (e(0) - e(1))), e(2)),
            kron(e(2), ComplexVector(s * (e(1) - e(2)))), kron(ComplexVector(s * (e(1) - e(2))), e(0)),
            kron(uniform, uniform)};
}

// (1/4)(I - sum_i |chi_i><chi_i|): PPT, yet entangled.
inline DensityMatrix ppt_3x3() {
    ComplexMatrix m = ComplexMatrix::Identity(9, 9);
    for (const auto& chi : tiles_vectors()) m -= projector(chi);
    return validate_density(m / 4.0, {3, 3});
}

// p |phi-><phi-| + (1-p) |00><00| with |phi-> = (|01> - |10>)/sqrt(2)
inline DensityMatrix example4(double p) {
    detail::check_probability(p, "example4");
    ComplexVector phi = ComplexVector::Zero(4);
    phi(1) = 1.0 / std::sqrt(2.0);
    phi(2) = -1.0 / std::sqrt(2.0);
    ComplexMatrix m = p * projector(phi) + (1.0 - p) * projector(basis_ket(4, 0));
    return validate_density(std::move(m), {2, 2});
}

// ---------------------------------------------------------------------------
// Random ensembles

inline ComplexMatrix complex_gaussian(int rows, int cols, Rng& rng) {
    ComplexMatrix g(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) g(r, c) = rng.complex_normal();
    return g;
}

inline ComplexVector random_pure_ket(int d, Rng& rng) {
    ComplexVector v = complex_gaussian(d, 1, rng).col(0);
    return v / v.norm();
}

// QR of a complex Gaussian matrix, with the diagonal of R rotated onto the
// positive reals so that the distribution is exactly Haar.
inline ComplexMatrix haar_unitary(int d, Rng& rng) {
    if (d < 1) throw DomainError("haar_unitary: dimension must be positive");
    const ComplexMatrix g = complex_gaussian(d, d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        const Complex diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) q.col(j) *= diag / mag;
    }
    return q;
}

inline ComplexMatrix haar_unitary(int d, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(d, rng);
}

inline std::vector<int> checked_dims(std::vector<int> dims, const char* who) {
    if (dims.empty()) throw DomainError(std::string(who) + ": no dimensions given");
    for (int d : dims)
        if (d < 1) throw DomainError(std::string(who) + ": dimensions must be positive");
    return dims;
}

// Induced measure: rho = G G^dagger / Tr(G G^dagger), G a D x rank Gaussian.
inline DensityMatrix random_mixed(std::vector<int> dims, int rank, std::uint64_t seed) {
    dims = checked_dims(std::move(dims), "random_mixed");
    int total = 1;
    for (int d : dims) total *= d;
    if (rank < 1 || rank > total) {
        throw DomainError("random_mixed: rank must lie in [1, " + std::to_string(total) + "], got " +
                          std::to_string(rank));
    }
    Rng rng(seed);
    const ComplexMatrix g = complex_gaussian(total, rank, rng);
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    m = 0.5 * (m + m.adjoint()).eval();
    return validate_density(std::move(m), std::move(dims));
}

inline DensityMatrix random_mixed(int d, int rank, std::uint64_t seed) { return random_mixed(std::vector<int>{d}, rank, seed); }

inline DensityMatrix random_product_pure(int dA, int dB, std::uint64_t seed) {
    Rng rng(seed);
    const ComplexVector a = random_pure_ket(dA, rng);
    const ComplexVector b = random_pure_ket(dB, rng);
    return validate_density(projector(kron(a, b)), {dA, dB});
}

// Pure state sum_i s_i |a_i>|b_i> with orthonormal {a_i}, {b_i} taken from
// Haar unitaries and Schmidt weights bounded away from zero.
inline DensityMatrix random_entangled_pure(int dA, int dB, int schmidt_rank, std::uint64_t seed) {
    if (schmidt_rank < 2 || schmidt_rank > std::min(dA, dB)) {
        throw DomainError("random_entangled_pure: Schmidt rank must lie in [2, min(dA, dB)]");
    }
    Rng rng(seed);
    const ComplexMatrix ua = haar_unitary(dA, rng);
    const ComplexMatrix ub = haar_unitary(dB, rng);
    ComplexVector ket = ComplexVector::Zero(dA * dB);
    for (int i = 0; i < schmidt_rank; ++i) {
        const double weight = 0.25 + rng.uniform();
        ket += weight * kron(ComplexVector(ua.col(i)), ComplexVector(ub.col(i)));
    }
    ket /= ket.norm();
    return validate_density(projector(ket), {dA, dB});
}

// sum_s p_s |a_s><a_s| (x) |b_s><b_s| with flat-Dirichlet weights.
inline DensityMatrix random_separable(int dA, int dB, int k, std::uint64_t seed) {
    if (k < 1) throw DomainError("random_separable: mixture size must be >= 1");
    if (dA < 1 || dB < 1) throw DomainError("random_separable: dimensions must be positive");
    Rng rng(seed);
    std::vector<double> weights(static_cast<std::size_t>(k));
    double total = 0.0;
    for (double& w : weights) total += (w = rng.exponential());
    ComplexMatrix m = ComplexMatrix::Zero(dA * dB, dA * dB);
    for (double w : weights) {
        const ComplexVector a = random_pure_ket(dA, rng);
        const ComplexVector b = random_pure_ket(dB, rng);
        m += (w / total) * kron(projector(a), projector(b));
    }
    m = 0.5 * (m + m.adjoint()).eval();
    return validate_density(std::move(m), {dA, dB});
}

} // namespace weylsep
