#pragma once

// Clock-and-shift (Weyl) operators
//
//   W_{nm} = sum_k omega^{kn} |k><k+m mod d|,   omega = exp(2 pi i / d)
//
// The d^2 operators are unitary and orthogonal under <X, Y> = Tr X^dagger Y
// (norm^2 = d), so they form a basis of all d x d matrices. The canonical
// ordering everywhere in this library is lexicographic in (n, m), n major.

#include "weylsep/error.hpp"
#include "weylsep/linalg.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace weylsep {

inline int mod(long long a, int d) {
    const long long r = a % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

// omega_d^k, with k reduced modulo d before the trig call.
inline Complex root_of_unity(int d, long long k) {
    const double angle = 2.0 * std::numbers::pi * mod(k, d) / d;
    return {std::cos(angle), std::sin(angle)};
}

class WeylIndex {
public:
    WeylIndex(int d, long long n, long long m) : d_(d) {
        if (d < 2) throw DomainError("WeylIndex: dimension must be >= 2, got " + std::to_string(d));
        n_ = mod(n, d);
        m_ = mod(m, d);
    }

    int n() const noexcept { return n_; }
    int m() const noexcept { return m_; }
    int d() const noexcept { return d_; }

    // Position in the canonical (n, m) ordering, (0,0) -> 0.
    int flat() const noexcept { return n_ * d_ + m_; }
    bool is_identity() const noexcept { return n_ == 0 && m_ == 0; }

    WeylIndex operator-() const { return {d_, -n_, -m_}; }
    WeylIndex operator+(const WeylIndex& o) const { return {d_, n_ + o.n_, m_ + o.m_}; }

    friend bool operator==(const WeylIndex&, const WeylIndex&) = default;

    static WeylIndex from_flat(int d, int flat) { return {d, flat / d, flat % d}; }

private:
    int d_;
    int n_ = 0;
    int m_ = 0;
};

inline ComplexMatrix weyl_op(int d, long long n, long long m) {
    if (d < 2) throw DomainError("weyl_op: dimension must be >= 2, got " + std::to_string(d));
    const int nn = mod(n, d);
    const int mm = mod(m, d);
    ComplexMatrix w = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) w(k, (k + mm) % d) = root_of_unity(d, static_cast<long long>(k) * nn);
    return w;
}

inline ComplexMatrix weyl_op(const WeylIndex& idx) { return weyl_op(idx.d(), idx.n(), idx.m()); }

// W_{kl}^dagger = omega^{kl} W_{-k,-l}
struct DaggerRelation {
    Complex phase;
    WeylIndex index;
};

inline DaggerRelation weyl_dagger_index(const WeylIndex& idx) {
    return {root_of_unity(idx.d(), static_cast<long long>(idx.n()) * idx.m()), -idx};
}

// Complex conjugation only flips the clock exponent: conj(W_{nm}) = W_{-n,m}.
inline WeylIndex weyl_conjugate_index(const WeylIndex& idx) { return {idx.d(), -idx.n(), idx.m()}; }

class WeylBasis {
public:
    explicit WeylBasis(int d) : d_(d) {
        if (d < 2) throw DomainError("weyl_basis: dimension must be >= 2, got " + std::to_string(d));
        ops_.reserve(static_cast<std::size_t>(d) * d);
        for (int n = 0; n < d; ++n)
            for (int m = 0; m < d; ++m) ops_.push_back(weyl_op(d, n, m));
    }

    int d() const noexcept { return d_; }
    std::size_t size() const noexcept { return ops_.size(); }
    const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
    const ComplexMatrix& operator[](const WeylIndex& idx) const { return ops_[static_cast<std::size_t>(idx.flat())]; }
    const ComplexMatrix& at(int n, int m) const { return (*this)[WeylIndex(d_, n, m)]; }

private:
    int d_;
    std::vector<ComplexMatrix> ops_;
};

inline WeylBasis weyl_basis(int d) { return WeylBasis(d); }

// The d^2 - 1 non-identity indices in canonical order.
inline std::vector<WeylIndex> nontrivial_indices(int d) {
    std::vector<WeylIndex> out;
    out.reserve(static_cast<std::size_t>(d) * d - 1);
    for (int flat = 1; flat < d * d; ++flat) out.push_back(WeylIndex::from_flat(d, flat));
    return out;
}

} // namespace weylsep
