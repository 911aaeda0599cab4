#pragma once

// Two-party Weyl decomposition
//
//   rho = 1/(dA dB) * ( I (x) I + sum alpha_ij W_ij (x) I + sum beta_kl I (x) W_kl
//                       + sum lambda_ij^kl W_ij (x) W_kl )
//
// with every coefficient equal to Tr rho (W^A)^dagger (x) (W^B)^dagger. The
// lambda's form the (dA^2-1) x (dB^2-1) correlation matrix M, rows indexed by
// the A-side Weyl index and columns by the B-side one (canonical order, (0,0)
// skipped). A separable state satisfies ||M||_KF <= sqrt((dA-1)(dB-1)).

#include "weylsep/bloch.hpp"
#include "weylsep/linalg.hpp"
#include "weylsep/weyl.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace weylsep {

enum class Outcome { Entangled, Separable, Inconclusive };
enum class Criterion { WeylKyFan, Ppt, Teleportation };

inline const char* to_string(Criterion c) {
    switch (c) {
    case Criterion::WeylKyFan: return "weyl-kyfan";
    case Criterion::Ppt: return "ppt";
    case Criterion::Teleportation: return "teleportation";
    }
    return "unknown";
}

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    double statistic = 0.0;
    double threshold = 0.0;
    Criterion criterion = Criterion::WeylKyFan;
};

// Fixed uppercase tokens. The teleportation test reuses the Entangled slot
// for "useful as a teleportation resource".
inline std::string verdict_token(const Verdict& v) {
    switch (v.outcome) {
    case Outcome::Entangled: return v.criterion == Criterion::Teleportation ? "USEFUL" : "ENTANGLED";
    case Outcome::Separable: return "SEPARABLE";
    case Outcome::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

struct BipartiteDecomposition {
    int dA = 0;
    int dB = 0;
    ComplexVector alpha; // dA^2 - 1
    ComplexVector beta;  // dB^2 - 1
    ComplexMatrix M;     // (dA^2 - 1) x (dB^2 - 1)

    BlochVector alpha_vector() const { return {dA, alpha}; }
    BlochVector beta_vector() const { return {dB, beta}; }

    // Largest deviation from conj(l_ij^kl) = exp(-2 pi i (ij/dA + kl/dB)) l_{-i,-j}^{-k,-l}.
    double correlation_symmetry_violation() const {
        double worst = 0.0;
        for (int r = 0; r < M.rows(); ++r) {
            const WeylIndex a = WeylIndex::from_flat(dA, r + 1);
            const WeylIndex na = -a;
            for (int c = 0; c < M.cols(); ++c) {
                const WeylIndex b = WeylIndex::from_flat(dB, c + 1);
                const WeylIndex nb = -b;
                const Complex phase = root_of_unity(dA, -static_cast<long long>(a.n()) * a.m()) *
                                      root_of_unity(dB, -static_cast<long long>(b.n()) * b.m());
                const Complex partner = M(na.flat() - 1, nb.flat() - 1);
                worst = std::max(worst, std::abs(std::conj(M(r, c)) - phase * partner));
            }
        }
        return worst;
    }
};

namespace detail {

// Full dA^2 x dB^2 coefficient table including the identity row and column.
// Uses the sparsity of W_ij (x) W_kl: its only nonzeros sit at
// ((a, b), (a + j, b + l)) with value omega_A^{a i} omega_B^{b k}.
inline ComplexMatrix weyl_coefficient_table(const ComplexMatrix& rho, int dA, int dB) {
    ComplexMatrix table(dA * dA, dB * dB);
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dB; ++k)
                for (int l = 0; l < dB; ++l) {
                    Complex acc{0.0, 0.0};
                    for (int a = 0; a < dA; ++a) {
                        const Complex pa = std::conj(root_of_unity(dA, static_cast<long long>(a) * i));
                        const int row_a = a * dB;
                        const int col_a = ((a + j) % dA) * dB;
                        for (int b = 0; b < dB; ++b) {
                            const Complex pb = std::conj(root_of_unity(dB, static_cast<long long>(b) * k));
                            acc += pa * pb * rho(row_a + b, col_a + (b + l) % dB);
                        }
                    }
                    table(i * dA + j, k * dB + l) = acc;
                }
    return table;
}

} // namespace detail

inline BipartiteDecomposition decompose_bipartite(const DensityMatrix& rho) {
    const auto [dA, dB] = detail::bipartite_dims(rho.dims(), "decompose_bipartite");
    if (dA < 2 || dB < 2) throw DimensionError("decompose_bipartite: both subsystems need dimension >= 2");
    const ComplexMatrix table = detail::weyl_coefficient_table(rho.matrix(), dA, dB);
    BipartiteDecomposition dec;
    dec.dA = dA;
    dec.dB = dB;
    dec.alpha = table.col(0).tail(dA * dA - 1);
    dec.beta = table.row(0).tail(dB * dB - 1).transpose();
    dec.M = table.bottomRightCorner(dA * dA - 1, dB * dB - 1);
    return dec;
}

inline ComplexMatrix reconstruct_bipartite(const BipartiteDecomposition& dec) {
    const int dA = dec.dA;
    const int dB = dec.dB;
    if (dec.alpha.size() != dA * dA - 1 || dec.beta.size() != dB * dB - 1 || dec.M.rows() != dA * dA - 1 ||
        dec.M.cols() != dB * dB - 1) {
        throw DimensionError("reconstruct_bipartite: coefficient shapes do not match dimensions");
    }
    auto coefficient = [&](int fa, int fb) -> Complex {
        if (fa == 0 && fb == 0) return {1.0, 0.0};
        if (fb == 0) return dec.alpha(fa - 1);
        if (fa == 0) return dec.beta(fb - 1);
        return dec.M(fa - 1, fb - 1);
    };
    ComplexMatrix out = ComplexMatrix::Zero(dA * dB, dA * dB);
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dB; ++k)
                for (int l = 0; l < dB; ++l) {
                    const Complex c = coefficient(i * dA + j, k * dB + l);
                    if (c == Complex{0.0, 0.0}) continue;
                    for (int a = 0; a < dA; ++a) {
                        const Complex pa = c * root_of_unity(dA, static_cast<long long>(a) * i);
                        for (int b = 0; b < dB; ++b) {
                            out(a * dB + b, ((a + j) % dA) * dB + (b + l) % dB) +=
                                pa * root_of_unity(dB, static_cast<long long>(b) * k);
                        }
                    }
                }
    return out / static_cast<double>(dA * dB);
}

inline DensityMatrix reduced_from_decomposition(const BipartiteDecomposition& dec, Subsystem sys) {
    if (sys == Subsystem::A) return validate_density(reconstruct(dec.alpha_vector(), weyl_basis(dec.dA)), {dec.dA});
    return validate_density(reconstruct(dec.beta_vector(), weyl_basis(dec.dB)), {dec.dB});
}

// Sum of singular values (trace norm).
inline double kyfan_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (double s : singular_values(m)) sum += s;
    return sum;
}

inline double separability_threshold(int dA, int dB) {
    return std::sqrt(static_cast<double>(dA - 1) * static_cast<double>(dB - 1));
}

inline constexpr double kyfan_margin = 1e-9;

inline Verdict kyfan_verdict(const BipartiteDecomposition& dec) {
    Verdict v;
    v.criterion = Criterion::WeylKyFan;
    v.statistic = kyfan_norm(dec.M);
    v.threshold = separability_threshold(dec.dA, dec.dB);
    // Necessary condition only: a state under the bound is never called separable.
    v.outcome = v.statistic > v.threshold + kyfan_margin ? Outcome::Entangled : Outcome::Inconclusive;
    return v;
}

inline Verdict weyl_separability_criterion(const DensityMatrix& rho) {
    return kyfan_verdict(decompose_bipartite(rho));
}

// Partial transpose on B. Conclusive both ways when dA * dB <= 6.
inline Verdict ppt_criterion(const DensityMatrix& rho) {
    const auto [dA, dB] = detail::bipartite_dims(rho.dims(), "ppt_criterion");
    Verdict v;
    v.criterion = Criterion::Ppt;
    v.statistic = min_eigenvalue(partial_transpose(rho, Subsystem::B));
    v.threshold = 0.0;
    if (v.statistic < -tol::psd)
        v.outcome = Outcome::Entangled;
    else if (dA * dB <= 6)
        v.outcome = Outcome::Separable;
    else
        v.outcome = Outcome::Inconclusive;
    return v;
}

struct ProductFactors {
    BlochVector alpha;
    BlochVector beta;
};

inline constexpr double rank_one_tolerance = 1e-8;

// Product test for pure states: M must be the rank-one outer product of the
// local Bloch vectors. Returns the factors, or nullopt for entangled input.
inline std::optional<ProductFactors> product_test(const DensityMatrix& rho, double purity_tol = 1e-8) {
    detail::bipartite_dims(rho.dims(), "product_test");
    const double purity = rho.purity();
    if (purity < 1.0 - purity_tol) {
        throw DomainError("product_test: input must be pure (Tr rho^2 = " + std::to_string(purity) + ")");
    }
    const BipartiteDecomposition dec = decompose_bipartite(rho);
    const std::vector<double> sv = singular_values(dec.M);
    const double ratio = sv.size() < 2 || sv[0] == 0.0 ? 0.0 : sv[1] / sv[0];
    const double residual = (dec.M - dec.alpha * dec.beta.transpose()).norm();
    if (ratio <= rank_one_tolerance && residual <= rank_one_tolerance) {
        return ProductFactors{dec.alpha_vector(), dec.beta_vector()};
    }
    return std::nullopt;
}

} // namespace weylsep
