#include "oracles.hpp"

#include "weylsep/linalg.hpp"
#include "weylsep/states.hpp"
#include "weylsep/weyl.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace weylsep;

namespace {

ComplexMatrix diag(std::initializer_list<Complex> values) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (Complex v : values) m(i, i) = v, ++i;
    return m;
}

} // namespace

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_EQ(max_abs(kron(ComplexMatrix(ComplexMatrix::Identity(2, 2)), ComplexMatrix(ComplexMatrix::Identity(2, 2))) - ComplexMatrix::Identity(4, 4)), 0.0);
}

TEST(Kron, DiagonalStructure) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const ComplexMatrix k = kron(diag({1.0, w, w * w}), ComplexMatrix::Identity(3, 3));
    const Complex expected[] = {1.0, 1.0, 1.0, w, w, w, w * w, w * w, w * w};
    for (int i = 0; i < 9; ++i) EXPECT_NEAR(std::abs(k(i, i) - expected[i]), 0.0, 1e-15);
    EXPECT_NEAR(max_abs(k - ComplexMatrix(k.diagonal().asDiagonal())), 0.0, 0.0);
}

TEST(Kron, ShiftTensorShiftIsAntiDiagonal) {
    // sum_k |k><k+1| (x) sum_l |l><l+1| for d=2 swaps |00> <-> |11> and |01> <-> |10>.
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) expected(i, 3 - i) = 1.0;
    EXPECT_EQ(max_abs(kron(weyl_op(2, 0, 1), weyl_op(2, 0, 1)) - expected), 0.0);
}

TEST(PartialTrace, ProductStateReturnsFactor) {
    const DensityMatrix a = random_mixed(3, 2, 1);
    const DensityMatrix b = random_mixed(4, 3, 2);
    const DensityMatrix prod = validate_density(kron(a.matrix(), b.matrix()), {3, 4});
    EXPECT_LT(max_abs(partial_trace(prod, Subsystem::A).matrix() - a.matrix()), 1e-14);
    EXPECT_LT(max_abs(partial_trace(prod, Subsystem::B).matrix() - b.matrix()), 1e-14);
}

TEST(PartialTrace, MaximallyEntangledReducesToMaximallyMixed) {
    const DensityMatrix red = partial_trace(max_entangled(3), Subsystem::A);
    EXPECT_LT(max_abs(red.matrix() - ComplexMatrix::Identity(3, 3) / 3.0), 1e-15);
}

TEST(PartialTrace, SingletOverB) {
    const DensityMatrix red = partial_trace(example4(1.0), Subsystem::A);
    EXPECT_LT(max_abs(red.matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, MatchesBraContraction) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DensityMatrix rho = random_mixed({2, 3}, 6, seed);
        EXPECT_LT(max_abs(partial_trace(rho, Subsystem::A).matrix() - oracle::partial_trace_bras(rho.matrix(), 2, 3, true)), 1e-15);
        EXPECT_LT(max_abs(partial_trace(rho, Subsystem::B).matrix() - oracle::partial_trace_bras(rho.matrix(), 2, 3, false)), 1e-15);
        EXPECT_NEAR(partial_trace(rho, Subsystem::B).matrix().trace().real(), 1.0, 1e-12);
    }
}

TEST(PartialTrace, RejectsNonBipartite) {
    EXPECT_THROW(partial_trace(random_mixed(4, 2, 3), Subsystem::A), DimensionError);
    EXPECT_THROW(partial_trace(random_mixed({2, 2, 2}, 2, 3), Subsystem::A), DimensionError);
}

TEST(PartialTranspose, SingletHasEigenvalueMinusHalf) {
    EXPECT_NEAR(min_eigenvalue(partial_transpose(example4(1.0), Subsystem::B)), -0.5, 1e-14);
    EXPECT_NEAR(min_eigenvalue(partial_transpose(example4(1.0), Subsystem::A)), -0.5, 1e-14);
}

TEST(PartialTranspose, IsotropicAboveThresholdIsNpt) {
    EXPECT_LT(min_eigenvalue(partial_transpose(isotropic(2, 0.5), Subsystem::B)), -1e-3);
    EXPECT_GE(min_eigenvalue(partial_transpose(isotropic(2, 0.3), Subsystem::B)), -1e-12);
}

TEST(PartialTranspose, ProductStatesStayPositive) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const DensityMatrix a = random_mixed(2, 1 + static_cast<int>(seed % 2), seed);
        const DensityMatrix b = random_mixed(2, 1 + static_cast<int>((seed / 2) % 2), seed + 1000);
        const DensityMatrix prod = validate_density(kron(a.matrix(), b.matrix()), {2, 2});
        EXPECT_GE(min_eigenvalue(partial_transpose(prod, Subsystem::B)), -1e-10);
    }
}

TEST(PartialTranspose, IsAnInvolution) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DensityMatrix rho = random_mixed({3, 2}, 4, seed);
        for (Subsystem s : {Subsystem::A, Subsystem::B}) {
            const ComplexMatrix twice = partial_transpose(partial_transpose(rho.matrix(), rho.dims(), s), rho.dims(), s);
            EXPECT_LE(max_abs(twice - rho.matrix()), 1e-15);
        }
    }
}

TEST(SingularValues, Identity) {
    for (double s : singular_values(ComplexMatrix::Identity(5, 5))) EXPECT_NEAR(s, 1.0, 1e-15);
}

TEST(SingularValues, RankOneOuterProduct) {
    Rng rng(3);
    const ComplexMatrix a = complex_gaussian(5, 1, rng);
    const ComplexMatrix b = complex_gaussian(7, 1, rng);
    const std::vector<double> sv = singular_values(a * b.transpose());
    ASSERT_EQ(sv.size(), 5u);
    EXPECT_NEAR(sv[0], a.norm() * b.norm(), 1e-12);
    for (std::size_t i = 1; i < sv.size(); ++i) EXPECT_LT(sv[i], 1e-12);
}

TEST(SingularValues, FrobeniusIdentityAndOrdering) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int rows = 1 + trial % 9;
        const int cols = 1 + (trial * 7) % 11;
        const ComplexMatrix m = complex_gaussian(rows, cols, rng);
        const std::vector<double> sv = singular_values(m);
        ASSERT_EQ(sv.size(), static_cast<std::size_t>(std::min(rows, cols)));
        double sum_sq = 0.0;
        for (std::size_t i = 0; i < sv.size(); ++i) {
            sum_sq += sv[i] * sv[i];
            if (i > 0) EXPECT_LE(sv[i], sv[i - 1]);
            EXPECT_GE(sv[i], 0.0);
        }
        EXPECT_NEAR(sum_sq / m.squaredNorm(), 1.0, 1e-10);
    }
}

TEST(MinEigenvalue, Examples) {
    EXPECT_NEAR(min_eigenvalue(ComplexMatrix::Identity(3, 3)), 1.0, 1e-15);
    EXPECT_NEAR(min_eigenvalue(diag({3.0, -2.0, 0.0})), -2.0, 1e-15);
    EXPECT_NEAR(min_eigenvalue(pauli_x()), -1.0, 1e-15);
}

TEST(MinEigenvalue, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(min_eigenvalue(m), DomainError);
}

TEST(ValidateDensity, AcceptsMaximallyMixed) {
    const DensityMatrix rho = validate_density(ComplexMatrix::Identity(4, 4) / 4.0, {2, 2});
    EXPECT_EQ(rho.dims(), (std::vector<int>{2, 2}));
    EXPECT_NEAR(rho.purity(), 0.25, 1e-15);
}

TEST(ValidateDensity, NamesTheViolatedInvariant) {
    using Kind = ValidationError::Kind;
    auto kind_of = [](const ComplexMatrix& m, std::vector<int> dims) {
        try {
            validate_density(m, std::move(dims));
        } catch (const ValidationError& e) {
            return std::make_pair(e.kind(), e.measured());
        }
        ADD_FAILURE() << "accepted an invalid matrix";
        return std::make_pair(Kind::NotSquare, 0.0);
    };

    auto [k1, trace] = kind_of(diag({1.0, 1.0}), {2});
    EXPECT_EQ(k1, Kind::WrongTrace);
    EXPECT_NEAR(trace, 2.0, 1e-15);

    auto [k2, eig] = kind_of(diag({1.5, -0.5}), {2});
    EXPECT_EQ(k2, Kind::NegativeEigenvalue);
    EXPECT_NEAR(eig, -0.5, 1e-15);

    ComplexMatrix asym = ComplexMatrix::Identity(2, 2) / 2.0;
    asym(0, 1) = 0.1;
    EXPECT_EQ(kind_of(asym, {2}).first, Kind::NonHermitian);
    EXPECT_EQ(kind_of(ComplexMatrix::Identity(4, 4) / 4.0, {2, 3}).first, Kind::DimensionMismatch);
    EXPECT_EQ(kind_of(ComplexMatrix::Zero(2, 3), {2}).first, Kind::NotSquare);

    ComplexMatrix nan = ComplexMatrix::Identity(2, 2) / 2.0;
    nan(0, 0) = std::nan("");
    EXPECT_EQ(kind_of(nan, {2}).first, Kind::NonFinite);
}
