// Copyright 2026 The wghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wghz/hilbert.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

using namespace wghz;

namespace {

CMatrix random_hermitian(Eigen::Index n, std::mt19937 &rng) {
    std::normal_distribution<double> g;
    CMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            a(i, j) = Complex(g(rng), g(rng));
        }
    }
    return 0.5 * (a + a.adjoint());
}

DensityMatrix random_density(const HilbertSpace &space, std::mt19937 &rng) {
    std::normal_distribution<double> g;
    auto n = static_cast<Eigen::Index>(space.dim());
    CMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            a(i, j) = Complex(g(rng), g(rng));
        }
    }
    CMatrix rho = a * a.adjoint();
    return DensityMatrix(space, rho / rho.trace());
}

}  // namespace

TEST(HilbertSpace, DimensionIsProductOfSubsystems) {
    HilbertSpace s{{"x", 2}, {"y", 3}};
    EXPECT_EQ(s.dim(), 6u);
    EXPECT_EQ(s.num_subsystems(), 2u);
    EXPECT_EQ(s.position("y"), 1u);
    EXPECT_EQ(s.dim_of("y"), 3u);
}

TEST(HilbertSpace, RejectsDuplicateLabels) {
    EXPECT_THROW((HilbertSpace{{"x", 2}, {"x", 3}}), InvalidInput);
}

TEST(HilbertSpace, RejectsZeroDimension) { EXPECT_THROW((HilbertSpace{{"x", 0}}), InvalidInput); }

TEST(HilbertSpace, LastSubsystemVariesFastest) {
    HilbertSpace s{{"x", 2}, {"y", 3}};
    std::array<std::size_t, 2> d = {1, 2};
    EXPECT_EQ(s.flat_index(d), 5u);
    EXPECT_EQ(s.digits(4), (std::vector<std::size_t>{1, 1}));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        auto digits = s.digits(i);
        EXPECT_EQ(s.flat_index(digits), i);
    }
}

TEST(HilbertSpace, UnknownLabelThrows) {
    HilbertSpace s{{"x", 2}};
    EXPECT_THROW(s.position("nope"), InvalidInput);
}

TEST(Tensor, DimensionsMultiply) {
    HilbertSpace a{{"x", 2}}, b{{"y", 3}};
    Operator t = tensor(Operator::identity(a), Operator::identity(b));
    EXPECT_EQ(t.space().dim(), 6u);
    EXPECT_TRUE(t.matrix().isApprox(CMatrix::Identity(6, 6)));
}

TEST(Tensor, LabelCollisionRejected) {
    HilbertSpace a{{"x", 2}};
    EXPECT_THROW(tensor(Operator::identity(a), Operator::identity(a)), InvalidInput);
    EXPECT_THROW(tensor(StateVector::basis(a, {0}), StateVector::basis(a, {1})), InvalidInput);
}

TEST(Tensor, StateKroneckerSemantics) {
    HilbertSpace a{{"x", 2}}, b{{"y", 3}};
    StateVector psi = tensor(StateVector::basis(a, {1}), StateVector::basis(b, {2}));
    EXPECT_EQ(psi.amplitude({1, 2}), Complex(1.0));
    EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
}

TEST(StateVector, NormalizedFlag) {
    HilbertSpace a{{"x", 2}};
    CVector v(2);
    v << 3.0, 4.0;
    StateVector psi(a, v);
    EXPECT_FALSE(psi.is_normalized());
    EXPECT_TRUE(psi.normalized().is_normalized());
    EXPECT_THROW(StateVector(a, CVector::Zero(3)), InvalidInput);
}

TEST(DensityMatrix, ValidityChecks) {
    HilbertSpace a{{"x", 2}};
    CMatrix bad(2, 2);
    bad << 1.0, 0.5, 0.0, 0.0;
    EXPECT_FALSE(DensityMatrix(a, bad).is_valid());
    EXPECT_THROW(DensityMatrix(a, bad).validate(), InvalidInput);
    CMatrix negative(2, 2);
    negative << 1.5, 0.0, 0.0, -0.5;
    EXPECT_THROW(DensityMatrix(a, negative).validate(), InvalidInput);
    EXPECT_TRUE(DensityMatrix::maximally_mixed(a).is_valid());
}

TEST(Operator, HermitianFlagIsChecked) {
    HilbertSpace a{{"x", 2}};
    CMatrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    EXPECT_THROW(Operator(a, m, true), InvalidInput);
    EXPECT_NO_THROW(Operator(a, m, false));
}

TEST(Operator, LocalOperatorActsOnOneFactor) {
    HilbertSpace s{{"x", 2}, {"y", 2}};
    CMatrix sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    Operator x_on_y = local_operator(s, "y", sx, true);
    StateVector out = x_on_y.apply(StateVector::basis(s, {1, 0}));
    EXPECT_EQ(out.amplitude({1, 1}), Complex(1.0));
}

TEST(PartialTrace, ProductStateReducesToFactor) {
    std::mt19937 rng(7);
    HilbertSpace a{{"x", 2}}, b{{"y", 3}};
    DensityMatrix ra = random_density(a, rng), rb = random_density(b, rng);
    DensityMatrix joint = tensor(ra, rb);
    EXPECT_LT((partial_trace(joint, {"x"}).matrix() - ra.matrix()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((partial_trace(joint, {"y"}).matrix() - rb.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PartialTrace, BellStateGivesMaximallyMixed) {
    HilbertSpace s{{"x", 2}, {"y", 2}};
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    DensityMatrix r = partial_trace(DensityMatrix::pure(StateVector(s, v)), {"x"});
    EXPECT_LT((r.matrix() - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, KeepsOriginalOrderAndTrace) {
    std::mt19937 rng(11);
    HilbertSpace s{{"x", 2}, {"y", 2}, {"z", 3}};
    DensityMatrix rho = random_density(s, rng);
    DensityMatrix r = partial_trace(rho, {"z", "x"});
    EXPECT_EQ(r.space().labels(), (std::vector<std::string>{"x", "z"}));
    EXPECT_NEAR(r.trace().real(), 1.0, 1e-13);
    EXPECT_TRUE(r.is_valid());
}

TEST(Fidelity, PureStateOverlap) {
    HilbertSpace a{{"x", 2}};
    StateVector zero = StateVector::basis(a, {0});
    CVector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(fidelity(DensityMatrix::pure(zero), zero), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(DensityMatrix::pure(zero), StateVector(a, plus)), 0.5, 1e-15);
    EXPECT_THROW(fidelity(DensityMatrix::pure(zero), StateVector(a, 2.0 * plus)), InvalidInput);
}

TEST(TraceDistance, OrthogonalStatesAreAtDistanceOne) {
    HilbertSpace a{{"x", 2}};
    auto r0 = DensityMatrix::pure(StateVector::basis(a, {0}));
    auto r1 = DensityMatrix::pure(StateVector::basis(a, {1}));
    EXPECT_NEAR(trace_distance(r0, r1), 1.0, 1e-14);
    EXPECT_NEAR(trace_distance(r0, r0), 0.0, 1e-14);
}

TEST(Propagator, HermitianPropagatorIsUnitary) {
    std::mt19937 rng(3);
    HilbertSpace s{{"x", 5}};
    Operator h(s, random_hermitian(5, rng), true);
    Operator u = propagator(h, 1.7);
    EXPECT_LT((u.matrix().adjoint() * u.matrix() - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Propagator, HermitianAndGeneralPathsAgree) {
    std::mt19937 rng(5);
    HilbertSpace s{{"x", 4}};
    CMatrix m = random_hermitian(4, rng);
    Operator herm(s, m, true), general(s, m, false);
    EXPECT_LT((propagator(herm, 0.9).matrix() - propagator(general, 0.9).matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Propagator, TwoLevelRabiOscillation) {
    HilbertSpace s{{"x", 2}};
    CMatrix sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    const double t = 0.4;
    StateVector out = propagator(Operator(s, sx, true), t).apply(StateVector::basis(s, {0}));
    EXPECT_NEAR(std::norm(out.amplitude({1})), std::sin(t) * std::sin(t), 1e-14);
}

TEST(PartialTrace, KeepAllAndKeepNone) {
    std::mt19937 rng(13);
    HilbertSpace s{{"x", 2}, {"y", 3}};
    DensityMatrix rho = random_density(s, rng);
    EXPECT_LT((partial_trace(rho, {"x", "y"}).matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    DensityMatrix scalar = partial_trace(rho, std::span<const std::string>{});
    EXPECT_EQ(scalar.matrix().rows(), 1);
    EXPECT_NEAR(std::abs(scalar.matrix()(0, 0) - rho.trace()), 0.0, 1e-14);
}

TEST(Fidelity, MaximallyMixedQubit) {
    HilbertSpace a{{"x", 2}};
    CVector v(2);
    v << Complex(0.6, 0.0), Complex(0.0, 0.8);
    EXPECT_NEAR(fidelity(DensityMatrix::maximally_mixed(a), StateVector(a, v)), 0.5, 1e-15);
    EXPECT_NEAR(fidelity(DensityMatrix::pure(StateVector::basis(a, {0})), StateVector::basis(a, {1})), 0.0, 1e-15);
}

TEST(Propagator, ZeroTimeAndDiagonal) {
    HilbertSpace a{{"x", 2}};
    CMatrix z(2, 2);
    z << 1.0, 0.0, 0.0, -1.0;
    Operator h(a, z, true);
    EXPECT_LT((propagator(h, 0.0).matrix() - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    CMatrix u = propagator(h, M_PI / 2.0).matrix();
    EXPECT_LT(std::abs(u(0, 0) - std::exp(-kI * M_PI / 2.0)), 1e-15);
    EXPECT_LT(std::abs(u(1, 1) - std::exp(kI * M_PI / 2.0)), 1e-15);
}

TEST(Tolerances, ScaleIsGlobal) {
    const double base = tolerances().state_norm;
    set_tolerance_scale(10.0);
    EXPECT_NEAR(tolerances().state_norm, 10.0 * base, 1e-20);
    set_tolerance_scale(1.0);
    EXPECT_THROW(set_tolerance_scale(0.0), InvalidInput);
}
