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

#include "wghz/photonics.h"

#include <cmath>

#include <gtest/gtest.h>

#include "wghz/protocol.h"

using namespace wghz;

namespace {

using L = AtomLevel;
using P = Polarization;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

const AtomConfiguration kLLL = {L::kEL, L::kEL, L::kEL};
const AtomConfiguration kLLR = {L::kEL, L::kEL, L::kER};
const AtomConfiguration kRRR = {L::kER, L::kER, L::kER};

JointAtomPhotonState single(PhotonOccupation occ) { return JointAtomPhotonState({{1.0, kLLL, std::move(occ)}}); }

}  // namespace

TEST(Qwp, CircularToLinear) {
    EXPECT_EQ(after_qwp(Circular::kL), P::kV);
    EXPECT_EQ(after_qwp(Circular::kR), P::kH);
}

TEST(JointState, MergesAndLooksUpTerms) {
    PhotonOccupation occ = {{{7, P::kH}, 1}};
    JointAtomPhotonState s({{0.25, kLLL, occ}, {0.5, kLLL, occ}, {0.5, kRRR, occ}});
    EXPECT_EQ(s.size(), 2u);
    EXPECT_NEAR(std::abs(s.amplitude(kLLL, occ) - 0.75), 0.0, 1e-15);
    EXPECT_EQ(s.amplitude(kLLR, occ), Complex(0.0));
    EXPECT_NEAR(s.norm_squared(), 0.5625 + 0.25, 1e-15);
    EXPECT_NO_THROW(s.require_photon_number(1));
    EXPECT_THROW(s.require_photon_number(3), InvalidInput);
    EXPECT_EQ(photon_count({{{7, P::kH}, 2}, {{8, P::kV}, 1}}), 3);
}

TEST(JointState, PhaseInsensitiveDistance) {
    PhotonOccupation occ = {{{7, P::kH}, 1}};
    JointAtomPhotonState s({{0.6, kLLL, occ}, {Complex(0, 0.8), kRRR, occ}});
    EXPECT_LT(distance_up_to_phase(s.scaled(std::exp(kI * 1.234)), s), 1e-15);
    JointAtomPhotonState other({{0.6, kLLL, occ}, {Complex(0, -0.8), kRRR, occ}});
    EXPECT_GT(distance_up_to_phase(other, s), 0.5);
    JointAtomPhotonState missing({{0.6, kLLL, occ}});
    EXPECT_NEAR(distance_up_to_phase(missing, s), 0.8, 1e-15);
}

TEST(Hwp, MatrixIsSelfInverseRotation) {
    CMatrix h = hwp_matrix();
    EXPECT_LT((h * h - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((h.adjoint() * h - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(h(0, 0).real(), kInvSqrt2, 1e-16);
    EXPECT_NEAR(h(1, 1).real(), -kInvSqrt2, 1e-16);
}

TEST(Hwp, SinglePhoton) {
    auto out = apply_hwp(single({{{7, P::kV}, 1}}), {7});
    EXPECT_NEAR(out.amplitude(kLLL, {{{7, P::kH}, 1}}).real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(out.amplitude(kLLL, {{{7, P::kV}, 1}}).real(), -kInvSqrt2, 1e-15);
    // Modes outside the set pass through.
    auto untouched = apply_hwp(single({{{8, P::kV}, 1}}), {7});
    EXPECT_EQ(untouched.amplitude(kLLL, {{{8, P::kV}, 1}}), Complex(1.0));
}

TEST(Hwp, OrthogonalPairBunches) {
    // a_H† a_V† -> (a_H†² − a_V†²)/2, so |1_H 1_V⟩ -> (|2_H⟩ − |2_V⟩)/√2.
    auto out = apply_hwp(single({{{7, P::kH}, 1}, {{7, P::kV}, 1}}), {7});
    EXPECT_NEAR(out.amplitude(kLLL, {{{7, P::kH}, 2}}).real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(out.amplitude(kLLL, {{{7, P::kV}, 2}}).real(), -kInvSqrt2, 1e-15);
    EXPECT_NEAR(std::abs(out.amplitude(kLLL, {{{7, P::kH}, 1}, {{7, P::kV}, 1}})), 0.0, 1e-15);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-15);
}

TEST(Hwp, ParallelPairSpreads) {
    auto out = apply_hwp(single({{{7, P::kH}, 2}}), {7});
    EXPECT_NEAR(out.amplitude(kLLL, {{{7, P::kH}, 2}}).real(), 0.5, 1e-15);
    EXPECT_NEAR(out.amplitude(kLLL, {{{7, P::kH}, 1}, {{7, P::kV}, 1}}).real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(out.amplitude(kLLL, {{{7, P::kV}, 2}}).real(), 0.5, 1e-15);
    auto twice = apply_hwp(out, {7});
    EXPECT_LT(distance_up_to_phase(twice, single({{{7, P::kH}, 2}})), 1e-15);
}

TEST(NetworkLayout, CanonicalRoutes) {
    NetworkLayout n = NetworkLayout::canonical();
    EXPECT_EQ(n.output_mode(0, P::kV), 7);
    EXPECT_EQ(n.output_mode(1, P::kV), 8);
    EXPECT_EQ(n.output_mode(2, P::kV), 9);
    EXPECT_EQ(n.output_mode(0, P::kH), 9);
    EXPECT_EQ(n.output_mode(1, P::kH), 7);
    EXPECT_EQ(n.output_mode(2, P::kH), 8);
    EXPECT_TRUE(n.is_valid());
    EXPECT_THROW(n.output_mode(3, P::kH), InvalidInput);
}

TEST(NetworkLayout, ValidationRequiresOneOfEachPerOutput) {
    NetworkLayout crowded({{{7, 8}, {7, 8}, {9, 9}}});
    EXPECT_FALSE(crowded.is_valid());
    EXPECT_THROW(crowded.validate(), InvalidInput);
    NetworkLayout bad_mode({{{7, 4}, {8, 8}, {9, 9}}});
    EXPECT_THROW(bad_mode.validate(), InvalidInput);
    // Any permutation of the H routes is a valid layout.
    NetworkLayout straight({{{7, 7}, {8, 8}, {9, 9}}});
    EXPECT_TRUE(straight.is_valid());
    NetworkLayout swapped({{{8, 7}, {9, 8}, {7, 9}}});
    EXPECT_TRUE(swapped.is_valid());
    EXPECT_FALSE(straight == swapped);
}

TEST(ThreeCavitySpace, LabelsAndDimension) {
    HilbertSpace s = three_cavity_space();
    EXPECT_EQ(s.dim(), 4096u);
    EXPECT_EQ(s.labels(), (std::vector<std::string>{"a", "A_L", "A_R", "b", "B_L", "B_R", "c", "C_L", "C_R"}));
    EXPECT_EQ(three_cavity_space(2).dim(), 46656u);
}

TEST(EmitAndQwp, OperatingPointAmplitudes) {
    JointAtomPhotonState emitted = emit_and_qwp(operating_point_state());
    EXPECT_EQ(emitted.size(), 8u);
    emitted.require_photon_number(3);
    EXPECT_NEAR(emitted.norm_squared(), 1.0, 1e-14);
    const double unit = 1.0 / (2.0 * std::sqrt(6.0));
    PhotonOccupation lll = {{{1, P::kV}, 1}, {{2, P::kV}, 1}, {{3, P::kV}, 1}};
    PhotonOccupation llr = {{{1, P::kV}, 1}, {{2, P::kV}, 1}, {{3, P::kH}, 1}};
    PhotonOccupation rrr = {{{1, P::kH}, 1}, {{2, P::kH}, 1}, {{3, P::kH}, 1}};
    EXPECT_NEAR(emitted.amplitude(kLLL, lll).real(), -3.0 * unit, 1e-15);
    EXPECT_NEAR(emitted.amplitude(kLLR, llr).real(), -1.0 * unit, 1e-15);
    EXPECT_NEAR(emitted.amplitude(kRRR, rrr).real(), 3.0 * unit, 1e-15);
    int big = 0;
    for (const auto &t : emitted.terms()) {
        const double m = std::abs(t.amplitude) / unit;
        EXPECT_TRUE(std::abs(m - 1.0) < 1e-12 || std::abs(m - 3.0) < 1e-12);
        big += m > 2.0 ? 1 : 0;
    }
    EXPECT_EQ(big, 2);
}

TEST(EmitAndQwp, RejectsMissingPhoton) {
    StateVector w = apply_hadamard_pulses(prepare_w_state());
    StateVector dark = cavity_interaction(w, EvolutionCoefficients{1.0, 0.0});
    EXPECT_THROW(emit_and_qwp(dark), InvalidInput);
}

TEST(PbsRouting, TwoPhotonsCanShareAnOutput) {
    JointAtomPhotonState routed = apply_pbs_routing(emit_and_qwp(operating_point_state()), NetworkLayout::canonical());
    PhotonOccupation shared = {{{7, P::kV}, 1}, {{8, P::kH}, 1}, {{8, P::kV}, 1}};
    EXPECT_NEAR(std::abs(routed.amplitude(kLLR, shared)), 1.0 / (2.0 * std::sqrt(6.0)), 1e-15);
    PhotonOccupation spread = {{{7, P::kV}, 1}, {{8, P::kV}, 1}, {{9, P::kV}, 1}};
    EXPECT_NEAR(std::abs(routed.amplitude(kLLL, spread)), 3.0 / (2.0 * std::sqrt(6.0)), 1e-15);
}

TEST(FullNetwork, MatchesIndependentExpansion) {
    JointAtomPhotonState out = full_network(operating_point_state(), NetworkLayout::canonical());
    JointAtomPhotonState expected = expected_network_output();
    EXPECT_LT(distance_up_to_phase(out, expected), 1e-12);
    out.require_photon_number(3);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-13);
    EXPECT_NEAR(expected.norm_squared(), 1.0, 1e-13);
}

TEST(FullNetwork, WrongRoutingIsDetected) {
    NetworkLayout straight({{{7, 7}, {8, 8}, {9, 9}}});
    JointAtomPhotonState out = full_network(operating_point_state(), straight);
    EXPECT_GT(distance_up_to_phase(out, expected_network_output()), 1e-3);
}

TEST(FullNetwork, LayoutSearchFindsOnlyCanonical) {
    auto found = search_consistent_layouts(operating_point_state());
    ASSERT_EQ(found.size(), 1u);
    EXPECT_TRUE(found.front() == NetworkLayout::canonical());
}
