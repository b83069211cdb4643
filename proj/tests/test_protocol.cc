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

#include "wghz/protocol.h"

#include <cmath>

#include <gtest/gtest.h>

#include "wghz/analysis.h"

using namespace wghz;

namespace {

using L = AtomLevel;

constexpr std::size_t gl = index(L::kGL);
constexpr std::size_t gr = index(L::kGR);
constexpr std::size_t el = index(L::kEL);
constexpr std::size_t er = index(L::kER);

double max_abs(const CMatrix &m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(WState, Amplitudes) {
    StateVector w = prepare_w_state();
    const double a = 1.0 / std::sqrt(3.0);
    EXPECT_NEAR(w.amplitude({gl, gl, gr}).real(), a, 1e-15);
    EXPECT_NEAR(w.amplitude({gl, gr, gl}).real(), a, 1e-15);
    EXPECT_NEAR(w.amplitude({gr, gl, gl}).real(), a, 1e-15);
    EXPECT_EQ(w.amplitude({gl, gl, gl}), Complex(0.0));
    EXPECT_NEAR(w.norm(), 1.0, 1e-15);
}

TEST(Hadamard, RotatedWCoefficients) {
    StateVector h = apply_hadamard_pulses(prepare_w_state());
    const double unit = 1.0 / (2.0 * std::sqrt(6.0));
    EXPECT_NEAR(h.amplitude({gl, gl, gl}).real(), 3 * unit, 1e-15);
    EXPECT_NEAR(h.amplitude({gr, gr, gr}).real(), -3 * unit, 1e-15);
    EXPECT_NEAR(h.amplitude({gl, gl, gr}).real(), unit, 1e-15);
    EXPECT_NEAR(h.amplitude({gl, gr, gr}).real(), -unit, 1e-15);
    EXPECT_NEAR(h.norm(), 1.0, 1e-15);
}

TEST(Hadamard, IsAnInvolution) {
    StateVector w = prepare_w_state();
    StateVector back = apply_hadamard_pulses(apply_hadamard_pulses(w));
    EXPECT_LT((back.amplitudes() - w.amplitudes()).norm(), 1e-15);
}

TEST(Hadamard, RejectsExcitedWeight) {
    StateVector e = StateVector::basis(three_atom_space(), {el, gl, gl});
    EXPECT_THROW(apply_hadamard_pulses(e), InvalidInput);
}

TEST(CavityInteraction, NormFollowsCoefficients) {
    StateVector h = apply_hadamard_pulses(prepare_w_state());
    EvolutionCoefficients c{Complex(0.3, 0.1), Complex(-0.5, 0.2)};
    StateVector s = cavity_interaction(h, c);
    EXPECT_EQ(s.space().dim(), 4096u);
    EXPECT_NEAR(s.norm(), std::pow(c.norm_squared(), 1.5), 1e-14);
    EXPECT_NEAR(project_emitted(s).norm(), std::pow(std::norm(c.beta), 1.5), 1e-14);
}

TEST(CavityInteraction, ExcitedAtomsKeepEmptyCavity) {
    StateVector e = StateVector::basis(three_atom_space(), {el, er, el});
    StateVector s = cavity_interaction(e, EvolutionCoefficients{0.0, -1.0});
    EXPECT_EQ(s.amplitude({el, 0, 0, er, 0, 0, el, 0, 0}), Complex(1.0));
}

TEST(CavityInteraction, OperatingPointPhotonTerms) {
    StateVector s = operating_point_state();
    const double unit = 1.0 / (2.0 * std::sqrt(6.0));
    // gL -> −|eL,1_L⟩, so the all-L term picks up (−1)³.
    EXPECT_NEAR(s.amplitude({el, 1, 0, el, 1, 0, el, 1, 0}).real(), -3 * unit, 1e-15);
    EXPECT_NEAR(s.amplitude({er, 0, 1, er, 0, 1, er, 0, 1}).real(), 3 * unit, 1e-15);
    EXPECT_NEAR(project_emitted(s).norm(), 1.0, 1e-15);
}

TEST(InteractionCoefficients, ClosedFormsAndIntegration) {
    SystemParams p;
    p.delta = 100.0;
    const double t = p.operating_time();
    auto ideal = interaction_coefficients(p, t);
    EXPECT_LT(std::abs(ideal.beta + 1.0), 1e-15);
    p.kappa = 0.001;
    auto decay = interaction_coefficients(p, t);
    EXPECT_LT(std::abs(decay.beta - decay_coefficients(p, t).beta), 1e-15);
    // Unequal couplings fall back to the no-jump propagator.
    p.omega = 1.2;
    auto general = interaction_coefficients(p, t);
    Operator h = conditional_hamiltonian(p);
    StateVector psi = schrodinger_evolve(h, StateVector::basis(h.space(), {gl, 0, 0}), t,
                                         IntegratorConfig::for_rate(characteristic_rate(h)));
    EXPECT_LT(std::abs(general.alpha - psi.amplitude({gl, 0, 0})), 1e-8);
    EXPECT_LT(std::abs(general.beta - psi.amplitude({el, 1, 0})), 1e-8);
    EXPECT_LT(general.norm_squared(), 1.0);
}

TEST(SignCorrection, MinusBecomesPlus) {
    auto minus = DensityMatrix::pure(ghz_minus_excited());
    auto fixed = sign_correction(minus, OutcomeClass::kGhzMinus);
    EXPECT_NEAR(fidelity(fixed, ghz_plus_excited()), 1.0, 1e-15);
    auto plus = DensityMatrix::pure(ghz_plus_excited());
    EXPECT_EQ(sign_correction(plus, OutcomeClass::kGhzPlus).matrix(), plus.matrix());
    EXPECT_THROW(sign_correction(plus, OutcomeClass::kReject), InvalidInput);
}

TEST(RamanMapping, ExcitedToGround) {
    auto plus = DensityMatrix::pure(ghz_plus_excited());
    EXPECT_NEAR(fidelity(raman_mapping(plus), ghz_ground()), 1.0, 1e-15);
    auto single = DensityMatrix::pure(StateVector::basis(three_atom_space(), {el, er, er}));
    auto mapped = raman_mapping(single);
    EXPECT_NEAR(fidelity(mapped, StateVector::basis(three_atom_space(), {gl, gr, gr})), 1.0, 1e-15);
    auto ground = DensityMatrix::pure(ghz_ground());
    EXPECT_THROW(raman_mapping(ground), InvalidInput);
}

TEST(RunProtocol, IdealRun) {
    SystemParams p;
    p.eta_d = 0.8;
    ProtocolRun run = run_protocol(p);
    EXPECT_NEAR(run.emitted_weight, 1.0, 1e-14);
    EXPECT_NEAR(run.success_probability, 0.384, 1e-12);
    EXPECT_NEAR(run.formula_probability, 0.384, 1e-15);
    EXPECT_NEAR(run.reject_probability, 0.616, 1e-12);
    EXPECT_NEAR(run.min_fidelity, 1.0, 1e-10);
    EXPECT_NEAR(run.mean_fidelity, 1.0, 1e-10);
    ASSERT_EQ(run.accepted.size(), 8u);
    for (const auto &r : run.accepted) {
        EXPECT_NEAR(r.probability, 3 * 0.512 / 32, 1e-12);
        EXPECT_NEAR(fidelity(r.final_state, ghz_ground()), r.fidelity, 1e-15);
        EXPECT_LT(max_abs(r.final_state.matrix() - DensityMatrix::pure(ghz_ground()).matrix()), 1e-10);
    }
}

TEST(RunProtocol, CavityDecayMatchesClosedForm) {
    SystemParams p = decay_params_for_ratio(50.0);
    for (double kt : {0.0156582, 0.1, 0.5}) {
        ProtocolRun run = run_protocol(p, NetworkLayout::canonical(), kt);
        const double pd = pd_closed_form(p, kt);
        EXPECT_NEAR(run.success_probability, pd, 1e-12 * std::max(pd, 1e-300)) << kt;
        EXPECT_NEAR(run.success_probability, 0.75 * run.emitted_weight, 1e-14);
        EXPECT_NEAR(run.min_fidelity, 1.0, 1e-10);
    }
}

TEST(RunProtocol, InvalidParamsOrLayout) {
    SystemParams p;
    p.eta_d = 1.5;
    EXPECT_THROW(run_protocol(p), InvalidInput);
    NetworkLayout crowded({{{7, 8}, {7, 8}, {9, 9}}});
    EXPECT_THROW(run_protocol(SystemParams{}, crowded), InvalidInput);
}

TEST(RunProtocol, WrongRoutingLowersFidelity) {
    NetworkLayout straight({{{7, 7}, {8, 8}, {9, 9}}});
    ProtocolRun run = run_protocol(SystemParams{}, straight);
    EXPECT_LT(run.min_fidelity, 0.99);
}
