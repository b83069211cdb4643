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

// W state -> GHZ state pipeline on three 4-level atoms a, b, c.

#ifndef WGHZ_PROTOCOL_H
#define WGHZ_PROTOCOL_H

#include <optional>
#include <vector>

#include "wghz/atom_cavity.h"
#include "wghz/detection.h"
#include "wghz/dynamics.h"
#include "wghz/hilbert.h"
#include "wghz/photonics.h"

namespace wghz {

/// (|gL gL gR⟩ + |gL gR gL⟩ + |gR gL gL⟩)/√3 on three_atom_space().
StateVector prepare_w_state();

/// gL -> (gL+gR)/√2, gR -> (gL−gR)/√2 on every atom. Throws InvalidInput if
/// the state has weight outside {gL, gR}³.
StateVector apply_hadamard_pulses(const StateVector &atoms);

/// Coefficients of g_j -> α|g_j,vac⟩ + β|e_j,1_j⟩ for a single subsystem at
/// time t. κ = 0 uses the closed form of the Raman block; κ > 0 uses the
/// decaying closed form when λ_c = Ω and integrates the no-jump generator
/// otherwise.
EvolutionCoefficients interaction_coefficients(const SystemParams &params, double t);

/// Replaces every g_j by α|g_j,vac⟩ + β|e_j,1_j⟩; e levels stay with an empty
/// cavity. Output lives on three_cavity_space(n_max).
StateVector cavity_interaction(const StateVector &atoms, const EvolutionCoefficients &c, int n_max = 1);
StateVector cavity_interaction(const StateVector &atoms, const SystemParams &params, double t);

/// cavity_interaction of the Hadamard-rotated W state at α = 0, β = −1.
StateVector operating_point_state(int n_max = 1);

/// Keeps only the components with exactly one photon in every cavity
/// (unnormalized; its squared norm is the emission probability).
StateVector project_emitted(const StateVector &three_cavity_state);

/// GHZ_MINUS: e_L -> −e_L on atom a. GHZ_PLUS: unchanged. REJECT: throws.
DensityMatrix sign_correction(const DensityMatrix &conditional, OutcomeClass outcome);

/// e_L -> g_L, e_R -> g_R on every atom. Throws InvalidInput if the state has
/// weight outside {eL, eR}³.
DensityMatrix raman_mapping(const DensityMatrix &atoms);

struct ProtocolResult {
    ClickPattern pattern;
    OutcomeClass outcome;
    DensityMatrix conditional;
    DensityMatrix final_state;
    double probability;
    double fidelity;  ///< against the ground-state GHZ target
};

struct ProtocolRun {
    SystemParams params;
    double time = 0.0;
    EvolutionCoefficients coefficients;
    double emitted_weight = 0.0;        ///< probability that all three cavities emitted
    double success_probability = 0.0;   ///< Σ over accepted patterns
    double formula_probability = 0.0;   ///< 3η_d³/4 · emitted_weight
    double reject_probability = 0.0;    ///< 1 − success_probability
    double min_fidelity = 0.0;
    double mean_fidelity = 0.0;         ///< probability-weighted
    std::vector<ProtocolResult> accepted;
    DetectionReport detection;          ///< over the normalized emitted sector
};

/// Runs every stage at `t` (default: the operating time). Dissipation enters
/// only through κ; γ_a needs the master equation (see analysis.h).
ProtocolRun run_protocol(const SystemParams &params, const NetworkLayout &layout = NetworkLayout::canonical(),
                         std::optional<double> t = std::nullopt);

}  // namespace wghz

#endif  // WGHZ_PROTOCOL_H
