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

// Single λλ-type atom in a two-polarization cavity.
//
// The six atomic levels are the stable states gL, gR, eL, eR and the excited
// states fL, fR. gj <-> fj is driven classically (Ω); ej <-> fj couples to the
// cavity mode a_j (λ_c). The effective model drops fL, fR, leaving a 4-level
// atom whose levels keep the same indices 0..3.

#ifndef WGHZ_ATOM_CAVITY_H
#define WGHZ_ATOM_CAVITY_H

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wghz/hilbert.h"

namespace wghz {

enum class AtomLevel : std::size_t { kGL = 0, kGR = 1, kEL = 2, kER = 3, kFL = 4, kFR = 5 };

inline constexpr std::size_t kFullAtomDim = 6;
inline constexpr std::size_t kEffectiveAtomDim = 4;
inline constexpr std::array<AtomLevel, 6> kAllAtomLevels = {AtomLevel::kGL, AtomLevel::kGR,
                                                            AtomLevel::kEL, AtomLevel::kER,
                                                            AtomLevel::kFL, AtomLevel::kFR};

/// Circular polarization of a cavity mode, and the Raman branch it drives.
enum class Circular { kL, kR };
inline constexpr std::array<Circular, 2> kBothCircular = {Circular::kL, Circular::kR};

constexpr std::size_t index(AtomLevel level) { return static_cast<std::size_t>(level); }
constexpr bool is_stable(AtomLevel level) { return index(level) < kEffectiveAtomDim; }
constexpr AtomLevel g_level(Circular j) { return j == Circular::kL ? AtomLevel::kGL : AtomLevel::kGR; }
constexpr AtomLevel e_level(Circular j) { return j == Circular::kL ? AtomLevel::kEL : AtomLevel::kER; }
constexpr AtomLevel f_level(Circular j) { return j == Circular::kL ? AtomLevel::kFL : AtomLevel::kFR; }

std::string_view to_string(AtomLevel level);
std::string_view to_string(Circular j);

/// Physical rates in units of a reference rate γ; times in units of 1/γ.
struct SystemParams {
    double delta = 100.0;    ///< detuning Δ
    double lambda_c = 1.0;   ///< atom-cavity coupling λ_c
    double omega = 1.0;      ///< classical Rabi frequency Ω
    double kappa = 0.0;      ///< cavity decay rate, both polarizations
    double gamma_a = 0.0;    ///< total spontaneous rate; each f -> x branch carries γ_a/2
    double eta_d = 1.0;      ///< detector efficiency
    int n_max = 1;           ///< Fock cutoff per polarization mode

    /// Throws InvalidInput naming the first offending field.
    void validate() const;
    /// Raised when Δ < 10·max(λ_c, Ω).
    bool adiabatic_elimination_questionable() const;
    /// Δπ/(λ_c² + Ω²): half a Raman period, where |g,0⟩ -> −|e,1⟩ for λ_c = Ω.
    double operating_time() const;
    double raman_period() const;

    bool operator==(const SystemParams &) const = default;
};

struct DerivedRates {
    double eta;         ///< λ_c²/Δ
    Complex phi;        ///< √(κ² − 4η²)
    Complex phi_prime;  ///< √(4η² − κ²)
    Complex varphi;     ///< iη − κ/2
};

DerivedRates derived_rates(const SystemParams &params);

struct CavityLabels {
    std::string atom = "atom";
    std::string mode_l = "cav_L";
    std::string mode_r = "cav_R";
};

/// atom(atom_dim) ⊗ Fock_L(n_max+1) ⊗ Fock_R(n_max+1).
HilbertSpace atom_cavity_space(std::size_t atom_dim, int n_max, const CavityLabels &labels = {});
HilbertSpace full_space(const SystemParams &params);
HilbertSpace effective_space(const SystemParams &params);

/// Σ_j [Δ|f_j⟩⟨f_j| + (λ_c a_j|f_j⟩⟨e_j| + Ω|f_j⟩⟨g_j| + h.c.)] on the 6-level space.
Operator full_hamiltonian(const SystemParams &params);

/// −Σ_j [(λ_c²/Δ)|e_j⟩⟨e_j|a_j†a_j + (Ω²/Δ)|g_j⟩⟨g_j| + (λ_cΩ/Δ)(|g_j⟩⟨e_j|a_j + h.c.)]
/// on the 4-level space.
Operator effective_hamiltonian(const SystemParams &params);

/// effective_hamiltonian − iκ Σ_j a_j†a_j (no-jump generator, non-Hermitian).
Operator conditional_hamiltonian(const SystemParams &params);

struct CollapseChannel {
    std::string name;
    double rate;
    Operator op;  ///< bare jump operator; the dissipator uses rate·D[op]
};

/// Two cavity channels a_L, a_R at κ and four atomic branches |x_j⟩⟨f_j| at γ_a/2.
std::vector<CollapseChannel> collapse_operators(const SystemParams &params);

/// Injects a 4-level atom-cavity state into the 6-level space (zero f amplitude).
StateVector embed_effective(const StateVector &effective, const SystemParams &params);
/// Drops f-level amplitudes; the result is generally unnormalized.
StateVector project_effective(const StateVector &full, const SystemParams &params);
DensityMatrix project_effective(const DensityMatrix &full, const SystemParams &params);

/// Annihilation operator on a single truncated Fock mode.
CMatrix annihilation(int n_max);

}  // namespace wghz

#endif  // WGHZ_ATOM_CAVITY_H
