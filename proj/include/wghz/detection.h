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

// Non-number-resolving detectors D7H, D7V, D8H, D8V, D9H, D9V with efficiency
// η_d and no dark counts. A detector seeing k photons stays silent with
// probability (1−η_d)^k.

#ifndef WGHZ_DETECTION_H
#define WGHZ_DETECTION_H

#include <array>
#include <bitset>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wghz/hilbert.h"
#include "wghz/photonics.h"

namespace wghz {

enum class Detector { kD7H = 0, kD7V, kD8H, kD8V, kD9H, kD9V };
inline constexpr std::size_t kNumDetectors = 6;
inline constexpr std::size_t kNumPatterns = 64;

std::string_view to_string(Detector d);
PhotonMode detector_mode(Detector d);
Detector detector_for(const PhotonMode &mode);

class ClickPattern {
  public:
    ClickPattern() = default;
    ClickPattern(std::initializer_list<Detector> fired);
    /// Bit k set means Detector(k) fired.
    static ClickPattern from_bits(unsigned long bits);

    bool fired(Detector d) const { return bits_.test(static_cast<std::size_t>(d)); }
    unsigned long bits() const { return bits_.to_ulong(); }
    std::size_t count() const { return bits_.count(); }
    /// e.g. "{D7H,D8H,D9V}"
    std::string to_string() const;

    bool operator==(const ClickPattern &) const = default;
    bool operator<(const ClickPattern &o) const { return bits() < o.bits(); }

  private:
    std::bitset<kNumDetectors> bits_;
};

enum class OutcomeClass { kGhzPlus, kGhzMinus, kReject };
std::string_view to_string(OutcomeClass c);

/// Exactly one detector per output mode: odd number of V clicks -> kGhzPlus,
/// even -> kGhzMinus. Anything else -> kReject.
OutcomeClass classify_pattern(const ClickPattern &pattern);

/// The eight patterns with one click per output mode, in bit order.
std::vector<ClickPattern> accepted_patterns();

struct PovmElements {
    CMatrix off;
    CMatrix click;
};

/// Single-detector POVM on Fock states 0..n_max.
PovmElements povm_elements(double eta_d, int n_max);

/// Probability that a detector seeing n photons fires (or stays silent).
double click_probability(double eta_d, int n);

/// Space of the three atoms a, b, c with 4 levels each.
HilbertSpace three_atom_space();

struct Measurement {
    double probability = 0.0;
    /// Normalized conditional state of the atoms; empty when probability is 0.
    std::optional<DensityMatrix> conditional;
};

/// Applies the POVM product of `pattern` to the photonic part and traces it out.
/// Photons must sit on output modes 7, 8, 9.
Measurement measure(const JointAtomPhotonState &state, const ClickPattern &pattern, double eta_d);

/// 3η_d³/4
double success_probability_ideal(double eta_d);

/// (|e_L e_L e_L⟩ + |e_R e_R e_R⟩)/√2 and the minus combination.
StateVector ghz_plus_excited();
StateVector ghz_minus_excited();
/// (|g_L g_L g_L⟩ + |g_R g_R g_R⟩)/√2
StateVector ghz_ground();
/// Target of a class; throws InvalidInput for kReject.
StateVector class_target(OutcomeClass c);

struct PatternOutcome {
    ClickPattern pattern;
    OutcomeClass outcome = OutcomeClass::kReject;
    double probability = 0.0;
    std::optional<DensityMatrix> conditional;
    /// Fidelity of the conditional state with its class target; 0 for kReject
    /// or zero-probability patterns.
    double fidelity = 0.0;
};

struct DetectionReport {
    double eta_d = 1.0;
    std::vector<PatternOutcome> outcomes;  ///< all 64 patterns, in bit order
    double total_probability = 0.0;        ///< Σ over all patterns
    double accepted_probability = 0.0;     ///< Σ over non-REJECT patterns
    double formula_probability = 0.0;      ///< 3η_d³/4
    /// accepted_probability − formula_probability·(input norm²).
    double formula_deviation = 0.0;
    double min_accepted_fidelity = 1.0;

    const PatternOutcome &outcome(const ClickPattern &p) const;
};

/// Brute force over all 2⁶ patterns. The input may be subnormalized; the
/// probabilities then sum to its squared norm.
DetectionReport enumerate_outcomes(const JointAtomPhotonState &state, double eta_d);

}  // namespace wghz

#endif  // WGHZ_DETECTION_H
