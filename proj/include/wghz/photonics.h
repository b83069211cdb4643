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

// Free-running photons after the cavities leak.
//
// Atoms a, b, c sit in cavities A, B, C. The QWP turns the L photon of a
// cavity into V and the R photon into H on source mode 1, 2 or 3. PBSs send
// every (source, polarization) pair to one of the output modes 7, 8, 9 and an
// HWP on each output mode mixes H and V before the detectors.
//
// Photon states are kept in the occupation basis
//   |n⟩ = Π_k (a_k†)^{n_k}/√(n_k!) |vac⟩,
// and linear optics acts on creation operators, so terms where two photons
// share a spatial mode carry the usual √n! weights.

#ifndef WGHZ_PHOTONICS_H
#define WGHZ_PHOTONICS_H

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wghz/atom_cavity.h"
#include "wghz/hilbert.h"

namespace wghz {

inline constexpr std::size_t kNumAtoms = 3;
inline constexpr std::array<int, 3> kSourceModes = {1, 2, 3};
inline constexpr std::array<int, 3> kOutputModes = {7, 8, 9};

enum class Polarization { kH, kV };
inline constexpr std::array<Polarization, 2> kBothPolarizations = {Polarization::kH, Polarization::kV};

std::string_view to_string(Polarization p);
/// QWP: L -> V, R -> H.
constexpr Polarization after_qwp(Circular j) { return j == Circular::kL ? Polarization::kV : Polarization::kH; }

struct PhotonMode {
    int spatial;
    Polarization pol;

    auto operator<=>(const PhotonMode &) const = default;
};

std::string to_string(const PhotonMode &mode);

/// Photon counts per (spatial, polarization); zero counts are never stored.
using PhotonOccupation = std::map<PhotonMode, int>;

int photon_count(const PhotonOccupation &occ);
std::string to_string(const PhotonOccupation &occ);

using AtomConfiguration = std::array<AtomLevel, kNumAtoms>;
std::string to_string(const AtomConfiguration &atoms);

struct JointTerm {
    Complex amplitude;
    AtomConfiguration atoms;
    PhotonOccupation photons;
};

/// Superposition of (atomic configuration ⊗ photon occupation) basis states.
/// Terms are merged on construction and kept sorted by key.
class JointAtomPhotonState {
  public:
    JointAtomPhotonState() = default;
    explicit JointAtomPhotonState(std::vector<JointTerm> terms);

    const std::vector<JointTerm> &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    double norm_squared() const;
    /// Amplitude of one basis state, zero if absent.
    Complex amplitude(const AtomConfiguration &atoms, const PhotonOccupation &photons) const;
    /// Throws InvalidInput if some term does not carry exactly n photons.
    void require_photon_number(int n) const;
    JointAtomPhotonState scaled(Complex factor) const;

  private:
    std::vector<JointTerm> terms_;
};

/// max over terms of |a_i − e^{iφ} b_i| with φ chosen from the largest
/// amplitude of b. Both states are compared on the union of their supports.
double distance_up_to_phase(const JointAtomPhotonState &a, const JointAtomPhotonState &b);

/// Linear map on single-photon modes: mode -> Σ coefficient·mode.
using ModeMap = std::function<std::vector<std::pair<PhotonMode, Complex>>(const PhotonMode &)>;

/// Applies a linear single-photon map to every creation operator of every term.
JointAtomPhotonState apply_mode_map(const JointAtomPhotonState &state, const ModeMap &map);

/// Routing of (source atom, polarization after the QWP) to an output mode.
class NetworkLayout {
  public:
    /// routes[atom][pol] with atom 0..2 = a..c and pol indexed H=0, V=1.
    explicit NetworkLayout(std::array<std::array<int, 2>, kNumAtoms> routes);

    /// (a,V)->7, (b,V)->8, (c,V)->9, (a,H)->9, (b,H)->7, (c,H)->8.
    static NetworkLayout canonical();

    int output_mode(std::size_t atom, Polarization pol) const;
    const std::array<std::array<int, 2>, kNumAtoms> &routes() const { return routes_; }
    /// Throws InvalidInput unless every output mode receives one V and one H route.
    void validate() const;
    bool is_valid() const;

    bool operator==(const NetworkLayout &) const = default;

  private:
    std::array<std::array<int, 2>, kNumAtoms> routes_;
};

/// Labels of the three atom ⊗ cavity blocks: a, A_L, A_R, b, B_L, B_R, c, C_L, C_R.
HilbertSpace three_cavity_space(int n_max = 1);

/// Maps the three-cavity state to photons on source modes. A term whose
/// amplitude exceeds 1e-12 in magnitude must have exactly one photon in each
/// cavity, otherwise InvalidInput is thrown. Smaller terms are treated as
/// numerical zeros of the α = 0 operating point.
JointAtomPhotonState emit_and_qwp(const StateVector &three_cavity_state);

JointAtomPhotonState apply_pbs_routing(const JointAtomPhotonState &state, const NetworkLayout &layout);

/// H -> (H+V)/√2, V -> (H−V)/√2 on the listed spatial modes.
JointAtomPhotonState apply_hwp(const JointAtomPhotonState &state, const std::set<int> &modes);
/// The 2×2 HWP matrix in the (H, V) basis, columns are inputs.
CMatrix hwp_matrix();

/// emit_and_qwp -> apply_pbs_routing -> apply_hwp on 7, 8, 9.
JointAtomPhotonState full_network(const StateVector &three_cavity_state, const NetworkLayout &layout);

/// Network output for the Hadamard-rotated W input at α = 0, β = −1, written
/// directly from its closed-form expansion (independent of the element maps).
JointAtomPhotonState expected_network_output();

/// Every routing table over {7,8,9}^6 that reproduces expected_network_output()
/// within tol (up to global phase) on the operating-point input.
std::vector<NetworkLayout> search_consistent_layouts(const StateVector &three_cavity_state, double tol = 1e-12);

}  // namespace wghz

#endif  // WGHZ_PHOTONICS_H
