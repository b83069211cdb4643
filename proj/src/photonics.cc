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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

namespace wghz {

namespace {

constexpr double kEmissionZero = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

using Key = std::pair<AtomConfiguration, PhotonOccupation>;

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

double occupation_weight(const PhotonOccupation &occ) {
    double w = 1.0;
    for (const auto &[mode, n] : occ) {
        w *= factorial(n);
    }
    return std::sqrt(w);
}

std::size_t pol_index(Polarization p) { return p == Polarization::kH ? 0 : 1; }

const std::array<std::string, 9> kThreeCavityLabels = {"a", "A_L", "A_R", "b", "B_L", "B_R", "c", "C_L", "C_R"};

}  // namespace

std::string_view to_string(Polarization p) { return p == Polarization::kH ? "H" : "V"; }

std::string to_string(const PhotonMode &mode) {
    return std::string(to_string(mode.pol)) + std::to_string(mode.spatial);
}

int photon_count(const PhotonOccupation &occ) {
    int n = 0;
    for (const auto &[mode, k] : occ) {
        n += k;
    }
    return n;
}

std::string to_string(const PhotonOccupation &occ) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto &[mode, k] : occ) {
        if (!first) {
            os << ",";
        }
        first = false;
        os << to_string(mode);
        if (k != 1) {
            os << "^" << k;
        }
    }
    os << "}";
    return os.str();
}

std::string to_string(const AtomConfiguration &atoms) {
    std::string s;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) {
            s += ",";
        }
        s += to_string(atoms[i]);
    }
    return s;
}

JointAtomPhotonState::JointAtomPhotonState(std::vector<JointTerm> terms) {
    std::map<Key, Complex> merged;
    for (auto &t : terms) {
        for (const auto &[mode, n] : t.photons) {
            if (n <= 0) {
                throw InvalidInput("photon occupation must be positive for stored modes");
            }
        }
        merged[{t.atoms, t.photons}] += t.amplitude;
    }
    for (auto &[key, amp] : merged) {
        if (amp != Complex(0.0, 0.0)) {
            terms_.push_back({amp, key.first, key.second});
        }
    }
}

double JointAtomPhotonState::norm_squared() const {
    double s = 0.0;
    for (const auto &t : terms_) {
        s += std::norm(t.amplitude);
    }
    return s;
}

Complex JointAtomPhotonState::amplitude(const AtomConfiguration &atoms, const PhotonOccupation &photons) const {
    for (const auto &t : terms_) {
        if (t.atoms == atoms && t.photons == photons) {
            return t.amplitude;
        }
    }
    return 0.0;
}

void JointAtomPhotonState::require_photon_number(int n) const {
    for (const auto &t : terms_) {
        if (photon_count(t.photons) != n) {
            throw InvalidInput("term " + to_string(t.atoms) + " " + to_string(t.photons) + " carries " +
                               std::to_string(photon_count(t.photons)) + " photons, expected " +
                               std::to_string(n));
        }
    }
}

JointAtomPhotonState JointAtomPhotonState::scaled(Complex factor) const {
    std::vector<JointTerm> out = terms_;
    for (auto &t : out) {
        t.amplitude *= factor;
    }
    return JointAtomPhotonState(std::move(out));
}

double distance_up_to_phase(const JointAtomPhotonState &a, const JointAtomPhotonState &b) {
    std::map<Key, std::pair<Complex, Complex>> joint;
    for (const auto &t : a.terms()) {
        joint[{t.atoms, t.photons}].first = t.amplitude;
    }
    for (const auto &t : b.terms()) {
        joint[{t.atoms, t.photons}].second = t.amplitude;
    }
    Complex phase = 1.0;
    double largest = 0.0;
    for (const auto &[key, ab] : joint) {
        if (std::abs(ab.second) > largest && std::abs(ab.first) > 0.0) {
            largest = std::abs(ab.second);
            Complex r = ab.first / ab.second;
            phase = r / std::abs(r);
        }
    }
    double d = 0.0;
    for (const auto &[key, ab] : joint) {
        d = std::max(d, std::abs(ab.first - phase * ab.second));
    }
    return d;
}

JointAtomPhotonState apply_mode_map(const JointAtomPhotonState &state, const ModeMap &map) {
    std::vector<JointTerm> out;
    for (const auto &t : state.terms()) {
        // Expand Π a†_in over the image of each creation operator.
        std::map<PhotonOccupation, Complex> monomials{{PhotonOccupation{}, 1.0}};
        for (const auto &[mode, n] : t.photons) {
            auto image = map(mode);
            for (int k = 0; k < n; ++k) {
                std::map<PhotonOccupation, Complex> next;
                for (const auto &[occ, c] : monomials) {
                    for (const auto &[target, coeff] : image) {
                        if (coeff == Complex(0.0, 0.0)) {
                            continue;
                        }
                        PhotonOccupation grown = occ;
                        ++grown[target];
                        next[grown] += c * coeff;
                    }
                }
                monomials = std::move(next);
            }
        }
        const double inv_in = 1.0 / occupation_weight(t.photons);
        for (const auto &[occ, c] : monomials) {
            out.push_back({t.amplitude * c * occupation_weight(occ) * inv_in, t.atoms, occ});
        }
    }
    return JointAtomPhotonState(std::move(out));
}

NetworkLayout::NetworkLayout(std::array<std::array<int, 2>, kNumAtoms> routes) : routes_(routes) {}

NetworkLayout NetworkLayout::canonical() {
    // routes[atom] = {H route, V route}
    return NetworkLayout({{{9, 7}, {7, 8}, {8, 9}}});
}

int NetworkLayout::output_mode(std::size_t atom, Polarization pol) const {
    if (atom >= kNumAtoms) {
        throw InvalidInput("NetworkLayout: atom index out of range");
    }
    return routes_[atom][pol_index(pol)];
}

void NetworkLayout::validate() const {
    for (std::size_t p = 0; p < 2; ++p) {
        std::array<int, 3> hits{};
        for (std::size_t atom = 0; atom < kNumAtoms; ++atom) {
            int m = routes_[atom][p];
            auto it = std::find(kOutputModes.begin(), kOutputModes.end(), m);
            if (it == kOutputModes.end()) {
                throw InvalidInput("NetworkLayout: route to unknown output mode " + std::to_string(m));
            }
            ++hits[static_cast<std::size_t>(it - kOutputModes.begin())];
        }
        for (std::size_t k = 0; k < hits.size(); ++k) {
            if (hits[k] != 1) {
                throw InvalidInput("NetworkLayout: output mode " + std::to_string(kOutputModes[k]) + " receives " +
                                   std::to_string(hits[k]) + " " + std::string(p == 0 ? "H" : "V") +
                                   " routes, expected 1");
            }
        }
    }
}

bool NetworkLayout::is_valid() const {
    try {
        validate();
        return true;
    } catch (const InvalidInput &) {
        return false;
    }
}

HilbertSpace three_cavity_space(int n_max) {
    if (n_max < 1) {
        throw InvalidInput("three_cavity_space: n_max must be >= 1");
    }
    std::vector<Subsystem> subs;
    const auto fock = static_cast<std::size_t>(n_max + 1);
    for (std::size_t k = 0; k < kThreeCavityLabels.size(); ++k) {
        subs.push_back({kThreeCavityLabels[k], k % 3 == 0 ? kEffectiveAtomDim : fock});
    }
    return HilbertSpace(std::move(subs));
}

JointAtomPhotonState emit_and_qwp(const StateVector &three_cavity_state) {
    const HilbertSpace &space = three_cavity_state.space();
    std::vector<std::string> labels = space.labels();
    if (labels.size() != kThreeCavityLabels.size() ||
        !std::equal(labels.begin(), labels.end(), kThreeCavityLabels.begin()) ||
        space.dim_of("a") != kEffectiveAtomDim) {
        throw InvalidInput("emit_and_qwp: expected space " + three_cavity_space().describe() + ", got " +
                           space.describe());
    }
    std::vector<JointTerm> terms;
    const CVector &amps = three_cavity_state.amplitudes();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        if (std::abs(amps(i)) <= kEmissionZero) {
            continue;
        }
        auto digits = space.digits(static_cast<std::size_t>(i));
        JointTerm term{amps(i), {}, {}};
        for (std::size_t atom = 0; atom < kNumAtoms; ++atom) {
            term.atoms[atom] = static_cast<AtomLevel>(digits[3 * atom]);
            std::size_t n_l = digits[3 * atom + 1];
            std::size_t n_r = digits[3 * atom + 2];
            if (n_l + n_r != 1) {
                throw InvalidInput("emit_and_qwp: cavity " + kThreeCavityLabels[3 * atom + 1].substr(0, 1) +
                                   " holds " + std::to_string(n_l + n_r) +
                                   " photons; the interaction did not stop at the operating time");
            }
            Circular j = n_l == 1 ? Circular::kL : Circular::kR;
            term.photons[{kSourceModes[atom], after_qwp(j)}] = 1;
        }
        terms.push_back(std::move(term));
    }
    return JointAtomPhotonState(std::move(terms));
}

JointAtomPhotonState apply_pbs_routing(const JointAtomPhotonState &state, const NetworkLayout &layout) {
    return apply_mode_map(state, [&](const PhotonMode &m) -> std::vector<std::pair<PhotonMode, Complex>> {
        auto it = std::find(kSourceModes.begin(), kSourceModes.end(), m.spatial);
        if (it == kSourceModes.end()) {
            throw InvalidInput("apply_pbs_routing: photon on unrouted mode " + to_string(m));
        }
        auto atom = static_cast<std::size_t>(it - kSourceModes.begin());
        return {{PhotonMode{layout.output_mode(atom, m.pol), m.pol}, 1.0}};
    });
}

CMatrix hwp_matrix() {
    CMatrix m(2, 2);
    m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return m;
}

JointAtomPhotonState apply_hwp(const JointAtomPhotonState &state, const std::set<int> &modes) {
    return apply_mode_map(state, [&](const PhotonMode &m) -> std::vector<std::pair<PhotonMode, Complex>> {
        if (!modes.contains(m.spatial)) {
            return {{m, 1.0}};
        }
        const double v_sign = m.pol == Polarization::kH ? 1.0 : -1.0;
        return {{PhotonMode{m.spatial, Polarization::kH}, kInvSqrt2},
                {PhotonMode{m.spatial, Polarization::kV}, v_sign * kInvSqrt2}};
    });
}

JointAtomPhotonState full_network(const StateVector &three_cavity_state, const NetworkLayout &layout) {
    JointAtomPhotonState s = emit_and_qwp(three_cavity_state);
    s = apply_pbs_routing(s, layout);
    return apply_hwp(s, {kOutputModes.begin(), kOutputModes.end()});
}

JointAtomPhotonState expected_network_output() {
    using L = AtomLevel;
    struct Factor {
        int mode;
        int sign;  // ψ^± = (H ± V)/√2
    };
    struct Row {
        double coeff;
        AtomConfiguration atoms;
        std::array<Factor, 3> factors;
    };
    const std::array<Row, 8> rows = {{
        {-3, {L::kEL, L::kEL, L::kEL}, {{{7, -1}, {8, -1}, {9, -1}}}},
        {+3, {L::kER, L::kER, L::kER}, {{{7, +1}, {8, +1}, {9, +1}}}},
        {-1, {L::kEL, L::kEL, L::kER}, {{{7, -1}, {8, -1}, {8, +1}}}},
        {-1, {L::kEL, L::kER, L::kEL}, {{{7, -1}, {7, +1}, {9, -1}}}},
        {+1, {L::kEL, L::kER, L::kER}, {{{7, -1}, {7, +1}, {8, +1}}}},
        {-1, {L::kER, L::kEL, L::kEL}, {{{8, -1}, {9, -1}, {9, +1}}}},
        {+1, {L::kER, L::kEL, L::kER}, {{{8, -1}, {8, +1}, {9, +1}}}},
        {+1, {L::kER, L::kER, L::kEL}, {{{7, +1}, {9, -1}, {9, +1}}}},
    }};
    const double norm = 1.0 / (2.0 * std::sqrt(6.0));
    std::vector<JointTerm> terms;
    for (const auto &row : rows) {
        // Each ψ factor contributes a†_H or ±a†_V; 2^3 choices per row.
        for (int mask = 0; mask < 8; ++mask) {
            double c = row.coeff * norm * kInvSqrt2 * kInvSqrt2 * kInvSqrt2;
            PhotonOccupation occ;
            for (int k = 0; k < 3; ++k) {
                const bool vertical = (mask >> k) & 1;
                if (vertical) {
                    c *= row.factors[k].sign;
                }
                ++occ[{row.factors[k].mode, vertical ? Polarization::kV : Polarization::kH}];
            }
            // a†^n|0⟩ = √n! |n⟩
            for (const auto &[mode, n] : occ) {
                c *= std::sqrt(factorial(n));
            }
            terms.push_back({c, row.atoms, occ});
        }
    }
    return JointAtomPhotonState(std::move(terms));
}

std::vector<NetworkLayout> search_consistent_layouts(const StateVector &three_cavity_state, double tol) {
    const JointAtomPhotonState emitted = emit_and_qwp(three_cavity_state);
    const JointAtomPhotonState target = expected_network_output();
    const std::set<int> outputs(kOutputModes.begin(), kOutputModes.end());
    std::vector<NetworkLayout> found;
    std::array<std::array<int, 2>, kNumAtoms> routes{};
    for (int code = 0; code < 729; ++code) {
        int c = code;
        for (std::size_t atom = 0; atom < kNumAtoms; ++atom) {
            for (std::size_t p = 0; p < 2; ++p) {
                routes[atom][p] = kOutputModes[static_cast<std::size_t>(c % 3)];
                c /= 3;
            }
        }
        NetworkLayout layout(routes);
        JointAtomPhotonState out = apply_hwp(apply_pbs_routing(emitted, layout), outputs);
        if (distance_up_to_phase(out, target) <= tol) {
            found.push_back(layout);
        }
    }
    return found;
}

}  // namespace wghz
