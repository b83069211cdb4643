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

#include "wghz/detection.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace wghz {

namespace {

// Below this the pattern is reported as impossible rather than normalized.
constexpr double kZeroProbability = 1e-20;

void require_efficiency(double eta_d) {
    if (!std::isfinite(eta_d) || eta_d < 0.0 || eta_d > 1.0) {
        throw InvalidInput("detector efficiency must lie in [0, 1]");
    }
}

std::size_t atom_flat_index(const AtomConfiguration &atoms) {
    std::size_t k = 0;
    for (AtomLevel l : atoms) {
        if (!is_stable(l)) {
            throw InvalidInput("detection: atoms must be in the 4-level stable manifold");
        }
        k = k * kEffectiveAtomDim + index(l);
    }
    return k;
}

StateVector ghz_of(AtomLevel left, AtomLevel right, double sign) {
    HilbertSpace space = three_atom_space();
    CVector v = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
    const auto l = static_cast<Eigen::Index>(atom_flat_index({left, left, left}));
    const auto r = static_cast<Eigen::Index>(atom_flat_index({right, right, right}));
    v(l) = 1.0 / std::numbers::sqrt2;
    v(r) = sign / std::numbers::sqrt2;
    return StateVector(std::move(space), std::move(v));
}

}  // namespace

std::string_view to_string(Detector d) {
    switch (d) {
        case Detector::kD7H: return "D7H";
        case Detector::kD7V: return "D7V";
        case Detector::kD8H: return "D8H";
        case Detector::kD8V: return "D8V";
        case Detector::kD9H: return "D9H";
        case Detector::kD9V: return "D9V";
    }
    return "?";
}

PhotonMode detector_mode(Detector d) {
    auto k = static_cast<std::size_t>(d);
    return {kOutputModes[k / 2], k % 2 == 0 ? Polarization::kH : Polarization::kV};
}

Detector detector_for(const PhotonMode &mode) {
    auto it = std::find(kOutputModes.begin(), kOutputModes.end(), mode.spatial);
    if (it == kOutputModes.end()) {
        throw InvalidInput("no detector on mode " + to_string(mode));
    }
    auto k = static_cast<std::size_t>(it - kOutputModes.begin()) * 2 + (mode.pol == Polarization::kV ? 1 : 0);
    return static_cast<Detector>(k);
}

ClickPattern::ClickPattern(std::initializer_list<Detector> fired) {
    for (Detector d : fired) {
        bits_.set(static_cast<std::size_t>(d));
    }
}

ClickPattern ClickPattern::from_bits(unsigned long bits) {
    if (bits >= kNumPatterns) {
        throw InvalidInput("ClickPattern bits out of range");
    }
    ClickPattern p;
    p.bits_ = std::bitset<kNumDetectors>(bits);
    return p;
}

std::string ClickPattern::to_string() const {
    std::string s = "{";
    bool first = true;
    for (std::size_t k = 0; k < kNumDetectors; ++k) {
        if (bits_.test(k)) {
            if (!first) {
                s += ",";
            }
            first = false;
            s += wghz::to_string(static_cast<Detector>(k));
        }
    }
    return s + "}";
}

std::string_view to_string(OutcomeClass c) {
    switch (c) {
        case OutcomeClass::kGhzPlus: return "GHZ_PLUS";
        case OutcomeClass::kGhzMinus: return "GHZ_MINUS";
        case OutcomeClass::kReject: return "REJECT";
    }
    return "?";
}

OutcomeClass classify_pattern(const ClickPattern &pattern) {
    int v_clicks = 0;
    for (std::size_t m = 0; m < kOutputModes.size(); ++m) {
        const bool h = pattern.fired(static_cast<Detector>(2 * m));
        const bool v = pattern.fired(static_cast<Detector>(2 * m + 1));
        if (h == v) {
            return OutcomeClass::kReject;
        }
        v_clicks += v ? 1 : 0;
    }
    return v_clicks % 2 == 1 ? OutcomeClass::kGhzPlus : OutcomeClass::kGhzMinus;
}

std::vector<ClickPattern> accepted_patterns() {
    std::vector<ClickPattern> out;
    for (unsigned long b = 0; b < kNumPatterns; ++b) {
        ClickPattern p = ClickPattern::from_bits(b);
        if (classify_pattern(p) != OutcomeClass::kReject) {
            out.push_back(p);
        }
    }
    return out;
}

double click_probability(double eta_d, int n) {
    require_efficiency(eta_d);
    return 1.0 - std::pow(1.0 - eta_d, n);
}

PovmElements povm_elements(double eta_d, int n_max) {
    require_efficiency(eta_d);
    if (n_max < 0) {
        throw InvalidInput("povm_elements: n_max must be >= 0");
    }
    auto d = static_cast<Eigen::Index>(n_max + 1);
    PovmElements e{CMatrix::Zero(d, d), CMatrix::Zero(d, d)};
    for (Eigen::Index k = 0; k < d; ++k) {
        const double off = std::pow(1.0 - eta_d, static_cast<double>(k));
        e.off(k, k) = off;
        e.click(k, k) = 1.0 - off;
    }
    return e;
}

HilbertSpace three_atom_space() {
    return HilbertSpace{{"a", kEffectiveAtomDim}, {"b", kEffectiveAtomDim}, {"c", kEffectiveAtomDim}};
}

Measurement measure(const JointAtomPhotonState &state, const ClickPattern &pattern, double eta_d) {
    require_efficiency(eta_d);
    HilbertSpace atoms = three_atom_space();
    const auto dim = static_cast<Eigen::Index>(atoms.dim());

    // The POVM is diagonal in photon number, so different occupations never interfere.
    std::map<PhotonOccupation, CVector> branches;
    for (const auto &t : state.terms()) {
        auto [it, inserted] = branches.try_emplace(t.photons, CVector::Zero(dim));
        it->second(static_cast<Eigen::Index>(atom_flat_index(t.atoms))) += t.amplitude;
    }

    CMatrix rho = CMatrix::Zero(dim, dim);
    for (const auto &[occ, v] : branches) {
        std::array<int, kNumDetectors> counts{};
        for (const auto &[mode, n] : occ) {
            counts[static_cast<std::size_t>(detector_for(mode))] += n;
        }
        double w = 1.0;
        for (std::size_t k = 0; k < kNumDetectors; ++k) {
            const double off = std::pow(1.0 - eta_d, counts[k]);
            w *= pattern.fired(static_cast<Detector>(k)) ? 1.0 - off : off;
        }
        if (w != 0.0) {
            rho += w * (v * v.adjoint());
        }
    }
    Measurement m;
    m.probability = std::max(0.0, rho.trace().real());
    if (m.probability > kZeroProbability) {
        m.conditional = DensityMatrix(std::move(atoms), rho / m.probability);
    } else {
        m.probability = 0.0;
    }
    return m;
}

double success_probability_ideal(double eta_d) {
    require_efficiency(eta_d);
    return 0.75 * eta_d * eta_d * eta_d;
}

StateVector ghz_plus_excited() { return ghz_of(AtomLevel::kEL, AtomLevel::kER, 1.0); }
StateVector ghz_minus_excited() { return ghz_of(AtomLevel::kEL, AtomLevel::kER, -1.0); }
StateVector ghz_ground() { return ghz_of(AtomLevel::kGL, AtomLevel::kGR, 1.0); }

StateVector class_target(OutcomeClass c) {
    switch (c) {
        case OutcomeClass::kGhzPlus: return ghz_plus_excited();
        case OutcomeClass::kGhzMinus: return ghz_minus_excited();
        case OutcomeClass::kReject: break;
    }
    throw InvalidInput("REJECT has no target state");
}

const PatternOutcome &DetectionReport::outcome(const ClickPattern &p) const {
    for (const auto &o : outcomes) {
        if (o.pattern == p) {
            return o;
        }
    }
    throw InvalidInput("pattern " + p.to_string() + " not in report");
}

DetectionReport enumerate_outcomes(const JointAtomPhotonState &state, double eta_d) {
    DetectionReport report;
    report.eta_d = eta_d;
    report.formula_probability = success_probability_ideal(eta_d);
    report.outcomes.reserve(kNumPatterns);
    bool any_accepted = false;
    for (unsigned long b = 0; b < kNumPatterns; ++b) {
        PatternOutcome o;
        o.pattern = ClickPattern::from_bits(b);
        o.outcome = classify_pattern(o.pattern);
        Measurement m = measure(state, o.pattern, eta_d);
        o.probability = m.probability;
        o.conditional = std::move(m.conditional);
        report.total_probability += o.probability;
        if (o.outcome != OutcomeClass::kReject) {
            report.accepted_probability += o.probability;
            if (o.conditional) {
                o.fidelity = fidelity(*o.conditional, class_target(o.outcome));
                report.min_accepted_fidelity =
                    any_accepted ? std::min(report.min_accepted_fidelity, o.fidelity) : o.fidelity;
                any_accepted = true;
            }
        }
        report.outcomes.push_back(std::move(o));
    }
    if (!any_accepted) {
        report.min_accepted_fidelity = 0.0;
    }
    report.formula_deviation = report.accepted_probability - report.formula_probability * state.norm_squared();
    return report;
}

}  // namespace wghz
