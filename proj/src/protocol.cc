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

#include <array>
#include <cmath>
#include <numbers>

namespace wghz {

namespace {

constexpr double kEmptySector = 1e-300;

// Squared weight of the state on {l0, l1}³.
double weight_on(const StateVector &psi, AtomLevel l0, AtomLevel l1) {
    double w = 0.0;
    const HilbertSpace &space = psi.space();
    for (std::size_t i = 0; i < space.dim(); ++i) {
        auto digits = space.digits(i);
        bool inside = true;
        for (auto d : digits) {
            inside = inside && (d == index(l0) || d == index(l1));
        }
        if (inside) {
            w += std::norm(psi.amplitudes()(static_cast<Eigen::Index>(i)));
        }
    }
    return w;
}

void require_three_atoms(const HilbertSpace &space, const char *what) {
    if (!(space == three_atom_space())) {
        throw InvalidInput(std::string(what) + ": expected " + three_atom_space().describe() + ", got " +
                           space.describe());
    }
}

// e <-> g on each atom, as a permutation on the 4-level space.
CMatrix raman_swap() {
    CMatrix s = CMatrix::Zero(4, 4);
    s(index(AtomLevel::kGL), index(AtomLevel::kEL)) = 1.0;
    s(index(AtomLevel::kEL), index(AtomLevel::kGL)) = 1.0;
    s(index(AtomLevel::kGR), index(AtomLevel::kER)) = 1.0;
    s(index(AtomLevel::kER), index(AtomLevel::kGR)) = 1.0;
    return s;
}

}  // namespace

StateVector prepare_w_state() {
    HilbertSpace space = three_atom_space();
    CVector v = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
    const std::size_t gl = index(AtomLevel::kGL), gr = index(AtomLevel::kGR);
    const double amp = 1.0 / std::sqrt(3.0);
    for (auto digits : {std::array{gl, gl, gr}, std::array{gl, gr, gl}, std::array{gr, gl, gl}}) {
        v(static_cast<Eigen::Index>(space.flat_index(digits))) = amp;
    }
    return StateVector(std::move(space), std::move(v));
}

StateVector apply_hadamard_pulses(const StateVector &atoms) {
    require_three_atoms(atoms.space(), "apply_hadamard_pulses");
    const double outside = atoms.norm() * atoms.norm() - weight_on(atoms, AtomLevel::kGL, AtomLevel::kGR);
    if (outside > tolerances().state_norm) {
        throw InvalidInput("apply_hadamard_pulses: state has weight outside {gL, gR}");
    }
    CMatrix h = CMatrix::Identity(4, 4);
    const double r = 1.0 / std::numbers::sqrt2;
    h(0, 0) = r;
    h(0, 1) = r;
    h(1, 0) = r;
    h(1, 1) = -r;
    const CMatrix full = kron(kron(h, h), h);
    return StateVector(atoms.space(), full * atoms.amplitudes());
}

EvolutionCoefficients interaction_coefficients(const SystemParams &params, double t) {
    params.validate();
    if (params.kappa == 0.0) {
        return ideal_coefficients(params, t);
    }
    if (std::abs(params.lambda_c - params.omega) <= 1e-12 * std::max(params.lambda_c, params.omega)) {
        return decay_coefficients(params, t);
    }
    HilbertSpace space = effective_space(params);
    Operator u = propagator(conditional_hamiltonian(params), t);
    StateVector psi = u.apply(StateVector::basis(space, {index(AtomLevel::kGL), 0, 0}));
    return {psi.amplitude({index(AtomLevel::kGL), 0, 0}), psi.amplitude({index(AtomLevel::kEL), 1, 0})};
}

StateVector cavity_interaction(const StateVector &atoms, const EvolutionCoefficients &c, int n_max) {
    require_three_atoms(atoms.space(), "cavity_interaction");
    HilbertSpace out_space = three_cavity_space(n_max);
    CVector out = CVector::Zero(static_cast<Eigen::Index>(out_space.dim()));

    // Per-atom image of each level: list of (level, n_L, n_R, amplitude).
    struct Branch {
        std::size_t level, n_l, n_r;
        Complex amp;
    };
    auto image = [&](std::size_t level) -> std::vector<Branch> {
        switch (static_cast<AtomLevel>(level)) {
            case AtomLevel::kGL: return {{level, 0, 0, c.alpha}, {index(AtomLevel::kEL), 1, 0, c.beta}};
            case AtomLevel::kGR: return {{level, 0, 0, c.alpha}, {index(AtomLevel::kER), 0, 1, c.beta}};
            default: return {{level, 0, 0, 1.0}};
        }
    };

    const HilbertSpace &in_space = atoms.space();
    for (std::size_t i = 0; i < in_space.dim(); ++i) {
        const Complex a = atoms.amplitudes()(static_cast<Eigen::Index>(i));
        if (a == Complex(0.0, 0.0)) {
            continue;
        }
        auto digits = in_space.digits(i);
        auto ia = image(digits[0]), ib = image(digits[1]), ic = image(digits[2]);
        for (const auto &x : ia) {
            for (const auto &y : ib) {
                for (const auto &z : ic) {
                    std::array<std::size_t, 9> d = {x.level, x.n_l, x.n_r, y.level, y.n_l, y.n_r, z.level, z.n_l, z.n_r};
                    out(static_cast<Eigen::Index>(out_space.flat_index(d))) += a * x.amp * y.amp * z.amp;
                }
            }
        }
    }
    return StateVector(std::move(out_space), std::move(out));
}

StateVector cavity_interaction(const StateVector &atoms, const SystemParams &params, double t) {
    return cavity_interaction(atoms, interaction_coefficients(params, t), params.n_max);
}

StateVector operating_point_state(int n_max) {
    return cavity_interaction(apply_hadamard_pulses(prepare_w_state()), EvolutionCoefficients{0.0, -1.0}, n_max);
}

StateVector project_emitted(const StateVector &three_cavity_state) {
    const HilbertSpace &space = three_cavity_state.space();
    if (space.num_subsystems() != 9) {
        throw InvalidInput("project_emitted: expected the three-cavity space");
    }
    CVector v = three_cavity_state.amplitudes();
    for (std::size_t i = 0; i < space.dim(); ++i) {
        auto d = space.digits(i);
        for (std::size_t atom = 0; atom < kNumAtoms; ++atom) {
            if (d[3 * atom + 1] + d[3 * atom + 2] != 1) {
                v(static_cast<Eigen::Index>(i)) = 0.0;
                break;
            }
        }
    }
    return StateVector(space, std::move(v));
}

DensityMatrix sign_correction(const DensityMatrix &conditional, OutcomeClass outcome) {
    require_three_atoms(conditional.space(), "sign_correction");
    switch (outcome) {
        case OutcomeClass::kGhzPlus: return conditional;
        case OutcomeClass::kGhzMinus: {
            CMatrix flip = CMatrix::Identity(4, 4);
            flip(index(AtomLevel::kEL), index(AtomLevel::kEL)) = -1.0;
            return local_operator(conditional.space(), "a", flip, true).sandwich(conditional);
        }
        case OutcomeClass::kReject: break;
    }
    throw InvalidInput("sign_correction: REJECT outcome carries no heralded state");
}

DensityMatrix raman_mapping(const DensityMatrix &atoms) {
    require_three_atoms(atoms.space(), "raman_mapping");
    const HilbertSpace &space = atoms.space();
    double inside = 0.0;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        auto d = space.digits(i);
        bool excited = true;
        for (auto x : d) {
            excited = excited && (x == index(AtomLevel::kEL) || x == index(AtomLevel::kER));
        }
        if (excited) {
            inside += atoms.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        }
    }
    if (std::abs(atoms.trace().real() - inside) > tolerances().density_trace) {
        throw InvalidInput("raman_mapping: state has weight outside {eL, eR}");
    }
    const CMatrix s = raman_swap();
    return Operator(space, kron(kron(s, s), s), true).sandwich(atoms);
}

ProtocolRun run_protocol(const SystemParams &params, const NetworkLayout &layout, std::optional<double> t) {
    params.validate();
    layout.validate();
    ProtocolRun run;
    run.params = params;
    run.time = t.value_or(params.operating_time());
    run.coefficients = interaction_coefficients(params, run.time);

    const StateVector rotated = apply_hadamard_pulses(prepare_w_state());
    const StateVector emitted = project_emitted(cavity_interaction(rotated, run.coefficients, params.n_max));
    run.emitted_weight = emitted.norm() * emitted.norm();
    run.formula_probability = success_probability_ideal(params.eta_d) * run.emitted_weight;
    if (run.emitted_weight <= kEmptySector) {
        run.reject_probability = 1.0;
        return run;
    }

    const JointAtomPhotonState photons = full_network(emitted.normalized(), layout);
    run.detection = enumerate_outcomes(photons, params.eta_d);
    const StateVector target = ghz_ground();
    double weighted = 0.0;
    bool first = true;
    for (const auto &o : run.detection.outcomes) {
        if (o.outcome == OutcomeClass::kReject || !o.conditional) {
            continue;
        }
        DensityMatrix final_state = raman_mapping(sign_correction(*o.conditional, o.outcome));
        const double f = fidelity(final_state, target);
        const double p = o.probability * run.emitted_weight;
        run.accepted.push_back({o.pattern, o.outcome, *o.conditional, final_state, p, f});
        run.success_probability += p;
        weighted += p * f;
        run.min_fidelity = first ? f : std::min(run.min_fidelity, f);
        first = false;
    }
    run.reject_probability = 1.0 - run.success_probability;
    run.mean_fidelity = run.success_probability > 0.0 ? weighted / run.success_probability : 0.0;
    return run;
}

}  // namespace wghz
