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

#include "wghz/atom_cavity.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wghz {

namespace {

CMatrix level_projector(std::size_t atom_dim, AtomLevel m, AtomLevel n) {
    CMatrix p = CMatrix::Zero(static_cast<Eigen::Index>(atom_dim), static_cast<Eigen::Index>(atom_dim));
    p(static_cast<Eigen::Index>(index(m)), static_cast<Eigen::Index>(index(n))) = 1.0;
    return p;
}

// |m⟩⟨n| ⊗ A_L ⊗ A_R on atom ⊗ Fock_L ⊗ Fock_R.
CMatrix atom_cavity_term(std::size_t atom_dim, AtomLevel m, AtomLevel n, const CMatrix &op_l,
                         const CMatrix &op_r) {
    return kron(kron(level_projector(atom_dim, m, n), op_l), op_r);
}

struct ModeOps {
    CMatrix id;
    CMatrix a;
};

ModeOps mode_ops(int n_max) {
    auto d = static_cast<Eigen::Index>(n_max + 1);
    return {CMatrix::Identity(d, d), annihilation(n_max)};
}

void require_finite_nonnegative(double v, const char *field) {
    if (!std::isfinite(v) || v < 0.0) {
        throw InvalidInput(std::string("SystemParams.") + field + " must be a finite number >= 0");
    }
}

}  // namespace

std::string_view to_string(AtomLevel level) {
    switch (level) {
        case AtomLevel::kGL: return "gL";
        case AtomLevel::kGR: return "gR";
        case AtomLevel::kEL: return "eL";
        case AtomLevel::kER: return "eR";
        case AtomLevel::kFL: return "fL";
        case AtomLevel::kFR: return "fR";
    }
    return "?";
}

std::string_view to_string(Circular j) { return j == Circular::kL ? "L" : "R"; }

void SystemParams::validate() const {
    if (!std::isfinite(delta) || delta <= 0.0) {
        throw InvalidInput("SystemParams.delta must be a finite number > 0");
    }
    require_finite_nonnegative(lambda_c, "lambda_c");
    require_finite_nonnegative(omega, "omega");
    require_finite_nonnegative(kappa, "kappa");
    require_finite_nonnegative(gamma_a, "gamma_a");
    if (!std::isfinite(eta_d) || eta_d < 0.0 || eta_d > 1.0) {
        throw InvalidInput("SystemParams.eta_d must lie in [0, 1]");
    }
    if (n_max < 1) {
        throw InvalidInput("SystemParams.n_max must be >= 1");
    }
}

bool SystemParams::adiabatic_elimination_questionable() const {
    return delta < 10.0 * std::max(lambda_c, omega);
}

double SystemParams::operating_time() const {
    double s = lambda_c * lambda_c + omega * omega;
    if (s <= 0.0) {
        throw InvalidInput("operating time undefined for λ_c = Ω = 0");
    }
    return delta * std::numbers::pi / s;
}

double SystemParams::raman_period() const { return 2.0 * operating_time(); }

DerivedRates derived_rates(const SystemParams &params) {
    double eta = params.lambda_c * params.lambda_c / params.delta;
    double k2 = params.kappa * params.kappa;
    return DerivedRates{
        .eta = eta,
        .phi = std::sqrt(Complex(k2 - 4.0 * eta * eta, 0.0)),
        .phi_prime = std::sqrt(Complex(4.0 * eta * eta - k2, 0.0)),
        .varphi = Complex(-params.kappa / 2.0, eta),
    };
}

CMatrix annihilation(int n_max) {
    auto d = static_cast<Eigen::Index>(n_max + 1);
    CMatrix a = CMatrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

HilbertSpace atom_cavity_space(std::size_t atom_dim, int n_max, const CavityLabels &labels) {
    auto fock = static_cast<std::size_t>(n_max + 1);
    return HilbertSpace{{labels.atom, atom_dim}, {labels.mode_l, fock}, {labels.mode_r, fock}};
}

HilbertSpace full_space(const SystemParams &params) {
    return atom_cavity_space(kFullAtomDim, params.n_max);
}

HilbertSpace effective_space(const SystemParams &params) {
    return atom_cavity_space(kEffectiveAtomDim, params.n_max);
}

Operator full_hamiltonian(const SystemParams &params) {
    params.validate();
    const int n = params.n_max;
    const std::size_t d = kFullAtomDim;
    auto [id, a] = mode_ops(n);
    HilbertSpace space = full_space(params);
    CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(space.dim()));
    for (Circular j : kBothCircular) {
        const CMatrix &a_l = j == Circular::kL ? a : id;
        const CMatrix &a_r = j == Circular::kR ? a : id;
        AtomLevel f = f_level(j), e = e_level(j), g = g_level(j);
        h += params.delta * atom_cavity_term(d, f, f, id, id);
        CMatrix raising = params.lambda_c * atom_cavity_term(d, f, e, a_l, a_r) +
                          params.omega * atom_cavity_term(d, f, g, id, id);
        h += raising + raising.adjoint();
    }
    return Operator(std::move(space), std::move(h), true);
}

Operator effective_hamiltonian(const SystemParams &params) {
    params.validate();
    const int n = params.n_max;
    const std::size_t d = kEffectiveAtomDim;
    auto [id, a] = mode_ops(n);
    CMatrix num = a.adjoint() * a;
    HilbertSpace space = effective_space(params);
    CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(space.dim()));
    const double stark_e = params.lambda_c * params.lambda_c / params.delta;
    const double stark_g = params.omega * params.omega / params.delta;
    const double raman = params.lambda_c * params.omega / params.delta;
    for (Circular j : kBothCircular) {
        const bool left = j == Circular::kL;
        AtomLevel e = e_level(j), g = g_level(j);
        h -= stark_e * atom_cavity_term(d, e, e, left ? num : id, left ? id : num);
        h -= stark_g * atom_cavity_term(d, g, g, id, id);
        CMatrix hop = atom_cavity_term(d, g, e, left ? a : id, left ? id : a);
        h -= raman * (hop + hop.adjoint());
    }
    return Operator(std::move(space), std::move(h), true);
}

Operator conditional_hamiltonian(const SystemParams &params) {
    Operator h = effective_hamiltonian(params);
    HilbertSpace space = h.space();
    auto [id, a] = mode_ops(params.n_max);
    CMatrix num = a.adjoint() * a;
    CMatrix photons = local_operator(space, "cav_L", num).matrix() + local_operator(space, "cav_R", num).matrix();
    return Operator(std::move(space), h.matrix() - kI * params.kappa * photons, params.kappa == 0.0);
}

std::vector<CollapseChannel> collapse_operators(const SystemParams &params) {
    params.validate();
    HilbertSpace space = full_space(params);
    CMatrix a = annihilation(params.n_max);
    std::vector<CollapseChannel> out;
    out.push_back({"cavity_L", params.kappa, local_operator(space, "cav_L", a)});
    out.push_back({"cavity_R", params.kappa, local_operator(space, "cav_R", a)});
    for (Circular j : kBothCircular) {
        for (AtomLevel x : {g_level(j), e_level(j)}) {
            std::string name = "spont_" + std::string(to_string(f_level(j))) + "_to_" + std::string(to_string(x));
            out.push_back({std::move(name), params.gamma_a / 2.0,
                           local_operator(space, "atom", level_projector(kFullAtomDim, x, f_level(j)))});
        }
    }
    return out;
}

StateVector embed_effective(const StateVector &effective, const SystemParams &params) {
    if (!(effective.space() == effective_space(params))) {
        throw InvalidInput("embed_effective: expected " + effective_space(params).describe());
    }
    HilbertSpace full = full_space(params);
    CVector v = CVector::Zero(static_cast<Eigen::Index>(full.dim()));
    // Stable levels share indices, so the effective block is a prefix of the full one.
    v.head(effective.amplitudes().size()) = effective.amplitudes();
    return StateVector(std::move(full), std::move(v));
}

StateVector project_effective(const StateVector &full, const SystemParams &params) {
    if (!(full.space() == full_space(params))) {
        throw InvalidInput("project_effective: expected " + full_space(params).describe());
    }
    HilbertSpace eff = effective_space(params);
    auto n = static_cast<Eigen::Index>(eff.dim());
    return StateVector(std::move(eff), full.amplitudes().head(n));
}

DensityMatrix project_effective(const DensityMatrix &full, const SystemParams &params) {
    if (!(full.space() == full_space(params))) {
        throw InvalidInput("project_effective: expected " + full_space(params).describe());
    }
    HilbertSpace eff = effective_space(params);
    auto n = static_cast<Eigen::Index>(eff.dim());
    return DensityMatrix(std::move(eff), full.matrix().topLeftCorner(n, n));
}

}  // namespace wghz
