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

#ifndef WGHZ_DYNAMICS_H
#define WGHZ_DYNAMICS_H

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wghz/atom_cavity.h"
#include "wghz/hilbert.h"

namespace wghz {

/// Amplitudes of |g_j, vac⟩ (alpha) and |e_j, 1_j⟩ (beta) after the Raman
/// interaction, starting from |g_j, vac⟩.
struct EvolutionCoefficients {
    Complex alpha;
    Complex beta;

    double norm_squared() const { return std::norm(alpha) + std::norm(beta); }
};

/// How the cos term of the beta numerator is weighted. kDerived is the exact
/// solution of the 2×2 Raman block. kOmegaSquaredCosine weights it by Ω²
/// instead of λ_cΩ, which agrees with kDerived only when λ_c = Ω; it exists
/// for comparison against that variant.
enum class BetaConvention { kDerived, kOmegaSquaredCosine };

/// Closed-system coefficients under the effective Hamiltonian, θ = (λ_c²+Ω²)t/Δ:
///   α = (λ_c² + Ω² e^{iθ})/(λ_c²+Ω²),  β = λ_cΩ(e^{iθ} − 1)/(λ_c²+Ω²).
EvolutionCoefficients ideal_coefficients(const SystemParams &params, double t,
                                         BetaConvention convention = BetaConvention::kDerived);

/// No-jump coefficients under the cavity-damped effective Hamiltonian. Requires
/// λ_c = Ω (relative 1e-12); throws InvalidInput otherwise. The κ = 2η
/// degeneracy is handled by a series branch for |φt| < 1e-6.
EvolutionCoefficients decay_coefficients(const SystemParams &params, double t);

/// Fixed-step classical fourth-order Runge-Kutta. The horizon is split into
/// ceil(t/dt) equal steps so the final time is hit exactly.
struct IntegratorConfig {
    double dt = 1e-3;

    /// dt = fraction / max_rate.
    static IntegratorConfig for_rate(double max_rate, double fraction = 1e-3);
    std::size_t steps_for(double t) const;
    /// True when dt·max_rate exceeds 0.05.
    bool step_too_coarse(double max_rate) const;
};

/// Largest frequency scale of an atom-cavity system (Δ, λ_c√n_max, Ω, κ, γ_a).
double characteristic_rate(const SystemParams &params);
/// Spectral radius of h plus the total dissipative rate Σ rate·‖C‖².
double characteristic_rate(const Operator &h, std::span<const CollapseChannel> collapse = {});

/// Integrates dψ/dt = −iHψ. H need not be Hermitian.
StateVector schrodinger_evolve(const Operator &h, const StateVector &psi0, double t,
                               const IntegratorConfig &cfg);

/// Called after every accepted step with (step index, time, ρ).
using LindbladObserver = std::function<void(std::size_t, double, const CMatrix &)>;

/// Integrates dρ/dt = −i[H,ρ] − Σ (r/2)(C†Cρ − 2CρC† + ρC†C).
/// rho0 must be a valid density matrix.
DensityMatrix lindblad_evolve(const Operator &h, std::span<const CollapseChannel> collapse,
                              const DensityMatrix &rho0, double t, const IntegratorConfig &cfg,
                              const LindbladObserver &observer = {});

/// Linear map ρ(0) -> ρ(t) of the same fixed-step integration, stored as the
/// N-th power of the one-step transfer matrix on column-major vec(ρ). Applies
/// to arbitrary (including non-Hermitian) operator inputs, which is what
/// channel tomography needs.
class LindbladPropagator {
  public:
    LindbladPropagator(HilbertSpace space, CMatrix transfer, std::size_t steps);

    const HilbertSpace &space() const { return space_; }
    std::size_t steps() const { return steps_; }
    const CMatrix &transfer() const { return transfer_; }

    CMatrix apply(const CMatrix &rho0) const;
    DensityMatrix apply(const DensityMatrix &rho0) const;

  private:
    HilbertSpace space_;
    CMatrix transfer_;
    std::size_t steps_;
};

LindbladPropagator lindblad_propagator(const Operator &h, std::span<const CollapseChannel> collapse,
                                       double t, const IntegratorConfig &cfg);

/// Dense Liouvillian on column-major vec(ρ).
CMatrix liouvillian(const Operator &h, std::span<const CollapseChannel> collapse);

struct DeviationSample {
    double time;
    double distance;
};

struct DeviationReport {
    std::vector<DeviationSample> samples;
    double max_distance = 0.0;
};

/// Evolves |g_L, vac⟩ under the 6-level and the 4-level Hamiltonians and reports
/// the trace distance between the full state restricted to the stable levels
/// and the effective state at each time. Both pictures are compared as density
/// matrices, so global phases drop out.
DeviationReport compare_full_vs_effective(const SystemParams &params, std::span<const double> t_grid);

/// `count` equally spaced times covering [0, raman_period()].
std::vector<double> raman_period_grid(const SystemParams &params, std::size_t count);

}  // namespace wghz

#endif  // WGHZ_DYNAMICS_H
