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

// Decay curves and master-equation fidelities. Rates are in units of a
// reference rate γ, times in 1/γ.

#ifndef WGHZ_ANALYSIS_H
#define WGHZ_ANALYSIS_H

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wghz/atom_cavity.h"
#include "wghz/photonics.h"

namespace wghz {

/// 6η⁶[1 − cos φ′t]³ e^{−3κt}/φ′⁶ with φ′ = √(4η² − κ²), η = λ_c²/Δ.
/// Written as 6η⁶t⁶[(1 − cos x)/x²]³e^{−3κt}, x = φ′t, so φ′ -> 0 and the
/// overdamped side (imaginary φ′) need no special casing beyond a series near x = 0.
double pd_closed_form(const SystemParams &params, double t);

/// (3/4)|β′(t)|⁶ from decay_coefficients (requires λ_c = Ω).
double pd_numeric(const SystemParams &params, double t);

/// κ = 1, Δ = 1, λ_c = Ω = √ratio, so that η/κ = ratio and t is κt.
SystemParams decay_params_for_ratio(double eta_over_kappa);

struct SweepSpec {
    std::string parameter = "kappa_t";
    double min = 0.0;
    double max = 1.0;
    std::size_t steps = 101;
    SystemParams fixed;

    /// steps >= 2, min < max, parameter "kappa_t", κ > 0 and λ_c = Ω.
    void validate() const;
};

struct CurvePoint {
    double abscissa;
    double closed_form;
    double numeric;
    double abs_diff;
};

/// Evenly spaced κt grid plus any extra abscissae, sorted ascending.
std::vector<CurvePoint> pd_sweep(const SweepSpec &spec, std::span<const double> extra = {});

/// Operating point used for the noisy fidelity study.
inline constexpr double kReferenceOmega = 2.9;
inline constexpr double kReferenceDelta = 14.0;
inline constexpr double kReferenceLambda = 2.86;
/// λ_c/κ held fixed by KappaConvention::kFixed.
inline constexpr double kReferenceKappaRatio = 250.0;

enum class KappaConvention {
    kFixed,        ///< κ = λ_c/250 regardless of γ_a
    kEqualGammaA,  ///< κ = γ_a
    kHalfGammaA,   ///< κ = γ_a/2
};

std::string_view to_string(KappaConvention c);

/// Reference operating point with γ_a = λ_c/lambda_over_gamma_a and κ per convention.
SystemParams reference_noise_params(double lambda_over_gamma_a, KappaConvention convention);
/// Reference operating point with explicit κ and γ_a.
SystemParams reference_params_with_rates(double kappa, double gamma_a);

struct FidelityEstimate {
    double time = 0.0;
    std::size_t steps = 0;
    /// ⟨T|ρ|T⟩ for one atom-cavity subsystem started in (gL+gR)/√2 ⊗ vac,
    /// T = (|eL,1_L⟩ + |eR,1_R⟩)/√2.
    double single_transfer = 0.0;
    /// Estimator (a): product of the three root fidelities, single_transfer^{3/2}.
    double estimator_a = 0.0;
    /// Product of the three squared-convention fidelities, single_transfer³.
    double squared_product = 0.0;
    /// Estimator (b): heralded GHZ fidelity after pushing the three-fold
    /// product of subsystem output maps through the ideal network and η_d = 1
    /// detection, sign correction and Raman mapping; probability-weighted
    /// over the eight accepted patterns.
    double estimator_b = 0.0;
    /// Σ of the accepted-pattern probabilities entering estimator_b.
    double herald_probability = 0.0;
    /// |tr ρ(t) − 1| over the propagated inputs.
    double max_trace_error = 0.0;
    /// Population of the doubly occupied cavity sector (|1_L,1_R⟩), which the
    /// three-fold estimate ignores.
    double dropped_population = 0.0;
};

/// Single-subsystem master-equation run with the full 6-level Hamiltonian and
/// all collapse channels, integrated with fixed-step RK4 (dt = step_fraction
/// / characteristic_rate, step_fraction in (0, 0.05]). t defaults to the
/// operating time.
FidelityEstimate master_equation_fidelity(const SystemParams &params, std::optional<double> t = std::nullopt,
                                          double step_fraction = 1e-3,
                                          const NetworkLayout &layout = NetworkLayout::canonical());

enum class AxisConvention {
    kRates,   ///< (a) κ/γ and γ_a/γ on [0, rate_max]
    kRatios,  ///< (b) λ_c/κ and λ_c/γ_a on [ratio_min, ratio_max]
};

struct SurfaceSpec {
    AxisConvention axes = AxisConvention::kRates;
    std::size_t steps = 5;
    double rate_max = 0.06;
    double ratio_min = 50.0;
    double ratio_max = 250.0;
    double step_fraction = 1e-3;

    void validate() const;
};

struct SurfacePoint {
    double kappa_over_gamma;
    double gamma_a_over_gamma;
    FidelityEstimate estimate;
};

/// Row-major over (κ axis, γ_a axis), both in ascending noise order, so the
/// first point is always the least noisy corner.
std::vector<SurfacePoint> fidelity_surface(const SurfaceSpec &spec);

}  // namespace wghz

#endif  // WGHZ_ANALYSIS_H
