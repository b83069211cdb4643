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

#include "wghz/analysis.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "wghz/detection.h"
#include "wghz/dynamics.h"
#include "wghz/protocol.h"

namespace wghz {

namespace {

Complex sinc(Complex z) {
    if (std::abs(z) < 1e-4) {
        return 1.0 - z * z / 6.0;
    }
    return std::sin(z) / z;
}

// Photon polarization carried out of the cavity: 0 = L, 1 = R.
constexpr std::array<Circular, 2> kPhotonPol = {Circular::kL, Circular::kR};
constexpr std::array<AtomLevel, 2> kGround = {AtomLevel::kGL, AtomLevel::kGR};

// Amplitude for the three source photons (one per cavity, polarizations
// given by bits of p) to produce exactly one photon per output mode with the
// polarizations fired in `pattern`.
Complex pattern_amplitude(const NetworkLayout &layout, const ClickPattern &pattern, int p) {
    PhotonOccupation in;
    for (std::size_t s = 0; s < kNumAtoms; ++s) {
        Circular j = kPhotonPol[static_cast<std::size_t>((p >> s) & 1)];
        in[{kSourceModes[s], after_qwp(j)}] = 1;
    }
    const AtomConfiguration placeholder = {AtomLevel::kEL, AtomLevel::kEL, AtomLevel::kEL};
    JointAtomPhotonState state({{1.0, placeholder, in}});
    state = apply_hwp(apply_pbs_routing(state, layout), {kOutputModes.begin(), kOutputModes.end()});
    PhotonOccupation out;
    for (std::size_t k = 0; k < kNumDetectors; ++k) {
        if (pattern.fired(static_cast<Detector>(k))) {
            out[detector_mode(static_cast<Detector>(k))] = 1;
        }
    }
    return state.amplitude(placeholder, out);
}

}  // namespace

double pd_closed_form(const SystemParams &params, double t) {
    params.validate();
    const DerivedRates r = derived_rates(params);
    const Complex x = r.phi_prime * t;
    // (1 − cos x)/x² = sinc²(x/2)/2, free of cancellation at small x and near 2πk.
    const Complex s = sinc(0.5 * x);
    const Complex g = 0.5 * s * s;
    const double eta_t = r.eta * t;
    const double eta_t3 = eta_t * eta_t * eta_t;
    const Complex value = 6.0 * eta_t3 * eta_t3 * g * g * g * std::exp(-3.0 * params.kappa * t);
    return value.real();
}

double pd_numeric(const SystemParams &params, double t) {
    const double b2 = std::norm(decay_coefficients(params, t).beta);
    return 0.75 * b2 * b2 * b2;
}

SystemParams decay_params_for_ratio(double eta_over_kappa) {
    if (!(eta_over_kappa > 0.0) || !std::isfinite(eta_over_kappa)) {
        throw InvalidInput("eta_over_kappa must be a finite number > 0");
    }
    SystemParams p;
    p.kappa = 1.0;
    p.delta = 1.0;
    p.lambda_c = std::sqrt(eta_over_kappa);
    p.omega = p.lambda_c;
    return p;
}

void SweepSpec::validate() const {
    if (parameter != "kappa_t") {
        throw InvalidInput("SweepSpec.parameter must be 'kappa_t'");
    }
    if (steps < 2) {
        throw InvalidInput("SweepSpec.steps must be >= 2");
    }
    if (!std::isfinite(min) || !std::isfinite(max) || min < 0.0 || !(min < max)) {
        throw InvalidInput("SweepSpec needs 0 <= min < max");
    }
    fixed.validate();
    if (!(fixed.kappa > 0.0)) {
        throw InvalidInput("SweepSpec.fixed.kappa must be > 0 for a kappa_t sweep");
    }
    if (std::abs(fixed.lambda_c - fixed.omega) > 1e-12 * std::max(fixed.lambda_c, fixed.omega)) {
        throw InvalidInput("SweepSpec.fixed needs lambda_c == omega");
    }
}

std::vector<CurvePoint> pd_sweep(const SweepSpec &spec, std::span<const double> extra) {
    spec.validate();
    std::vector<double> xs;
    xs.reserve(spec.steps + extra.size());
    for (std::size_t k = 0; k < spec.steps; ++k) {
        xs.push_back(spec.min + (spec.max - spec.min) * static_cast<double>(k) / static_cast<double>(spec.steps - 1));
    }
    for (double x : extra) {
        if (!std::isfinite(x) || x < 0.0) {
            throw InvalidInput("extra sweep abscissa must be finite and >= 0");
        }
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<CurvePoint> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const double t = x / spec.fixed.kappa;
        const double closed = pd_closed_form(spec.fixed, t);
        const double numeric = pd_numeric(spec.fixed, t);
        out.push_back({x, closed, numeric, std::abs(closed - numeric)});
    }
    return out;
}

std::string_view to_string(KappaConvention c) {
    switch (c) {
        case KappaConvention::kFixed: return "fixed";
        case KappaConvention::kEqualGammaA: return "equal_gamma_a";
        case KappaConvention::kHalfGammaA: return "half_gamma_a";
    }
    return "?";
}

SystemParams reference_params_with_rates(double kappa, double gamma_a) {
    SystemParams p;
    p.omega = kReferenceOmega;
    p.delta = kReferenceDelta;
    p.lambda_c = kReferenceLambda;
    p.kappa = kappa;
    p.gamma_a = gamma_a;
    p.validate();
    return p;
}

SystemParams reference_noise_params(double lambda_over_gamma_a, KappaConvention convention) {
    if (!(lambda_over_gamma_a > 0.0)) {
        throw InvalidInput("lambda_over_gamma_a must be > 0");
    }
    const double gamma_a = kReferenceLambda / lambda_over_gamma_a;
    double kappa = 0.0;
    switch (convention) {
        case KappaConvention::kFixed: kappa = kReferenceLambda / kReferenceKappaRatio; break;
        case KappaConvention::kEqualGammaA: kappa = gamma_a; break;
        case KappaConvention::kHalfGammaA: kappa = gamma_a / 2.0; break;
    }
    return reference_params_with_rates(kappa, gamma_a);
}

FidelityEstimate master_equation_fidelity(const SystemParams &params, std::optional<double> t, double step_fraction,
                                          const NetworkLayout &layout) {
    params.validate();
    layout.validate();
    if (!(step_fraction > 0.0) || step_fraction > 0.05) {
        throw InvalidInput("step_fraction must lie in (0, 0.05]");
    }
    FidelityEstimate est;
    est.time = t.value_or(params.operating_time());

    const Operator h = full_hamiltonian(params);
    const std::vector<CollapseChannel> collapse = collapse_operators(params);
    const IntegratorConfig cfg = IntegratorConfig::for_rate(characteristic_rate(params), step_fraction);
    const LindbladPropagator prop = lindblad_propagator(h, collapse, est.time, cfg);
    est.steps = prop.steps();

    const HilbertSpace &space = h.space();
    const auto d = static_cast<Eigen::Index>(space.dim());
    auto at = [&](AtomLevel l, std::size_t n_l, std::size_t n_r) {
        return static_cast<Eigen::Index>(space.flat_index(std::array{index(l), n_l, n_r}));
    };

    // Output of the channel on |x,vac⟩⟨y,vac| for x, y in {gL, gR}.
    std::array<std::array<CMatrix, 2>, 2> out;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            CMatrix in = CMatrix::Zero(d, d);
            in(at(kGround[x], 0, 0), at(kGround[y], 0, 0)) = 1.0;
            out[x][y] = prop.apply(in);
            if (x == y) {
                est.max_trace_error = std::max(est.max_trace_error, std::abs(out[x][y].trace() - 1.0));
            }
        }
    }

    const CMatrix plus = 0.5 * (out[0][0] + out[0][1] + out[1][0] + out[1][1]);
    est.max_trace_error = std::max(est.max_trace_error, std::abs(plus.trace() - 1.0));
    CVector target = CVector::Zero(d);
    target(at(AtomLevel::kEL, 1, 0)) = 1.0 / std::numbers::sqrt2;
    target(at(AtomLevel::kER, 0, 1)) = 1.0 / std::numbers::sqrt2;
    est.single_transfer = std::clamp((target.adjoint() * plus * target)(0).real(), 0.0, 1.0);
    est.estimator_a = std::pow(est.single_transfer, 1.5);
    est.squared_product = std::pow(est.single_transfer, 3.0);
    for (std::size_t i = 0; i < space.dim(); ++i) {
        auto digits = space.digits(i);
        if (digits[1] + digits[2] >= 2) {
            est.dropped_population += plus(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        }
    }

    // Single-photon blocks: sub[x][y][p][q] is the atomic 6×6 block of
    // out[x][y] between photon polarization p and q.
    const auto na = static_cast<Eigen::Index>(kFullAtomDim);
    auto photon_index = [&](Eigen::Index level, std::size_t p) {
        return at(static_cast<AtomLevel>(level), p == 0 ? 1 : 0, p == 0 ? 0 : 1);
    };
    std::array<std::array<std::array<std::array<CMatrix, 2>, 2>, 2>, 2> sub;
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            for (std::size_t p = 0; p < 2; ++p) {
                for (std::size_t q = 0; q < 2; ++q) {
                    CMatrix b(na, na);
                    for (Eigen::Index l = 0; l < na; ++l) {
                        for (Eigen::Index m = 0; m < na; ++m) {
                            b(l, m) = out[x][y](photon_index(l, p), photon_index(m, q));
                        }
                    }
                    sub[x][y][p][q] = std::move(b);
                }
            }
        }
    }

    // Input amplitudes over {gL,gR}³ after the Hadamard pulses.
    const StateVector rotated = apply_hadamard_pulses(prepare_w_state());
    std::array<Complex, 8> c{};
    for (int k = 0; k < 8; ++k) {
        c[static_cast<std::size_t>(k)] = rotated.amplitude({index(kGround[(k >> 2) & 1]), index(kGround[(k >> 1) & 1]),
                                                            index(kGround[k & 1])});
    }
    auto coeff = [&](std::size_t a, std::size_t b, std::size_t cc) { return c[(a << 2) | (b << 1) | cc]; };

    const std::vector<ClickPattern> patterns = accepted_patterns();
    std::vector<std::array<Complex, 8>> amp(patterns.size());
    for (std::size_t k = 0; k < patterns.size(); ++k) {
        for (int p = 0; p < 8; ++p) {
            amp[k][static_cast<std::size_t>(p)] = pattern_amplitude(layout, patterns[k], p);
        }
    }

    const Eigen::Index n3 = na * na * na;
    std::vector<CMatrix> heralded(patterns.size(), CMatrix::Zero(n3, n3));
    // p and q index the three photon polarizations; bit s belongs to atom s.
    for (int p = 0; p < 8; ++p) {
        for (int q = 0; q < 8; ++q) {
            const std::size_t p0 = p & 1, p1 = (p >> 1) & 1, p2 = (p >> 2) & 1;
            const std::size_t q0 = q & 1, q1 = (q >> 1) & 1, q2 = (q >> 2) & 1;
            CMatrix block = CMatrix::Zero(n3, n3);
            for (std::size_t xa = 0; xa < 2; ++xa) {
                for (std::size_t ya = 0; ya < 2; ++ya) {
                    CMatrix mid = CMatrix::Zero(na * na, na * na);
                    for (std::size_t xb = 0; xb < 2; ++xb) {
                        for (std::size_t yb = 0; yb < 2; ++yb) {
                            CMatrix inner = CMatrix::Zero(na, na);
                            for (std::size_t xc = 0; xc < 2; ++xc) {
                                for (std::size_t yc = 0; yc < 2; ++yc) {
                                    inner += coeff(xa, xb, xc) * std::conj(coeff(ya, yb, yc)) * sub[xc][yc][p2][q2];
                                }
                            }
                            mid += kron(sub[xb][yb][p1][q1], inner);
                        }
                    }
                    block += kron(sub[xa][ya][p0][q0], mid);
                }
            }
            for (std::size_t k = 0; k < patterns.size(); ++k) {
                const Complex w = amp[k][static_cast<std::size_t>(p)] * std::conj(amp[k][static_cast<std::size_t>(q)]);
                if (w != Complex(0.0, 0.0)) {
                    heralded[k] += w * block;
                }
            }
        }
    }

    // After the sign flip the heralded state should be (|eL eL eL⟩ + |eR eR eR⟩)/√2;
    // the Raman swap is a permutation and leaves the overlap unchanged.
    auto atom3 = [&](AtomLevel l) {
        const auto i = static_cast<Eigen::Index>(index(l));
        return (i * na + i) * na + i;
    };
    const Eigen::Index ell = atom3(AtomLevel::kEL), err = atom3(AtomLevel::kER);
    double overlap_sum = 0.0;
    for (std::size_t k = 0; k < patterns.size(); ++k) {
        const CMatrix &rho = heralded[k];
        const double prob = rho.trace().real();
        // e_L on atom a flips the sign of the |eL eL eL⟩⟨eR eR eR| coherence.
        const double sign = classify_pattern(patterns[k]) == OutcomeClass::kGhzMinus ? -1.0 : 1.0;
        const double overlap = 0.5 * (rho(ell, ell) + rho(err, err) + sign * (rho(ell, err) + rho(err, ell))).real();
        est.herald_probability += prob;
        overlap_sum += overlap;
    }
    est.estimator_b =
        est.herald_probability > 0.0 ? std::clamp(overlap_sum / est.herald_probability, 0.0, 1.0) : 0.0;
    return est;
}

void SurfaceSpec::validate() const {
    if (steps < 2) {
        throw InvalidInput("SurfaceSpec.steps must be >= 2");
    }
    if (!(rate_max > 0.0) || !std::isfinite(rate_max)) {
        throw InvalidInput("SurfaceSpec.rate_max must be > 0");
    }
    if (!(ratio_min > 0.0) || !(ratio_min < ratio_max) || !std::isfinite(ratio_max)) {
        throw InvalidInput("SurfaceSpec needs 0 < ratio_min < ratio_max");
    }
    if (!(step_fraction > 0.0) || step_fraction > 0.05) {
        throw InvalidInput("SurfaceSpec.step_fraction must lie in (0, 0.05]");
    }
}

std::vector<SurfacePoint> fidelity_surface(const SurfaceSpec &spec) {
    spec.validate();
    std::vector<double> rates(spec.steps);
    for (std::size_t i = 0; i < spec.steps; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(spec.steps - 1);
        if (spec.axes == AxisConvention::kRates) {
            rates[i] = spec.rate_max * u;
        } else {
            rates[i] = kReferenceLambda / (spec.ratio_max - (spec.ratio_max - spec.ratio_min) * u);
        }
    }
    std::vector<SurfacePoint> out;
    out.reserve(spec.steps * spec.steps);
    for (double kappa : rates) {
        for (double gamma_a : rates) {
            SystemParams p = reference_params_with_rates(kappa, gamma_a);
            out.push_back({kappa, gamma_a, master_equation_fidelity(p, std::nullopt, spec.step_fraction)});
        }
    }
    return out;
}

}  // namespace wghz
