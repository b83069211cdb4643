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
#include <cmath>

#include <gtest/gtest.h>

#include "wghz/dynamics.h"

using namespace wghz;

TEST(DecayParams, RatioFixesCouplings) {
    SystemParams p = decay_params_for_ratio(50.0);
    EXPECT_EQ(p.kappa, 1.0);
    EXPECT_EQ(p.delta, 1.0);
    EXPECT_EQ(p.lambda_c, p.omega);
    EXPECT_NEAR(derived_rates(p).eta, 50.0, 1e-12);
    EXPECT_THROW(decay_params_for_ratio(0.0), InvalidInput);
}

TEST(SuccessDecay, ReferenceValues) {
    SystemParams p = decay_params_for_ratio(100.0);
    EXPECT_NEAR(pd_closed_form(p, 0.0156582), 0.715584, 5e-4);
    EXPECT_NEAR(pd_closed_form(p, 0.9896), 0.03853, 5e-4);
    EXPECT_NEAR(pd_numeric(p, 0.0156582), 0.715584, 5e-4);
}

TEST(SuccessDecay, ClosedFormMatchesCoefficients) {
    for (double ratio : {0.1, 0.5, 10.0, 50.0, 100.0}) {
        SystemParams p = decay_params_for_ratio(ratio);
        for (int k = 0; k <= 1000; ++k) {
            const double t = 2.0 * k / 1000.0;
            const double closed = pd_closed_form(p, t);
            const double numeric = pd_numeric(p, t);
            EXPECT_LE(std::abs(closed - numeric), 1e-12 * std::abs(closed) + 1e-300) << ratio << " " << t;
        }
    }
}

TEST(SuccessDecay, BoundedAndVanishingAtFullPeriods) {
    SystemParams p = decay_params_for_ratio(100.0);
    const double phi_p = std::sqrt(4 * 100.0 * 100.0 - 1.0);
    for (int k = 1; k <= 5; ++k) {
        EXPECT_NEAR(pd_closed_form(p, 2 * M_PI * k / phi_p), 0.0, 1e-20);
    }
    for (int k = 0; k <= 500; ++k) {
        const double v = pd_closed_form(p, k / 500.0);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 0.75);
    }
    EXPECT_EQ(pd_closed_form(p, 0.0), 0.0);
}

TEST(SuccessDecay, ClosedSystemLimit) {
    SystemParams p;
    p.delta = 100.0;
    p.kappa = 0.0;
    for (double t : {10.0, 50.0, p.operating_time()}) {
        const double beta = std::abs(ideal_coefficients(p, t).beta);
        EXPECT_NEAR(pd_closed_form(p, t), 0.75 * std::pow(beta, 6), 1e-14);
    }
    EXPECT_NEAR(pd_closed_form(p, p.operating_time()), 0.75, 1e-14);
}

TEST(SuccessDecay, CriticalAndOverdamped) {
    // κ = 2η and κ > 2η stay finite and below the undamped envelope.
    for (double ratio : {0.5, 0.2}) {
        SystemParams p = decay_params_for_ratio(ratio);
        for (double t : {1e-9, 0.3, 3.0, 30.0}) {
            const double v = pd_closed_form(p, t);
            EXPECT_TRUE(std::isfinite(v));
            EXPECT_NEAR(v, pd_numeric(p, t), 1e-12 * v + 1e-300);
        }
    }
}

TEST(PdSweep, GridAndExtras) {
    SweepSpec spec;
    spec.steps = 11;
    spec.fixed = decay_params_for_ratio(100.0);
    std::vector<double> extra = {0.0156582, 0.9896, 0.5};
    auto pts = pd_sweep(spec, extra);
    EXPECT_EQ(pts.size(), 14u);
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end(),
                               [](const CurvePoint &a, const CurvePoint &b) { return a.abscissa < b.abscissa; }));
    for (const auto &pt : pts) {
        EXPECT_LT(pt.abs_diff, 1e-12);
        EXPECT_EQ(pt.abs_diff, std::abs(pt.closed_form - pt.numeric));
    }
    EXPECT_EQ(pts.front().abscissa, 0.0);
    EXPECT_EQ(pts.back().abscissa, 1.0);
}

TEST(PdSweep, Validation) {
    SweepSpec spec;
    spec.fixed = decay_params_for_ratio(10.0);
    EXPECT_NO_THROW(spec.validate());
    SweepSpec bad = spec;
    bad.parameter = "t";
    EXPECT_THROW(bad.validate(), InvalidInput);
    bad = spec;
    bad.steps = 1;
    EXPECT_THROW(bad.validate(), InvalidInput);
    bad = spec;
    bad.max = bad.min;
    EXPECT_THROW(bad.validate(), InvalidInput);
    bad = spec;
    bad.fixed.omega *= 1.1;
    EXPECT_THROW(bad.validate(), InvalidInput);
}

TEST(NoiseParams, Conventions) {
    const double l = kReferenceLambda;
    SystemParams fixed = reference_noise_params(50.0, KappaConvention::kFixed);
    EXPECT_NEAR(fixed.gamma_a, l / 50.0, 1e-15);
    EXPECT_NEAR(fixed.kappa, l / 250.0, 1e-15);
    EXPECT_NEAR(reference_noise_params(50.0, KappaConvention::kEqualGammaA).kappa, l / 50.0, 1e-15);
    EXPECT_NEAR(reference_noise_params(50.0, KappaConvention::kHalfGammaA).kappa, l / 100.0, 1e-15);
    EXPECT_EQ(fixed.omega, kReferenceOmega);
    EXPECT_EQ(fixed.delta, kReferenceDelta);
    SystemParams explicit_rates = reference_params_with_rates(0.01, 0.02);
    EXPECT_EQ(explicit_rates.kappa, 0.01);
    EXPECT_EQ(explicit_rates.gamma_a, 0.02);
}

TEST(MasterEquationFidelity, ReferencePoints) {
    FidelityEstimate low = master_equation_fidelity(reference_noise_params(250.0, KappaConvention::kFixed));
    FidelityEstimate high = master_equation_fidelity(reference_noise_params(50.0, KappaConvention::kFixed));
    EXPECT_NEAR(low.estimator_a, 0.9104, 0.02);
    EXPECT_NEAR(high.estimator_a, 0.9009, 0.02);
    EXPECT_GT(low.estimator_a, high.estimator_a);
    EXPECT_GT(low.estimator_b, high.estimator_b);
    for (const auto &e : {low, high}) {
        EXPECT_NEAR(e.estimator_a, std::pow(e.single_transfer, 1.5), 1e-15);
        EXPECT_NEAR(e.squared_product, std::pow(e.single_transfer, 3), 1e-15);
        EXPECT_LT(e.max_trace_error, 1e-8);
        EXPECT_GE(e.dropped_population, 0.0);
        EXPECT_LT(e.dropped_population, 1e-3);
        EXPECT_GT(e.herald_probability, 0.0);
        EXPECT_LE(e.estimator_b, 1.0 + 1e-12);
        EXPECT_GT(e.steps, 0u);
    }
}

TEST(MasterEquationFidelity, StepRefinementConverges) {
    SystemParams p = reference_noise_params(250.0, KappaConvention::kFixed);
    FidelityEstimate coarse = master_equation_fidelity(p, std::nullopt, 4e-3);
    FidelityEstimate fine = master_equation_fidelity(p, std::nullopt, 2e-3);
    EXPECT_NEAR(coarse.single_transfer, fine.single_transfer, 1e-8);
    EXPECT_THROW(master_equation_fidelity(p, std::nullopt, 0.2), InvalidInput);
}

TEST(FidelitySurface, LeastNoisyCornerIsBest) {
    SurfaceSpec spec;
    spec.steps = 2;
    spec.step_fraction = 4e-3;
    for (AxisConvention axes : {AxisConvention::kRates, AxisConvention::kRatios}) {
        spec.axes = axes;
        auto pts = fidelity_surface(spec);
        ASSERT_EQ(pts.size(), 4u);
        for (const auto &pt : pts) {
            EXPECT_LE(pt.estimate.estimator_a, pts.front().estimate.estimator_a);
            EXPECT_LE(pt.estimate.estimator_b, pts.front().estimate.estimator_b + 1e-12);
        }
        EXPECT_LT(pts.front().kappa_over_gamma, pts.back().kappa_over_gamma);
    }
}

TEST(FidelitySurface, Validation) {
    SurfaceSpec spec;
    spec.steps = 1;
    EXPECT_THROW(spec.validate(), InvalidInput);
    spec = SurfaceSpec{};
    spec.ratio_min = 300.0;
    EXPECT_THROW(spec.validate(), InvalidInput);
    spec = SurfaceSpec{};
    spec.rate_max = -1.0;
    EXPECT_THROW(spec.validate(), InvalidInput);
}
