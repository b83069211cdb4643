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

#include "wghz/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "wghz/analysis.h"
#include "wghz/dynamics.h"

namespace wghz::cli {

namespace {

constexpr const char *kUnitsNote =
    "Rates (delta, lambda_c, omega, kappa, gamma_a) are in units of a reference rate gamma; "
    "times are in 1/gamma.";

double unitarity_error(const Operator &u) {
    const auto n = u.matrix().rows();
    return (u.matrix().adjoint() * u.matrix() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

NetworkLayout layout_of(const RunConfig &cfg) { return cfg.layout.value_or(NetworkLayout::canonical()); }

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

Json cmd_ideal_run(const RunConfig &cfg) {
    return protocol_run_to_json(run_protocol(cfg.params, layout_of(cfg)));
}

void cmd_sweep_decay(const RunConfig &cfg, std::ostream &out) {
    const DecaySweepConfig &s = cfg.sweep;
    if (s.eta_over_kappa.empty()) {
        throw InvalidInput("sweep needs at least one eta_over_kappa value");
    }
    out << kSweepHeader << "\n";
    for (double ratio : s.eta_over_kappa) {
        SweepSpec spec;
        spec.min = s.kappa_t_min;
        spec.max = s.kappa_t_max;
        spec.steps = s.steps;
        spec.fixed = decay_params_for_ratio(ratio);
        for (const CurvePoint &p : pd_sweep(spec, s.check_points)) {
            out << format_number(ratio) << "," << format_number(p.abscissa) << "," << format_number(p.closed_form)
                << "," << format_number(p.numeric) << "," << format_number(p.abs_diff) << "\n";
        }
    }
}

void cmd_fidelity_surface(const RunConfig &cfg, std::ostream &out) {
    out << kSurfaceHeader << "\n";
    for (const SurfacePoint &p : fidelity_surface(cfg.surface)) {
        out << format_number(p.kappa_over_gamma) << "," << format_number(p.gamma_a_over_gamma) << ","
            << format_number(p.estimate.estimator_a) << "," << format_number(p.estimate.estimator_b) << "\n";
    }
}

std::vector<CheckResult> cmd_validate(const RunConfig &cfg) {
    std::vector<CheckResult> results;
    auto check = [&](const std::string &name, auto &&body) {
        try {
            std::string detail = body();
            results.push_back({name, detail.empty(), detail});
        } catch (const std::exception &e) {
            results.push_back({name, false, e.what()});
        }
    };

    bool params_ok = false;
    check("system-params", [&] {
        cfg.params.validate();
        params_ok = true;
        return std::string();
    });
    const NetworkLayout layout = layout_of(cfg);
    check("network-layout", [&] {
        layout.validate();
        return std::string();
    });
    if (params_ok) {
        check("unitarity", [&] {
            const SystemParams &p = cfg.params;
            const double t = p.lambda_c * p.lambda_c + p.omega * p.omega > 0.0 ? p.operating_time() : 1.0;
            const double e_full = unitarity_error(propagator(full_hamiltonian(p), t));
            const double e_eff = unitarity_error(propagator(effective_hamiltonian(p), t));
            const double worst = std::max(e_full, e_eff);
            return worst <= 1e-10 ? std::string() : "max |U^dag U - I| = " + format_number(worst);
        });
    }
    check("povm-completeness", [&] {
        const double eta = std::clamp(cfg.params.eta_d, 0.0, 1.0);
        PovmElements e = povm_elements(eta, 3);
        const double err = (e.off + e.click - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff();
        return err <= 1e-15 ? std::string() : "max |off + click - I| = " + format_number(err);
    });
    check("network-output-equality", [&] {
        const double d = distance_up_to_phase(full_network(operating_point_state(), layout), expected_network_output());
        return d <= 1e-12 ? std::string() : "max amplitude deviation after global phase = " + format_number(d);
    });
    check("decay-identity", [&] {
        SystemParams p = decay_params_for_ratio(100.0);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const double t = static_cast<double>(k) / 999.0;
            const double c = pd_closed_form(p, t), n = pd_numeric(p, t);
            const double scale = std::max(std::abs(c), std::abs(n));
            if (scale > 0.0) {
                worst = std::max(worst, std::abs(c - n) / scale);
            }
        }
        return worst <= 1e-12 ? std::string() : "max relative deviation = " + format_number(worst);
    });
    if (params_ok) {
        check("detection-total", [&] {
            DetectionReport r = enumerate_outcomes(full_network(operating_point_state(), layout), cfg.params.eta_d);
            if (std::abs(r.total_probability - 1.0) > 1e-12) {
                return "pattern probabilities sum to " + format_number(r.total_probability);
            }
            if (std::abs(r.formula_deviation) > 1e-12) {
                return "accepted total deviates from 3*eta^3/4 by " + format_number(r.formula_deviation);
            }
            return std::string();
        });
    }
    return results;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{std::string("W-to-GHZ conversion simulator. ") + kUnitsNote, "wghz"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::size_t> grid_steps;
    std::vector<double> eta_over_kappa;
    std::string axis;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_path, "Write output here instead of stdout");
    };
    CLI::App *ideal = app.add_subcommand("ideal-run", "Run the protocol once and print a JSON report");
    add_common(ideal);
    CLI::App *sweep = app.add_subcommand("sweep-decay", "Success probability vs kappa*t as CSV");
    add_common(sweep);
    sweep->add_option("--grid-steps", grid_steps, "Number of kappa*t grid points");
    sweep->add_option("--eta-over-kappa", eta_over_kappa, "Comma-separated eta/kappa values")->delimiter(',');
    CLI::App *surface = app.add_subcommand("fidelity-surface", "Master-equation fidelity over a noise grid as CSV");
    add_common(surface);
    surface->add_option("--grid-steps", grid_steps, "Points per axis");
    surface->add_option("--axis-convention", axis, "a: kappa/gamma and gamma_a/gamma; b: lambda_c/kappa and "
                                                   "lambda_c/gamma_a ratios")
        ->check(CLI::IsMember({"a", "b"}));
    CLI::App *validate = app.add_subcommand("validate", "Run the invariant checks");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) {
            cfg = load_run_config(config_path);
        }
        if (grid_steps) {
            cfg.sweep.steps = *grid_steps;
            cfg.surface.steps = *grid_steps;
        }
        if (!eta_over_kappa.empty()) {
            cfg.sweep.eta_over_kappa = eta_over_kappa;
        }
        if (!axis.empty()) {
            cfg.surface.axes = axis == "a" ? AxisConvention::kRates : AxisConvention::kRatios;
        }
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            err << "config error: cannot write '" << out_path << "'\n";
            return kExitConfig;
        }
    }
    std::ostream &sink = out_path.empty() ? out : file;

    if (validate->parsed()) {
        const auto results = cmd_validate(cfg);
        const CheckResult *first_failure = nullptr;
        for (const auto &r : results) {
            sink << (r.passed ? "PASS " : "FAIL ") << r.name;
            if (!r.passed) {
                sink << ": " << r.detail;
                if (!first_failure) {
                    first_failure = &r;
                }
            }
            sink << "\n";
        }
        if (first_failure) {
            err << "validation failed: " << first_failure->name << "\n";
            return kExitValidation;
        }
        return kExitOk;
    }

    try {
        cfg.params.validate();
        if (ideal->parsed()) {
            sink << cmd_ideal_run(cfg).dump(2) << "\n";
        } else if (sweep->parsed()) {
            cmd_sweep_decay(cfg, sink);
        } else if (surface->parsed()) {
            cmd_fidelity_surface(cfg, sink);
        }
    } catch (const InvalidInput &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

}  // namespace wghz::cli
