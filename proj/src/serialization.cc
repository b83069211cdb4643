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

#include "wghz/serialization.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wghz {

namespace {

const std::set<std::string> kParamKeys = {"delta", "lambda_c", "omega", "kappa", "gamma_a", "eta_d", "n_max"};

void require_object(const Json &j, const std::string &where) {
    if (!j.is_object()) {
        throw ConfigError(where + " must be a JSON object");
    }
}

double get_number(const Json &j, const std::string &key, double fallback, const std::string &prefix = "") {
    if (!j.contains(key)) {
        return fallback;
    }
    const Json &v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError("field '" + prefix + key + "' must be a number");
    }
    return v.get<double>();
}

long get_integer(const Json &j, const std::string &key, long fallback, const std::string &prefix = "") {
    if (!j.contains(key)) {
        return fallback;
    }
    const Json &v = j.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError("field '" + prefix + key + "' must be an integer");
    }
    return v.get<long>();
}

std::size_t get_count(const Json &j, const std::string &key, std::size_t fallback, const std::string &prefix) {
    long v = get_integer(j, key, static_cast<long>(fallback), prefix);
    if (v < 0) {
        throw ConfigError("field '" + prefix + key + "' must be >= 0");
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> get_number_list(const Json &j, const std::string &key, std::vector<double> fallback,
                                    const std::string &prefix) {
    if (!j.contains(key)) {
        return fallback;
    }
    const Json &v = j.at(key);
    if (!v.is_array()) {
        throw ConfigError("field '" + prefix + key + "' must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto &x : v) {
        if (!x.is_number()) {
            throw ConfigError("field '" + prefix + key + "' must be an array of numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

void reject_unknown(const Json &j, const std::set<std::string> &allowed, const std::string &prefix) {
    for (const auto &[key, value] : j.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown field '" + prefix + key + "'");
        }
    }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json parse_json_text(const std::string &text, const std::string &source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        // Drop the library prefix "[json.exception.parse_error.101] parse error at ...: ".
        auto pos = what.rfind(": ");
        std::string detail = pos == std::string::npos ? what : what.substr(pos + 2);
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + detail);
    }
}

Json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

SystemParams params_from_json(const Json &j) {
    require_object(j, "config");
    SystemParams p;
    p.delta = get_number(j, "delta", p.delta);
    p.lambda_c = get_number(j, "lambda_c", p.lambda_c);
    p.omega = get_number(j, "omega", p.omega);
    p.kappa = get_number(j, "kappa", p.kappa);
    p.gamma_a = get_number(j, "gamma_a", p.gamma_a);
    p.eta_d = get_number(j, "eta_d", p.eta_d);
    long n = get_integer(j, "n_max", p.n_max);
    if (n < 1 || n > 8) {
        throw ConfigError("field 'n_max' must be an integer in [1, 8]");
    }
    p.n_max = static_cast<int>(n);
    return p;
}

Json params_to_json(const SystemParams &p) {
    Json j;
    j["delta"] = p.delta;
    j["lambda_c"] = p.lambda_c;
    j["omega"] = p.omega;
    j["kappa"] = p.kappa;
    j["gamma_a"] = p.gamma_a;
    j["eta_d"] = p.eta_d;
    j["n_max"] = p.n_max;
    return j;
}

NetworkLayout layout_from_json(const Json &j) {
    require_object(j, "field 'layout'");
    reject_unknown(j, {"a", "b", "c"}, "layout.");
    std::array<std::array<int, 2>, kNumAtoms> routes{};
    const std::array<std::string, 3> names = {"a", "b", "c"};
    for (std::size_t atom = 0; atom < kNumAtoms; ++atom) {
        const std::string prefix = "layout." + names[atom];
        if (!j.contains(names[atom])) {
            throw ConfigError("missing field '" + prefix + "'");
        }
        const Json &entry = j.at(names[atom]);
        require_object(entry, "field '" + prefix + "'");
        reject_unknown(entry, {"H", "V"}, prefix + ".");
        for (std::size_t p = 0; p < 2; ++p) {
            const std::string pol = p == 0 ? "H" : "V";
            if (!entry.contains(pol)) {
                throw ConfigError("missing field '" + prefix + "." + pol + "'");
            }
            routes[atom][p] = static_cast<int>(get_integer(entry, pol, 0, prefix + "."));
        }
    }
    return NetworkLayout(routes);
}

Json layout_to_json(const NetworkLayout &layout) {
    Json j;
    const std::array<std::string, 3> names = {"a", "b", "c"};
    for (std::size_t atom = 0; atom < kNumAtoms; ++atom) {
        j[names[atom]]["H"] = layout.output_mode(atom, Polarization::kH);
        j[names[atom]]["V"] = layout.output_mode(atom, Polarization::kV);
    }
    return j;
}

RunConfig run_config_from_json(const Json &j) {
    require_object(j, "config");
    std::set<std::string> allowed = kParamKeys;
    allowed.insert({"layout", "sweep", "surface"});
    reject_unknown(j, allowed, "");

    RunConfig cfg;
    cfg.params = params_from_json(j);
    if (j.contains("layout")) {
        cfg.layout = layout_from_json(j.at("layout"));
    }
    if (j.contains("sweep")) {
        const Json &s = j.at("sweep");
        require_object(s, "field 'sweep'");
        reject_unknown(s, {"kappa_t_min", "kappa_t_max", "steps", "eta_over_kappa", "check_points"}, "sweep.");
        DecaySweepConfig &d = cfg.sweep;
        d.kappa_t_min = get_number(s, "kappa_t_min", d.kappa_t_min, "sweep.");
        d.kappa_t_max = get_number(s, "kappa_t_max", d.kappa_t_max, "sweep.");
        d.steps = get_count(s, "steps", d.steps, "sweep.");
        d.eta_over_kappa = get_number_list(s, "eta_over_kappa", d.eta_over_kappa, "sweep.");
        d.check_points = get_number_list(s, "check_points", d.check_points, "sweep.");
    }
    if (j.contains("surface")) {
        const Json &s = j.at("surface");
        require_object(s, "field 'surface'");
        reject_unknown(s, {"axis_convention", "steps", "rate_max", "ratio_min", "ratio_max", "step_fraction"},
                       "surface.");
        SurfaceSpec &d = cfg.surface;
        if (s.contains("axis_convention")) {
            const Json &a = s.at("axis_convention");
            if (!a.is_string() || (a != "a" && a != "b")) {
                throw ConfigError("field 'surface.axis_convention' must be \"a\" or \"b\"");
            }
            d.axes = a == "a" ? AxisConvention::kRates : AxisConvention::kRatios;
        }
        d.steps = get_count(s, "steps", d.steps, "surface.");
        d.rate_max = get_number(s, "rate_max", d.rate_max, "surface.");
        d.ratio_min = get_number(s, "ratio_min", d.ratio_min, "surface.");
        d.ratio_max = get_number(s, "ratio_max", d.ratio_max, "surface.");
        d.step_fraction = get_number(s, "step_fraction", d.step_fraction, "surface.");
    }
    return cfg;
}

RunConfig load_run_config(const std::string &path) { return run_config_from_json(load_json_file(path)); }

Json coefficients_to_json(const EvolutionCoefficients &c) {
    Json j;
    j["alpha"] = complex_to_json(c.alpha);
    j["beta"] = complex_to_json(c.beta);
    return j;
}

Json detection_report_to_json(const DetectionReport &report) {
    Json j;
    j["eta_d"] = report.eta_d;
    j["total_probability"] = report.total_probability;
    j["accepted_probability"] = report.accepted_probability;
    j["formula_probability"] = report.formula_probability;
    j["formula_deviation"] = report.formula_deviation;
    Json patterns = Json::array();
    for (const auto &o : report.outcomes) {
        if (o.probability == 0.0) {
            continue;
        }
        Json e;
        e["pattern"] = o.pattern.to_string();
        e["class"] = std::string(to_string(o.outcome));
        e["probability"] = o.probability;
        e["fidelity"] = o.fidelity;
        patterns.push_back(std::move(e));
    }
    j["nonzero_patterns"] = std::move(patterns);
    return j;
}

Json protocol_run_to_json(const ProtocolRun &run) {
    Json j;
    j["params"] = params_to_json(run.params);
    j["time"] = run.time;
    j["coefficients"] = coefficients_to_json(run.coefficients);
    j["emitted_weight"] = run.emitted_weight;
    j["success_probability"] = run.success_probability;
    j["success_probability_formula"] = run.formula_probability;
    j["reject_probability"] = run.reject_probability;
    j["fidelity"] = run.min_fidelity;
    j["mean_fidelity"] = run.mean_fidelity;
    Json accepted = Json::array();
    for (const auto &r : run.accepted) {
        Json e;
        e["pattern"] = r.pattern.to_string();
        e["class"] = std::string(to_string(r.outcome));
        e["probability"] = r.probability;
        e["fidelity"] = r.fidelity;
        accepted.push_back(std::move(e));
    }
    j["accepted"] = std::move(accepted);
    j["detection"] = detection_report_to_json(run.detection);
    return j;
}

}  // namespace wghz
