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

// JSON config and report formats.
//
// A run config is one JSON object. Its top level holds the SystemParams keys
// (delta, lambda_c, omega, kappa, gamma_a, eta_d, n_max) plus optional
// "layout", "sweep" and "surface" objects. Missing keys keep their defaults;
// unknown keys are an error.

#ifndef WGHZ_SERIALIZATION_H
#define WGHZ_SERIALIZATION_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wghz/analysis.h"
#include "wghz/atom_cavity.h"
#include "wghz/detection.h"
#include "wghz/photonics.h"
#include "wghz/protocol.h"

namespace wghz {

using Json = nlohmann::ordered_json;

/// Malformed or mistyped config. The message names the field or the
/// line:column of a syntax error.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parses text; syntax errors become ConfigError("<source>:<line>:<col>: ...").
Json parse_json_text(const std::string &text, const std::string &source = "<config>");
Json load_json_file(const std::string &path);

/// Field types are checked here; physical ranges are left to SystemParams::validate.
SystemParams params_from_json(const Json &j);
Json params_to_json(const SystemParams &p);

/// {"a": {"H": 9, "V": 7}, "b": {...}, "c": {...}}
NetworkLayout layout_from_json(const Json &j);
Json layout_to_json(const NetworkLayout &layout);

struct DecaySweepConfig {
    double kappa_t_min = 0.0;
    double kappa_t_max = 1.0;
    std::size_t steps = 201;
    std::vector<double> eta_over_kappa = {10.0, 50.0, 100.0};
    /// Extra κt values always added to the grid.
    std::vector<double> check_points = {0.0156582, 0.9896};
};

struct RunConfig {
    SystemParams params;
    std::optional<NetworkLayout> layout;
    DecaySweepConfig sweep;
    SurfaceSpec surface;
};

RunConfig run_config_from_json(const Json &j);
RunConfig load_run_config(const std::string &path);

Json coefficients_to_json(const EvolutionCoefficients &c);
Json detection_report_to_json(const DetectionReport &report);
Json protocol_run_to_json(const ProtocolRun &run);

}  // namespace wghz

#endif  // WGHZ_SERIALIZATION_H
