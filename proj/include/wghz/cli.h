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

#ifndef WGHZ_CLI_H
#define WGHZ_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

#include "wghz/serialization.h"

namespace wghz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitConfig = 2;

/// Fixed 12-significant-digit formatting used by every CSV column.
std::string format_number(double v);

inline constexpr const char *kSweepHeader = "eta_over_kappa,kappa_t,p_d_closed,p_d_numeric,abs_diff";
inline constexpr const char *kSurfaceHeader =
    "kappa_over_gamma,gamma_a_over_gamma,fidelity_estimator_a,fidelity_estimator_b";

Json cmd_ideal_run(const RunConfig &cfg);
void cmd_sweep_decay(const RunConfig &cfg, std::ostream &out);
void cmd_fidelity_surface(const RunConfig &cfg, std::ostream &out);

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Runs every invariant check; never throws for a failing check.
std::vector<CheckResult> cmd_validate(const RunConfig &cfg);

/// Entry point shared by the wghz binary and the tests.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace wghz::cli

#endif  // WGHZ_CLI_H
