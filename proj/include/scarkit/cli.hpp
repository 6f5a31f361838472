// Copyright 2026 The scarkit Authors
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

#pragma once

#include "scarkit/config.hpp"
#include "scarkit/freqarith.hpp"
#include "scarkit/scarlab.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace scarkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNotInSigma = 3;

/// Resolves the config against its frequency spec: base points, probes and
/// the hbar schedule.
scarlab::SweepConfig make_sweep_config(const ExperimentConfig &config,
                                       const freqarith::HarmonicDecomposition &decomp);

/// Entry point; args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace scarkit::cli
