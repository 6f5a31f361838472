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

// CSV and text writers for the command-line tool. Numbers use %.17g so
// reruns of the same config produce identical bytes.

#include "scarkit/phasespace.hpp"
#include "scarkit/scarlab.hpp"
#include "scarkit/spectral.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace scarkit::output {

std::string fmt(double v);

/// "# scarkit <version> config=<hash>"
std::string header_line(const std::string &config_hash);

void write_report(std::ostream &out, const scarlab::ConvergenceReport &report,
                  const std::string &header);
void write_slopes(std::ostream &out, const scarlab::ConvergenceReport &report,
                  const std::string &header);
void write_targets(std::ostream &out, const scarlab::ConvergenceReport &report,
                   const std::string &header);

struct BandCheck {
    std::string observable;
    std::string band;
    bool pass = false;
};

/// Acceptance bands applied to whatever observables the report carries.
std::vector<BandCheck> band_checks(const scarlab::ConvergenceReport &report);

void write_summary(std::ostream &out, const scarlab::ConvergenceReport &report,
                   const std::string &header);

void write_levels(std::ostream &out, const std::vector<spectral::Level> &levels,
                  std::size_t d, std::size_t d_omega, const std::string &header);

void write_husimi(std::ostream &out, const phasespace::HusimiGrid &grid,
                  const std::string &header);

} // namespace scarkit::output
