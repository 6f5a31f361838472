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

// Experiment configuration: `key = value` lines with `#` comments.
//
//     spec = sqrt2.freq          # relative to the config file
//     E = 1/2 1/2
//     z0 = from-witness          # or x_1..x_d xi_1..xi_d; repeat for a convex mix
//     alpha = 1/3 2/3            # weights when z0 is repeated
//     hbar_start = 0.2
//     hbar_ratio = 1/2
//     hbar_count = 7
//     symbols = x1^2, H1, char:1
//     tail_tol = 1e-12
//     out = sweep-out
//     seed = 7
//
// Numbers are read exactly (decimals and p/q), so parse -> serialize ->
// parse is the identity.

#include "scarkit/exact.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace scarkit::cli {

struct PointSpec {
    bool from_witness = true;
    RationalVector coords;

    bool operator==(const PointSpec &) const = default;
};

struct ExperimentConfig {
    std::string spec;
    RationalVector E;
    std::vector<PointSpec> z0{PointSpec{}};
    RationalVector alpha;
    Rational hbar_start{1, 5};
    Rational hbar_ratio{1, 2};
    std::int64_t hbar_count = 7;
    /// Empty means the default probe set.
    std::vector<std::string> symbols;
    Rational tail_tol{1, 1'000'000'000'000};
    std::string out = "scarkit-out";
    std::uint64_t seed = 1;
    /// Directory the spec path is resolved against; not serialized.
    std::filesystem::path base_dir;

    bool operator==(const ExperimentConfig &other) const;
    [[nodiscard]] std::filesystem::path spec_path() const;
};

ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path &base_dir = {});
ExperimentConfig load_config(const std::filesystem::path &path);

std::string serialize(const ExperimentConfig &config);

/// FNV-1a of the canonical serialization, 16 hex digits.
std::string config_hash(const ExperimentConfig &config);

} // namespace scarkit::cli
