// Copyright 2026 The h2vqe Authors
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

/**
 * @file
 * JSON and CSV serialization for Hamiltonians, counts, configs and results.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "h2vqe/vqe.hpp"

namespace h2vqe::io {

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// "4q", "2q", or the path of a Hamiltonian JSON file:
/// {"n_qubits": 4, "bit_order": "q_high_left", "terms": [{"coeff": -0.8, "string": "IIII"}]}
Hamiltonian load_hamiltonian(std::string_view selector);
std::string hamiltonian_to_json(const Hamiltonian &h);

/// A counts file. counts are stored in file order (see order).
struct CountsFile {
    CountsVector counts = CountsVector::zeros(1);
    BitOrder order = kPublishedBitOrder;
    std::string group_basis; ///< one letter per qubit, same orientation as order
    std::optional<int> group_id;
    std::optional<double> energy_ha;
    std::string source; ///< file name, informational
};

CountsFile parse_counts(std::string_view json_text);
CountsFile read_counts_file(const std::filesystem::path &path);
std::string counts_to_json(const CountsFile &file);

/// group_basis text of @p group written in orientation @p order.
std::string group_basis_text(const MeasurementGroup &group, BitOrder order);

struct ExperimentConfig {
    VqeConfig vqe;
    int n_runs = 50;
    unsigned workers = 0; ///< 0 = hardware concurrency
    bool emit_svg = false;
};

/// Parses a run/batch config. Throws ConfigError naming the offending field.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig read_config_file(const std::filesystem::path &path);

/// Result JSON with config echo, bit-order tag and final counts per group.
std::string result_to_json(const VqeResult &result, const VqeConfig &cfg,
                           std::string_view trace_file);

std::string read_text(const std::filesystem::path &path);
void write_text(const std::filesystem::path &path, std::string_view text);

} // namespace h2vqe::io
