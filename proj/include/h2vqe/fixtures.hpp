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
 * Published reference data for the H2 problem.
 *
 * Count sets are 8192-shot histograms of the two measurement circuits of the
 * 4-qubit Hamiltonian, listed in kPublishedBitOrder (qubit 0 leftmost).
 */

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "h2vqe/sim.hpp"

namespace h2vqe::fixtures {

inline constexpr double kExactGroundEnergy = -1.867;
inline constexpr double kSetAEnergy = -1.8422;
inline constexpr double kSetBEnergy = -1.8464;
inline constexpr double kSetCEnergy = -1.2526;

CountsVector a0();
CountsVector a1();
CountsVector b0();
CountsVector b1();
CountsVector c0();

struct NamedCounts {
    std::string name;
    int group_id;
    CountsVector counts;
};

/// a0, a1, b0, b1, c0 with their circuit index.
std::vector<NamedCounts> all();

/// Looks up "a0".."c0" (case-insensitive). Throws ValidationError.
CountsVector by_name(std::string_view name);

/// Sixteen eigenvalues of the 4-qubit Hamiltonian as published, ascending.
std::array<double, 16> published_spectrum();

} // namespace h2vqe::fixtures
