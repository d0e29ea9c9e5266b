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

#include "h2vqe/fixtures.hpp"

#include <algorithm>
#include <cctype>

#include "h2vqe/error.hpp"

namespace h2vqe::fixtures {

namespace {

CountsVector make(std::vector<std::uint64_t> c) { return CountsVector(4, std::move(c)); }

} // namespace

CountsVector a0() {
    return make({22, 4, 9, 81, 126, 0, 34, 0, 1, 2, 1, 0, 29, 0, 7880, 3});
}

CountsVector a1() {
    return make({10, 9, 7, 23, 1220, 0, 2378, 2, 1, 11, 19, 31, 2543, 0, 1935, 3});
}

CountsVector b0() {
    return make({21, 2, 2, 8, 183, 0, 106, 1, 2, 0, 4, 0, 12, 0, 7839, 12});
}

CountsVector b1() {
    return make({0, 3, 16, 10, 1111, 2, 2026, 2, 3, 1, 7, 0, 3286, 8, 1714, 3});
}

CountsVector c0() {
    return make({3, 2, 208, 7269, 0, 13, 28, 6, 7, 19, 2, 132, 4, 262, 7, 230});
}

std::vector<NamedCounts> all() {
    return {{"a0", 0, a0()}, {"a1", 1, a1()}, {"b0", 0, b0()}, {"b1", 1, b1()}, {"c0", 0, c0()}};
}

CountsVector by_name(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    for (auto &entry : all()) {
        if (entry.name == key) {
            return entry.counts;
        }
    }
    throw ValidationError("unknown fixture '" + std::string(name) +
                          "' (expected a0, a1, b0, b1 or c0)");
}

std::array<double, 16> published_spectrum() {
    return {-1.867, -1.262, -1.262, -1.242, -1.242, -1.242, -1.160, -1.160,
            -0.881, -0.465, -0.465, -0.341, -0.341, -0.211, 0.000,  0.227};
}

} // namespace h2vqe::fixtures
