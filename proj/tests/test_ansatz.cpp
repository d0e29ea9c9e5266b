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

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "h2vqe/ansatz.hpp"
#include "h2vqe/error.hpp"

using namespace h2vqe;

namespace {

std::size_t count_kind(const Circuit &c, GateKind k) {
    std::size_t n = 0;
    for (const auto &g : c.gates()) {
        n += g.kind == k ? 1 : 0;
    }
    return n;
}

std::vector<double> ramp(std::size_t n) {
    std::vector<double> v(n);
    std::iota(v.begin(), v.end(), 0.0);
    return v;
}

} // namespace

TEST(Ansatz, ParameterCounts) {
    EXPECT_EQ(parameter_count({Form::Ry, Entanglement::Linear, 2, 4}), 12U);
    EXPECT_EQ(parameter_count({Form::RyRz, Entanglement::Linear, 2, 4}), 24U);
    EXPECT_EQ(parameter_count({Form::Ry, Entanglement::Full, 1, 2}), 4U);
}

TEST(Ansatz, EntanglerPairs) {
    EXPECT_EQ(entangler_pairs(Entanglement::Linear, 4),
              (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_EQ(entangler_pairs(Entanglement::Circular, 4),
              (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    EXPECT_EQ(entangler_pairs(Entanglement::Full, 4).size(), 6U);
}

TEST(Ansatz, SmallLinearSequence) {
    const AnsatzSpec spec{Form::Ry, Entanglement::Linear, 1, 2};
    const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    const auto c = build_circuit(spec, p);
    const std::vector<Gate> expected{Gate::ry(0, 0.1), Gate::ry(1, 0.2), Gate::cx(0, 1),
                                     Gate::ry(0, 0.3), Gate::ry(1, 0.4)};
    EXPECT_EQ(c.gates(), expected);
}

TEST(Ansatz, DefaultRyLinearGateCounts) {
    const AnsatzSpec spec;
    const auto c = build_circuit(spec, ramp(parameter_count(spec)));
    EXPECT_EQ(count_kind(c, GateKind::Ry), 12U);
    EXPECT_EQ(count_kind(c, GateKind::CX), 6U);
    EXPECT_EQ(c.size(), 18U);
}

TEST(Ansatz, RyRzLayerOrdering) {
    const AnsatzSpec spec{Form::RyRz, Entanglement::Linear, 1, 2};
    const auto c = build_circuit(spec, ramp(8));
    ASSERT_EQ(c.size(), 9U);
    EXPECT_EQ(c.gates()[0], Gate::ry(0, 0));
    EXPECT_EQ(c.gates()[1], Gate::ry(1, 1));
    EXPECT_EQ(c.gates()[2], Gate::rz(0, 2));
    EXPECT_EQ(c.gates()[3], Gate::rz(1, 3));
    EXPECT_EQ(c.gates()[4], Gate::cx(0, 1));
    EXPECT_EQ(c.gates()[8], Gate::rz(1, 7));
}

TEST(Ansatz, FullEntanglerHasAllPairs) {
    const AnsatzSpec spec{Form::Ry, Entanglement::Full, 1, 4};
    const auto c = build_circuit(spec, ramp(parameter_count(spec)));
    EXPECT_EQ(count_kind(c, GateKind::CX), 6U);
}

TEST(Ansatz, CircularEntanglerWrapsAround) {
    const AnsatzSpec spec{Form::Ry, Entanglement::Circular, 1, 4};
    const auto c = build_circuit(spec, ramp(parameter_count(spec)));
    EXPECT_EQ(count_kind(c, GateKind::CX), 4U);
    EXPECT_EQ(c.gates()[7], Gate::cx(3, 0));
}

TEST(Ansatz, RejectsWrongParameterCount) {
    const AnsatzSpec spec;
    EXPECT_THROW(build_circuit(spec, ramp(11)), ValidationError);
    EXPECT_THROW(build_circuit(spec, ramp(13)), ValidationError);
}

TEST(Ansatz, RejectsInvalidSpecs) {
    EXPECT_THROW((AnsatzSpec{Form::Ry, Entanglement::Linear, -1, 4}.validate()), ValidationError);
    EXPECT_THROW((AnsatzSpec{Form::Ry, Entanglement::Linear, 1, 0}.validate()), ValidationError);
}

TEST(Ansatz, ParsesNames) {
    EXPECT_EQ(parse_form("ryrz"), Form::RyRz);
    EXPECT_EQ(parse_entanglement("circular"), Entanglement::Circular);
    EXPECT_THROW(parse_form("rx"), ValidationError);
    EXPECT_THROW(parse_entanglement("ring"), ValidationError);
    EXPECT_EQ((AnsatzSpec{Form::Ry, Entanglement::Linear, 2, 4}.descriptor()), "ry/linear/reps=2");
}

TEST(Circuit, ValidatesGates) {
    Circuit c(2);
    EXPECT_THROW(c.append(Gate::cx(0, 0)), ValidationError);
    EXPECT_THROW(c.append(Gate::h(2)), ValidationError);
    EXPECT_THROW(c.append(Gate::ry(0, std::nan(""))), ValidationError);
    EXPECT_TRUE(c.empty());
    c.append(Gate::cx(1, 0));
    EXPECT_EQ(c.size(), 1U);
}
