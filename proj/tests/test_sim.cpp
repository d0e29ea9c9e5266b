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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "h2vqe/rng.hpp"
#include "h2vqe/sim.hpp"

using namespace h2vqe;

namespace {

constexpr double kPi = std::numbers::pi;

Circuit bell() {
    Circuit c(2);
    c.append(Gate::h(0));
    c.append(Gate::cx(0, 1));
    return c;
}

Circuit random_ansatz(std::uint64_t seed, Form form = Form::RyRz) {
    const AnsatzSpec spec{form, Entanglement::Full, 3, 4};
    Rng rng(seed);
    std::vector<double> p(parameter_count(spec));
    for (auto &x : p) {
        x = rng.uniform(-kPi, kPi);
    }
    return build_circuit(spec, p);
}

// |obs - n p| <= 5 sqrt(n p (1 - p))
void expect_binomial(std::uint64_t observed, std::uint64_t n, double p) {
    const double mean = static_cast<double>(n) * p;
    const double sigma = std::sqrt(static_cast<double>(n) * p * (1 - p));
    EXPECT_LE(std::abs(static_cast<double>(observed) - mean), 5 * sigma)
        << "observed " << observed << " expected " << mean;
}

// Pearson chi-square statistic against expected probabilities (cells with p > 0).
double chi_square(const CountsVector &c, const Eigen::VectorXd &p) {
    double stat = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double e = static_cast<double>(c.shots()) * p(static_cast<Eigen::Index>(i));
        if (e > 0) {
            const double d = static_cast<double>(c[i]) - e;
            stat += d * d / e;
        }
    }
    return stat;
}

} // namespace

TEST(StateVector, StartsInAllZeros) {
    const StateVector s(3);
    EXPECT_EQ(s.dimension(), 8U);
    EXPECT_EQ(s.amplitudes()(0), std::complex<double>(1, 0));
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(StateVector, RejectsUnnormalizedAmplitudes) {
    Amplitudes<double> a = Amplitudes<double>::Zero(4);
    a(0) = 0.5;
    EXPECT_THROW(StateVector(2, a), ValidationError);
    EXPECT_THROW(StateVector(2, Amplitudes<double>::Zero(3)), ValidationError);
}

TEST(Gates, RyPiFlipsQubit) {
    Circuit c(1);
    c.append(Gate::ry(0, kPi));
    const auto s = apply_circuit(StateVector(1), c);
    EXPECT_NEAR(std::abs(s.amplitudes()(1)), 1.0, 1e-15);
}

TEST(Gates, BellState) {
    const auto s = apply_circuit(StateVector(2), bell());
    const Eigen::VectorXd p = s.probabilities();
    EXPECT_NEAR(p(0), 0.5, 1e-15);
    EXPECT_NEAR(p(1), 0.0, 1e-15);
    EXPECT_NEAR(p(2), 0.0, 1e-15);
    EXPECT_NEAR(p(3), 0.5, 1e-15);
}

TEST(Gates, EmptyCircuitIsIdentity) {
    const auto before = apply_circuit(StateVector(4), random_ansatz(3));
    const auto after = apply_circuit(before, Circuit(4));
    EXPECT_EQ(before.amplitudes(), after.amplitudes());
}

TEST(Gates, CxUsesControlAndTarget) {
    // |q1 q0> = |01> (index 1): control 0 set, target 1 flips -> index 3.
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    const auto s = apply_circuit(StateVector::basis_state(2, 1), c);
    EXPECT_NEAR(std::abs(s.amplitudes()(3)), 1.0, 1e-15);
    // control 1 clear: nothing happens.
    Circuit d(2);
    d.append(Gate::cx(1, 0));
    const auto t = apply_circuit(StateVector::basis_state(2, 1), d);
    EXPECT_NEAR(std::abs(t.amplitudes()(1)), 1.0, 1e-15);
}

TEST(Gates, RzIsDiagonalPhase) {
    Circuit c(1);
    c.append(Gate::h(0));
    c.append(Gate::rz(0, 0.7));
    const auto s = apply_circuit(StateVector(1), c);
    const auto a = s.amplitudes();
    EXPECT_NEAR(std::arg(a(1) / a(0)), 0.7, 1e-14);
    EXPECT_NEAR(std::abs(a(0)), std::sqrt(0.5), 1e-15);
}

TEST(Gates, NormPreservedAcrossAnsatzCircuits) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (auto form : {Form::Ry, Form::RyRz}) {
            StateVector s(4);
            const auto circuit = random_ansatz(seed, form);
            for (const auto &g : circuit.gates()) {
                apply_gate(s.amplitudes(), g);
                ASSERT_LE(std::abs(s.norm_squared() - 1.0), 1e-10);
            }
        }
    }
}

TEST(PostRotations, Bases) {
    const auto g4 = group_terms(h2_4qubit());
    EXPECT_TRUE(post_rotations(g4.groups[0]).empty());
    const auto r1 = post_rotations(g4.groups[1]);
    EXPECT_EQ(r1.gates(), (std::vector<Gate>{Gate::h(0), Gate::h(2)}));
    const auto g2 = group_terms(h2_2qubit());
    EXPECT_EQ(post_rotations(g2.groups[1]).gates(), (std::vector<Gate>{Gate::h(0), Gate::h(1)}));
}

TEST(PostRotations, YBasisMapsPlusIToZero) {
    MeasurementGroup g;
    g.basis = {Basis::Y};
    Amplitudes<double> a(2);
    a << std::sqrt(0.5), std::complex<double>(0, std::sqrt(0.5));
    const auto s = apply_circuit(StateVector(1, a), post_rotations(g));
    EXPECT_NEAR(s.probabilities()(0), 1.0, 1e-15);
}

TEST(Sampling, DeterministicState) {
    const auto c = sample_counts(StateVector::basis_state(2, 3), 4096, 1, NoiseModel::ideal());
    EXPECT_EQ(c.counts(), (std::vector<std::uint64_t>{0, 0, 0, 4096}));
    EXPECT_EQ(c.shots(), 4096U);
}

TEST(Sampling, BellHasNoOddOutcomes) {
    const auto c = sample_counts(apply_circuit(StateVector(2), bell()), 8192, 5, NoiseModel::ideal());
    EXPECT_EQ(c[1], 0U);
    EXPECT_EQ(c[2], 0U);
    EXPECT_EQ(c[0] + c[3], 8192U);
}

TEST(Sampling, SameSeedSameCounts) {
    const auto s = apply_circuit(StateVector(4), random_ansatz(11));
    const auto noise = NoiseModel::readout_only();
    EXPECT_EQ(sample_counts(s, 2000, 42, noise), sample_counts(s, 2000, 42, noise));
    EXPECT_NE(sample_counts(s, 2000, 42, noise), sample_counts(s, 2000, 43, noise));
}

TEST(Sampling, TotalVariationShrinksWithShots) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = apply_circuit(StateVector(4), random_ansatz(100 + seed));
        const auto c = sample_counts(s, 65536, seed, NoiseModel::ideal());
        const double tv = 0.5 * (c.probabilities() - s.probabilities()).cwiseAbs().sum();
        EXPECT_LT(tv, 0.02) << "seed " << seed;
    }
}

TEST(Sampling, RejectsZeroShots) {
    EXPECT_THROW(sample_counts(StateVector(1), 0, 1, NoiseModel::ideal()), ValidationError);
}

TEST(Readout, SingleQubitFlipIsBinomial) {
    NoiseModel noise = NoiseModel::readout_only();
    noise.readout = {ReadoutError{0.1, 0.0}};
    const auto c = sample_counts(StateVector(1), 10000, 9, noise);
    expect_binomial(c[1], 10000, 0.1);
}

TEST(Readout, IndependentFlipsOnFourQubits) {
    NoiseModel noise = NoiseModel::readout_only();
    noise.readout = {ReadoutError{0.02, 0.02}};
    const std::uint64_t shots = 8192;
    const auto c = run_noisy(Circuit(4), shots, 17, noise);
    expect_binomial(c[0], shots, std::pow(0.98, 4));
    // exactly one flipped bit: 4 * 0.02 * 0.98^3
    expect_binomial(c[1] + c[2] + c[4] + c[8], shots, 4 * 0.02 * std::pow(0.98, 3));
}

TEST(Readout, AsymmetricRates) {
    NoiseModel noise = NoiseModel::readout_only();
    noise.readout = {ReadoutError{0.0, 0.3}};
    const auto c = sample_counts(StateVector::basis_state(1, 1), 10000, 4, noise);
    expect_binomial(c[0], 10000, 0.3);
}

TEST(RunNoisy, WithoutGateNoiseEqualsSampleCounts) {
    const auto circuit = random_ansatz(21);
    const auto state = apply_circuit(StateVector(4), circuit);
    NoiseModel noise = NoiseModel::full();
    noise.p1 = 0;
    noise.p2 = 0;
    EXPECT_EQ(run_noisy(circuit, 3000, 8, noise), sample_counts(state, 3000, 8, noise));
    EXPECT_EQ(run_noisy(circuit, 3000, 8, NoiseModel::ideal()),
              sample_counts(state, 3000, 8, NoiseModel::ideal()));
}

TEST(RunNoisy, NoiseDisabledMatchesIdealDistribution) {
    // chi-square with 1 degree of freedom; 10.83 is the p = 0.001 critical value.
    const auto ideal = apply_circuit(StateVector(2), bell()).probabilities();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto c = run_noisy(bell(), 8192, seed, NoiseModel::ideal());
        EXPECT_LT(chi_square(c, ideal), 10.83) << "seed " << seed;
    }
}

TEST(RunNoisy, TrajectoryPathMatchesClosedForm) {
    // Ry(0) is the identity; after it a random Pauli hits with probability p1.
    // X or Y flip |0> -> |1>, Z does not: P(1) = p1 * 2/3.
    Circuit c(1);
    c.append(Gate::ry(0, 0.0));
    NoiseModel noise = NoiseModel::gate_only();
    for (double p1 : {1.0, 0.3}) {
        noise.p1 = p1;
        const auto counts = run_noisy(c, 20000, 77, noise);
        expect_binomial(counts[1], 20000, p1 * 2.0 / 3.0);
    }
}

TEST(RunNoisy, TwoQubitDepolarizingHitsBothQubits) {
    // CX on |00> with p2 = 1: independent X/Y/Z on each qubit.
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    NoiseModel noise = NoiseModel::gate_only();
    noise.p1 = 0;
    noise.p2 = 1.0;
    const auto counts = run_noisy(c, 20000, 3, noise);
    const double flip = 2.0 / 3.0;
    expect_binomial(counts[3], 20000, flip * flip);
    expect_binomial(counts[0], 20000, (1 - flip) * (1 - flip));
}

TEST(RunNoisy, DeterministicGivenSeed) {
    const auto circuit = random_ansatz(5);
    const auto noise = NoiseModel::full();
    EXPECT_EQ(run_noisy(circuit, 1000, 99, noise), run_noisy(circuit, 1000, 99, noise));
}

TEST(NoiseModel, ValidatesProbabilities) {
    NoiseModel m;
    m.p2 = 1.5;
    EXPECT_THROW(m.validate(), ValidationError);
    NoiseModel r;
    r.readout = {ReadoutError{-0.1, 0.0}};
    EXPECT_THROW(r.validate(), ValidationError);
}

TEST(Counts, MergeIsAssociativeAndCommutative) {
    const CountsVector a(1, {3, 4});
    const CountsVector b(1, {10, 0});
    const CountsVector c(1, {1, 1});
    auto ab_c = a;
    ab_c += b;
    ab_c += c;
    auto c_ba = c;
    c_ba += b;
    c_ba += a;
    EXPECT_EQ(ab_c, c_ba);
    EXPECT_EQ(ab_c.shots(), 19U);
}

TEST(Counts, Validation) {
    EXPECT_THROW(CountsVector(2, {1, 2, 3}), ValidationError);
    EXPECT_THROW(CountsVector::zeros(2).probabilities(), ValidationError);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a(derive_seed(7, 0));
    Rng b(derive_seed(7, 0));
    Rng c(derive_seed(7, 1));
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        EXPECT_NE(x, c.next_u64());
    }
}

TEST(Rng, UniformAndNormalMoments) {
    Rng rng(123);
    const int n = 200000;
    double su = 0;
    double sn = 0;
    double sn2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        su += u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
    }
    EXPECT_NEAR(su / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sn / n, 0.0, 5 / std::sqrt(double(n)));
    EXPECT_NEAR(sn2 / n, 1.0, 5 * std::sqrt(2.0 / n));
    for (int i = 0; i < 1000; ++i) {
        ASSERT_LT(rng.below(3), 3U);
    }
}
