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

#include "h2vqe/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "h2vqe/rng.hpp"

namespace h2vqe {

namespace {

void check_register(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw ValidationError("state vector: n_qubits must be in [1, 30]");
    }
}

void check_probability(double p, const char *what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(std::string("noise model: ") + what + " must lie in [0, 1]");
    }
}

// Unnormalized cumulative distribution of |amplitude|^2.
std::vector<double> cumulative(const StateVector &state) {
    const auto probs = state.probabilities();
    std::vector<double> cdf(static_cast<std::size_t>(probs.size()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        acc += probs(i);
        cdf[static_cast<std::size_t>(i)] = acc;
    }
    return cdf;
}

std::uint64_t draw_outcome(const std::vector<double> &cdf, Rng &rng) {
    const double u = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::uint64_t>(it - cdf.begin());
    return std::min<std::uint64_t>(idx, cdf.size() - 1);
}

std::uint64_t apply_readout(std::uint64_t outcome, int n_qubits, const NoiseModel &noise,
                            Rng &rng) {
    for (int q = 0; q < n_qubits; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        const auto err = noise.readout_for(q);
        const double p = (outcome & bit) != 0 ? err.p10 : err.p01;
        if (rng.bernoulli(p)) {
            outcome ^= bit;
        }
    }
    return outcome;
}

// One inserted error: (gate position, qubit, pauli in 1..3) packed.
using InsertionPattern = std::vector<std::uint32_t>;

std::uint32_t pack(std::size_t gate, int qubit, std::uint64_t pauli) {
    return static_cast<std::uint32_t>((gate << 8U) | (static_cast<std::size_t>(qubit) << 2U) |
                                      pauli);
}

StateVector replay(const Circuit &c, const InsertionPattern &pattern) {
    StateVector state(c.n_qubits());
    auto &amps = state.amplitudes();
    auto next = pattern.begin();
    for (std::size_t g = 0; g < c.gates().size(); ++g) {
        apply_gate(amps, c.gates()[g]);
        while (next != pattern.end() && (*next >> 8U) == g) {
            const int qubit = static_cast<int>((*next >> 2U) & 0x3fU);
            const auto pauli = *next & 0x3U;
            const GateKind kind =
                pauli == 1 ? GateKind::X : pauli == 2 ? GateKind::Y : GateKind::Z;
            apply_gate(amps, Gate{kind, qubit, -1, 0.0});
            ++next;
        }
    }
    return state;
}

} // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_register(n_qubits);
    amps_ = Amplitudes<double>::Zero(Eigen::Index{1} << n_qubits);
    amps_(0) = 1.0;
}

StateVector::StateVector(int n_qubits, Amplitudes<double> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_register(n_qubits);
    if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
        throw ValidationError("state vector: expected 2^n amplitudes");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > 1e-10) {
        throw ValidationError("state vector: amplitudes are not normalized");
    }
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.dimension()) {
        throw ValidationError("state vector: basis index out of range");
    }
    s.amps_(0) = 0.0;
    s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
}

StateVector apply_circuit(StateVector state, const Circuit &c) {
    if (c.n_qubits() != state.n_qubits()) {
        throw ValidationError("apply_circuit: circuit acts on " +
                              std::to_string(c.n_qubits()) + " qubits, state has " +
                              std::to_string(state.n_qubits()));
    }
    for (const auto &g : c.gates()) {
        apply_gate(state.amplitudes(), g);
    }
    return state;
}

Circuit post_rotations(const MeasurementGroup &group) {
    Circuit c(static_cast<int>(group.basis.size()));
    for (std::size_t q = 0; q < group.basis.size(); ++q) {
        const int qubit = static_cast<int>(q);
        if (group.basis[q] == Basis::Y) {
            c.append(Gate::sdg(qubit));
            c.append(Gate::h(qubit));
        } else if (group.basis[q] == Basis::X) {
            c.append(Gate::h(qubit));
        }
    }
    return c;
}

CountsVector::CountsVector(int n_qubits, std::vector<std::uint64_t> counts)
    : n_qubits_(n_qubits), counts_(std::move(counts)) {
    check_register(n_qubits);
    if (counts_.size() != (std::size_t{1} << n_qubits)) {
        throw ValidationError("counts: expected " + std::to_string(std::size_t{1} << n_qubits) +
                              " entries, got " + std::to_string(counts_.size()));
    }
    for (auto c : counts_) {
        shots_ += c;
    }
}

CountsVector CountsVector::zeros(int n_qubits) {
    check_register(n_qubits);
    return CountsVector(n_qubits, std::vector<std::uint64_t>(std::size_t{1} << n_qubits, 0));
}

Eigen::VectorXd CountsVector::probabilities() const {
    if (shots_ == 0) {
        throw ValidationError("counts: zero shots");
    }
    Eigen::VectorXd p(static_cast<Eigen::Index>(counts_.size()));
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        p(static_cast<Eigen::Index>(i)) =
            static_cast<double>(counts_[i]) / static_cast<double>(shots_);
    }
    return p;
}

CountsVector &CountsVector::operator+=(const CountsVector &other) {
    if (other.n_qubits_ != n_qubits_) {
        throw ValidationError("counts: cannot merge different registers");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        counts_[i] += other.counts_[i];
    }
    shots_ += other.shots_;
    return *this;
}

NoiseModel NoiseModel::gate_only() {
    NoiseModel m;
    m.gate_enabled = true;
    return m;
}

NoiseModel NoiseModel::readout_only() {
    NoiseModel m;
    m.readout_enabled = true;
    return m;
}

NoiseModel NoiseModel::full() {
    NoiseModel m;
    m.gate_enabled = true;
    m.readout_enabled = true;
    return m;
}

ReadoutError NoiseModel::readout_for(int qubit) const {
    if (readout.empty()) {
        return {kDefaultReadoutFlip, kDefaultReadoutFlip};
    }
    if (readout.size() == 1) {
        return readout.front();
    }
    return readout.at(static_cast<std::size_t>(qubit));
}

bool NoiseModel::readout_active() const {
    if (!readout_enabled) {
        return false;
    }
    if (readout.empty()) {
        return kDefaultReadoutFlip > 0;
    }
    return std::any_of(readout.begin(), readout.end(),
                       [](const ReadoutError &e) { return e.p01 > 0 || e.p10 > 0; });
}

std::string NoiseModel::descriptor() const {
    std::ostringstream os;
    if (!gate_enabled && !readout_enabled) {
        return "ideal";
    }
    if (gate_enabled) {
        os << "gate(p1=" << p1 << ";p2=" << p2 << ")";
    }
    if (readout_enabled) {
        if (gate_enabled) {
            os << "+";
        }
        os << "readout(";
        if (readout.empty()) {
            os << kDefaultReadoutFlip;
        } else {
            for (std::size_t q = 0; q < readout.size(); ++q) {
                os << (q ? ";" : "") << readout[q].p01 << "/" << readout[q].p10;
            }
        }
        os << ")";
    }
    return os.str();
}

void NoiseModel::validate() const {
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    for (const auto &e : readout) {
        check_probability(e.p01, "readout p01");
        check_probability(e.p10, "readout p10");
    }
}

CountsVector sample_counts(const StateVector &state, std::uint64_t shots, std::uint64_t seed,
                           const NoiseModel &noise) {
    if (shots == 0) {
        throw ValidationError("sample_counts: shots must be >= 1");
    }
    noise.validate();
    if (noise.readout_active() && noise.readout.size() > 1 &&
        noise.readout.size() != static_cast<std::size_t>(state.n_qubits())) {
        throw ValidationError("sample_counts: readout list length does not match register");
    }
    const auto cdf = cumulative(state);
    const bool readout = noise.readout_active();
    Rng rng(seed);
    std::vector<std::uint64_t> counts(state.dimension(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        auto outcome = draw_outcome(cdf, rng);
        if (readout) {
            outcome = apply_readout(outcome, state.n_qubits(), noise, rng);
        }
        ++counts[outcome];
    }
    return CountsVector(state.n_qubits(), std::move(counts));
}

CountsVector run_noisy(const Circuit &c, std::uint64_t shots, std::uint64_t seed,
                       const NoiseModel &noise) {
    if (!noise.gate_active()) {
        return sample_counts(apply_circuit(StateVector(c.n_qubits()), c), shots, seed, noise);
    }
    if (shots == 0) {
        throw ValidationError("run_noisy: shots must be >= 1");
    }
    noise.validate();
    const bool readout = noise.readout_active();
    const auto &gates = c.gates();

    std::map<InsertionPattern, std::vector<double>> trajectories;
    trajectories.emplace(InsertionPattern{}, cumulative(replay(c, {})));

    Rng rng(seed);
    std::vector<std::uint64_t> counts(std::size_t{1} << c.n_qubits(), 0);
    InsertionPattern pattern;
    for (std::uint64_t s = 0; s < shots; ++s) {
        pattern.clear();
        for (std::size_t g = 0; g < gates.size(); ++g) {
            const auto &gate = gates[g];
            if (gate.is_two_qubit()) {
                for (int q : {gate.qubit, gate.target}) {
                    if (rng.bernoulli(noise.p2)) {
                        pattern.push_back(pack(g, q, 1 + rng.below(3)));
                    }
                }
            } else if (rng.bernoulli(noise.p1)) {
                pattern.push_back(pack(g, gate.qubit, 1 + rng.below(3)));
            }
        }
        auto it = trajectories.find(pattern);
        if (it == trajectories.end()) {
            it = trajectories.emplace(pattern, cumulative(replay(c, pattern))).first;
        }
        auto outcome = draw_outcome(it->second, rng);
        if (readout) {
            outcome = apply_readout(outcome, c.n_qubits(), noise, rng);
        }
        ++counts[outcome];
    }
    return CountsVector(c.n_qubits(), std::move(counts));
}

} // namespace h2vqe
