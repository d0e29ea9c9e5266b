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

#include "h2vqe/vqe.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "h2vqe/error.hpp"
#include "h2vqe/fixtures.hpp"
#include "h2vqe/rng.hpp"

namespace h2vqe {

namespace {

std::uint64_t reverse_bits(std::uint64_t x, int n) {
    std::uint64_t r = 0;
    for (int b = 0; b < n; ++b) {
        r |= ((x >> b) & 1U) << (n - 1 - b);
    }
    return r;
}

double parity_sign(std::uint64_t outcome, std::uint64_t mask) {
    return std::popcount(outcome & mask) % 2 == 0 ? 1.0 : -1.0;
}

void check_groups(const Hamiltonian &h, const Grouping &grouping, std::size_t supplied) {
    if (supplied != grouping.groups.size()) {
        throw ValidationError("energy: expected " + std::to_string(grouping.groups.size()) +
                              " measurement groups, got " + std::to_string(supplied));
    }
    for (const auto &g : grouping.groups) {
        for (auto t : g.member_terms) {
            if (t >= h.size()) {
                throw ValidationError("energy: group references a missing term");
            }
        }
    }
}

template <typename ExpectationFn>
EnergyEstimate combine(const Hamiltonian &h, const Grouping &grouping, ExpectationFn &&expect) {
    EnergyEstimate est;
    est.term_expectations.assign(h.size(), std::numeric_limits<double>::quiet_NaN());
    est.energy = 0.0;
    for (std::size_t t = 0; t < h.size(); ++t) {
        if (h.terms()[t].string.is_identity()) {
            est.term_expectations[t] = 1.0;
            est.energy += h.terms()[t].coefficient;
        }
    }
    for (std::size_t g = 0; g < grouping.groups.size(); ++g) {
        for (auto t : grouping.groups[g].member_terms) {
            const double e = expect(g, h.terms()[t]);
            est.term_expectations[t] = e;
            est.energy += h.terms()[t].coefficient * e;
        }
    }
    return est;
}

} // namespace

std::string_view to_string(BitOrder o) {
    return o == BitOrder::Q0Leftmost ? "q0_leftmost" : "q0_rightmost";
}

BitOrder parse_bit_order(std::string_view s) {
    if (s == "q0_leftmost") {
        return BitOrder::Q0Leftmost;
    }
    if (s == "q0_rightmost") {
        return BitOrder::Q0Rightmost;
    }
    throw ValidationError("unknown bit order '" + std::string(s) +
                          "' (expected q0_leftmost or q0_rightmost)");
}

std::uint64_t native_index(std::uint64_t position, int n_qubits, BitOrder order) {
    return order == BitOrder::Q0Rightmost ? position : reverse_bits(position, n_qubits);
}

CountsVector reorder(const CountsVector &counts, BitOrder from, BitOrder to) {
    if (from == to) {
        return counts;
    }
    const int n = counts.n_qubits();
    std::vector<std::uint64_t> out(counts.size(), 0);
    for (std::uint64_t p = 0; p < counts.size(); ++p) {
        // both orientations are bit reversals of each other
        out[reverse_bits(p, n)] = counts[p];
    }
    return CountsVector(n, std::move(out));
}

double pauli_expectation(const PauliTerm &term, const CountsVector &counts, BitOrder order) {
    if (counts.shots() == 0) {
        throw ValidationError("pauli_expectation: zero shots");
    }
    if (static_cast<int>(term.string.n_qubits()) != counts.n_qubits()) {
        throw ValidationError("pauli_expectation: register size mismatch");
    }
    const auto mask = term.string.support_mask();
    double acc = 0.0;
    for (std::uint64_t p = 0; p < counts.size(); ++p) {
        if (counts[p] != 0) {
            acc += static_cast<double>(counts[p]) *
                   parity_sign(native_index(p, counts.n_qubits(), order), mask);
        }
    }
    return acc / static_cast<double>(counts.shots());
}

EnergyEstimate energy_from_counts(const Hamiltonian &h, const Grouping &grouping,
                                  const std::vector<CountsVector> &counts_per_group,
                                  BitOrder order) {
    check_groups(h, grouping, counts_per_group.size());
    auto est = combine(h, grouping, [&](std::size_t g, const PauliTerm &term) {
        return pauli_expectation(term, counts_per_group[g], order);
    });
    est.group_counts.reserve(counts_per_group.size());
    for (const auto &c : counts_per_group) {
        est.group_counts.push_back(reorder(c, order, kNativeBitOrder));
    }
    return est;
}

EnergyEstimate energy_from_probabilities(const Hamiltonian &h, const Grouping &grouping,
                                         const std::vector<Eigen::VectorXd> &probs_per_group) {
    check_groups(h, grouping, probs_per_group.size());
    const auto dim = Eigen::Index{1} << h.n_qubits();
    for (const auto &p : probs_per_group) {
        if (p.size() != dim) {
            throw ValidationError("energy: probability vector has wrong length");
        }
    }
    return combine(h, grouping, [&](std::size_t g, const PauliTerm &term) {
        const auto mask = term.string.support_mask();
        const auto &p = probs_per_group[g];
        double acc = 0.0;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            acc += p(i) * parity_sign(static_cast<std::uint64_t>(i), mask);
        }
        return acc;
    });
}

BitOrderResolution resolve_bit_order(const Hamiltonian &h, const CountsVector &circuit0,
                                     const CountsVector &circuit1, double target, double tol) {
    const auto grouping = group_terms(h);
    const std::vector<CountsVector> counts{circuit0, circuit1};
    BitOrderResolution r{};
    r.energy_q0_leftmost = energy_from_counts(h, grouping, counts, BitOrder::Q0Leftmost).energy;
    r.energy_q0_rightmost = energy_from_counts(h, grouping, counts, BitOrder::Q0Rightmost).energy;
    const bool left = std::abs(r.energy_q0_leftmost - target) <= tol;
    const bool right = std::abs(r.energy_q0_rightmost - target) <= tol;
    if (left == right) {
        throw ConfigError("resolve_bit_order: " +
                          std::string(left ? "both orientations" : "neither orientation") +
                          " reproduce the target energy (q0_leftmost " +
                          std::to_string(r.energy_q0_leftmost) + ", q0_rightmost " +
                          std::to_string(r.energy_q0_rightmost) + ", target " +
                          std::to_string(target) + ")");
    }
    r.order = left ? BitOrder::Q0Leftmost : BitOrder::Q0Rightmost;
    return r;
}

BitOrderResolution resolve_bit_order() {
    return resolve_bit_order(h2_4qubit(), fixtures::a0(), fixtures::a1(), fixtures::kSetAEnergy);
}

std::string_view to_string(InitPolicy p) {
    switch (p) {
    case InitPolicy::Uniform:
        return "uniform";
    case InitPolicy::Zeros:
        return "zeros";
    case InitPolicy::Explicit:
        return "explicit";
    }
    return "?";
}

InitPolicy parse_init_policy(std::string_view s) {
    if (s == "uniform") {
        return InitPolicy::Uniform;
    }
    if (s == "zeros") {
        return InitPolicy::Zeros;
    }
    if (s == "explicit") {
        return InitPolicy::Explicit;
    }
    throw ValidationError("unknown init policy '" + std::string(s) +
                          "' (expected uniform, zeros or explicit)");
}

void VqeConfig::validate() const {
    if (shots < 1 || shots > kMaxShots) {
        throw ValidationError("shots must be in [1, " + std::to_string(kMaxShots) + "], got " +
                              std::to_string(shots));
    }
    ansatz.validate();
    if (ansatz.n_qubits != hamiltonian.n_qubits()) {
        throw ValidationError("ansatz acts on " + std::to_string(ansatz.n_qubits) +
                              " qubits but the Hamiltonian on " +
                              std::to_string(hamiltonian.n_qubits()));
    }
    optimizer.validate();
    noise.validate();
    if (noise.readout.size() > 1 &&
        noise.readout.size() != static_cast<std::size_t>(hamiltonian.n_qubits())) {
        throw ValidationError("noise.readout must list 1 or n_qubits entries");
    }
    bands.validate();
    if (init == InitPolicy::Explicit && initial_params.size() != parameter_count(ansatz)) {
        throw ValidationError("initial_params has " + std::to_string(initial_params.size()) +
                              " entries, ansatz needs " +
                              std::to_string(parameter_count(ansatz)));
    }
}

EnergyEvaluator::EnergyEvaluator(const VqeConfig &cfg)
    : cfg_(cfg), grouping_(group_terms(cfg.hamiltonian)), n_params_(h2vqe::parameter_count(cfg.ansatz)) {
    cfg.validate();
    for (const auto &g : grouping_.groups) {
        rotations_.push_back(post_rotations(g));
    }
}

EnergyEstimate EnergyEvaluator::evaluate(const Eigen::VectorXd &params, std::uint64_t seed) const {
    if (static_cast<std::size_t>(params.size()) != n_params_) {
        throw ValidationError("evaluate_energy: expected " + std::to_string(n_params_) +
                              " parameters, got " + std::to_string(params.size()));
    }
    const Circuit ansatz = build_circuit(
        cfg_.ansatz, std::span<const double>(params.data(), static_cast<std::size_t>(params.size())));
    const auto &h = cfg_.hamiltonian;
    const std::size_t n_groups = grouping_.groups.size();

    if (cfg_.analytic) {
        const StateVector state = apply_circuit(StateVector(h.n_qubits()), ansatz);
        std::vector<Eigen::VectorXd> probs;
        for (std::size_t g = 0; g < n_groups; ++g) {
            probs.push_back(apply_circuit(state, rotations_[g]).probabilities());
        }
        return energy_from_probabilities(h, grouping_, probs);
    }

    std::vector<CountsVector> counts;
    counts.reserve(n_groups);
    if (cfg_.noise.gate_active()) {
        for (std::size_t g = 0; g < n_groups; ++g) {
            Circuit full = ansatz;
            full += rotations_[g];
            counts.push_back(run_noisy(full, cfg_.shots, derive_seed(seed, g), cfg_.noise));
        }
    } else {
        const StateVector state = apply_circuit(StateVector(h.n_qubits()), ansatz);
        for (std::size_t g = 0; g < n_groups; ++g) {
            counts.push_back(sample_counts(apply_circuit(state, rotations_[g]), cfg_.shots,
                                           derive_seed(seed, g), cfg_.noise));
        }
    }
    return energy_from_counts(h, grouping_, counts, kNativeBitOrder);
}

EnergyEstimate evaluate_energy(const Eigen::VectorXd &params, const VqeConfig &cfg,
                               std::uint64_t seed) {
    return EnergyEvaluator(cfg).evaluate(params, seed);
}

Eigen::VectorXd initial_parameters(const VqeConfig &cfg) {
    const auto n = static_cast<Eigen::Index>(parameter_count(cfg.ansatz));
    switch (cfg.init) {
    case InitPolicy::Zeros:
        return Eigen::VectorXd::Zero(n);
    case InitPolicy::Explicit:
        if (static_cast<Eigen::Index>(cfg.initial_params.size()) != n) {
            throw ValidationError("initial_params length does not match the ansatz");
        }
        return Eigen::Map<const Eigen::VectorXd>(cfg.initial_params.data(), n);
    case InitPolicy::Uniform:
        break;
    }
    Rng rng(derive_seed(cfg.seed, 0));
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x(i) = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return x;
}

VqeResult run_vqe(const VqeConfig &cfg) {
    const EnergyEvaluator evaluator(cfg);
    const Eigen::VectorXd x0 = initial_parameters(cfg);
    OptimizerConfig opt = cfg.optimizer;
    opt.seed = derive_seed(cfg.seed, 2);
    const std::uint64_t sampling_stream = derive_seed(cfg.seed, 1);

    std::uint64_t k = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<CountsVector> best_counts;
    const Objective objective = [&](const Eigen::VectorXd &x) {
        auto est = evaluator.evaluate(x, derive_seed(sampling_stream, k++));
        if (est.energy < best) {
            best = est.energy;
            best_counts = std::move(est.group_counts);
        }
        return est.energy;
    };
    auto r = minimize(objective, x0, opt);

    VqeResult out;
    out.energy = r.f_best;
    out.params = std::move(r.x_best);
    out.trace = std::move(r.trace);
    out.groups = evaluator.grouping().groups;
    out.final_counts = std::move(best_counts);
    out.band = classify_energy(out.energy, cfg.bands);
    out.complete = !r.aborted;
    out.converged = r.converged;
    out.iterations = r.iterations;
    out.diagnostics = std::move(r.diagnostics);
    return out;
}

} // namespace h2vqe
