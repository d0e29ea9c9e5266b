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
 * Energy estimation from grouped measurement counts and the VQE driver.
 *
 * Count-vector orientation: the simulator produces counts indexed so that
 * qubit k is bit k of the index (BitOrder::Q0Rightmost: written as a binary
 * string, qubit 0 is the rightmost character). Tabulated data may instead
 * list outcomes with qubit 0 leftmost; BitOrder says which one a vector uses.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "h2vqe/ansatz.hpp"
#include "h2vqe/optim.hpp"
#include "h2vqe/pauli.hpp"
#include "h2vqe/sim.hpp"
#include "h2vqe/similarity.hpp"

namespace h2vqe {

enum class BitOrder { Q0Leftmost, Q0Rightmost };

/// Orientation of the simulator's own counts.
inline constexpr BitOrder kNativeBitOrder = BitOrder::Q0Rightmost;

/// Orientation of the published count tables, as settled by resolve_bit_order.
inline constexpr BitOrder kPublishedBitOrder = BitOrder::Q0Leftmost;

inline constexpr double kChemicalAccuracy = 0.0016; ///< Ha

std::string_view to_string(BitOrder o); // "q0_leftmost" | "q0_rightmost"
BitOrder parse_bit_order(std::string_view s);

/// Native index of the outcome stored at @p position under @p order.
std::uint64_t native_index(std::uint64_t position, int n_qubits, BitOrder order);

/// Re-indexes counts between orientations.
CountsVector reorder(const CountsVector &counts, BitOrder from, BitOrder to);

/// <P> from counts measured in the term's group basis; in [-1, 1].
double pauli_expectation(const PauliTerm &term, const CountsVector &counts, BitOrder order);

struct EnergyEstimate {
    double energy = 0.0;                    ///< Ha
    std::vector<CountsVector> group_counts; ///< native order; empty in analytic mode
    std::vector<double> term_expectations;  ///< per Hamiltonian term; 1 for the identity
};

/// Identity constant plus coefficient-weighted expectations of every member
/// term, one counts vector per group.
EnergyEstimate energy_from_counts(const Hamiltonian &h, const Grouping &grouping,
                                  const std::vector<CountsVector> &counts_per_group,
                                  BitOrder order);

/// Same sum from exact outcome probabilities (native order), one per group.
EnergyEstimate energy_from_probabilities(const Hamiltonian &h, const Grouping &grouping,
                                         const std::vector<Eigen::VectorXd> &probs_per_group);

struct BitOrderResolution {
    BitOrder order;
    double energy_q0_leftmost;
    double energy_q0_rightmost;
};

/**
 * Evaluates the two-group counts under both orientations and returns the one
 * whose energy lies within @p tol of @p target. Throws ConfigError unless
 * exactly one matches.
 */
BitOrderResolution resolve_bit_order(const Hamiltonian &h, const CountsVector &circuit0,
                                     const CountsVector &circuit1, double target,
                                     double tol = 0.01);

/// Built-in check against published set A of the 4-qubit Hamiltonian.
BitOrderResolution resolve_bit_order();

enum class InitPolicy { Uniform, Zeros, Explicit };

std::string_view to_string(InitPolicy p);
InitPolicy parse_init_policy(std::string_view s); // "uniform" | "zeros" | "explicit"

inline constexpr std::uint64_t kDefaultShots = 4096;
inline constexpr std::uint64_t kMaxShots = 8192;

struct VqeConfig {
    Hamiltonian hamiltonian = h2_4qubit();
    std::string hamiltonian_label = "4q";
    AnsatzSpec ansatz;
    OptimizerConfig optimizer;
    std::uint64_t shots = kDefaultShots; ///< per measurement group
    NoiseModel noise;
    std::uint64_t seed = 0;
    InitPolicy init = InitPolicy::Uniform; ///< Uniform draws from [-pi, pi)
    std::vector<double> initial_params;    ///< used by InitPolicy::Explicit
    BandBoundaries bands;
    /// Exact probabilities instead of sampling. For invariant checks only.
    bool analytic = false;

    void validate() const;
};

/**
 * Builds one circuit per measurement group (ansatz + post-rotations) and
 * estimates the energy. Group g samples with seed derive_seed(seed, g).
 */
class EnergyEvaluator {
  public:
    explicit EnergyEvaluator(const VqeConfig &cfg);

    [[nodiscard]] EnergyEstimate evaluate(const Eigen::VectorXd &params,
                                          std::uint64_t seed) const;

    [[nodiscard]] const Grouping &grouping() const { return grouping_; }
    [[nodiscard]] std::size_t parameter_count() const { return n_params_; }

  private:
    const VqeConfig &cfg_;
    Grouping grouping_;
    std::vector<Circuit> rotations_;
    std::size_t n_params_;
};

EnergyEstimate evaluate_energy(const Eigen::VectorXd &params, const VqeConfig &cfg,
                               std::uint64_t seed);

/// Starting point for run_vqe under cfg.init.
Eigen::VectorXd initial_parameters(const VqeConfig &cfg);

struct VqeResult {
    double energy = 0.0; ///< best traced energy, Ha
    Eigen::VectorXd params;
    Trace trace;
    std::vector<MeasurementGroup> groups;
    std::vector<CountsVector> final_counts; ///< native order, from the best evaluation
    EnergyBand band = EnergyBand::Erroneous;
    bool complete = true; ///< false when the optimizer aborted
    bool converged = false;
    int iterations = 0;
    std::vector<std::string> diagnostics;
};

/**
 * Minimizes the sampled energy. Seed streams derived from cfg.seed:
 * 0 initial angles, 1 per-evaluation sampling (child k for evaluation k),
 * 2 optimizer randomness (overrides cfg.optimizer.seed).
 */
VqeResult run_vqe(const VqeConfig &cfg);

} // namespace h2vqe
