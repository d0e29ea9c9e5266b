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
 * Statevector simulation, measurement post-rotations, shot sampling and
 * Monte Carlo noise trajectories.
 *
 * Basis index i encodes qubit k in bit k of i (qubit 0 least significant).
 * Counts produced here use that native index order.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "h2vqe/ansatz.hpp"
#include "h2vqe/error.hpp"
#include "h2vqe/pauli.hpp"

namespace h2vqe {

template <typename Scalar>
using Amplitudes = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Applies one gate in place to a 2^n amplitude vector.
template <typename Derived>
void apply_gate(Eigen::MatrixBase<Derived> &amps, const Gate &g) {
    using Complex = typename Derived::Scalar;
    using Real = typename Complex::value_type;
    const auto dim = static_cast<std::uint64_t>(amps.size());
    const std::uint64_t bit = std::uint64_t{1} << g.qubit;

    if (g.kind == GateKind::CX) {
        const std::uint64_t tbit = std::uint64_t{1} << g.target;
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & bit) != 0 && (i & tbit) == 0) {
                std::swap(amps(static_cast<Eigen::Index>(i)),
                          amps(static_cast<Eigen::Index>(i | tbit)));
            }
        }
        return;
    }

    // 2x2 unitary [[m00, m01], [m10, m11]]
    Complex m00{1};
    Complex m01{0};
    Complex m10{0};
    Complex m11{1};
    const Real half = static_cast<Real>(g.angle) / Real{2};
    switch (g.kind) {
    case GateKind::Ry:
        m00 = std::cos(half);
        m01 = -std::sin(half);
        m10 = std::sin(half);
        m11 = std::cos(half);
        break;
    case GateKind::Rz:
        m00 = std::polar(Real{1}, -half);
        m11 = std::polar(Real{1}, half);
        break;
    case GateKind::H: {
        const Real r = Real{1} / std::sqrt(Real{2});
        m00 = r;
        m01 = r;
        m10 = r;
        m11 = -r;
        break;
    }
    case GateKind::Sdg:
        m11 = Complex{0, -1};
        break;
    case GateKind::X:
        m00 = 0;
        m01 = 1;
        m10 = 1;
        m11 = 0;
        break;
    case GateKind::Y:
        m00 = 0;
        m01 = Complex{0, -1};
        m10 = Complex{0, 1};
        m11 = 0;
        break;
    case GateKind::Z:
        m11 = -1;
        break;
    case GateKind::CX:
        break;
    }
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & bit) != 0) {
            continue;
        }
        const auto i0 = static_cast<Eigen::Index>(i);
        const auto i1 = static_cast<Eigen::Index>(i | bit);
        const Complex a0 = amps(i0);
        const Complex a1 = amps(i1);
        amps(i0) = m00 * a0 + m01 * a1;
        amps(i1) = m10 * a0 + m11 * a1;
    }
}

class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits);
    StateVector(int n_qubits, Amplitudes<double> amplitudes);

    static StateVector basis_state(int n_qubits, std::uint64_t index);

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] const Amplitudes<double> &amplitudes() const { return amps_; }
    [[nodiscard]] Amplitudes<double> &amplitudes() { return amps_; }
    [[nodiscard]] std::size_t dimension() const {
        return static_cast<std::size_t>(amps_.size());
    }

    [[nodiscard]] double norm_squared() const { return amps_.squaredNorm(); }
    [[nodiscard]] Eigen::VectorXd probabilities() const {
        return amps_.cwiseAbs2();
    }

  private:
    int n_qubits_;
    Amplitudes<double> amps_;
};

/// Applies the gates of @p c left to right.
StateVector apply_circuit(StateVector state, const Circuit &c);

/// H on every X-basis qubit; S^dagger then H on every Y-basis qubit.
Circuit post_rotations(const MeasurementGroup &group);

/// Outcome histogram over 2^n basis states.
class CountsVector {
  public:
    CountsVector(int n_qubits, std::vector<std::uint64_t> counts);
    static CountsVector zeros(int n_qubits);

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::uint64_t shots() const { return shots_; }
    [[nodiscard]] const std::vector<std::uint64_t> &counts() const { return counts_; }
    [[nodiscard]] std::uint64_t operator[](std::size_t i) const { return counts_.at(i); }
    [[nodiscard]] std::size_t size() const { return counts_.size(); }

    /// counts / shots. Throws ValidationError on zero shots.
    [[nodiscard]] Eigen::VectorXd probabilities() const;

    /// Elementwise sum; associative and commutative.
    CountsVector &operator+=(const CountsVector &other);

    bool operator==(const CountsVector &) const = default;

  private:
    int n_qubits_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t shots_ = 0;
};

struct ReadoutError {
    double p01 = 0.02; ///< P(read 1 | prepared 0)
    double p10 = 0.02; ///< P(read 0 | prepared 1)
};

inline constexpr double kDefaultP1 = 0.001;
inline constexpr double kDefaultP2 = 0.005;
inline constexpr double kDefaultReadoutFlip = 0.02;

/**
 * @brief Depolarizing gate noise and readout bit-flips, each switchable.
 *
 * After a single-qubit gate, with probability p1 a uniformly random Pauli
 * (X, Y or Z) hits its qubit. After a two-qubit gate the same happens
 * independently on control and target, each with probability p2.
 */
struct NoiseModel {
    bool gate_enabled = false;
    double p1 = kDefaultP1;
    double p2 = kDefaultP2;
    bool readout_enabled = false;
    std::vector<ReadoutError> readout; ///< per qubit; empty means default for all

    static NoiseModel ideal() { return {}; }
    static NoiseModel gate_only();
    static NoiseModel readout_only();
    static NoiseModel full();

    [[nodiscard]] ReadoutError readout_for(int qubit) const;
    [[nodiscard]] bool gate_active() const { return gate_enabled && (p1 > 0 || p2 > 0); }
    [[nodiscard]] bool readout_active() const;
    [[nodiscard]] std::string descriptor() const;
    void validate() const;
};

/**
 * Draws @p shots outcomes from |amplitude|^2, then flips each bit of each
 * outcome with the configured readout probabilities if readout noise is
 * enabled. Gate noise in @p noise is ignored here.
 */
CountsVector sample_counts(const StateVector &state, std::uint64_t shots,
                           std::uint64_t seed, const NoiseModel &noise);

/**
 * @brief Per-shot Monte Carlo trajectories of @p c from |0...0>.
 *
 * Each shot draws its own Pauli insertions, samples one outcome from the
 * resulting state and applies readout flips. Shots sharing an insertion
 * pattern share one simulated state. Without active gate noise this is
 * exactly sample_counts(apply_circuit(|0...0>, c), shots, seed, noise).
 */
CountsVector run_noisy(const Circuit &c, std::uint64_t shots, std::uint64_t seed,
                       const NoiseModel &noise);

} // namespace h2vqe
