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
 * Pauli-string Hamiltonians: construction, measurement grouping and dense
 * matrix assembly.
 *
 * Qubit k always maps to bit k of a computational basis index (qubit 0 is
 * the least-significant bit). Text labels are written with the highest
 * qubit leftmost ("q_high_left"), so "ZIXI" is Z on qubit 3 and X on qubit 1.
 */

#pragma once

#include <bit>
#include <initializer_list>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "h2vqe/error.hpp"

namespace h2vqe {

enum class Pauli : std::uint8_t { I, X, Y, Z };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

class PauliString {
  public:
    PauliString() = default;

    /// labels[k] acts on qubit k.
    explicit PauliString(std::vector<Pauli> labels);

    static PauliString identity(int n_qubits);

    /// Parses a q_high_left label such as "ZIXZ".
    static PauliString from_label(std::string_view label);

    /// Sparse construction, e.g. from_ops(4, {{2, Pauli::X}, {0, Pauli::X}}).
    static PauliString
    from_ops(int n_qubits, std::initializer_list<std::pair<int, Pauli>> ops);

    [[nodiscard]] int n_qubits() const {
        return static_cast<int>(labels_.size());
    }
    [[nodiscard]] Pauli operator[](int qubit) const { return labels_.at(qubit); }
    [[nodiscard]] const std::vector<Pauli> &labels() const { return labels_; }

    /// q_high_left text form.
    [[nodiscard]] std::string label() const;

    /// Qubits carrying a non-identity label, ascending.
    [[nodiscard]] std::vector<int> support() const;
    [[nodiscard]] std::uint64_t support_mask() const;
    [[nodiscard]] bool is_identity() const;

    /// Bits set where the label flips the basis state (X or Y).
    [[nodiscard]] std::uint64_t flip_mask() const;
    /// Bits set where the label contributes a sign (Y or Z).
    [[nodiscard]] std::uint64_t phase_mask() const;
    [[nodiscard]] int y_count() const;

    auto operator<=>(const PauliString &) const = default;

  private:
    std::vector<Pauli> labels_;
};

struct PauliTerm {
    double coefficient = 0.0; ///< Hartree
    PauliString string;
};

/**
 * @brief Weighted sum of Pauli strings on a fixed register.
 *
 * Terms with identical strings are merged on construction by summing their
 * coefficients; the merged term keeps the position of its first occurrence.
 */
class Hamiltonian {
  public:
    Hamiltonian(int n_qubits, std::vector<PauliTerm> terms);

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    /// Coefficient of the all-identity string, 0 if absent.
    [[nodiscard]] double identity_coefficient() const;

    /// Sum of |coefficient| over non-identity terms.
    [[nodiscard]] double non_identity_weight() const;

    [[nodiscard]] Hamiltonian operator+(const Hamiltonian &other) const;

  private:
    int n_qubits_;
    std::vector<PauliTerm> terms_;
};

/// 15-term H2 Hamiltonian on four qubits (Bravyi-Kitaev, STO-3G, 0.725 A).
Hamiltonian h2_4qubit();

/// Five-term reduction of the same molecule onto two qubits.
Hamiltonian h2_2qubit();

/// Per-qubit measurement basis of a group.
enum class Basis : std::uint8_t { Z, X, Y };

struct MeasurementGroup {
    int group_id = 0;
    std::vector<Basis> basis;               ///< basis[k] for qubit k
    std::vector<std::size_t> member_terms;  ///< indices into Hamiltonian::terms()

    /// q_high_left text form, e.g. "ZXZX".
    [[nodiscard]] std::string basis_label() const;
};

struct Grouping {
    std::vector<MeasurementGroup> groups;
    double identity_constant = 0.0;
};

/**
 * First-fit greedy qubit-wise-commuting grouping in declaration order.
 * Qubits never constrained by a member term are measured in Z.
 */
Grouping group_terms(const Hamiltonian &h);

inline constexpr int kDefaultDenseQubitCap = 10;

template <typename Scalar>
using DenseMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/**
 * @brief Dense 2^n x 2^n matrix of a Hamiltonian.
 *
 * Each Pauli string P maps |i> to phase(i) |i ^ flip_mask>, with
 * phase(i) = i^{#Y} (-1)^{popcount(i & phase_mask)}.
 */
template <typename Scalar = double>
DenseMatrix<Scalar> to_dense(const Hamiltonian &h,
                             int qubit_cap = kDefaultDenseQubitCap) {
    if (h.n_qubits() > qubit_cap) {
        throw SizeError("to_dense: " + std::to_string(h.n_qubits()) +
                        " qubits exceeds cap of " + std::to_string(qubit_cap));
    }
    const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
    DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Zero(dim, dim);
    static constexpr std::complex<Scalar> kIPowers[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto &term : h.terms()) {
        const auto flip = term.string.flip_mask();
        const auto phase = term.string.phase_mask();
        const auto ipow = kIPowers[term.string.y_count() % 4];
        const auto coeff = static_cast<Scalar>(term.coefficient);
        for (Eigen::Index col = 0; col < dim; ++col) {
            const auto i = static_cast<std::uint64_t>(col);
            const Scalar sign =
                (std::popcount(i & phase) % 2 == 0) ? Scalar{1} : Scalar{-1};
            m(static_cast<Eigen::Index>(i ^ flip), col) += coeff * sign * ipow;
        }
    }
    return m;
}

} // namespace h2vqe
