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
 * Gate lists and hardware-efficient variational circuits.
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace h2vqe {

enum class GateKind { Ry, Rz, CX, H, Sdg, X, Y, Z };

/// One gate. For CX, qubit is the control and target the target.
struct Gate {
    GateKind kind = GateKind::H;
    int qubit = 0;
    int target = -1;
    double angle = 0.0; ///< radians, Ry/Rz only

    static Gate ry(int q, double theta) { return {GateKind::Ry, q, -1, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::Rz, q, -1, theta}; }
    static Gate cx(int control, int target) { return {GateKind::CX, control, target, 0.0}; }
    static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static Gate sdg(int q) { return {GateKind::Sdg, q, -1, 0.0}; }

    [[nodiscard]] bool is_two_qubit() const { return kind == GateKind::CX; }
    bool operator==(const Gate &) const = default;
};

std::string to_string(const Gate &g);

/// Ordered gate sequence on a fixed register. Gates are validated on append.
class Circuit {
  public:
    explicit Circuit(int n_qubits);

    void append(const Gate &g);
    Circuit &operator+=(const Circuit &other);

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

  private:
    int n_qubits_;
    std::vector<Gate> gates_;
};

enum class Form { Ry, RyRz };
enum class Entanglement { Linear, Circular, Full };

struct AnsatzSpec {
    Form form = Form::Ry;
    Entanglement entanglement = Entanglement::Linear;
    int reps = 2;
    int n_qubits = 4;

    void validate() const;
    /// e.g. "ry/linear/reps=2".
    [[nodiscard]] std::string descriptor() const;
};

std::string_view to_string(Form f);
std::string_view to_string(Entanglement e);
Form parse_form(std::string_view s);                 // "ry" | "ryrz"
Entanglement parse_entanglement(std::string_view s); // "linear" | "circular" | "full"

/// CX (control, target) pairs of one entangling layer; control is the lower index
/// except for the wrap-around gate of the circular layer.
std::vector<std::pair<int, int>> entangler_pairs(Entanglement e, int n_qubits);

/// n_qubits * (reps + 1) * (1 for Ry, 2 for RyRz).
std::size_t parameter_count(const AnsatzSpec &spec);

/**
 * Initial rotation layer, then reps x [entangling layer, rotation layer].
 * A rotation layer consumes n angles for Ry on qubits 0..n-1 and, for RyRz,
 * n more for Rz on qubits 0..n-1.
 */
Circuit build_circuit(const AnsatzSpec &spec, std::span<const double> params);

} // namespace h2vqe
