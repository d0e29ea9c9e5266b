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

#include "h2vqe/ansatz.hpp"

#include <cmath>

#include "h2vqe/error.hpp"

namespace h2vqe {

std::string to_string(const Gate &g) {
    switch (g.kind) {
    case GateKind::Ry:
        return "ry(" + std::to_string(g.angle) + ") q" + std::to_string(g.qubit);
    case GateKind::Rz:
        return "rz(" + std::to_string(g.angle) + ") q" + std::to_string(g.qubit);
    case GateKind::CX:
        return "cx q" + std::to_string(g.qubit) + ",q" + std::to_string(g.target);
    case GateKind::H:
        return "h q" + std::to_string(g.qubit);
    case GateKind::Sdg:
        return "sdg q" + std::to_string(g.qubit);
    case GateKind::X:
        return "x q" + std::to_string(g.qubit);
    case GateKind::Y:
        return "y q" + std::to_string(g.qubit);
    case GateKind::Z:
        return "z q" + std::to_string(g.qubit);
    }
    return "?";
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) {
        throw ValidationError("Circuit: n_qubits must be positive");
    }
}

void Circuit::append(const Gate &g) {
    auto in_range = [this](int q) { return q >= 0 && q < n_qubits_; };
    if (!in_range(g.qubit)) {
        throw ValidationError("Circuit: qubit " + std::to_string(g.qubit) +
                              " out of range for " + std::to_string(n_qubits_) +
                              " qubits");
    }
    if (g.is_two_qubit()) {
        if (!in_range(g.target)) {
            throw ValidationError("Circuit: target " + std::to_string(g.target) +
                                  " out of range");
        }
        if (g.target == g.qubit) {
            throw ValidationError("Circuit: CX control and target coincide");
        }
    }
    if (!std::isfinite(g.angle)) {
        throw ValidationError("Circuit: non-finite rotation angle");
    }
    gates_.push_back(g);
}

Circuit &Circuit::operator+=(const Circuit &other) {
    if (other.n_qubits_ != n_qubits_) {
        throw ValidationError("Circuit: cannot concatenate different registers");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

std::string_view to_string(Form f) { return f == Form::Ry ? "ry" : "ryrz"; }

std::string_view to_string(Entanglement e) {
    switch (e) {
    case Entanglement::Linear:
        return "linear";
    case Entanglement::Circular:
        return "circular";
    case Entanglement::Full:
        return "full";
    }
    return "?";
}

Form parse_form(std::string_view s) {
    if (s == "ry") {
        return Form::Ry;
    }
    if (s == "ryrz") {
        return Form::RyRz;
    }
    throw ValidationError("unknown variational form '" + std::string(s) +
                          "' (expected ry or ryrz)");
}

Entanglement parse_entanglement(std::string_view s) {
    if (s == "linear") {
        return Entanglement::Linear;
    }
    if (s == "circular") {
        return Entanglement::Circular;
    }
    if (s == "full") {
        return Entanglement::Full;
    }
    throw ValidationError("unknown entanglement '" + std::string(s) +
                          "' (expected linear, circular or full)");
}

void AnsatzSpec::validate() const {
    if (reps < 1) {
        throw ValidationError("ansatz: reps must be >= 1");
    }
    if (n_qubits < 2) {
        throw ValidationError("ansatz: an entangling layer needs at least 2 qubits");
    }
}

std::string AnsatzSpec::descriptor() const {
    return std::string(to_string(form)) + "/" + std::string(to_string(entanglement)) +
           "/reps=" + std::to_string(reps);
}

std::vector<std::pair<int, int>> entangler_pairs(Entanglement e, int n_qubits) {
    std::vector<std::pair<int, int>> pairs;
    switch (e) {
    case Entanglement::Linear:
    case Entanglement::Circular:
        for (int i = 0; i + 1 < n_qubits; ++i) {
            pairs.emplace_back(i, i + 1);
        }
        if (e == Entanglement::Circular) {
            pairs.emplace_back(n_qubits - 1, 0);
        }
        break;
    case Entanglement::Full:
        for (int i = 0; i < n_qubits; ++i) {
            for (int j = i + 1; j < n_qubits; ++j) {
                pairs.emplace_back(i, j);
            }
        }
        break;
    }
    return pairs;
}

std::size_t parameter_count(const AnsatzSpec &spec) {
    spec.validate();
    const std::size_t per_layer = spec.form == Form::Ry ? 1 : 2;
    return static_cast<std::size_t>(spec.n_qubits) *
           static_cast<std::size_t>(spec.reps + 1) * per_layer;
}

Circuit build_circuit(const AnsatzSpec &spec, std::span<const double> params) {
    const auto expected = parameter_count(spec);
    if (params.size() != expected) {
        throw ValidationError("build_circuit: expected " + std::to_string(expected) +
                              " parameters, got " + std::to_string(params.size()));
    }
    Circuit circuit(spec.n_qubits);
    std::size_t next = 0;
    auto rotation_layer = [&] {
        for (int q = 0; q < spec.n_qubits; ++q) {
            circuit.append(Gate::ry(q, params[next++]));
        }
        if (spec.form == Form::RyRz) {
            for (int q = 0; q < spec.n_qubits; ++q) {
                circuit.append(Gate::rz(q, params[next++]));
            }
        }
    };
    const auto pairs = entangler_pairs(spec.entanglement, spec.n_qubits);

    rotation_layer();
    for (int r = 0; r < spec.reps; ++r) {
        for (const auto &[control, target] : pairs) {
            circuit.append(Gate::cx(control, target));
        }
        rotation_layer();
    }
    return circuit;
}

} // namespace h2vqe
