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

#include "h2vqe/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace h2vqe {

char to_char(Pauli p) {
    switch (p) {
    case Pauli::I:
        return 'I';
    case Pauli::X:
        return 'X';
    case Pauli::Y:
        return 'Y';
    case Pauli::Z:
        return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I':
        return Pauli::I;
    case 'X':
        return Pauli::X;
    case 'Y':
        return Pauli::Y;
    case 'Z':
        return Pauli::Z;
    default:
        throw ValidationError(std::string("invalid Pauli label '") + c + "'");
    }
}

PauliString::PauliString(std::vector<Pauli> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw ValidationError("PauliString: need at least one qubit");
    }
    if (labels_.size() > 63) {
        throw SizeError("PauliString: more than 63 qubits");
    }
}

PauliString PauliString::identity(int n_qubits) {
    if (n_qubits < 1) {
        throw ValidationError("PauliString: n_qubits must be positive");
    }
    return PauliString(std::vector<Pauli>(static_cast<std::size_t>(n_qubits), Pauli::I));
}

PauliString PauliString::from_label(std::string_view label) {
    std::vector<Pauli> labels(label.size());
    for (std::size_t i = 0; i < label.size(); ++i) {
        labels[label.size() - 1 - i] = pauli_from_char(label[i]);
    }
    return PauliString(std::move(labels));
}

PauliString PauliString::from_ops(int n_qubits,
                                  std::initializer_list<std::pair<int, Pauli>> ops) {
    auto s = identity(n_qubits);
    for (const auto &[qubit, op] : ops) {
        if (qubit < 0 || qubit >= n_qubits) {
            throw ValidationError("PauliString: qubit " + std::to_string(qubit) +
                                  " out of range");
        }
        s.labels_[static_cast<std::size_t>(qubit)] = op;
    }
    return s;
}

std::string PauliString::label() const {
    std::string out(labels_.size(), 'I');
    for (std::size_t q = 0; q < labels_.size(); ++q) {
        out[labels_.size() - 1 - q] = to_char(labels_[q]);
    }
    return out;
}

std::vector<int> PauliString::support() const {
    std::vector<int> out;
    for (std::size_t q = 0; q < labels_.size(); ++q) {
        if (labels_[q] != Pauli::I) {
            out.push_back(static_cast<int>(q));
        }
    }
    return out;
}

std::uint64_t PauliString::support_mask() const {
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < labels_.size(); ++q) {
        if (labels_[q] != Pauli::I) {
            mask |= std::uint64_t{1} << q;
        }
    }
    return mask;
}

bool PauliString::is_identity() const { return support_mask() == 0; }

std::uint64_t PauliString::flip_mask() const {
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < labels_.size(); ++q) {
        if (labels_[q] == Pauli::X || labels_[q] == Pauli::Y) {
            mask |= std::uint64_t{1} << q;
        }
    }
    return mask;
}

std::uint64_t PauliString::phase_mask() const {
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < labels_.size(); ++q) {
        if (labels_[q] == Pauli::Y || labels_[q] == Pauli::Z) {
            mask |= std::uint64_t{1} << q;
        }
    }
    return mask;
}

int PauliString::y_count() const {
    return static_cast<int>(std::count(labels_.begin(), labels_.end(), Pauli::Y));
}

Hamiltonian::Hamiltonian(int n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits) {
    if (n_qubits < 1) {
        throw ValidationError("Hamiltonian: n_qubits must be positive");
    }
    for (auto &term : terms) {
        if (term.string.n_qubits() != n_qubits) {
            throw ValidationError("Hamiltonian: term '" + term.string.label() +
                                  "' does not act on " + std::to_string(n_qubits) +
                                  " qubits");
        }
        if (!std::isfinite(term.coefficient)) {
            throw ValidationError("Hamiltonian: non-finite coefficient on '" +
                                  term.string.label() + "'");
        }
        auto same = std::find_if(terms_.begin(), terms_.end(), [&](const PauliTerm &t) {
            return t.string == term.string;
        });
        if (same != terms_.end()) {
            same->coefficient += term.coefficient;
        } else {
            terms_.push_back(std::move(term));
        }
    }
}

double Hamiltonian::identity_coefficient() const {
    double c = 0.0;
    for (const auto &t : terms_) {
        if (t.string.is_identity()) {
            c += t.coefficient;
        }
    }
    return c;
}

double Hamiltonian::non_identity_weight() const {
    double w = 0.0;
    for (const auto &t : terms_) {
        if (!t.string.is_identity()) {
            w += std::abs(t.coefficient);
        }
    }
    return w;
}

Hamiltonian Hamiltonian::operator+(const Hamiltonian &other) const {
    if (other.n_qubits_ != n_qubits_) {
        throw ValidationError("Hamiltonian: cannot add operators on different registers");
    }
    auto terms = terms_;
    terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
    return Hamiltonian(n_qubits_, std::move(terms));
}

Hamiltonian h2_4qubit() {
    constexpr double c0 = -0.80718;
    constexpr double c1 = 0.17374;
    constexpr double c2 = -0.23047;
    constexpr double c3 = 0.12149;
    constexpr double c4 = 0.16940;
    constexpr double c5 = -0.04509;
    constexpr double c6 = 0.04509;
    constexpr double c7 = 0.16658;
    constexpr double c8 = 0.17511;
    constexpr auto X = Pauli::X;
    constexpr auto Z = Pauli::Z;
    auto s = [](std::initializer_list<std::pair<int, Pauli>> ops) {
        return PauliString::from_ops(4, ops);
    };
    return Hamiltonian(4, {
        {c0, PauliString::identity(4)},
        {c1, s({{0, Z}})},
        {c2, s({{1, Z}, {0, Z}})},
        {c1, s({{2, Z}})},
        {c2, s({{3, Z}, {2, Z}, {1, Z}})},
        {c3, s({{1, Z}})},
        {c4, s({{2, Z}, {0, Z}})},
        {c5, s({{2, X}, {1, Z}, {0, X}})},
        {c6, s({{3, Z}, {2, X}, {0, X}})},
        {c6, s({{2, X}, {0, X}})},
        {c5, s({{3, Z}, {2, X}, {1, Z}, {0, X}})},
        {c7, s({{3, Z}, {2, Z}, {1, Z}, {0, Z}})},
        {c7, s({{2, Z}, {1, Z}, {0, Z}})},
        {c8, s({{3, Z}, {2, Z}, {0, Z}})},
        {c3, s({{3, Z}, {1, Z}})},
    });
}

Hamiltonian h2_2qubit() {
    constexpr double c0 = -1.05016;
    constexpr double c1 = 0.40421;
    constexpr double c2 = 0.01135;
    constexpr double c3 = 0.18038;
    constexpr auto X = Pauli::X;
    constexpr auto Z = Pauli::Z;
    auto s = [](std::initializer_list<std::pair<int, Pauli>> ops) {
        return PauliString::from_ops(2, ops);
    };
    return Hamiltonian(2, {
        {c0, PauliString::identity(2)},
        {c1, s({{0, Z}})},
        {c1, s({{1, Z}})},
        {c2, s({{1, Z}, {0, Z}})},
        {c3, s({{1, X}, {0, X}})},
    });
}

std::string MeasurementGroup::basis_label() const {
    std::string out(basis.size(), 'Z');
    for (std::size_t q = 0; q < basis.size(); ++q) {
        const char c = basis[q] == Basis::X ? 'X' : basis[q] == Basis::Y ? 'Y' : 'Z';
        out[basis.size() - 1 - q] = c;
    }
    return out;
}

Grouping group_terms(const Hamiltonian &h) {
    const auto n = static_cast<std::size_t>(h.n_qubits());
    struct Open {
        std::vector<std::optional<Basis>> basis;
        std::vector<std::size_t> members;
    };
    auto to_basis = [](Pauli p) {
        return p == Pauli::X ? Basis::X : p == Pauli::Y ? Basis::Y : Basis::Z;
    };

    Grouping result;
    std::vector<Open> open;
    for (std::size_t t = 0; t < h.terms().size(); ++t) {
        const auto &term = h.terms()[t];
        if (term.string.is_identity()) {
            result.identity_constant += term.coefficient;
            continue;
        }
        auto fits = [&](const Open &g) {
            for (std::size_t q = 0; q < n; ++q) {
                const Pauli p = term.string.labels()[q];
                if (p != Pauli::I && g.basis[q] && *g.basis[q] != to_basis(p)) {
                    return false;
                }
            }
            return true;
        };
        auto it = std::find_if(open.begin(), open.end(), fits);
        if (it == open.end()) {
            open.push_back({std::vector<std::optional<Basis>>(n), {}});
            it = std::prev(open.end());
        }
        for (std::size_t q = 0; q < n; ++q) {
            const Pauli p = term.string.labels()[q];
            if (p != Pauli::I) {
                it->basis[q] = to_basis(p);
            }
        }
        it->members.push_back(t);
    }

    for (std::size_t g = 0; g < open.size(); ++g) {
        MeasurementGroup group;
        group.group_id = static_cast<int>(g);
        group.basis.reserve(n);
        for (const auto &b : open[g].basis) {
            group.basis.push_back(b.value_or(Basis::Z));
        }
        group.member_terms = std::move(open[g].members);
        result.groups.push_back(std::move(group));
    }
    return result;
}

} // namespace h2vqe
