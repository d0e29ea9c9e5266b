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
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "h2vqe/fixtures.hpp"
#include "h2vqe/linalg.hpp"
#include "h2vqe/pauli.hpp"

using namespace h2vqe;

namespace {

// Independent oracle: Eigen's Householder tridiagonalization + QR solver.
Eigen::VectorXd oracle_eigenvalues(const Eigen::MatrixXcd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64 &gen, bool real) {
    std::normal_distribution<double> d;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = {d(gen), real ? 0.0 : d(gen)};
        }
    }
    return (a + a.adjoint()) / 2.0;
}

// Closed-form eigenvalues of [[a, c], [c, b]].
std::pair<double, double> block2(double a, double b, double c) {
    const double mean = 0.5 * (a + b);
    const double r = std::sqrt(0.25 * (a - b) * (a - b) + c * c);
    return {mean - r, mean + r};
}

} // namespace

TEST(PauliString, LabelRoundTripUsesHighQubitLeft) {
    const auto p = PauliString::from_label("ZIXY");
    EXPECT_EQ(p.n_qubits(), 4);
    EXPECT_EQ(p[0], Pauli::Y);
    EXPECT_EQ(p[1], Pauli::X);
    EXPECT_EQ(p[2], Pauli::I);
    EXPECT_EQ(p[3], Pauli::Z);
    EXPECT_EQ(p.label(), "ZIXY");
    EXPECT_EQ(p.support(), (std::vector<int>{0, 1, 3}));
    EXPECT_EQ(p.support_mask(), 0b1011U);
    EXPECT_EQ(p.flip_mask(), 0b0011U);
    EXPECT_EQ(p.phase_mask(), 0b1001U);
}

TEST(PauliString, RejectsBadLabels) {
    EXPECT_THROW(PauliString::from_label("ZQ"), ValidationError);
    EXPECT_THROW(PauliString::from_ops(2, {{2, Pauli::X}}), ValidationError);
}

TEST(Hamiltonian, FourQubitShape) {
    const auto h = h2_4qubit();
    EXPECT_EQ(h.size(), 15U);
    EXPECT_EQ(h.n_qubits(), 4);
    EXPECT_DOUBLE_EQ(h.identity_coefficient(), -0.80718);
}

TEST(Hamiltonian, TwoQubitShape) {
    const auto h = h2_2qubit();
    EXPECT_EQ(h.size(), 5U);
    EXPECT_EQ(h.n_qubits(), 2);
    EXPECT_DOUBLE_EQ(h.identity_coefficient(), -1.05016);
}

TEST(Hamiltonian, MergesDuplicateStrings) {
    const Hamiltonian h(2, {{0.5, PauliString::from_label("ZI")},
                            {0.25, PauliString::from_label("XX")},
                            {0.125, PauliString::from_label("ZI")}});
    ASSERT_EQ(h.size(), 2U);
    EXPECT_EQ(h.terms()[0].string.label(), "ZI");
    EXPECT_DOUBLE_EQ(h.terms()[0].coefficient, 0.625);
}

TEST(Hamiltonian, RejectsMismatchedRegisterAndNonFinite) {
    EXPECT_THROW(Hamiltonian(2, {{1.0, PauliString::from_label("ZZZ")}}), ValidationError);
    EXPECT_THROW(Hamiltonian(1, {{std::nan(""), PauliString::from_label("Z")}}), ValidationError);
}

TEST(ToDense, SinglePaulis) {
    const auto z = to_dense(Hamiltonian(1, {{1.0, PauliString::from_label("Z")}}));
    EXPECT_EQ(z(0, 0), std::complex<double>(1, 0));
    EXPECT_EQ(z(1, 1), std::complex<double>(-1, 0));
    EXPECT_EQ(z(0, 1), std::complex<double>(0, 0));
    const auto x = to_dense(Hamiltonian(1, {{1.0, PauliString::from_label("X")}}));
    EXPECT_EQ(x(0, 1), std::complex<double>(1, 0));
    EXPECT_EQ(x(1, 0), std::complex<double>(1, 0));
    EXPECT_EQ(x(0, 0), std::complex<double>(0, 0));
    const auto y = to_dense(Hamiltonian(1, {{1.0, PauliString::from_label("Y")}}));
    EXPECT_EQ(y(0, 1), std::complex<double>(0, -1));
    EXPECT_EQ(y(1, 0), std::complex<double>(0, 1));
}

TEST(ToDense, KroneckerOrderPutsQubitZeroInLowBit) {
    // Z on qubit 0 only: sign follows bit 0 of the basis index.
    const auto m = to_dense(Hamiltonian(2, {{1.0, PauliString::from_label("IZ")}}));
    EXPECT_EQ(m(1, 1).real(), -1.0);
    EXPECT_EQ(m(2, 2).real(), 1.0);
}

TEST(ToDense, TwoQubitDiagonal) {
    const auto m = to_dense(h2_2qubit());
    const double expected[] = {-0.23039, -1.06151, -1.06151, -1.84723};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(m(i, i).real(), expected[i], 1e-9);
    }
    EXPECT_LT(m.imag().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ToDense, SumOfCoefficientsIsAllZerosDiagonal) {
    const auto h = h2_4qubit();
    double sum = 0;
    for (const auto &t : h.terms()) {
        sum += t.coefficient;
    }
    EXPECT_NEAR(to_dense(h)(0, 0).real(), sum, 1e-12);
}

TEST(ToDense, HermitianLinearAndTraceIsIdentityWeight) {
    const auto a = h2_4qubit();
    const Hamiltonian b(4, {{0.3, PauliString::from_label("YXZI")}, {-0.7, PauliString::from_label("IIYY")}});
    const auto ma = to_dense(a);
    const auto mb = to_dense(b);
    EXPECT_LT((ma - ma.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((mb - mb.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((to_dense(a + b) - (ma + mb)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(ma.trace().real(), 16 * a.identity_coefficient(), 1e-12);
}

TEST(ToDense, SizeCap) {
    std::vector<PauliTerm> terms{{1.0, PauliString::identity(11)}};
    const Hamiltonian big(11, terms);
    EXPECT_THROW(to_dense(big), SizeError);
    EXPECT_NO_THROW(to_dense(big, 11));
}

TEST(Eigenvalues, Diagonal) {
    Eigen::Matrix2d m;
    m << 1, 0, 0, -1;
    const auto ev = eigenvalues(m);
    EXPECT_DOUBLE_EQ(ev(0), -1);
    EXPECT_DOUBLE_EQ(ev(1), 1);
}

TEST(Eigenvalues, RejectsNonSquareAndNonHermitian) {
    EXPECT_THROW(eigenvalues(Eigen::MatrixXd(2, 3)), ValidationError);
    Eigen::Matrix2d m;
    m << 1, 2, 0, 1;
    EXPECT_THROW(eigenvalues(m), ValidationError);
}

TEST(Eigenvalues, MatchesOracleOnRandomHermitian) {
    std::mt19937_64 gen(12345);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 12;
        const bool real = trial % 2 == 0;
        const auto m = random_hermitian(n, gen, real);
        const Eigen::VectorXd ours = eigenvalues(m);
        const Eigen::VectorXd ref = oracle_eigenvalues(m);
        ASSERT_EQ(ours.size(), n);
        EXPECT_LT((ours - ref).cwiseAbs().maxCoeff(), 1e-10) << "n=" << n << " real=" << real;
    }
}

TEST(Eigenvalues, DegenerateSpectrum) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(5, 5) * 2.0;
    m(0, 0) = -1;
    const auto ev = eigenvalues(m);
    EXPECT_DOUBLE_EQ(ev(0), -1);
    for (int i = 1; i < 5; ++i) {
        EXPECT_NEAR(ev(i), 2.0, 1e-14);
    }
}

TEST(Eigenvalues, FourQubitMatchesOracleAndPublishedList) {
    const auto m = to_dense(h2_4qubit());
    const Eigen::VectorXd ev = eigenvalues(m);
    EXPECT_LT((ev - oracle_eigenvalues(m)).cwiseAbs().maxCoeff(), 1e-10);
    const auto published = fixtures::published_spectrum();
    for (int i = 0; i < 16; ++i) {
        EXPECT_NEAR(ev(i), published[static_cast<std::size_t>(i)], 5e-3) << "index " << i;
    }
}

TEST(Eigenvalues, TwoQubitBlockClosedForm) {
    const double c0 = -1.05016;
    const double c1 = 0.40421;
    const double c2 = 0.01135;
    const double c3 = 0.18038;
    // {|00>, |11>} block and {|01>, |10>} block of c0 + c1 Z0 + c1 Z1 + c2 Z1Z0 + c3 X1X0.
    const auto [a_lo, a_hi] = block2(c0 + 2 * c1 + c2, c0 - 2 * c1 + c2, c3);
    const auto [b_lo, b_hi] = block2(c0 - c2, c0 - c2, c3);
    std::vector<double> expected{a_lo, a_hi, b_lo, b_hi};
    std::sort(expected.begin(), expected.end());

    const Eigen::VectorXd ev = eigenvalues(to_dense(h2_2qubit()));
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(ev(i), expected[static_cast<std::size_t>(i)], 1e-12);
    }
    EXPECT_NEAR(ev(0), -1.8671, 1e-3);
    EXPECT_NEAR(b_lo, -1.2419, 1e-3);
    EXPECT_NEAR(b_hi, -0.8811, 1e-3);
}

TEST(Grouping, FourQubitHasTwoGroups) {
    const auto h = h2_4qubit();
    const auto g = group_terms(h);
    ASSERT_EQ(g.groups.size(), 2U);
    EXPECT_DOUBLE_EQ(g.identity_constant, -0.80718);
    EXPECT_EQ(g.groups[0].basis_label(), "ZZZZ");
    EXPECT_EQ(g.groups[1].basis_label(), "ZXZX");
    EXPECT_EQ(g.groups[0].member_terms.size(), 10U);
    EXPECT_EQ(g.groups[1].member_terms.size(), 4U);
    for (auto t : g.groups[1].member_terms) {
        const auto &s = h.terms()[t].string;
        EXPECT_EQ(s[0], Pauli::X);
        EXPECT_EQ(s[2], Pauli::X);
    }
}

TEST(Grouping, MembersAgreeWithBasisAndCoverAllTerms) {
    for (const auto &h : {h2_4qubit(), h2_2qubit()}) {
        const auto g = group_terms(h);
        std::vector<int> seen(h.size(), 0);
        for (const auto &grp : g.groups) {
            for (auto t : grp.member_terms) {
                ++seen[t];
                const auto &s = h.terms()[t].string;
                for (int q = 0; q < h.n_qubits(); ++q) {
                    if (s[q] == Pauli::I) {
                        continue;
                    }
                    const Basis b = s[q] == Pauli::X ? Basis::X : s[q] == Pauli::Y ? Basis::Y : Basis::Z;
                    EXPECT_EQ(grp.basis[static_cast<std::size_t>(q)], b);
                }
            }
        }
        for (std::size_t t = 0; t < h.size(); ++t) {
            EXPECT_EQ(seen[t], h.terms()[t].string.is_identity() ? 0 : 1);
        }
    }
}

TEST(Grouping, TwoQubitGroups) {
    const auto h = h2_2qubit();
    const auto g = group_terms(h);
    ASSERT_EQ(g.groups.size(), 2U);
    ASSERT_EQ(g.groups[1].member_terms.size(), 1U);
    EXPECT_EQ(h.terms()[g.groups[1].member_terms[0]].string.label(), "XX");
}

TEST(Grouping, DiagonalHamiltonianIsOneGroup) {
    const Hamiltonian h(3, {{1.0, PauliString::from_label("ZIZ")},
                            {2.0, PauliString::from_label("IZI")},
                            {0.5, PauliString::from_label("III")}});
    EXPECT_EQ(group_terms(h).groups.size(), 1U);
}
