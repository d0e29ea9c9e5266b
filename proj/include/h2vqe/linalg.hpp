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
 * Dense symmetric/Hermitian eigenvalues by cyclic Jacobi rotations.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "h2vqe/error.hpp"

namespace h2vqe {

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/**
 * @brief Eigenvalues of a real symmetric matrix, ascending.
 *
 * Cyclic-by-row Jacobi: every sweep annihilates each off-diagonal pair once.
 * Iterates until the off-diagonal Frobenius mass falls below machine
 * precision relative to the whole matrix, or @p max_sweeps is hit.
 */
template <typename Derived>
RealVector<typename Derived::Scalar>
jacobi_eigenvalues(const Eigen::MatrixBase<Derived> &symmetric,
                   int max_sweeps = 64) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (symmetric.rows() != symmetric.cols()) {
        throw ValidationError("jacobi_eigenvalues: matrix is not square");
    }
    Matrix a = symmetric;
    const Eigen::Index n = a.rows();
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar total = a.squaredNorm();

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        Scalar off = 0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off <= eps * eps * total) {
            break;
        }
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                if (apq == Scalar{0}) {
                    continue;
                }
                const Scalar theta = (a(q, q) - a(p, p)) / (2 * apq);
                const Scalar t =
                    (theta >= 0 ? Scalar{1} : Scalar{-1}) /
                    (std::abs(theta) + std::sqrt(theta * theta + Scalar{1}));
                const Scalar c = Scalar{1} / std::sqrt(t * t + Scalar{1});
                const Scalar s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar akp = a(k, p);
                    const Scalar akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar apk = a(p, k);
                    const Scalar aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = Scalar{0};
                a(q, p) = Scalar{0};
            }
        }
    }
    RealVector<Scalar> values = a.diagonal();
    std::sort(values.data(), values.data() + values.size());
    return values;
}

/**
 * @brief All eigenvalues of a Hermitian (or real symmetric) matrix, ascending.
 *
 * A complex Hermitian H = A + iB is diagonalized through its real symmetric
 * embedding [[A, -B], [B, A]], whose spectrum is that of H with every value
 * doubled. Real input (or complex input with zero imaginary part) skips the
 * embedding.
 *
 * @throws ValidationError if the input is not square or not Hermitian within
 * @p tolerance (scaled by the largest entry magnitude).
 */
template <typename Derived>
RealVector<typename Eigen::NumTraits<typename Derived::Scalar>::Real>
eigenvalues(const Eigen::MatrixBase<Derived> &m, double tolerance = 1e-10) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    if (m.rows() != m.cols()) {
        throw ValidationError("eigenvalues: matrix is not square");
    }
    if (m.size() == 0) {
        return RealVector<Real>{};
    }
    const Real scale = std::max<Real>(Real{1}, m.cwiseAbs().maxCoeff());
    const Real asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= static_cast<Real>(tolerance) * scale)) {
        throw ValidationError("eigenvalues: matrix is not Hermitian");
    }

    if constexpr (!Eigen::NumTraits<typename Derived::Scalar>::IsComplex) {
        return jacobi_eigenvalues(m);
    } else {
        const RealMatrix re = m.real();
        const RealMatrix im = m.imag();
        if (im.cwiseAbs().maxCoeff() == Real{0}) {
            return jacobi_eigenvalues(re);
        }
        const Eigen::Index n = m.rows();
        RealMatrix embedded(2 * n, 2 * n);
        embedded << re, -im, im, re;
        const RealVector<Real> doubled = jacobi_eigenvalues(embedded);
        RealVector<Real> values(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            values(i) = doubled(2 * i);
        }
        return values;
    }
}

} // namespace h2vqe
