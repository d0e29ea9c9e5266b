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
 * Similarity of measured probability vectors and energy-band classification.
 *
 * Both measures take non-negative vectors of equal length:
 *   jt_index(u, v) = sum_i min(u_i, v_i) / sum_i max(u_i, v_i)
 *   sqrt_dot(u, v) = sum_i sqrt(u_i) sqrt(v_i)
 * For probability vectors both lie in [0, 1] and equal 1 iff u == v.
 */

#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "h2vqe/error.hpp"

namespace h2vqe {

namespace detail {

template <typename DerivedU, typename DerivedV>
void check_pair(const Eigen::MatrixBase<DerivedU> &u, const Eigen::MatrixBase<DerivedV> &v) {
    if (u.size() != v.size()) {
        throw ValidationError("similarity: vectors have different lengths (" +
                              std::to_string(u.size()) + " vs " + std::to_string(v.size()) + ")");
    }
    if ((u.array() < 0).any() || (v.array() < 0).any()) {
        throw ValidationError("similarity: negative component");
    }
}

} // namespace detail

/// Weighted Jaccard-Tanimoto index. Throws if both vectors are all zero.
template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar jt_index(const Eigen::MatrixBase<DerivedU> &u,
                                   const Eigen::MatrixBase<DerivedV> &v) {
    detail::check_pair(u, v);
    const auto union_mass = u.cwiseMax(v).sum();
    if (!(union_mass > 0)) {
        throw ValidationError("jt_index: undefined for two all-zero vectors");
    }
    return u.cwiseMin(v).sum() / union_mass;
}

/// Inner product of the element-wise square roots.
template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar sqrt_dot(const Eigen::MatrixBase<DerivedU> &u,
                                   const Eigen::MatrixBase<DerivedV> &v) {
    detail::check_pair(u, v);
    return u.cwiseSqrt().dot(v.cwiseSqrt());
}

enum class Measure { JaccardTanimoto, SqrtDot };

std::string_view to_string(Measure m);
Measure parse_measure(std::string_view s); // "jt" | "sqrtdot"

double similarity(const Eigen::VectorXd &u, const Eigen::VectorXd &v, Measure m);

/// For each vector, the mean similarity to every vector of the batch,
/// itself included.
std::vector<double> batch_average_similarity(const std::vector<Eigen::VectorXd> &batch,
                                             Measure m);

enum class EnergyBand { GroundBasin, ExcitedBand, Erroneous };

std::string_view to_string(EnergyBand b);

/// Closed intervals in Hartree.
struct BandBoundaries {
    double ground_lo = -1.90;
    double ground_hi = -1.70;
    double excited_lo = -1.30;
    double excited_hi = -1.20;

    void validate() const;
};

EnergyBand classify_energy(double energy, const BandBoundaries &bands = {});

} // namespace h2vqe
