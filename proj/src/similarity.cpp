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

#include "h2vqe/similarity.hpp"

namespace h2vqe {

std::string_view to_string(Measure m) {
    return m == Measure::JaccardTanimoto ? "jt" : "sqrtdot";
}

Measure parse_measure(std::string_view s) {
    if (s == "jt") {
        return Measure::JaccardTanimoto;
    }
    if (s == "sqrtdot") {
        return Measure::SqrtDot;
    }
    throw ValidationError("unknown similarity measure '" + std::string(s) +
                          "' (expected jt or sqrtdot)");
}

double similarity(const Eigen::VectorXd &u, const Eigen::VectorXd &v, Measure m) {
    return m == Measure::JaccardTanimoto ? jt_index(u, v) : sqrt_dot(u, v);
}

std::vector<double> batch_average_similarity(const std::vector<Eigen::VectorXd> &batch,
                                             Measure m) {
    if (batch.empty()) {
        throw ValidationError("batch_average_similarity: empty batch");
    }
    const std::size_t n = batch.size();
    Eigen::MatrixXd table(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        table(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
            similarity(batch[i], batch[i], m);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = similarity(batch[i], batch[j], m);
            table(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
            table(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = s;
        }
    }
    const Eigen::VectorXd means = table.rowwise().mean();
    return {means.data(), means.data() + means.size()};
}

std::string_view to_string(EnergyBand b) {
    switch (b) {
    case EnergyBand::GroundBasin:
        return "ground";
    case EnergyBand::ExcitedBand:
        return "excited";
    case EnergyBand::Erroneous:
        return "erroneous";
    }
    return "?";
}

void BandBoundaries::validate() const {
    if (!(ground_lo <= ground_hi) || !(excited_lo <= excited_hi)) {
        throw ValidationError("bands: lower bound exceeds upper bound");
    }
    if (!(ground_hi < excited_lo || excited_hi < ground_lo)) {
        throw ValidationError("bands: ground and excited bands overlap");
    }
}

EnergyBand classify_energy(double energy, const BandBoundaries &bands) {
    if (energy >= bands.ground_lo && energy <= bands.ground_hi) {
        return EnergyBand::GroundBasin;
    }
    if (energy >= bands.excited_lo && energy <= bands.excited_hi) {
        return EnergyBand::ExcitedBand;
    }
    return EnergyBand::Erroneous;
}

} // namespace h2vqe
