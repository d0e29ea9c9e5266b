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
#include <sstream>

#include "h2vqe/rng.hpp"
#include "traced_objective.hpp"

namespace h2vqe {

SpsaGains spsa_gains(const SpsaOptions &opts, int k) {
    return {opts.a / std::pow(opts.A + k + 1.0, opts.alpha),
            opts.c / std::pow(k + 1.0, opts.gamma)};
}

OptimizeResult spsa_minimize(const Objective &f, const Eigen::VectorXd &x0,
                             const OptimizerConfig &cfg) {
    cfg.validate();
    return detail::drive(f, x0, cfg.max_evaluations, [&](auto &objective, OptimizeResult &res) {
        Rng rng(cfg.seed);
        const Eigen::Index n = x0.size();
        auto perturbation = [&] {
            Eigen::VectorXd delta(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                delta(i) = rng.sign();
            }
            return delta;
        };

        SpsaOptions gains = cfg.spsa;
        Eigen::VectorXd x = x0;

        if (gains.calibrate) {
            double magnitude = 0.0;
            for (int s = 0; s < gains.calibration_steps; ++s) {
                const Eigen::VectorXd delta = perturbation();
                const double plus = objective(x + gains.c * delta);
                const double minus = objective(x - gains.c * delta);
                magnitude += std::abs(plus - minus) / (2.0 * gains.c);
            }
            magnitude /= gains.calibration_steps;
            std::ostringstream note;
            if (magnitude > 0.0) {
                gains.a = gains.target_magnitude * std::pow(gains.A + 1.0, gains.alpha) / magnitude;
                note << "calibrated a = " << gains.a;
            } else {
                note << "calibration saw a flat objective; keeping a = " << gains.a;
            }
            res.diagnostics.push_back(note.str());
        }

        for (int k = 0; k < cfg.max_iterations; ++k) {
            const auto [a_k, c_k] = spsa_gains(gains, k);
            const Eigen::VectorXd delta = perturbation();
            const double plus = objective(x + c_k * delta);
            const double minus = objective(x - c_k * delta);
            // delta_i = +-1, so 1 / delta_i == delta_i
            x -= a_k * ((plus - minus) / (2.0 * c_k)) * delta;
            res.iterations = k + 1;
        }
    });
}

} // namespace h2vqe
