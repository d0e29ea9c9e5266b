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

#include <algorithm>
#include <numeric>

#include "traced_objective.hpp"

namespace h2vqe {

namespace detail {

void shrink_simplex(std::vector<Eigen::VectorXd> &simplex, std::size_t best, double sigma) {
    const Eigen::VectorXd anchor = simplex.at(best);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (i != best) {
            simplex[i] = anchor + sigma * (simplex[i] - anchor);
        }
    }
}

} // namespace detail

OptimizeResult nelder_mead_minimize(const Objective &f, const Eigen::VectorXd &x0,
                                    const OptimizerConfig &cfg) {
    cfg.validate();
    const auto &o = cfg.nelder_mead;
    return detail::drive(f, x0, cfg.max_evaluations, [&](auto &objective, OptimizeResult &res) {
        const auto n = static_cast<std::size_t>(x0.size());
        std::vector<Eigen::VectorXd> simplex(n + 1, x0);
        for (std::size_t i = 0; i < n; ++i) {
            auto &coord = simplex[i + 1](static_cast<Eigen::Index>(i));
            if (!o.relative_step) {
                coord += o.initial_step;
            } else if (coord != 0.0) {
                coord *= 1.0 + o.initial_step;
            } else {
                coord = o.zero_step;
            }
        }
        std::vector<double> values(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            values[i] = objective(simplex[i]);
        }

        auto small_simplex = [&] {
            double diameter = 0;
            for (std::size_t i = 1; i <= n; ++i) {
                diameter = std::max(diameter, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
            }
            return values[n] - values[0] < cfg.tolerance && diameter <= o.x_tolerance;
        };

        std::vector<std::size_t> order(n + 1);
        auto sort_simplex = [&] {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
            std::vector<Eigen::VectorXd> s(n + 1);
            std::vector<double> v(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                s[i] = simplex[order[i]];
                v[i] = values[order[i]];
            }
            simplex = std::move(s);
            values = std::move(v);
        };

        for (int it = 0; it < cfg.max_iterations; ++it) {
            sort_simplex();
            if (small_simplex()) {
                res.converged = true;
                break;
            }
            Eigen::VectorXd centroid = Eigen::VectorXd::Zero(x0.size());
            for (std::size_t i = 0; i < n; ++i) {
                centroid += simplex[i];
            }
            centroid /= static_cast<double>(n);
            const Eigen::VectorXd &worst = simplex[n];

            const Eigen::VectorXd xr = centroid + o.reflection * (centroid - worst);
            const double fr = objective(xr);
            bool shrink = false;
            if (fr < values[0]) {
                const Eigen::VectorXd xe = centroid + o.expansion * (xr - centroid);
                const double fe = objective(xe);
                if (fe < fr) {
                    simplex[n] = xe;
                    values[n] = fe;
                } else {
                    simplex[n] = xr;
                    values[n] = fr;
                }
            } else if (fr < values[n - 1]) {
                simplex[n] = xr;
                values[n] = fr;
            } else if (fr < values[n]) {
                const Eigen::VectorXd xc = centroid + o.contraction * (xr - centroid);
                const double fc = objective(xc);
                if (fc <= fr) {
                    simplex[n] = xc;
                    values[n] = fc;
                } else {
                    shrink = true;
                }
            } else {
                const Eigen::VectorXd xcc = centroid + o.contraction * (worst - centroid);
                const double fcc = objective(xcc);
                if (fcc < values[n]) {
                    simplex[n] = xcc;
                    values[n] = fcc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                detail::shrink_simplex(simplex, 0, o.shrink);
                for (std::size_t i = 1; i <= n; ++i) {
                    values[i] = objective(simplex[i]);
                }
            }
            res.iterations = it + 1;
        }
        if (!res.converged) {
            sort_simplex();
            res.converged = small_simplex();
        }
    });
}

} // namespace h2vqe
