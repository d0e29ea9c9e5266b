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
#include <cmath>
#include <limits>

#include "traced_objective.hpp"

namespace h2vqe {

namespace {

constexpr double kAlpha = 0.25; // minimum acceptable vertex distance from opposite face, / rho
constexpr double kBeta = 2.1;   // maximum acceptable edge length, / rho
constexpr double kGamma = 0.5;  // geometry step length, / rho
constexpr double kDelta = 1.1;  // edge threshold when choosing the vertex to drop, / rho

// Linear-interpolation simplex held as a pivot plus n edge vectors.
struct Simplex {
    Eigen::VectorXd pivot;
    double f_pivot = 0.0;
    Eigen::MatrixXd edges; // column j: vertex j - pivot
    Eigen::VectorXd f;     // value at vertex j
    Eigen::MatrixXd inverse;

    // Coordinate simplex of size rho; the pivot moves to any better vertex as
    // soon as it is found.
    template <typename Fn>
    void build(Fn &objective, double rho) {
        const Eigen::Index n = pivot.size();
        edges = rho * Eigen::MatrixXd::Identity(n, n);
        f.resize(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const Eigen::VectorXd x = pivot + edges.col(j);
            const double fx = objective(x);
            if (fx < f_pivot) {
                const Eigen::VectorXd shift = edges.col(j);
                for (Eigen::Index k = 0; k < j; ++k) {
                    edges.col(k) -= shift;
                }
                edges.col(j) = -shift;
                f(j) = f_pivot;
                pivot = x;
                f_pivot = fx;
            } else {
                f(j) = fx;
            }
        }
    }

    void move_pivot_to_best() {
        Eigen::Index best = 0;
        if (f.minCoeff(&best) >= f_pivot) {
            return;
        }
        const Eigen::VectorXd shift = edges.col(best);
        for (Eigen::Index j = 0; j < edges.cols(); ++j) {
            if (j != best) {
                edges.col(j) -= shift;
            }
        }
        edges.col(best) = -shift;
        std::swap(f(best), f_pivot);
        pivot += shift;
    }

    bool invert(double rho) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);
        if (!lu.isInvertible()) {
            return false;
        }
        inverse = lu.inverse();
        const double tiny = 1e-12 * rho;
        for (Eigen::Index j = 0; j < inverse.rows(); ++j) {
            if (!(1.0 / inverse.row(j).norm() > tiny)) {
                return false;
            }
        }
        return true;
    }
};

} // namespace

OptimizeResult cobyla_minimize(const Objective &f, const Eigen::VectorXd &x0,
                               const OptimizerConfig &cfg) {
    cfg.validate();
    const auto n = static_cast<std::size_t>(x0.size());
    std::size_t budget = n + 1 + static_cast<std::size_t>(cfg.max_iterations);
    if (cfg.max_evaluations != 0) {
        budget = std::min(budget, cfg.max_evaluations);
    }
    auto result = detail::drive(f, x0, budget, [&](auto &objective, OptimizeResult &res) {
        const double rhoend = std::min(cfg.tolerance, cfg.cobyla.rhobeg);
        double rho = cfg.cobyla.rhobeg;

        Simplex s;
        s.pivot = x0;
        s.f_pivot = objective(x0);
        s.build(objective, rho);

        bool geometry_pending = false;
        while (true) {
            s.move_pivot_to_best();
            if (!s.invert(rho)) {
                res.diagnostics.emplace_back("degenerate simplex rebuilt");
                s.build(objective, rho);
                continue;
            }

            const Eigen::VectorXd gradient = s.inverse.transpose() * (s.f.array() - s.f_pivot).matrix();
            Eigen::VectorXd vsig(static_cast<Eigen::Index>(n));
            Eigen::VectorXd veta(static_cast<Eigen::Index>(n));
            for (Eigen::Index j = 0; j < vsig.size(); ++j) {
                vsig(j) = 1.0 / s.inverse.row(j).norm();
                veta(j) = s.edges.col(j).norm();
            }
            const bool acceptable =
                (vsig.array() >= kAlpha * rho).all() && (veta.array() <= kBeta * rho).all();

            if (geometry_pending && !acceptable) {
                Eigen::Index jdrop = -1;
                double longest = kBeta * rho;
                for (Eigen::Index j = 0; j < veta.size(); ++j) {
                    if (veta(j) > longest) {
                        longest = veta(j);
                        jdrop = j;
                    }
                }
                if (jdrop < 0) {
                    vsig.minCoeff(&jdrop);
                }
                Eigen::VectorXd step = (kGamma * rho * vsig(jdrop)) * s.inverse.row(jdrop).transpose();
                if (gradient.dot(step) > 0.0) {
                    step = -step;
                }
                const double value = objective(s.pivot + step);
                s.edges.col(jdrop) = step;
                s.f(jdrop) = value;
                geometry_pending = false;
                continue;
            }
            geometry_pending = false;

            bool reduce = true;
            const double gnorm = gradient.norm();
            if (gnorm > 0.0 && std::isfinite(gnorm)) {
                const Eigen::VectorXd step = (-rho / gnorm) * gradient;
                const double predicted = rho * gnorm;
                const double value = objective(s.pivot + step);
                const double actual = s.f_pivot - value;

                const Eigen::VectorXd sigma = s.inverse * step;
                Eigen::Index jdrop = -1;
                if (sigma.cwiseAbs().maxCoeff(&jdrop) <= 0.0) {
                    jdrop = -1;
                }
                double edge_max = kDelta * rho;
                for (Eigen::Index j = 0; j < sigma.size(); ++j) {
                    const double sigbar = std::abs(sigma(j)) * vsig(j);
                    if (sigbar >= kAlpha * rho || sigbar >= vsig(j)) {
                        const double dist =
                            actual > 0.0 ? (step - s.edges.col(j)).norm() : veta(j);
                        if (dist > edge_max) {
                            edge_max = dist;
                            jdrop = j;
                        }
                    }
                }
                if (jdrop >= 0) {
                    s.edges.col(jdrop) = step;
                    s.f(jdrop) = value;
                }
                reduce = !(actual > 0.0 && actual >= 0.1 * predicted);
            }
            if (!reduce) {
                continue;
            }
            if (!acceptable) {
                geometry_pending = true;
                continue;
            }
            if (rho <= rhoend) {
                res.converged = true;
                break;
            }
            rho *= 0.5;
            if (rho <= 1.5 * rhoend) {
                rho = rhoend;
            }
        }
    });
    result.iterations = static_cast<int>(result.trace.size() - std::min(result.trace.size(), n + 1));
    return result;
}

} // namespace h2vqe
