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
 * Derivative-free minimizers (SPSA, COBYLA, Nelder-Mead, Powell) behind one
 * interface, with a full trace of every objective evaluation.
 *
 * Budgets: OptimizerConfig::max_evaluations caps objective calls for every
 * method (0 = no cap). max_iterations is method specific:
 *   SPSA         gradient steps (2 evaluations each, after calibration)
 *   COBYLA       evaluations after the initial n+1 simplex points
 *   Nelder-Mead  simplex iterations
 *   Powell       direction-set cycles
 *
 * Tolerance: COBYLA final trust radius (rhoend), Nelder-Mead simplex value
 * spread (alongside NelderMeadOptions::x_tolerance), Powell per-cycle
 * improvement. SPSA ignores it.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace h2vqe {

using Objective = std::function<double(const Eigen::VectorXd &)>;

enum class Method { SPSA, COBYLA, NelderMead, Powell };

std::string_view to_string(Method m);
Method parse_method(std::string_view s); // spsa | cobyla | nelder-mead | powell

struct SpsaOptions {
    double a = 2.0;
    double c = 0.1;
    double A = 10.0;
    double alpha = 0.602;
    double gamma = 0.101;
    /// Spend calibration_steps paired evaluations at x0 choosing a so that the
    /// first update has magnitude target_magnitude.
    bool calibrate = false;
    int calibration_steps = 25;
    double target_magnitude = 2.0 * std::numbers::pi / 10.0;
};

struct CobylaOptions {
    double rhobeg = 1.0;
};

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    /// Initial simplex offset along each axis: initial_step * |x0_i| when
    /// relative_step (zero_step for zero coordinates), else initial_step.
    double initial_step = 0.05;
    bool relative_step = true;
    double zero_step = 0.00025;
    /// Convergence also needs every vertex within this distance (max norm)
    /// of the best one, so a symmetric simplex with equal values keeps going.
    double x_tolerance = 1e-4;
};

struct PowellOptions {
    double line_tolerance = 1e-4; ///< relative bracket width of each 1-D search
    double initial_step = 1.0;    ///< first bracketing step
    int max_bracket_expansions = 50;
};

struct OptimizerConfig {
    Method method = Method::SPSA;
    int max_iterations = 150;
    std::size_t max_evaluations = 0;
    double tolerance = 1e-4;
    std::uint64_t seed = 0; ///< SPSA perturbation stream
    SpsaOptions spsa;
    CobylaOptions cobyla;
    NelderMeadOptions nelder_mead;
    PowellOptions powell;

    void validate() const;
};

struct TraceEntry {
    std::size_t eval_index = 0; ///< 1-based, strictly increasing
    Eigen::VectorXd params;
    double value = 0.0;
};

/// Every objective evaluation in call order, plus the best-so-far point.
class Trace {
  public:
    void record(const Eigen::VectorXd &params, double value);

    [[nodiscard]] const std::vector<TraceEntry> &entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] double best_value() const { return best_value_; }
    [[nodiscard]] const Eigen::VectorXd &best_params() const { return best_params_; }
    [[nodiscard]] std::size_t best_index() const { return best_index_; }

    /// Running minimum of the recorded values.
    [[nodiscard]] std::vector<double> best_so_far() const;

    /// CSV: eval_index,energy_ha,theta_0,...
    void write_csv(std::ostream &os) const;

  private:
    std::vector<TraceEntry> entries_;
    double best_value_ = 0.0;
    Eigen::VectorXd best_params_;
    std::size_t best_index_ = 0;
};

struct OptimizeResult {
    Eigen::VectorXd x_best;
    double f_best = 0.0;
    Trace trace;
    int iterations = 0;     ///< method-specific iteration count completed
    bool converged = false; ///< tolerance criterion met (never for SPSA)
    bool aborted = false;   ///< stopped on a non-finite objective value
    std::vector<std::string> diagnostics;
};

OptimizeResult spsa_minimize(const Objective &f, const Eigen::VectorXd &x0,
                             const OptimizerConfig &cfg);
OptimizeResult cobyla_minimize(const Objective &f, const Eigen::VectorXd &x0,
                               const OptimizerConfig &cfg);
OptimizeResult nelder_mead_minimize(const Objective &f, const Eigen::VectorXd &x0,
                                    const OptimizerConfig &cfg);
OptimizeResult powell_minimize(const Objective &f, const Eigen::VectorXd &x0,
                               const OptimizerConfig &cfg);

/// Dispatches on cfg.method.
OptimizeResult minimize(const Objective &f, const Eigen::VectorXd &x0,
                        const OptimizerConfig &cfg);

struct SpsaGains {
    double a_k;
    double c_k;
};

/// a_k = a / (A + k + 1)^alpha, c_k = c / (k + 1)^gamma.
SpsaGains spsa_gains(const SpsaOptions &opts, int k);

namespace detail {

/// Moves every vertex except simplex[best] halfway (factor sigma) to it.
void shrink_simplex(std::vector<Eigen::VectorXd> &simplex, std::size_t best, double sigma);

} // namespace detail

} // namespace h2vqe
