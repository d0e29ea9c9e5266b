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

#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "h2vqe/error.hpp"
#include "h2vqe/optim.hpp"

namespace h2vqe::detail {

struct BudgetExhausted {};

struct NonFiniteValue {
    std::size_t eval_index;
};

/// Wraps an objective: records every call into a Trace and enforces the
/// evaluation budget (0 = unlimited).
class TracedObjective {
  public:
    TracedObjective(const Objective &f, std::size_t budget) : f_(f), budget_(budget) {}

    double operator()(const Eigen::VectorXd &x) {
        if (budget_ != 0 && trace_.size() >= budget_) {
            throw BudgetExhausted{};
        }
        const double value = f_(x);
        trace_.record(x, value);
        if (!std::isfinite(value)) {
            throw NonFiniteValue{trace_.size()};
        }
        return value;
    }

    [[nodiscard]] std::size_t evaluations() const { return trace_.size(); }
    [[nodiscard]] std::size_t budget() const { return budget_; }
    Trace &trace() { return trace_; }

  private:
    const Objective &f_;
    std::size_t budget_;
    Trace trace_;
};

/// Runs an optimizer body and converts budget exhaustion and non-finite
/// objective values into result state. x_best/f_best come from the trace.
template <typename Body>
OptimizeResult drive(const Objective &f, const Eigen::VectorXd &x0, std::size_t budget,
                     Body &&body) {
    if (x0.size() < 1) {
        throw ValidationError("optimizer: parameter vector must have dimension >= 1");
    }
    TracedObjective objective(f, budget);
    OptimizeResult result;
    try {
        std::forward<Body>(body)(objective, result);
    } catch (const BudgetExhausted &) {
        result.diagnostics.emplace_back("evaluation budget of " + std::to_string(budget) +
                                        " exhausted");
    } catch (const NonFiniteValue &e) {
        result.aborted = true;
        result.converged = false;
        result.diagnostics.emplace_back("non-finite objective value at evaluation " +
                                        std::to_string(e.eval_index) +
                                        "; returning best-so-far");
    }
    result.trace = std::move(objective.trace());
    if (result.trace.best_params().size() == x0.size()) {
        result.x_best = result.trace.best_params();
        result.f_best = result.trace.best_value();
    } else {
        result.x_best = x0;
        result.f_best = std::nan("");
    }
    return result;
}

} // namespace h2vqe::detail
