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
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "h2vqe/error.hpp"
#include "h2vqe/optim.hpp"

namespace h2vqe {

namespace {

void write_number(std::ostream &os, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, res.ptr - buf);
}

} // namespace

std::string_view to_string(Method m) {
    switch (m) {
    case Method::SPSA:
        return "spsa";
    case Method::COBYLA:
        return "cobyla";
    case Method::NelderMead:
        return "nelder-mead";
    case Method::Powell:
        return "powell";
    }
    return "?";
}

Method parse_method(std::string_view s) {
    if (s == "spsa") {
        return Method::SPSA;
    }
    if (s == "cobyla") {
        return Method::COBYLA;
    }
    if (s == "nelder-mead" || s == "neldermead" || s == "nm") {
        return Method::NelderMead;
    }
    if (s == "powell") {
        return Method::Powell;
    }
    throw ValidationError("unknown optimizer '" + std::string(s) +
                          "' (expected spsa, cobyla, nelder-mead or powell)");
}

void OptimizerConfig::validate() const {
    if (max_iterations < 1) {
        throw ValidationError("optimizer: max_iterations must be >= 1");
    }
    if (!(tolerance > 0.0)) {
        throw ValidationError("optimizer: tolerance must be > 0");
    }
    if (method == Method::SPSA) {
        if (!(spsa.c > 0.0) || !(spsa.a > 0.0)) {
            throw ValidationError("optimizer: SPSA gains a and c must be > 0");
        }
        if (spsa.calibrate && spsa.calibration_steps < 1) {
            throw ValidationError("optimizer: SPSA calibration_steps must be >= 1");
        }
    }
    if (method == Method::COBYLA && !(cobyla.rhobeg > 0.0)) {
        throw ValidationError("optimizer: COBYLA rhobeg must be > 0");
    }
    if (method == Method::NelderMead && !(nelder_mead.x_tolerance >= 0.0)) {
        throw ValidationError("optimizer: Nelder-Mead x_tolerance must be >= 0");
    }
    if (method == Method::Powell && !(powell.line_tolerance > 0.0)) {
        throw ValidationError("optimizer: Powell line_tolerance must be > 0");
    }
}

void Trace::record(const Eigen::VectorXd &params, double value) {
    entries_.push_back({entries_.size() + 1, params, value});
    if (std::isfinite(value) && (best_params_.size() == 0 || value < best_value_)) {
        best_value_ = value;
        best_params_ = params;
        best_index_ = entries_.size();
    }
}

std::vector<double> Trace::best_so_far() const {
    std::vector<double> out;
    out.reserve(entries_.size());
    double best = std::numeric_limits<double>::infinity();
    for (const auto &e : entries_) {
        if (std::isfinite(e.value)) {
            best = std::min(best, e.value);
        }
        out.push_back(best);
    }
    return out;
}

void Trace::write_csv(std::ostream &os) const {
    const Eigen::Index dim = entries_.empty() ? 0 : entries_.front().params.size();
    os << "eval_index,energy_ha";
    for (Eigen::Index i = 0; i < dim; ++i) {
        os << ",theta_" << i;
    }
    os << '\n';
    for (const auto &e : entries_) {
        os << e.eval_index << ',';
        write_number(os, e.value);
        for (Eigen::Index i = 0; i < e.params.size(); ++i) {
            os << ',';
            write_number(os, e.params(i));
        }
        os << '\n';
    }
}

OptimizeResult minimize(const Objective &f, const Eigen::VectorXd &x0,
                        const OptimizerConfig &cfg) {
    switch (cfg.method) {
    case Method::SPSA:
        return spsa_minimize(f, x0, cfg);
    case Method::COBYLA:
        return cobyla_minimize(f, x0, cfg);
    case Method::NelderMead:
        return nelder_mead_minimize(f, x0, cfg);
    case Method::Powell:
        return powell_minimize(f, x0, cfg);
    }
    throw ValidationError("optimizer: unknown method");
}

} // namespace h2vqe
