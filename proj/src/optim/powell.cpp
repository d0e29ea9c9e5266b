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
#include <utility>

#include "traced_objective.hpp"

namespace h2vqe {

namespace {

constexpr double kGold = 1.618034;
constexpr double kGrowLimit = 100.0;
constexpr double kTiny = 1e-20;
constexpr double kCGold = 0.3819660;
constexpr double kZeps = 1e-12;
constexpr int kBrentIterations = 100;
constexpr int kScanPoints = 8;

double with_sign(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

struct LinePoint {
    double t;
    double value;
};

// Minimizes phi(t) = f(origin + t * dir), starting from phi(0) = f0.
// Returns false in `bracketed` when no bracket was found; the best scanned
// point is returned in that case.
template <typename Fn>
LinePoint line_minimize(Fn &objective, const Eigen::VectorXd &origin, double f0,
                        const Eigen::VectorXd &dir, const PowellOptions &o, bool &bracketed) {
    auto phi = [&](double t) { return objective(origin + t * dir); };

    double a = 0.0;
    double fa = f0;
    double b = o.initial_step;
    double fb = phi(b);
    if (fb > fa) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = b + kGold * (b - a);
    double fc = phi(c);
    int expansions = 0;
    bracketed = true;
    while (fb > fc) {
        if (++expansions > o.max_bracket_expansions) {
            bracketed = false;
            break;
        }
        const double r = (b - a) * (fb - fc);
        const double q = (b - c) * (fb - fa);
        double u = b - ((b - c) * q - (b - a) * r) /
                           (2.0 * with_sign(std::max(std::abs(q - r), kTiny), q - r));
        const double ulim = b + kGrowLimit * (c - b);
        double fu = 0.0;
        if ((b - u) * (u - c) > 0.0) {
            fu = phi(u);
            if (fu < fc) {
                a = b;
                fa = fb;
                b = u;
                fb = fu;
                break;
            }
            if (fu > fb) {
                c = u;
                fc = fu;
                break;
            }
            u = c + kGold * (c - b);
            fu = phi(u);
        } else if ((c - u) * (u - ulim) > 0.0) {
            fu = phi(u);
            if (fu < fc) {
                b = c;
                c = u;
                u = c + kGold * (c - b);
                fb = fc;
                fc = fu;
                fu = phi(u);
            }
        } else if ((u - ulim) * (ulim - c) >= 0.0) {
            u = ulim;
            fu = phi(u);
        } else {
            u = c + kGold * (c - b);
            fu = phi(u);
        }
        a = b;
        b = c;
        c = u;
        fa = fb;
        fb = fc;
        fc = fu;
    }

    if (!bracketed) {
        LinePoint best{0.0, f0};
        for (const LinePoint p : {LinePoint{a, fa}, LinePoint{b, fb}, LinePoint{c, fc}}) {
            if (p.value < best.value) {
                best = p;
            }
        }
        const double step = o.initial_step;
        for (int k = -kScanPoints; k <= kScanPoints; ++k) {
            if (k == 0) {
                continue;
            }
            const double t = best.t + k * step;
            const double v = phi(t);
            if (v < best.value) {
                best = {t, v};
            }
        }
        return best;
    }

    // Brent's method on the bracket (a, b, c) with fb the lowest.
    double lo = std::min(a, c);
    double hi = std::max(a, c);
    double x = b;
    double w = b;
    double v = b;
    double fx = fb;
    double fw = fb;
    double fv = fb;
    double d = 0.0;
    double e = 0.0;
    for (int it = 0; it < kBrentIterations; ++it) {
        const double xm = 0.5 * (lo + hi);
        const double tol1 = o.line_tolerance * std::abs(x) + kZeps;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (hi - lo)) {
            break;
        }
        if (std::abs(e) > tol1) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) {
                p = -p;
            }
            q = std::abs(q);
            const double etemp = e;
            e = d;
            if (std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (lo - x) || p >= q * (hi - x)) {
                e = x >= xm ? lo - x : hi - x;
                d = kCGold * e;
            } else {
                d = p / q;
                const double u = x + d;
                if (u - lo < tol2 || hi - u < tol2) {
                    d = with_sign(tol1, xm - x);
                }
            }
        } else {
            e = x >= xm ? lo - x : hi - x;
            d = kCGold * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + with_sign(tol1, d);
        const double fu = phi(u);
        if (fu <= fx) {
            (u >= x ? lo : hi) = x;
            v = w;
            w = x;
            x = u;
            fv = fw;
            fw = fx;
            fx = fu;
        } else {
            (u < x ? lo : hi) = u;
            if (fu <= fw || w == x) {
                v = w;
                w = u;
                fv = fw;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    if (fx > f0) {
        return {0.0, f0};
    }
    return {x, fx};
}

} // namespace

OptimizeResult powell_minimize(const Objective &f, const Eigen::VectorXd &x0,
                               const OptimizerConfig &cfg) {
    cfg.validate();
    const auto &o = cfg.powell;
    return detail::drive(f, x0, cfg.max_evaluations, [&](auto &objective, OptimizeResult &res) {
        const Eigen::Index n = x0.size();
        Eigen::MatrixXd dirs = Eigen::MatrixXd::Identity(n, n);
        Eigen::VectorXd x = x0;
        double fx = objective(x);

        auto search = [&](const Eigen::VectorXd &dir, Eigen::Index index) {
            bool bracketed = true;
            const LinePoint p = line_minimize(objective, x, fx, dir, o, bracketed);
            if (!bracketed) {
                res.diagnostics.emplace_back("line search along direction " +
                                             std::to_string(index) +
                                             " found no bracket; used a fixed-step scan");
            }
            x += p.t * dir;
            fx = p.value;
        };

        for (int cycle = 1; cycle <= cfg.max_iterations; ++cycle) {
            const double f_start = fx;
            const Eigen::VectorXd x_start = x;
            double biggest = 0.0;
            Eigen::Index i_big = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double before = fx;
                search(dirs.col(i), i);
                if (before - fx > biggest) {
                    biggest = before - fx;
                    i_big = i;
                }
            }
            res.iterations = cycle;
            if (f_start - fx < cfg.tolerance) {
                res.converged = true;
                break;
            }

            const Eigen::VectorXd moved = x - x_start;
            const double length = moved.norm();
            if (!(length > 0.0)) {
                continue;
            }
            const double f_extrap = objective(2.0 * x - x_start);
            if (f_extrap < f_start) {
                const double t = 2.0 * (f_start - 2.0 * fx + f_extrap) *
                                     std::pow(f_start - fx - biggest, 2) -
                                 biggest * std::pow(f_start - f_extrap, 2);
                if (t < 0.0) {
                    const Eigen::VectorXd dir = moved / length;
                    search(dir, n);
                    dirs.col(i_big) = dirs.col(n - 1);
                    dirs.col(n - 1) = dir;
                }
            }
        }
    });
}

} // namespace h2vqe
