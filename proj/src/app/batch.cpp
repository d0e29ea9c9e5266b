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

#include "h2vqe/app/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <thread>

#include "h2vqe/rng.hpp"

namespace h2vqe {

namespace {

RunRecord execute(const io::ExperimentConfig &cfg, int k) {
    RunRecord rec;
    rec.run_index = k;
    rec.seed = run_seed(cfg.vqe.seed, k);
    rec.optimizer = std::string(to_string(cfg.vqe.optimizer.method));
    rec.ansatz = cfg.vqe.ansatz.descriptor();
    rec.noise = cfg.vqe.noise.descriptor();
    try {
        VqeConfig run_cfg = cfg.vqe;
        run_cfg.seed = rec.seed;
        auto result = run_vqe(run_cfg);
        rec.energy = result.energy;
        rec.band = result.band;
        rec.evaluations = result.trace.size();
        rec.status = result.complete ? "ok" : "incomplete";
        rec.final_counts = std::move(result.final_counts);
    } catch (const std::exception &e) {
        rec.energy = std::nan("");
        rec.status = std::string("error: ") + e.what();
        std::replace(rec.status.begin(), rec.status.end(), ',', ';');
        std::replace(rec.status.begin(), rec.status.end(), '\n', ' ');
    }
    return rec;
}

std::string timestamp_line() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << "# generated " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << '\n';
    return os.str();
}

std::string number_or_empty(double v) { return std::isfinite(v) ? io::format_double(v) : ""; }

struct Point {
    double x;
    double y;
    std::string color;
};

// Minimal scatter plot with auto-scaled axes.
std::string scatter_svg(const std::vector<Point> &points, const std::string &title,
                        const std::string &x_label, const std::string &y_label) {
    constexpr double kW = 640;
    constexpr double kH = 420;
    constexpr double kLeft = 70;
    constexpr double kRight = 20;
    constexpr double kTop = 40;
    constexpr double kBottom = 50;
    double x0 = 0;
    double x1 = 1;
    double y0 = 0;
    double y1 = 1;
    if (!points.empty()) {
        x0 = x1 = points.front().x;
        y0 = y1 = points.front().y;
        for (const auto &p : points) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    }
    const double xpad = x1 > x0 ? 0.05 * (x1 - x0) : 0.5;
    const double ypad = y1 > y0 ? 0.05 * (y1 - y0) : 0.5;
    x0 -= xpad;
    x1 += xpad;
    y0 -= ypad;
    y1 += ypad;
    auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight); };
    auto sy = [&](double y) { return kH - kBottom - (y - y0) / (y1 - y0) * (kH - kTop - kBottom); };

    std::ostringstream os;
    os << std::setprecision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title
       << "</text>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight
       << "\" y2=\"" << kH - kBottom << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
       << kH - kBottom << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = x0 + (x1 - x0) * t / 4.0;
        const double yv = y0 + (y1 - y0) * t / 4.0;
        os << "<text x=\"" << sx(xv) << "\" y=\"" << kH - kBottom + 16
           << "\" text-anchor=\"middle\">" << std::setprecision(4) << xv << "</text>\n";
        os << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
           << yv << "</text>\n";
        os << std::setprecision(6);
    }
    os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">" << x_label
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << kH / 2 << ")\">" << y_label << "</text>\n";
    for (const auto &p : points) {
        os << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\""
           << p.color << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace

std::uint64_t run_seed(std::uint64_t base_seed, int k) {
    return derive_seed(base_seed, static_cast<std::uint64_t>(k));
}

BatchResult run_batch(const io::ExperimentConfig &cfg, unsigned workers) {
    cfg.vqe.validate();
    if (cfg.n_runs < 1) {
        throw ValidationError("batch: n_runs must be >= 1");
    }
    if (workers == 0) {
        workers = std::max(1U, std::thread::hardware_concurrency());
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.n_runs));

    BatchResult out;
    out.runs.resize(static_cast<std::size_t>(cfg.n_runs));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k = next++; k < cfg.n_runs; k = next++) {
            out.runs[static_cast<std::size_t>(k)] = execute(cfg, k);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }

    out.groups = group_terms(cfg.vqe.hamiltonian).groups;
    out.similarity = batch_similarity(out.runs, out.groups.size(), cfg.vqe.bands);
    return out;
}

std::vector<SimilarityRow> batch_similarity(const std::vector<RunRecord> &runs,
                                            std::size_t n_groups, const BandBoundaries &bands) {
    std::vector<SimilarityRow> rows;
    for (std::size_t g = 0; g < n_groups; ++g) {
        std::vector<const RunRecord *> members;
        std::vector<Eigen::VectorXd> probs;
        for (const auto &r : runs) {
            if (r.final_counts.size() == n_groups && r.final_counts[g].shots() > 0) {
                members.push_back(&r);
                probs.push_back(r.final_counts[g].probabilities());
            }
        }
        if (probs.empty()) {
            continue;
        }
        const auto jt = batch_average_similarity(probs, Measure::JaccardTanimoto);
        const auto sd = batch_average_similarity(probs, Measure::SqrtDot);
        for (std::size_t i = 0; i < members.size(); ++i) {
            rows.push_back({members[i]->run_index, static_cast<int>(g), members[i]->energy, jt[i],
                            sd[i], classify_energy(members[i]->energy, bands)});
        }
    }
    return rows;
}

std::string runs_csv(const BatchResult &result) {
    std::ostringstream os;
    os << "run_index,seed,energy_ha,band,evaluations,optimizer,ansatz,noise,status\n";
    for (const auto &r : result.runs) {
        os << r.run_index << ',' << r.seed << ',' << number_or_empty(r.energy) << ','
           << (r.status.rfind("error", 0) == 0 ? "" : std::string(to_string(r.band))) << ','
           << r.evaluations << ',' << r.optimizer << ',' << r.ansatz << ',' << r.noise << ','
           << r.status << '\n';
    }
    return os.str();
}

std::string similarity_csv(const std::vector<SimilarityRow> &rows) {
    std::ostringstream os;
    os << "run_index,energy_ha,avg_jt,avg_sqrt_dot,band,group_id\n";
    for (const auto &r : rows) {
        os << r.run_index << ',' << number_or_empty(r.energy) << ','
           << io::format_double(r.avg_jt) << ',' << io::format_double(r.avg_sqrt_dot) << ','
           << to_string(r.band) << ',' << r.group_id << '\n';
    }
    return os.str();
}

void write_batch(const BatchResult &result, const std::filesystem::path &dir,
                 const BatchWriteOptions &opts) {
    std::filesystem::create_directories(dir);
    const std::string stamp = opts.timestamp ? timestamp_line() : "";
    io::write_text(dir / "runs.csv", stamp + runs_csv(result));
    io::write_text(dir / "similarity.csv", stamp + similarity_csv(result.similarity));

    for (const auto &r : result.runs) {
        for (std::size_t g = 0; g < r.final_counts.size(); ++g) {
            io::CountsFile file;
            file.counts = reorder(r.final_counts[g], kNativeBitOrder, kPublishedBitOrder);
            file.order = kPublishedBitOrder;
            file.group_basis = io::group_basis_text(result.groups.at(g), kPublishedBitOrder);
            file.group_id = static_cast<int>(g);
            if (std::isfinite(r.energy)) {
                file.energy_ha = r.energy;
            }
            std::ostringstream name;
            name << "run_" << std::setw(4) << std::setfill('0') << r.run_index << "_g" << g
                 << ".json";
            io::write_text(dir / "counts" / name.str(), io::counts_to_json(file));
        }
    }

    if (opts.svg) {
        std::vector<Point> energies;
        for (const auto &r : result.runs) {
            if (std::isfinite(r.energy)) {
                energies.push_back({static_cast<double>(r.run_index), r.energy, "#1f77b4"});
            }
        }
        io::write_text(dir / "energy_vs_run.svg",
                       scatter_svg(energies, "Final energies", "run index", "energy (Ha)"));
        std::vector<Point> sim;
        for (const auto &s : result.similarity) {
            if (std::isfinite(s.energy)) {
                sim.push_back({s.energy, s.avg_jt, s.group_id == 0 ? "#1f77b4" : "#d62728"});
                sim.push_back({s.energy, s.avg_sqrt_dot, s.group_id == 0 ? "#2ca02c" : "#ff7f0e"});
            }
        }
        io::write_text(dir / "similarity_vs_energy.svg",
                       scatter_svg(sim, "Average similarity (J-T, sqrt-dot) per circuit",
                                   "energy (Ha)", "average similarity"));
    }
}

} // namespace h2vqe
