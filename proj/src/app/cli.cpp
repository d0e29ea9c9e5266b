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

#include "h2vqe/app/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "h2vqe/app/batch.hpp"
#include "h2vqe/app/io.hpp"
#include "h2vqe/error.hpp"
#include "h2vqe/fixtures.hpp"
#include "h2vqe/linalg.hpp"
#include "json.hpp"

namespace h2vqe {

namespace fs = std::filesystem;

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string out_dir = "h2vqe_out";
    bool no_timestamp = false;
};

std::string fixed4(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
}

std::string timestamp_prefix(const Globals &g) {
    if (g.no_timestamp) {
        return "";
    }
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << "# generated " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << '\n';
    return os.str();
}

int cmd_eigen(const std::string &selector, const Globals &g, std::ostream &out) {
    Hamiltonian h = [&] {
        try {
            return io::load_hamiltonian(selector);
        } catch (const ConfigError &e) {
            throw UsageError(e.what());
        }
    }();
    const Eigen::VectorXd ev = eigenvalues(to_dense(h));
    out << "eigenvalues (Ha) of " << selector << ", " << ev.size() << " values:\n";
    nlohmann::json values = nlohmann::json::array();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        out << fixed4(ev(i)) << '\n';
        values.push_back(ev(i));
    }
    const std::string label = (selector == "4q" || selector == "2q") ? selector : "custom";
    nlohmann::json j{{"hamiltonian", selector}, {"n_qubits", h.n_qubits()}, {"eigenvalues_ha", values}};
    io::write_text(fs::path(g.out_dir) / ("eigen_" + label + ".json"), j.dump(2) + "\n");
    return kExitOk;
}

io::ExperimentConfig load_config(const std::string &path, const Globals &g) {
    io::ExperimentConfig cfg;
    try {
        cfg = io::read_config_file(path);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
    if (g.seed) {
        cfg.vqe.seed = *g.seed;
    }
    return cfg;
}

int cmd_run(const std::string &config_path, const Globals &g, std::ostream &out,
            std::ostream &err) {
    const auto cfg = load_config(config_path, g);
    const auto result = run_vqe(cfg.vqe);
    const fs::path dir(g.out_dir);
    std::ostringstream trace;
    result.trace.write_csv(trace);
    io::write_text(dir / "trace.csv", trace.str());
    io::write_text(dir / "result.json", io::result_to_json(result, cfg.vqe, "trace.csv"));
    out << "energy_ha " << fixed4(result.energy) << " band " << to_string(result.band)
        << " evaluations " << result.trace.size() << '\n';
    for (const auto &d : result.diagnostics) {
        err << "note: " << d << '\n';
    }
    if (!result.complete) {
        err << "error: optimizer aborted; partial result written\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_batch(const std::string &config_path, std::optional<int> runs,
              std::optional<unsigned> workers, bool svg, const Globals &g, std::ostream &out) {
    auto cfg = load_config(config_path, g);
    if (runs) {
        if (*runs < 1) {
            throw UsageError("--runs must be >= 1");
        }
        cfg.n_runs = *runs;
    }
    const auto result = run_batch(cfg, workers.value_or(cfg.workers));
    write_batch(result, g.out_dir, {!g.no_timestamp, svg || cfg.emit_svg});
    std::size_t ok = 0;
    std::size_t ground = 0;
    for (const auto &r : result.runs) {
        ok += r.status == "ok" ? 1 : 0;
        ground += (r.status == "ok" && r.band == EnergyBand::GroundBasin) ? 1 : 0;
    }
    out << result.runs.size() << " runs, " << ok << " ok, " << ground
        << " in the ground basin; wrote " << (fs::path(g.out_dir) / "runs.csv").string() << '\n';
    return kExitOk;
}

// Converts a file's group_basis to the q_high_left form used by MeasurementGroup.
std::string basis_q_high_left(const io::CountsFile &f) {
    if (f.order == BitOrder::Q0Rightmost) {
        return f.group_basis;
    }
    return {f.group_basis.rbegin(), f.group_basis.rend()};
}

int cmd_energy_from_counts(const std::string &selector, const std::string &fixture,
                           const std::vector<std::string> &files, std::ostream &out,
                           std::ostream &err) {
    Hamiltonian h = [&] {
        try {
            return io::load_hamiltonian(selector);
        } catch (const ConfigError &e) {
            throw UsageError(e.what());
        }
    }();
    const auto grouping = group_terms(h);
    std::vector<io::CountsFile> inputs;
    if (!fixture.empty()) {
        if (!files.empty()) {
            throw UsageError("give either --fixture or --counts, not both");
        }
        if (selector != "4q") {
            throw UsageError("fixtures belong to the 4q Hamiltonian");
        }
        std::vector<CountsVector> c;
        if (fixture == "setA") {
            c = {fixtures::a0(), fixtures::a1()};
        } else if (fixture == "setB") {
            c = {fixtures::b0(), fixtures::b1()};
        } else {
            throw UsageError("unknown fixture '" + fixture + "' (expected setA or setB)");
        }
        for (std::size_t gi = 0; gi < c.size(); ++gi) {
            io::CountsFile f;
            f.counts = c[gi];
            f.order = kPublishedBitOrder;
            f.group_basis = io::group_basis_text(grouping.groups.at(gi), kPublishedBitOrder);
            f.source = fixture + "/" + std::to_string(gi);
            inputs.push_back(std::move(f));
        }
    } else {
        if (files.empty()) {
            throw UsageError("energy-from-counts needs --fixture or --counts");
        }
        for (const auto &path : files) {
            try {
                inputs.push_back(io::read_counts_file(path));
            } catch (const Error &e) {
                throw UsageError(e.what());
            }
        }
    }

    std::vector<std::optional<CountsVector>> per_group(grouping.groups.size());
    for (const auto &f : inputs) {
        if (f.counts.n_qubits() != h.n_qubits()) {
            throw UsageError(f.source + ": counts are for " + std::to_string(f.counts.n_qubits()) +
                             " qubits, Hamiltonian has " + std::to_string(h.n_qubits()));
        }
        const std::string basis = basis_q_high_left(f);
        const auto it = std::find_if(grouping.groups.begin(), grouping.groups.end(),
                                     [&](const MeasurementGroup &m) { return m.basis_label() == basis; });
        if (it == grouping.groups.end()) {
            throw UsageError(f.source + ": group_basis " + f.group_basis +
                             " matches no measurement group");
        }
        auto &slot = per_group[static_cast<std::size_t>(it - grouping.groups.begin())];
        if (slot) {
            throw UsageError(f.source + ": group_basis " + f.group_basis + " supplied twice");
        }
        slot = reorder(f.counts, f.order, kNativeBitOrder);
    }
    std::vector<CountsVector> counts;
    for (std::size_t gi = 0; gi < per_group.size(); ++gi) {
        if (!per_group[gi]) {
            throw UsageError("missing counts for group " + std::to_string(gi) + " (basis " +
                             io::group_basis_text(grouping.groups[gi], kPublishedBitOrder) +
                             " in q0_leftmost order)");
        }
        counts.push_back(*per_group[gi]);
    }
    for (const auto &c : counts) {
        if (c.shots() != counts.front().shots()) {
            err << "warning: groups have different shot counts\n";
            break;
        }
    }
    const auto est = energy_from_counts(h, grouping, counts, kNativeBitOrder);
    out << "energy_ha " << fixed4(est.energy) << '\n';
    return kExitOk;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string> &inputs) {
    std::vector<fs::path> files;
    for (const auto &in : inputs) {
        const fs::path p(in);
        if (fs::is_directory(p)) {
            std::vector<fs::path> found;
            for (const auto &e : fs::recursive_directory_iterator(p)) {
                if (e.is_regular_file() && e.path().extension() == ".json") {
                    found.push_back(e.path());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(p)) {
            files.push_back(p);
        } else {
            throw UsageError("no such file or directory: " + in);
        }
    }
    return files;
}

int cmd_similarity(const std::vector<std::string> &inputs, const std::string &measure_name,
                   const Globals &g, std::ostream &out) {
    Measure measure{};
    try {
        measure = parse_measure(measure_name);
    } catch (const ValidationError &e) {
        throw UsageError(e.what());
    }
    std::vector<io::CountsFile> files;
    for (const auto &p : expand_inputs(inputs)) {
        try {
            auto f = io::read_counts_file(p);
            f.source = p.string();
            files.push_back(std::move(f));
        } catch (const ValidationError &e) {
            // counts directories may hold other JSON (configs, results)
            if (inputs.size() == 1 && fs::is_regular_file(inputs.front())) {
                throw UsageError(e.what());
            }
        }
    }
    if (files.empty()) {
        throw UsageError("similarity needs at least one counts file");
    }
    for (const auto &f : files) {
        if (f.counts.n_qubits() != files.front().counts.n_qubits()) {
            throw UsageError("mixed n_qubits: " + f.source + " vs " + files.front().source);
        }
    }

    // batches: files that share group id and measurement basis
    std::map<std::pair<int, std::string>, std::vector<std::size_t>> batches;
    for (std::size_t i = 0; i < files.size(); ++i) {
        batches[{files[i].group_id.value_or(0), basis_q_high_left(files[i])}].push_back(i);
    }
    std::vector<double> jt(files.size());
    std::vector<double> sd(files.size());
    for (const auto &[key, members] : batches) {
        std::vector<Eigen::VectorXd> probs;
        for (auto i : members) {
            probs.push_back(reorder(files[i].counts, files[i].order, kNativeBitOrder).probabilities());
        }
        const auto a = batch_average_similarity(probs, Measure::JaccardTanimoto);
        const auto b = batch_average_similarity(probs, Measure::SqrtDot);
        for (std::size_t k = 0; k < members.size(); ++k) {
            jt[members[k]] = a[k];
            sd[members[k]] = b[k];
        }
    }

    std::ostringstream csv;
    csv << "file,energy_ha,avg_jt,avg_sqrt_dot,band,group_id\n";
    for (std::size_t i = 0; i < files.size(); ++i) {
        const auto &f = files[i];
        csv << fs::path(f.source).filename().string() << ','
            << (f.energy_ha ? io::format_double(*f.energy_ha) : "") << ','
            << io::format_double(jt[i]) << ',' << io::format_double(sd[i]) << ','
            << (f.energy_ha ? std::string(to_string(classify_energy(*f.energy_ha))) : "") << ','
            << f.group_id.value_or(0) << '\n';
        out << fs::path(f.source).filename().string() << ' ' << to_string(measure) << ' '
            << fixed4(measure == Measure::JaccardTanimoto ? jt[i] : sd[i]) << '\n';
    }
    io::write_text(fs::path(g.out_dir) / "similarity_report.csv", timestamp_prefix(g) + csv.str());
    return kExitOk;
}

int cmd_fixtures(const Globals &g, std::ostream &out) {
    const auto grouping = group_terms(h2_4qubit());
    const fs::path dir = fs::path(g.out_dir) / "fixtures";
    for (const auto &f : fixtures::all()) {
        io::CountsFile file;
        file.counts = f.counts;
        file.order = kPublishedBitOrder;
        file.group_basis = io::group_basis_text(grouping.groups.at(static_cast<std::size_t>(f.group_id)),
                                                kPublishedBitOrder);
        file.group_id = f.group_id;
        file.energy_ha = f.name[0] == 'a'   ? fixtures::kSetAEnergy
                         : f.name[0] == 'b' ? fixtures::kSetBEnergy
                                            : fixtures::kSetCEnergy;
        io::write_text(dir / (f.name + ".json"), io::counts_to_json(file));
        out << (dir / (f.name + ".json")).string() << '\n';
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulated VQE for the H2 molecule", "h2vqe"};
    app.require_subcommand(1);
    Globals g;
    std::uint64_t seed = 0;
    auto *seed_opt = app.add_option("--seed", seed, "Base seed (overrides the config)");
    app.add_option("--out-dir", g.out_dir, "Output directory")->capture_default_str();
    app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp line from CSV outputs");
    app.fallthrough();

    std::string ham = "4q";
    auto *eigen = app.add_subcommand("eigen", "Exact eigenvalues of a Hamiltonian");
    eigen->add_option("--ham", ham, "4q, 2q or a Hamiltonian JSON file")->capture_default_str();

    std::string config;
    auto *run = app.add_subcommand("run", "One VQE run from a JSON config");
    run->add_option("config,--config", config, "Config file")->required();

    std::optional<int> runs;
    std::optional<unsigned> workers;
    bool svg = false;
    auto *batch = app.add_subcommand("batch", "Many seeded VQE runs plus similarity analysis");
    batch->add_option("config,--config", config, "Config file")->required();
    batch->add_option("--runs", runs, "Override n_runs");
    batch->add_option("--workers", workers, "Worker threads (default: hardware)");
    batch->add_flag("--svg", svg, "Also write SVG scatter plots");

    std::string fixture;
    std::vector<std::string> count_files;
    auto *efc = app.add_subcommand("energy-from-counts", "Energy from one counts file per group");
    efc->add_option("--ham", ham, "4q, 2q or a Hamiltonian JSON file")->capture_default_str();
    efc->add_option("--fixture", fixture, "Built-in published set: setA or setB");
    efc->add_option("--counts", count_files, "Counts JSON files");

    std::vector<std::string> sim_inputs;
    std::string measure = "jt";
    auto *sim = app.add_subcommand("similarity", "Batch-averaged similarity of counts files");
    sim->add_option("inputs", sim_inputs, "Counts files or directories")->required();
    sim->add_option("--measure", measure, "jt or sqrtdot")->capture_default_str();

    auto *fix = app.add_subcommand("fixtures", "Write the built-in published count sets");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (seed_opt->count() > 0) {
        g.seed = seed;
    }

    try {
        if (*eigen) {
            return cmd_eigen(ham, g, out);
        }
        if (*run) {
            return cmd_run(config, g, out, err);
        }
        if (*batch) {
            return cmd_batch(config, runs, workers, svg, g, out);
        }
        if (*efc) {
            return cmd_energy_from_counts(ham, fixture, count_files, out, err);
        }
        if (*sim) {
            return cmd_similarity(sim_inputs, measure, g, out);
        }
        if (*fix) {
            return cmd_fixtures(g, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace h2vqe
