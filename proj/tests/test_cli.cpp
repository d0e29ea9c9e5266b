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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "h2vqe/app/cli.hpp"
#include "json.hpp"

using namespace h2vqe;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path &p, const std::string &text) {
    std::ofstream(p, std::ios::binary) << text;
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> v;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) {
        v.push_back(l);
    }
    return v;
}

// Value printed after the last space of the line starting with prefix.
double value_after(const std::string &text, const std::string &prefix) {
    for (const auto &l : lines(text)) {
        if (l.rfind(prefix, 0) == 0) {
            return std::stod(l.substr(l.find_last_of(' ') + 1));
        }
    }
    ADD_FAILURE() << "no line starting with '" << prefix << "' in:\n" << text;
    return 0;
}

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("h2vqe_cli_" + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Outcome run(std::vector<std::string> args, const fs::path &out_dir = {}) {
        args.insert(args.begin(), {"--out-dir", (out_dir.empty() ? dir_ : out_dir).string()});
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return {code, out.str(), err.str()};
    }

    fs::path write_fixtures() {
        const auto r = run({"fixtures"});
        EXPECT_EQ(r.code, 0) << r.err;
        return dir_ / "fixtures";
    }

    fs::path config(const std::string &name, const std::string &json) {
        const auto p = dir_ / name;
        spit(p, json);
        return p;
    }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, Eigen4q) {
    const auto r = run({"eigen", "--ham", "4q"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 17U);
    EXPECT_NEAR(std::stod(l[1]), -1.867, 5e-3);
    EXPECT_EQ(l[1].substr(0, 6), "-1.867");
    EXPECT_TRUE(fs::exists(dir_ / "eigen_4q.json"));
    const auto j = nlohmann::json::parse(slurp(dir_ / "eigen_4q.json"));
    EXPECT_EQ(j.at("eigenvalues_ha").size(), 16U);
}

TEST_F(Cli, Eigen2q) {
    const auto r = run({"eigen", "--ham", "2q"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 5U);
    EXPECT_EQ(l[1], "-1.8671");
}

TEST_F(Cli, EigenUnknownSelectorIsUsageError) {
    const auto r = run({"eigen", "--ham", "nosuch"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("nosuch"), std::string::npos);
}

TEST_F(Cli, UnknownSubcommandIsUsageError) {
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
}

TEST_F(Cli, EnergyFromBuiltInFixtures) {
    const auto a = run({"energy-from-counts", "--ham", "4q", "--fixture", "setA"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_NEAR(value_after(a.out, "energy_ha"), -1.8422, 1e-3);
    const auto b = run({"energy-from-counts", "--fixture", "setB"});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_NEAR(value_after(b.out, "energy_ha"), -1.8464, 1e-3);
}

TEST_F(Cli, EnergyFromCountsFiles) {
    const auto fx = write_fixtures();
    const auto r = run({"energy-from-counts", "--counts", (fx / "a1.json").string(),
                        (fx / "a0.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_after(r.out, "energy_ha"), -1.8422, 1e-3);
}

TEST_F(Cli, EnergyFromCountsRejectsDuplicateAndMissingGroups) {
    const auto fx = write_fixtures();
    const auto twice = run({"energy-from-counts", "--counts", (fx / "a0.json").string(),
                            (fx / "a0.json").string()});
    EXPECT_EQ(twice.code, kExitUsage);
    EXPECT_NE(twice.err.find("twice"), std::string::npos);
    const auto missing = run({"energy-from-counts", "--counts", (fx / "b0.json").string()});
    EXPECT_EQ(missing.code, kExitUsage);
    EXPECT_NE(missing.err.find("missing"), std::string::npos);
}

TEST_F(Cli, EnergyFromCountsWarnsOnShotMismatch) {
    const auto fx = write_fixtures();
    auto j = nlohmann::json::parse(slurp(fx / "a1.json"));
    for (auto &c : j["counts"]) {
        c = c.get<std::uint64_t>() * 2;
    }
    j["shots"] = j["shots"].get<std::uint64_t>() * 2;
    spit(dir_ / "a1x2.json", j.dump());
    const auto r = run({"energy-from-counts", "--counts", (fx / "a0.json").string(),
                        (dir_ / "a1x2.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("warning"), std::string::npos);
    EXPECT_NEAR(value_after(r.out, "energy_ha"), -1.8422, 1e-3);
}

TEST_F(Cli, SimilarityOnFixtures) {
    const auto fx = write_fixtures();
    const std::vector<std::string> files{(fx / "a0.json").string(), (fx / "b0.json").string(),
                                         (fx / "c0.json").string()};
    auto args = std::vector<std::string>{"--no-timestamp", "similarity"};
    args.insert(args.end(), files.begin(), files.end());

    auto jt_args = args;
    jt_args.insert(jt_args.end(), {"--measure", "jt"});
    const auto jt = run(jt_args);
    ASSERT_EQ(jt.code, 0) << jt.err;
    EXPECT_GT(value_after(jt.out, "a0.json"), value_after(jt.out, "c0.json"));
    EXPECT_GT(value_after(jt.out, "b0.json"), value_after(jt.out, "c0.json"));

    auto sd_args = args;
    sd_args.insert(sd_args.end(), {"--measure", "sqrtdot"});
    const auto sd = run(sd_args);
    ASSERT_EQ(sd.code, 0) << sd.err;
    EXPECT_LT(value_after(sd.out, "c0.json"), 0.5);

    const auto csv = lines(slurp(dir_ / "similarity_report.csv"));
    ASSERT_EQ(csv.size(), 4U);
    EXPECT_EQ(csv[0], "file,energy_ha,avg_jt,avg_sqrt_dot,band,group_id");
    EXPECT_EQ(csv[3].substr(0, 16), "c0.json,-1.2526,");
    EXPECT_NE(csv[3].find(",excited,0"), std::string::npos);
}

TEST_F(Cli, SimilarityOfSingleFileIsOne) {
    const auto fx = write_fixtures();
    const auto r = run({"similarity", (fx / "b1.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(value_after(r.out, "b1.json"), 1.0);
}

TEST_F(Cli, SimilarityRejectsMixedRegisterSizes) {
    const auto fx = write_fixtures();
    spit(dir_ / "two.json", R"({"n_qubits": 2, "shots": 4, "group_basis": "ZZ",
                               "bit_order": "q0_leftmost", "counts": [1, 1, 1, 1]})");
    const auto r = run({"similarity", (fx / "a0.json").string(), (dir_ / "two.json").string()});
    EXPECT_EQ(r.code, kExitUsage);
}

TEST_F(Cli, RunAppliesDefaultShotsAndWritesTrace) {
    const auto cfg = config("spsa.json", R"({
        "optimizer": {"method": "spsa", "max_iterations": 75},
        "seed": 12
    })");
    const auto r = run({"run", cfg.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto result = nlohmann::json::parse(slurp(dir_ / "result.json"));
    EXPECT_EQ(result.at("config").at("shots").get<int>(), 4096);
    EXPECT_EQ(result.at("bit_order").get<std::string>(), "q0_leftmost");
    const auto trace = lines(slurp(dir_ / "trace.csv"));
    ASSERT_EQ(trace.size(), 1U + 150U);
    EXPECT_EQ(trace[0].substr(0, 20), "eval_index,energy_ha");
}

TEST_F(Cli, RunRejectsInvalidConfigWithFieldName) {
    const auto bad_shots = run({"run", config("a.json", R"({"shots": 0})").string()});
    EXPECT_EQ(bad_shots.code, kExitUsage);
    EXPECT_NE(bad_shots.err.find("shots"), std::string::npos);

    const auto typo = run({"run", config("b.json", R"({"optimizer": {"metod": "spsa"}})").string()});
    EXPECT_EQ(typo.code, kExitUsage);
    EXPECT_NE(typo.err.find("optimizer.metod"), std::string::npos);

    const auto bad_type =
        run({"run", config("c.json", R"({"ansatz": {"reps": "two"}})").string()});
    EXPECT_EQ(bad_type.code, kExitUsage);
    EXPECT_NE(bad_type.err.find("ansatz.reps"), std::string::npos);

    EXPECT_EQ(run({"run", (dir_ / "absent.json").string()}).code, kExitUsage);
    EXPECT_EQ(run({"run", config("d.json", "{ not json").string()}).code, kExitUsage);
}

TEST_F(Cli, BatchOfOneHasUnitSimilarity) {
    const auto cfg = config("one.json", R"({
        "optimizer": {"method": "cobyla", "max_iterations": 30},
        "n_runs": 1
    })");
    const auto r = run({"--no-timestamp", "batch", cfg.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto runs = lines(slurp(dir_ / "runs.csv"));
    ASSERT_EQ(runs.size(), 2U);
    EXPECT_EQ(runs[0], "run_index,seed,energy_ha,band,evaluations,optimizer,ansatz,noise,status");
    const auto sim = lines(slurp(dir_ / "similarity.csv"));
    ASSERT_EQ(sim.size(), 3U);
    for (std::size_t i = 1; i < sim.size(); ++i) {
        EXPECT_NE(sim[i].find(",1,1,"), std::string::npos) << sim[i];
    }
}

TEST_F(Cli, BatchIsByteIdenticalAcrossWorkerCounts) {
    const auto cfg = config("batch.json", R"({
        "optimizer": {"method": "spsa", "max_iterations": 10},
        "noise": "full",
        "n_runs": 6,
        "seed": 5
    })");
    const auto one = dir_ / "w1";
    const auto eight = dir_ / "w8";
    ASSERT_EQ(run({"--no-timestamp", "batch", cfg.string(), "--workers", "1", "--svg"}, one).code, 0);
    ASSERT_EQ(run({"--no-timestamp", "batch", cfg.string(), "--workers", "8", "--svg"}, eight).code, 0);
    std::size_t compared = 0;
    for (const auto &e : fs::recursive_directory_iterator(one)) {
        if (e.is_regular_file()) {
            const auto rel = fs::relative(e.path(), one);
            EXPECT_EQ(slurp(e.path()), slurp(eight / rel)) << rel;
            ++compared;
        }
    }
    EXPECT_EQ(compared, 2U + 2U + 6U * 2U);
}

TEST_F(Cli, TimestampLineIsOptional) {
    const auto cfg = config("t.json", R"({"optimizer": {"max_iterations": 2}, "n_runs": 1})");
    ASSERT_EQ(run({"batch", cfg.string()}).code, 0);
    EXPECT_EQ(slurp(dir_ / "runs.csv").rfind("# generated ", 0), 0U);
    ASSERT_EQ(run({"--no-timestamp", "batch", cfg.string()}).code, 0);
    EXPECT_EQ(slurp(dir_ / "runs.csv").rfind("run_index,", 0), 0U);
}

TEST_F(Cli, SeedFlagOverridesConfig) {
    const auto cfg = config("s.json", R"({"optimizer": {"max_iterations": 5}, "seed": 1})");
    ASSERT_EQ(run({"--seed", "77", "run", cfg.string()}).code, 0);
    const auto result = nlohmann::json::parse(slurp(dir_ / "result.json"));
    EXPECT_EQ(result.at("config").at("seed").get<int>(), 77);
}
