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
 * Seeded multi-run experiments executed on a worker pool.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "h2vqe/app/io.hpp"

namespace h2vqe {

struct RunRecord {
    int run_index = 0;
    std::uint64_t seed = 0;
    double energy = 0.0;
    EnergyBand band = EnergyBand::Erroneous;
    std::size_t evaluations = 0;
    std::string optimizer;
    std::string ansatz;
    std::string noise;
    std::string status; ///< "ok", "incomplete" or "error: ..."
    std::vector<CountsVector> final_counts; ///< native order; empty on error
};

struct SimilarityRow {
    int run_index = 0;
    int group_id = 0;
    double energy = 0.0;
    double avg_jt = 0.0;
    double avg_sqrt_dot = 0.0;
    EnergyBand band = EnergyBand::Erroneous;
};

struct BatchResult {
    std::vector<RunRecord> runs; ///< sorted by run_index
    std::vector<MeasurementGroup> groups;
    std::vector<SimilarityRow> similarity; ///< group-major, then run_index
};

/// Seed of run k: derive_seed(base_seed, k).
std::uint64_t run_seed(std::uint64_t base_seed, int k);

/// Runs all n_runs of @p cfg; results do not depend on @p workers.
BatchResult run_batch(const io::ExperimentConfig &cfg, unsigned workers);

/// Per-group batch averages over the final counts of the successful runs.
std::vector<SimilarityRow> batch_similarity(const std::vector<RunRecord> &runs,
                                            std::size_t n_groups,
                                            const BandBoundaries &bands);

struct BatchWriteOptions {
    bool timestamp = true;
    bool svg = false;
};

/// Writes runs.csv, similarity.csv, counts/run_NNNN_gG.json and optional SVGs.
void write_batch(const BatchResult &result, const std::filesystem::path &dir,
                 const BatchWriteOptions &opts);

std::string runs_csv(const BatchResult &result);
std::string similarity_csv(const std::vector<SimilarityRow> &rows);

} // namespace h2vqe
