#pragma once

#include "nbldpc/decoder.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nbldpc {

struct TrialStats {
    int iterations = 0;
    bool success = false;
    double symbol_erasure_rate = 0.0;
    double bit_erasure_rate = 0.0;
};

struct ExperimentResult {
    std::uint64_t master_seed = 0;
    int n = 0;
    double epsilon = 0.0;
    int max_iter = 0;
    int record_iters = 0;

    std::vector<TrialStats> trials;

    double mean_symbol_rate = 0.0, stderr_symbol_rate = 0.0;
    double mean_bit_rate = 0.0, stderr_bit_rate = 0.0;
    double failure_fraction = 0.0;  // trials that did not fully decode

    /// Per iteration (1..record_iters) and dimension: mean fraction of
    /// edges carrying that dimension, with the standard error over trials.
    std::vector<std::vector<double>> mean_dim_fraction;
    std::vector<std::vector<double>> stderr_dim_fraction;
    /// Mean raw edge counts per iteration and dimension.
    std::vector<std::vector<double>> mean_dim_count;
};

/// Independent trials (fresh graph, labels and channel per trial) of the
/// subspace decoder. Per-trial seeds are derived from the master seed, so
/// results are reproducible and independent of execution order.
ExperimentResult run_experiment(const EnsembleSpec& e, int n, double eps, int trials,
                                int max_iter, std::uint64_t seed, int record_iters = 0);

/// splitmix64 step; used to derive per-trial seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// CSV: "trial,iterations,symbol_erasure_rate,bit_erasure_rate" with a
/// '#'-prefixed header carrying the master seed and parameters.
std::string experiment_results_csv(const EnsembleSpec& e, const ExperimentResult& r);

/// CSV: "iter,dim,count" (mean edge counts across trials).
std::string experiment_histogram_csv(const EnsembleSpec& e, const ExperimentResult& r);

}  // namespace nbldpc
