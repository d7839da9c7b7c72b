#include "nbldpc/experiment.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nbldpc {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

ExperimentResult run_experiment(const EnsembleSpec& e, int n, double eps, int trials,
                                int max_iter, std::uint64_t seed, int record_iters) {
    validate(e);
    if (trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    if (max_iter < 1) throw std::invalid_argument("run_experiment: max_iter must be >= 1");
    record_iters = std::min(record_iters, max_iter);

    ExperimentResult result;
    result.master_seed = seed;
    result.n = n;
    result.epsilon = eps;
    result.max_iter = max_iter;
    result.record_iters = record_iters;
    result.trials.reserve(trials);

    const int m = e.m;
    // Per trial and iteration: fraction of edges per dimension.
    std::vector<std::vector<std::vector<double>>> fractions(
        trials, std::vector<std::vector<double>>(record_iters, std::vector<double>(m + 1, 0.0)));
    std::vector<std::vector<std::vector<double>>> counts = fractions;

    for (int t = 0; t < trials; ++t) {
        std::uint64_t state = seed + static_cast<std::uint64_t>(t);
        std::mt19937_64 rng(splitmix64(state));

        TannerGraph g = sample_labels(sample_graph(n, e, rng), e, rng);
        const std::vector<SubspaceBasis> channel = transmit_bec(n, m, eps, rng);
        const DecodeTrace trace = bp_decode_subspace(g, channel, max_iter, record_iters);

        TrialStats stats;
        stats.iterations = trace.iterations_used;
        stats.success = trace.success;
        stats.symbol_erasure_rate = static_cast<double>(trace.residual_symbols) / n;
        stats.bit_erasure_rate =
            static_cast<double>(trace.residual_bits) / (static_cast<double>(n) * m);
        result.trials.push_back(stats);

        const double edges = g.edge_count();
        for (int l = 0; l < record_iters; ++l) {
            // Rows are present for every l < record_iters by construction.
            for (int k = 0; k <= m; ++k) {
                counts[t][l][k] = static_cast<double>(trace.dim_histogram[l][k]);
                fractions[t][l][k] = trace.dim_histogram[l][k] / edges;
            }
        }
    }

    auto mean_stderr = [&](auto&& get) {
        double mean = 0.0;
        for (int t = 0; t < trials; ++t) mean += get(t);
        mean /= trials;
        double var = 0.0;
        for (int t = 0; t < trials; ++t) {
            const double d = get(t) - mean;
            var += d * d;
        }
        const double sd = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
        return std::pair<double, double>(mean, sd / std::sqrt(static_cast<double>(trials)));
    };

    std::tie(result.mean_symbol_rate, result.stderr_symbol_rate) =
        mean_stderr([&](int t) { return result.trials[t].symbol_erasure_rate; });
    std::tie(result.mean_bit_rate, result.stderr_bit_rate) =
        mean_stderr([&](int t) { return result.trials[t].bit_erasure_rate; });
    {
        auto [mean, se] = mean_stderr([&](int t) { return result.trials[t].success ? 0.0 : 1.0; });
        (void)se;
        result.failure_fraction = mean;
    }

    result.mean_dim_fraction.assign(record_iters, std::vector<double>(m + 1, 0.0));
    result.stderr_dim_fraction.assign(record_iters, std::vector<double>(m + 1, 0.0));
    result.mean_dim_count.assign(record_iters, std::vector<double>(m + 1, 0.0));
    for (int l = 0; l < record_iters; ++l) {
        for (int k = 0; k <= m; ++k) {
            auto [fm, fs] = mean_stderr([&](int t) { return fractions[t][l][k]; });
            result.mean_dim_fraction[l][k] = fm;
            result.stderr_dim_fraction[l][k] = fs;
            auto [cm, cs] = mean_stderr([&](int t) { return counts[t][l][k]; });
            (void)cs;
            result.mean_dim_count[l][k] = cm;
        }
    }
    return result;
}

namespace {

std::string format6(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void write_header(std::ostringstream& os, const EnsembleSpec& e, const ExperimentResult& r) {
    os << "# seed = " << r.master_seed << ", n = " << r.n << ", epsilon = " << format6(r.epsilon)
       << ", trials = " << r.trials.size() << ", max_iter = " << r.max_iter
       << ", labels = " << format_label_spec(e) << ", m = " << e.m << "\n";
}

}  // namespace

std::string experiment_results_csv(const EnsembleSpec& e, const ExperimentResult& r) {
    std::ostringstream os;
    write_header(os, e, r);
    os << "trial,iterations,symbol_erasure_rate,bit_erasure_rate\n";
    for (std::size_t t = 0; t < r.trials.size(); ++t) {
        os << t << ',' << r.trials[t].iterations << ',' << format6(r.trials[t].symbol_erasure_rate)
           << ',' << format6(r.trials[t].bit_erasure_rate) << "\n";
    }
    return os.str();
}

std::string experiment_histogram_csv(const EnsembleSpec& e, const ExperimentResult& r) {
    std::ostringstream os;
    write_header(os, e, r);
    os << "iter,dim,count\n";
    for (std::size_t l = 0; l < r.mean_dim_count.size(); ++l) {
        for (std::size_t k = 0; k < r.mean_dim_count[l].size(); ++k) {
            os << (l + 1) << ',' << k << ',' << format6(r.mean_dim_count[l][k]) << "\n";
        }
    }
    return os.str();
}

}  // namespace nbldpc
