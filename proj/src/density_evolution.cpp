#include "nbldpc/density_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nbldpc {

DimensionDistribution DimensionDistribution::point_mass(int m, int k) {
    DimensionDistribution d{m, std::vector<double>(m + 1, 0.0)};
    d.p[k] = 1.0;
    return d;
}

double DimensionDistribution::expected_dim() const {
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) acc += k * p[k];
    return acc;
}

double DimensionDistribution::prob_positive() const { return 1.0 - p[0]; }

bool DimensionDistribution::is_normalized(double tol) const {
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
}

DimensionDistribution channel_distribution(int m, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("channel_distribution: eps must be in [0, 1]");
    }
    DimensionDistribution d{m, std::vector<double>(m + 1, 0.0)};
    double binom = 1.0;  // C(m, i), exact in double for m <= 15
    for (int i = 0; i <= m; ++i) {
        d.p[i] = binom * std::pow(eps, i) * std::pow(1.0 - eps, m - i);
        binom = binom * (m - i) / (i + 1);
    }
    return d;
}

namespace {

enum class Kernel { Sum, Intersect };

// out[k] = sum_{i,j} a[i] b[j] K(k | i, j); a plays the "fixed subspace"
// role, b the uniformly random one.
DimensionDistribution fold(const DimensionDistribution& a, const DimensionDistribution& b,
                           const KernelTable& kt, Kernel which) {
    const int m = a.m;
    DimensionDistribution out{m, std::vector<double>(m + 1, 0.0)};
    for (int i = 0; i <= m; ++i) {
        if (a.p[i] == 0.0) continue;
        for (int j = 0; j <= m; ++j) {
            const double w = a.p[i] * b.p[j];
            if (w == 0.0) continue;
            for (int k = 0; k <= m; ++k) {
                const double kv = which == Kernel::Sum ? kt.sum(i, j, k) : kt.intersect(i, j, k);
                out.p[k] += w * kv;
            }
        }
    }
    return out;
}

void check_options(const DeOptions& opts) {
    if (opts.max_iters <= 0 || !(opts.success_threshold > 0.0) ||
        !(opts.stall_tolerance > 0.0)) {
        throw std::invalid_argument("DeOptions: all fields must be positive");
    }
}

void check_supported(const EnsembleSpec& e) {
    validate(e);
    if (e.labels == LabelKind::FiniteField && e.m > 3) {
        throw unsupported_config_error(
            "density evolution over dimension counts does not cover finite-field "
            "labels with m > 3 (label orbits would have to be tracked)");
    }
}

}  // namespace

DimensionDistribution check_update(const DimensionDistribution& pv_avg,
                                   const DegreeDistribution& rho, const KernelTable& kt) {
    const int m = pv_avg.m;
    DimensionDistribution out{m, std::vector<double>(m + 1, 0.0)};
    DimensionDistribution partial = pv_avg;  // law for a degree-2 check: one input
    const int max_degree = rho.max_degree();
    for (int r = 2; r <= max_degree; ++r) {
        if (r > 2) partial = fold(partial, pv_avg, kt, Kernel::Sum);
        if (auto it = rho.coeffs.find(r); it != rho.coeffs.end()) {
            for (int k = 0; k <= m; ++k) out.p[k] += it->second * partial.p[k];
        }
    }
    return out;
}

DimensionDistribution var_update(const DimensionDistribution& pc_avg,
                                 const DegreeDistribution& lambda, double eps,
                                 const KernelTable& kt) {
    const int m = pc_avg.m;
    DimensionDistribution out{m, std::vector<double>(m + 1, 0.0)};
    DimensionDistribution partial = channel_distribution(m, eps);  // "degree 1"
    const int max_degree = lambda.max_degree();
    for (int d = 2; d <= max_degree; ++d) {
        partial = fold(partial, pc_avg, kt, Kernel::Intersect);
        if (auto it = lambda.coeffs.find(d); it != lambda.coeffs.end()) {
            for (int k = 0; k <= m; ++k) out.p[k] += it->second * partial.p[k];
        }
    }
    return out;
}

DeTrace evolve(const EnsembleSpec& e, double eps, const DeOptions& opts) {
    check_supported(e);
    check_options(opts);
    const KernelTable& kt = KernelTable::cached(e.m);

    DeTrace trace;
    DimensionDistribution pv = channel_distribution(e.m, eps);
    trace.iterates.push_back(pv);
    if (pv.expected_dim() < opts.success_threshold) {
        trace.outcome = DeOutcome::Converged;
        return trace;
    }
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        const DimensionDistribution pc = check_update(pv, e.rho, kt);
        DimensionDistribution next = var_update(pc, e.lambda, eps, kt);
        // One round keeps the mass at 1 up to rounding, but the recursion
        // squares any mass error, so rescale every iteration.
        double mass = 0.0;
        for (double v : next.p) mass += v;
        for (double& v : next.p) v /= mass;
        double delta = 0.0;
        for (int k = 0; k <= e.m; ++k) delta = std::max(delta, std::abs(next.p[k] - pv.p[k]));
        pv = std::move(next);
        trace.iterates.push_back(pv);
        if (pv.expected_dim() < opts.success_threshold) {
            trace.outcome = DeOutcome::Converged;
            return trace;
        }
        if (delta < opts.stall_tolerance) {
            trace.outcome = DeOutcome::Stalled;
            return trace;
        }
    }
    trace.outcome = DeOutcome::IterLimit;
    return trace;
}

double bp_threshold(const EnsembleSpec& e, const DeOptions& opts, int bisect_steps) {
    check_supported(e);
    if (bisect_steps < 30) {
        throw std::invalid_argument("bp_threshold: at least 30 bisection steps required");
    }
    double lo = 0.0;  // eps = 0 always converges
    double hi = 1.0;  // eps = 1 never does (all degrees >= 2)
    for (int step = 0; step < bisect_steps; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (evolve(e, mid, opts).success()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool stability_unstable(const EnsembleSpec& e, double battacharyya) {
    validate(e);
    if (!(battacharyya >= 0.0 && battacharyya <= 1.0)) {
        throw std::invalid_argument("stability_unstable: Battacharyya constant must be in [0, 1]");
    }
    const double c = lambda_prime_zero(e) * rho_prime_one(e);
    const double growth =
        (std::pow(1.0 + battacharyya, e.m) - 1.0) / (std::exp2(e.m) - 1.0);
    return c * growth > 1.0;
}

double stability_bound(const EnsembleSpec& e) {
    validate(e);
    if (lambda_prime_zero(e) == 0.0) return 1.0;  // condition never binds
    if (!stability_unstable(e, 1.0)) return 1.0;
    // The left side is strictly increasing in eps, so bisect to the root.
    double lo = 0.0, hi = 1.0;
    for (int step = 0; step < 100; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (stability_unstable(e, mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

DimensionDistribution extrinsic_distribution(const EnsembleSpec& e,
                                             const DimensionDistribution& pv_fixed_point) {
    const KernelTable& kt = KernelTable::cached(e.m);
    const DimensionDistribution pc = check_update(pv_fixed_point, e.rho, kt);
    const std::map<int, double> weights = node_perspective(e.lambda);

    DimensionDistribution out{e.m, std::vector<double>(e.m + 1, 0.0)};
    // Full space: the extrinsic decision sees no channel information.
    DimensionDistribution partial = DimensionDistribution::point_mass(e.m, e.m);
    const int max_degree = weights.rbegin()->first;
    for (int d = 1; d <= max_degree; ++d) {
        partial = fold(partial, pc, kt, Kernel::Intersect);
        if (auto it = weights.find(d); it != weights.end()) {
            for (int k = 0; k <= e.m; ++k) out.p[k] += it->second * partial.p[k];
        }
    }
    return out;
}

DimensionDistribution extrinsic_fixed_point(const EnsembleSpec& e, double eps,
                                            const DeOptions& opts) {
    const DeTrace trace = evolve(e, eps, opts);
    return extrinsic_distribution(e, trace.final_pv());
}

}  // namespace nbldpc
