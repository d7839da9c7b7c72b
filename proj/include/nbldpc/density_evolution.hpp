#pragma once

#include "nbldpc/ensemble.hpp"
#include "nbldpc/kernels.hpp"

#include <vector>

namespace nbldpc {

/// Probability law of a message's dimension: p[k] = P(dim = k), k = 0..m.
struct DimensionDistribution {
    int m = 0;
    std::vector<double> p;

    static DimensionDistribution point_mass(int m, int k);

    double expected_dim() const;
    double prob_positive() const;  // P(dim > 0)

    /// Nonnegative entries summing to 1 within tol.
    bool is_normalized(double tol = 1e-10) const;
};

/// Dimension law of the initial variable message over BEC(eps):
/// p[i] = C(m, i) eps^i (1-eps)^{m-i}.
DimensionDistribution channel_distribution(int m, double eps);

/// Edge-averaged check-to-variable law from the edge-averaged
/// variable-to-check law: fold the sum kernel over r-1 inputs per check
/// degree r, then average with the rho weights.
DimensionDistribution check_update(const DimensionDistribution& pv_avg,
                                   const DegreeDistribution& rho,
                                   const KernelTable& kt);

/// Edge-averaged variable-to-check law for the next iteration: fold the
/// intersection kernel over d-1 check inputs starting from the channel
/// law per variable degree d, then average with the lambda weights.
DimensionDistribution var_update(const DimensionDistribution& pc_avg,
                                 const DegreeDistribution& lambda, double eps,
                                 const KernelTable& kt);

struct DeOptions {
    int max_iters = 50000;
    double success_threshold = 1e-8;  // on expected dimension
    double stall_tolerance = 1e-12;   // on max per-entry change per iteration
};

enum class DeOutcome { Converged, Stalled, IterLimit };

struct DeTrace {
    /// iterates[l] is the variable-to-check law of iteration l+1;
    /// iterates[0] is the channel law.
    std::vector<DimensionDistribution> iterates;
    DeOutcome outcome = DeOutcome::IterLimit;

    bool success() const { return outcome == DeOutcome::Converged; }
    const DimensionDistribution& final_pv() const { return iterates.back(); }
};

/// Full recursion from the channel law; stops on success (expected
/// dimension below threshold), stall, or the iteration cap.
/// Finite-field labels are only supported for m <= 3, where the recursion
/// coincides with the general-linear one; larger m throws
/// unsupported_config_error.
DeTrace evolve(const EnsembleSpec& e, double eps, const DeOptions& opts = {});

/// Supremum of eps with successful convergence, by bisection on [0, 1].
double bp_threshold(const EnsembleSpec& e, const DeOptions& opts = {},
                    int bisect_steps = 40);

/// True iff lambda'(0) rho'(1) ((1+B)^m - 1)/(2^m - 1) > 1, i.e. the
/// zero fixed point is unstable at Battacharyya constant B.
bool stability_unstable(const EnsembleSpec& e, double battacharyya);

/// Root in [0, 1] of the stability condition with B = eps (the BEC value),
/// by bisection; 1 if the condition never binds.
double stability_bound(const EnsembleSpec& e);

/// Law of the extrinsic decision of a random symbol given the fixed-point
/// check-to-variable law: fold the intersection kernel over all d edges of
/// a degree-d node starting from the full space (no channel information),
/// averaged with node-perspective weights.
DimensionDistribution extrinsic_distribution(const EnsembleSpec& e,
                                             const DimensionDistribution& pv_fixed_point);

/// Runs evolve to its stopping point and applies extrinsic_distribution.
DimensionDistribution extrinsic_fixed_point(const EnsembleSpec& e, double eps,
                                            const DeOptions& opts = {});

}  // namespace nbldpc
