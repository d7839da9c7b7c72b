#pragma once

#include "nbldpc/density_evolution.hpp"

#include <optional>
#include <vector>

namespace nbldpc {

/// h^BP(eps) sampled on an ascending grid over [0, 1]. Values are
/// normalized to [0, 1] and non-decreasing in eps.
struct ExitCurve {
    std::vector<double> grid;
    std::vector<double> values;
    /// Midpoint between the last zero and first positive sample, when the
    /// curve leaves zero inside the grid (the BP threshold's location).
    std::optional<double> jump_epsilon;
};

/// BP EXIT value in [0, 1]: the probability that one bit of a random
/// symbol stays unresolved given the extrinsic decision subspace (law
/// P*(eps, .)) together with the channel observations of the symbol's
/// other m-1 bits -- the per-bit-channel EXIT measure whose area the
/// area theorem constrains. For m = 1 this equals sum_i i P*(eps, i).
/// Exactly zero when density evolution converges.
double bp_exit(const EnsembleSpec& e, double eps, const DeOptions& opts = {});

/// The bit-level EXIT functional of an extrinsic law: conditions on the
/// number s of erased other bits and the extrinsic dimension, and asks
/// whether the decision subspace keeps the target bit free.
double bit_exit_of_extrinsic(const EnsembleSpec& e, const DimensionDistribution& extrinsic,
                             double eps);

/// Samples bp_exit on a uniform grid with spacing <= step (step in (0, 0.01]).
ExitCurve exit_curve(const EnsembleSpec& e, double step, const DeOptions& opts = {});

struct MapBoundResult {
    double epsilon_bar = 1.0;  // the bound; BP-threshold estimate when !reached
    double area = 0.0;         // integral accumulated down to the stop point
    bool reached = false;      // accumulated area hit the design rate
    double step = 0.0;
};

/// Trapezoid integration of the EXIT curve downward from eps = 1 until the
/// accumulated area equals the design rate; the crossing abscissa is found
/// by linear interpolation inside the final cell. When the whole curve
/// carries less area than the design rate the result reports the
/// BP-threshold estimate with reached = false.
MapBoundResult map_upper_bound(const EnsembleSpec& e, const DeOptions& opts = {},
                               double step = 5e-4);

}  // namespace nbldpc
