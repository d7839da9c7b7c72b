#include "nbldpc/exit_chart.hpp"

#include <cmath>
#include <stdexcept>

namespace nbldpc {

double bit_exit_of_extrinsic(const EnsembleSpec& e, const DimensionDistribution& extrinsic,
                             double eps) {
    const int m = e.m;
    const KernelTable& kt = KernelTable::cached(m);
    double h = 0.0;
    for (int ext = 0; ext <= m; ++ext) {
        if (extrinsic.p[ext] == 0.0) continue;
        double binom = 1.0;  // C(m-1, s)
        for (int s = 0; s <= m - 1; ++s) {
            const double w = binom * std::pow(eps, s) * std::pow(1.0 - eps, m - 1 - s);
            binom = binom * (m - 1 - s) / (s + 1);
            // F: coordinate subspace free on the s erased other bits plus
            // the target bit. The bit stays unresolved iff the decision
            // subspace E ∩ F is not contained in F's hyperplane {x_j = 0};
            // given dim(E ∩ F) = k that containment has probability
            // [s; k] / [s+1; k].
            double unresolved = 0.0;
            const int top = std::min(s + 1, ext);
            for (int k = 1; k <= top; ++k) {
                const double contained =
                    std::exp2(log2_gaussian_binomial(s, k) - log2_gaussian_binomial(s + 1, k));
                unresolved += kt.intersect(s + 1, ext, k) * (1.0 - contained);
            }
            h += extrinsic.p[ext] * w * unresolved;
        }
    }
    return h;
}

double bp_exit(const EnsembleSpec& e, double eps, const DeOptions& opts) {
    const DeTrace trace = evolve(e, eps, opts);
    if (trace.success()) return 0.0;
    const DimensionDistribution extrinsic = extrinsic_distribution(e, trace.final_pv());
    return bit_exit_of_extrinsic(e, extrinsic, eps);
}

ExitCurve exit_curve(const EnsembleSpec& e, double step, const DeOptions& opts) {
    if (!(step > 0.0 && step <= 0.01)) {
        throw std::invalid_argument("exit_curve: step must be in (0, 0.01]");
    }
    const int cells = static_cast<int>(std::ceil(1.0 / step - 1e-9));
    ExitCurve curve;
    curve.grid.reserve(cells + 1);
    curve.values.reserve(cells + 1);
    for (int i = 0; i <= cells; ++i) {
        const double eps = static_cast<double>(i) / cells;
        const double h = bp_exit(e, eps, opts);
        if (!curve.values.empty() && curve.values.back() == 0.0 && h > 0.0) {
            curve.jump_epsilon = 0.5 * (curve.grid.back() + eps);
        }
        curve.grid.push_back(eps);
        curve.values.push_back(h);
    }
    return curve;
}

MapBoundResult map_upper_bound(const EnsembleSpec& e, const DeOptions& opts, double step) {
    if (!(step > 0.0 && step <= 1e-3)) {
        throw std::invalid_argument("map_upper_bound: step must be in (0, 1e-3]");
    }
    const double target = design_rate(e);
    if (!(target > 0.0)) {
        throw std::invalid_argument("map_upper_bound: design rate must be positive");
    }

    const int cells = static_cast<int>(std::ceil(1.0 / step - 1e-9));
    const double h0 = 1e-12;  // below this the curve is numerically zero

    MapBoundResult result;
    result.step = 1.0 / cells;
    double area = 0.0;
    double eps_hi = 1.0;
    double h_hi = bp_exit(e, 1.0, opts);
    double last_positive = 1.0;

    for (int t = cells - 1; t >= 0; --t) {
        const double eps_lo = static_cast<double>(t) / cells;
        const double h_lo = bp_exit(e, eps_lo, opts);
        if (h_hi > h0) last_positive = eps_hi;

        const double cell_area = (eps_hi - eps_lo) * 0.5 * (h_hi + h_lo);
        if (area + cell_area >= target && cell_area > 0.0) {
            const double frac = (target - area) / cell_area;
            result.epsilon_bar = eps_hi - frac * (eps_hi - eps_lo);
            result.area = target;
            result.reached = true;
            return result;
        }
        area += cell_area;
        if (h_hi <= h0 && h_lo <= h0) break;  // entirely below the jump
        eps_hi = eps_lo;
        h_hi = h_lo;
    }
    result.epsilon_bar = last_positive;
    result.area = area;
    result.reached = false;
    return result;
}

}  // namespace nbldpc
