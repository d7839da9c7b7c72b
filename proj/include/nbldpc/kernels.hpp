#pragma once

#include <cstdint>
#include <vector>

namespace nbldpc {

/// Number of k-dimensional subspaces of GF(2)^m, exact.
/// Returns 0 outside 0 <= k <= m (the convention the kernel sums rely on).
/// Exact integer arithmetic is available for m <= 15; larger m throws.
std::uint64_t gaussian_binomial(int m, int k);

/// log2 of the Gaussian binomial; -inf outside 0 <= k <= m.
/// Valid for any m up to 64, used for kernel ratios.
double log2_gaussian_binomial(int m, int k);

/// K_var(k | i, j): probability that a uniformly random j-dim subspace of
/// GF(2)^m meets a fixed i-dim subspace in a k-dim intersection.
/// Entry k of the returned vector (size m+1); zero outside
/// max(0, i+j-m) <= k <= min(i, j).
std::vector<double> intersection_kernel(int m, int i, int j);

/// K_chk(k | i, j): probability that the sum of a fixed i-dim subspace and
/// a uniformly random j-dim subspace has dimension k. Zero outside
/// max(i, j) <= k <= min(i+j, m).
std::vector<double> sum_kernel(int m, int i, int j);

/// Both kernels for one ambient dimension, precomputed once and cached.
class KernelTable {
public:
    explicit KernelTable(int m);

    /// Shared immutable table; computed on first use per m.
    static const KernelTable& cached(int m);

    int m() const { return m_; }

    double intersect(int i, int j, int k) const { return intersect_[index(i, j, k)]; }
    double sum(int i, int j, int k) const { return sum_[index(i, j, k)]; }

private:
    std::size_t index(int i, int j, int k) const {
        const std::size_t n = static_cast<std::size_t>(m_) + 1;
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }

    int m_;
    std::vector<double> intersect_;
    std::vector<double> sum_;
};

}  // namespace nbldpc
