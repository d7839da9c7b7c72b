#include "nbldpc/kernels.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace nbldpc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log2(2^t - 1), accurate for t up to 64.
double log2_pow2_minus_one(int t) {
    return t + std::log1p(-std::exp2(static_cast<double>(-t))) / M_LN2;
}

}  // namespace

std::uint64_t gaussian_binomial(int m, int k) {
    if (m < 0 || m > 15) {
        throw std::invalid_argument("gaussian_binomial: exact arithmetic needs 0 <= m <= 15");
    }
    if (k < 0 || k > m) return 0;
    if (k == 0 || k == m) return 1;
    if (k > m - k) k = m - k;  // [m;k] = [m;m-k]

    // Product formula prod_l (2^m - 2^l)/(2^k - 2^l). With k <= m/2 <= 7 the
    // full numerator stays below 2^105, so a 128-bit accumulator is exact.
    unsigned __int128 num = 1;
    unsigned __int128 den = 1;
    for (int l = 0; l < k; ++l) {
        num *= (1ull << m) - (1ull << l);
        den *= (1ull << k) - (1ull << l);
    }
    return static_cast<std::uint64_t>(num / den);
}

double log2_gaussian_binomial(int m, int k) {
    if (k < 0 || k > m) return kNegInf;
    if (k == 0 || k == m) return 0.0;
    if (k > m - k) k = m - k;
    // log2 prod_l (2^m - 2^l)/(2^k - 2^l) = sum_l [l + log2(2^{m-l}-1)] - [l + log2(2^{k-l}-1)]
    double acc = 0.0;
    for (int l = 0; l < k; ++l) {
        acc += log2_pow2_minus_one(m - l) - log2_pow2_minus_one(k - l);
    }
    return acc;
}

std::vector<double> intersection_kernel(int m, int i, int j) {
    if (i < 0 || i > m || j < 0 || j > m) {
        throw std::invalid_argument("intersection_kernel: dimensions out of range");
    }
    std::vector<double> out(m + 1, 0.0);
    const double denom = log2_gaussian_binomial(m, j);
    const int lo = std::max(0, i + j - m);
    const int hi = std::min(i, j);
    for (int k = lo; k <= hi; ++k) {
        const double l = log2_gaussian_binomial(i, k) +
                         log2_gaussian_binomial(m - i, j - k) +
                         static_cast<double>(i - k) * (j - k) - denom;
        out[k] = std::exp2(l);
    }
    return out;
}

std::vector<double> sum_kernel(int m, int i, int j) {
    if (i < 0 || i > m || j < 0 || j > m) {
        throw std::invalid_argument("sum_kernel: dimensions out of range");
    }
    std::vector<double> out(m + 1, 0.0);
    const double denom = log2_gaussian_binomial(m, m - j);
    const int lo = std::max(i, j);
    const int hi = std::min(i + j, m);
    for (int k = lo; k <= hi; ++k) {
        const double l = log2_gaussian_binomial(m - i, m - k) +
                         log2_gaussian_binomial(i, k - j) +
                         static_cast<double>(k - i) * (k - j) - denom;
        out[k] = std::exp2(l);
    }
    return out;
}

KernelTable::KernelTable(int m) : m_(m) {
    if (m < 1 || m > 32) throw std::invalid_argument("KernelTable: m out of range");
    const std::size_t n = static_cast<std::size_t>(m) + 1;
    intersect_.assign(n * n * n, 0.0);
    sum_.assign(n * n * n, 0.0);
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= m; ++j) {
            const auto ik = intersection_kernel(m, i, j);
            const auto sk = sum_kernel(m, i, j);
            for (int k = 0; k <= m; ++k) {
                intersect_[index(i, j, k)] = ik[k];
                sum_[index(i, j, k)] = sk[k];
            }
        }
    }
}

const KernelTable& KernelTable::cached(int m) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const KernelTable>> tables;
    std::scoped_lock lock(mutex);
    auto it = tables.find(m);
    if (it == tables.end()) {
        it = tables.emplace(m, std::make_unique<const KernelTable>(m)).first;
    }
    return *it->second;
}

}  // namespace nbldpc
