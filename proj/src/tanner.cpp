#include "nbldpc/tanner.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nbldpc {

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

// Inverse-CDF draw from a node-perspective degree distribution.
int draw_degree(const std::vector<std::pair<int, double>>& dist, std::mt19937_64& rng) {
    const double u = uniform_unit(rng);
    double acc = 0.0;
    for (const auto& [degree, weight] : dist) {
        acc += weight;
        if (u < acc) return degree;
    }
    return dist.back().first;
}

std::vector<std::pair<int, double>> as_sorted_vector(const std::map<int, double>& m) {
    return {m.begin(), m.end()};
}

}  // namespace

TannerGraph sample_graph(int n, const EnsembleSpec& e, std::mt19937_64& rng) {
    validate(e);
    if (n < 1) throw std::invalid_argument("sample_graph: need at least one symbol");

    const auto var_dist = as_sorted_vector(node_perspective(e.lambda));
    const auto chk_dist = as_sorted_vector(node_perspective(e.rho));

    std::vector<int> var_degree(n);
    long total_sockets = 0;
    for (int v = 0; v < n; ++v) {
        var_degree[v] = draw_degree(var_dist, rng);
        total_sockets += var_degree[v];
    }

    // Check degrees are drawn until the socket counts balance; the final
    // node absorbs the remainder.
    std::vector<int> chk_degree;
    long remaining = total_sockets;
    while (remaining > 0) {
        int d = draw_degree(chk_dist, rng);
        if (d > remaining) d = static_cast<int>(remaining);
        chk_degree.push_back(d);
        remaining -= d;
    }
    if (chk_degree.empty()) {
        throw std::invalid_argument("sample_graph: unbalanceable degree sequence");
    }

    TannerGraph g;
    g.n_var = n;
    g.n_chk = static_cast<int>(chk_degree.size());
    g.m = e.m;
    g.var_edges.resize(g.n_var);
    g.chk_edges.resize(g.n_chk);

    std::vector<int> var_sockets;
    var_sockets.reserve(total_sockets);
    for (int v = 0; v < n; ++v) {
        var_sockets.insert(var_sockets.end(), var_degree[v], v);
    }
    std::vector<int> chk_sockets;
    chk_sockets.reserve(total_sockets);
    for (int c = 0; c < g.n_chk; ++c) {
        chk_sockets.insert(chk_sockets.end(), chk_degree[c], c);
    }

    // Fisher-Yates on the variable sockets gives a uniform matching.
    for (std::size_t i = var_sockets.size(); i > 1; --i) {
        const std::size_t j = uniform_index(rng, i);
        std::swap(var_sockets[i - 1], var_sockets[j]);
    }

    const BitMatrix eye = BitMatrix::identity(e.m);
    g.edges.reserve(var_sockets.size());
    for (std::size_t i = 0; i < var_sockets.size(); ++i) {
        const int id = static_cast<int>(g.edges.size());
        g.edges.push_back(TannerEdge{var_sockets[i], chk_sockets[i], eye, eye});
        g.var_edges[var_sockets[i]].push_back(id);
        g.chk_edges[chk_sockets[i]].push_back(id);
    }
    return g;
}

TannerGraph sample_labels(TannerGraph g, const EnsembleSpec& e, std::mt19937_64& rng) {
    validate(e);
    if (g.m != e.m) throw std::invalid_argument("sample_labels: alphabet mismatch");
    for (TannerEdge& edge : g.edges) {
        if (e.labels == LabelKind::GeneralLinear) {
            edge.label = random_invertible(e.m, rng);
        } else {
            const std::uint64_t elem = 1 + uniform_index(rng, (1ull << e.m) - 1);
            edge.label = field_multiplication_matrix(e.m, e.field_poly, elem);
        }
        edge.label_inv = edge.label.inverse();
    }
    return g;
}

std::vector<SubspaceBasis> transmit_bec(int n, int m, double eps, std::mt19937_64& rng) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("transmit_bec: eps must be in [0, 1]");
    }
    std::vector<SubspaceBasis> out;
    out.reserve(n);
    for (int v = 0; v < n; ++v) {
        BitMatrix basis(0, m);
        for (int bit = 0; bit < m; ++bit) {
            if (uniform_unit(rng) < eps) basis.append_row(1ull << bit);
        }
        out.push_back(SubspaceBasis::span_of(basis));
    }
    return out;
}

}  // namespace nbldpc
