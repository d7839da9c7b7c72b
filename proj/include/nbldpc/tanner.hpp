#pragma once

#include "nbldpc/ensemble.hpp"
#include "nbldpc/gf2.hpp"

#include <random>
#include <vector>

namespace nbldpc {

struct TannerEdge {
    int var = 0;
    int chk = 0;
    BitMatrix label;      // action on the way to the check
    BitMatrix label_inv;  // action on the way back
};

struct TannerGraph {
    int n_var = 0;
    int n_chk = 0;
    int m = 1;
    std::vector<TannerEdge> edges;
    std::vector<std::vector<int>> var_edges;  // edge ids per variable node
    std::vector<std::vector<int>> chk_edges;  // edge ids per check node

    int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Configuration model: node degrees drawn from the node-perspective
/// distributions, variable sockets matched uniformly to check sockets.
/// The last check node's degree absorbs the socket remainder; multi-edges
/// are permitted. Labels start as identity matrices.
TannerGraph sample_graph(int n, const EnsembleSpec& e, std::mt19937_64& rng);

/// Replaces every label according to the ensemble's label kind: uniform
/// over GL(m, 2), or uniform over the 2^m - 1 nonzero field multipliers.
TannerGraph sample_labels(TannerGraph g, const EnsembleSpec& e, std::mt19937_64& rng);

/// BEC(eps) on the all-zero codeword: each of the n*m bits is erased
/// independently; symbol i's initial message is the subspace spanned by
/// the unit vectors of its erased coordinates.
std::vector<SubspaceBasis> transmit_bec(int n, int m, double eps, std::mt19937_64& rng);

/// Unbiased uniform draw from {0, ..., n-1}.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(std::mt19937_64& rng);

}  // namespace nbldpc
