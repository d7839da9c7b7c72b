#pragma once

#include "nbldpc/tanner.hpp"

#include <vector>

namespace nbldpc {

struct DecodeTrace {
    /// dim_histogram[l][k]: number of variable-to-check messages of
    /// dimension k during iteration l+1; each row sums to the edge count.
    std::vector<std::vector<long>> dim_histogram;
    int iterations_used = 0;  // iteration when decoding succeeded or stalled
    bool success = false;     // every symbol decision reached dimension 0
    bool stalled = false;     // messages reached a nonzero fixed point
    int residual_symbols = 0;
    long residual_bits = 0;  // sum of terminal decision dimensions
};

/// Per-edge message subspaces of every iteration, for cross-decoder checks.
/// v2c is in the check domain (after the edge action), c2v in the variable
/// domain (after the inverse edge action).
struct MessageLog {
    std::vector<std::vector<SubspaceBasis>> v2c;
    std::vector<std::vector<SubspaceBasis>> c2v;
};

/// Flooding-schedule BP over message support subspaces. Runs until the
/// decisions reach dimension zero everywhere, the messages stop changing,
/// or max_iter; with record_iters > 0 the loop keeps going to that many
/// iterations so traces stay comparable across trials.
DecodeTrace bp_decode_subspace(const TannerGraph& g, const std::vector<SubspaceBasis>& init,
                               int max_iter, int record_iters = 0,
                               MessageLog* log = nullptr);

/// In-place unnormalized Walsh-Hadamard transform; applying it twice
/// multiplies by the length. Length must be a power of two.
void wht_inplace(std::vector<double>& v);
std::vector<double> wht(std::vector<double> v);

/// Probability vector over the 2^m symbols. On the BEC every message is
/// uniform over a subspace (equal nonzero entries, support closed under
/// addition, transform an indicator of the orthogonal complement).
struct ProbMessage {
    std::vector<double> values;

    static ProbMessage uniform_over(const SubspaceBasis& s);

    int dim() const;                  // log2 of the support size
    SubspaceBasis support(int m) const;
    /// Throws std::logic_error unless the three BEC message properties hold.
    void check_bec_form(int m) const;
};

/// Reference decoder over full probability vectors with the check-node
/// convolution done in the transform domain. On BEC inputs its message
/// supports coincide with the subspace decoder's at every edge and
/// iteration; the BEC message form is asserted after every step.
DecodeTrace bp_decode_probvec(const TannerGraph& g, const std::vector<ProbMessage>& init,
                              int max_iter, int record_iters = 0,
                              MessageLog* log = nullptr);

/// Channel messages for the probability-vector decoder.
std::vector<ProbMessage> channel_prob_messages(const std::vector<SubspaceBasis>& init);

}  // namespace nbldpc
