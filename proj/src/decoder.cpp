#include "nbldpc/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace nbldpc {

namespace {

// Intersection of the subspaces whose orthogonal complements' basis rows
// are stacked in `perp_rows`.
SubspaceBasis intersect_from_perps(const BitMatrix& perp_rows) {
    return orthogonal_complement(SubspaceBasis::span_of(perp_rows));
}

}  // namespace

DecodeTrace bp_decode_subspace(const TannerGraph& g, const std::vector<SubspaceBasis>& init,
                               int max_iter, int record_iters, MessageLog* log) {
    if (static_cast<int>(init.size()) != g.n_var) {
        throw std::invalid_argument("bp_decode_subspace: one initial message per symbol required");
    }
    const int m = g.m;
    const int n_edges = g.edge_count();
    record_iters = std::min(record_iters, max_iter);

    std::vector<SubspaceBasis> channel_perp;
    channel_perp.reserve(g.n_var);
    for (const SubspaceBasis& s : init) channel_perp.push_back(orthogonal_complement(s));

    std::vector<SubspaceBasis> v2c(n_edges, SubspaceBasis::zero(m));
    std::vector<SubspaceBasis> c2v(n_edges, SubspaceBasis::full(m));
    std::vector<SubspaceBasis> c2v_perp(n_edges, SubspaceBasis::zero(m));

    DecodeTrace trace;

    // Decisions with no check information: the channel subspaces themselves.
    auto count_residuals = [&](auto&& decision_dim) {
        trace.residual_symbols = 0;
        trace.residual_bits = 0;
        for (int v = 0; v < g.n_var; ++v) {
            const int d = decision_dim(v);
            if (d > 0) ++trace.residual_symbols;
            trace.residual_bits += d;
        }
    };
    count_residuals([&](int v) { return init[v].dim(); });
    bool done = false;
    if (trace.residual_symbols == 0) {
        trace.success = true;
        trace.iterations_used = 0;
        done = true;
    }

    long prev_dim_total = -1;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if (done && iter > record_iters) break;

        // Variable side: intersect the channel subspace with the other
        // edges' incoming subspaces, then push through the edge label.
        std::vector<long> hist(m + 1, 0);
        long dim_total = 0;
        for (int v = 0; v < g.n_var; ++v) {
            const auto& edges = g.var_edges[v];
            for (int out : edges) {
                BitMatrix stack = channel_perp[v].basis();
                for (int other : edges) {
                    if (other == out) continue;
                    const BitMatrix& b = c2v_perp[other].basis();
                    for (int r = 0; r < b.rows(); ++r) stack.append_row(b.row_bits(r));
                }
                const SubspaceBasis extrinsic = intersect_from_perps(stack);
                v2c[out] = apply_linear_map(g.edges[out].label, extrinsic);
                ++hist[v2c[out].dim()];
                dim_total += v2c[out].dim();
            }
        }
        trace.dim_histogram.push_back(std::move(hist));

        // Check side: subspace sum of the other edges' messages, pulled
        // back through the inverse label.
        for (int c = 0; c < g.n_chk; ++c) {
            const auto& edges = g.chk_edges[c];
            for (int out : edges) {
                BitMatrix stack(0, m);
                for (int other : edges) {
                    if (other == out) continue;
                    const BitMatrix& b = v2c[other].basis();
                    for (int r = 0; r < b.rows(); ++r) stack.append_row(b.row_bits(r));
                }
                c2v[out] = apply_linear_map(g.edges[out].label_inv, SubspaceBasis::span_of(stack));
                c2v_perp[out] = orthogonal_complement(c2v[out]);
                dim_total += c2v[out].dim();
            }
        }

        if (log) {
            log->v2c.push_back(v2c);
            log->c2v.push_back(c2v);
        }

        if (!done) {
            // Full decisions: channel plus every incoming message.
            count_residuals([&](int v) {
                BitMatrix stack = channel_perp[v].basis();
                for (int e : g.var_edges[v]) {
                    const BitMatrix& b = c2v_perp[e].basis();
                    for (int r = 0; r < b.rows(); ++r) stack.append_row(b.row_bits(r));
                }
                return m - rref(stack).rank;
            });
            if (trace.residual_symbols == 0) {
                trace.success = true;
                trace.iterations_used = iter;
                done = true;
            } else if (dim_total == prev_dim_total) {
                // Message subspaces only shrink, so equal dimension totals
                // mean a fixed point.
                trace.stalled = true;
                trace.iterations_used = iter;
                done = true;
            }
            prev_dim_total = dim_total;
        }
    }
    if (!done) trace.iterations_used = max_iter;
    return trace;
}

void wht_inplace(std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("wht: length must be a power of two");
    }
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t block = 0; block < n; block += 2 * len) {
            for (std::size_t i = block; i < block + len; ++i) {
                const double a = v[i];
                const double b = v[i + len];
                v[i] = a + b;
                v[i + len] = a - b;
            }
        }
    }
}

std::vector<double> wht(std::vector<double> v) {
    wht_inplace(v);
    return v;
}

ProbMessage ProbMessage::uniform_over(const SubspaceBasis& s) {
    ProbMessage msg;
    msg.values.assign(1ull << s.ambient_dim(), 0.0);
    const double w = std::exp2(static_cast<double>(-s.dim()));
    for (std::uint64_t alpha : s.elements()) msg.values[alpha] = w;
    return msg;
}

namespace {
constexpr double kSupportTol = 1e-12;
}

int ProbMessage::dim() const {
    int count = 0;
    for (double v : values) count += (v > kSupportTol);
    if (count == 0 || (count & (count - 1)) != 0) {
        throw std::logic_error("ProbMessage: support size is not a power of two");
    }
    return std::countr_zero(static_cast<unsigned>(count));
}

SubspaceBasis ProbMessage::support(int m) const {
    BitMatrix rows(0, m);
    for (std::size_t alpha = 0; alpha < values.size(); ++alpha) {
        if (values[alpha] > kSupportTol && alpha != 0) rows.append_row(alpha);
    }
    return SubspaceBasis::span_of(rows);
}

void ProbMessage::check_bec_form(int m) const {
    if (values.size() != (1ull << m)) {
        throw std::logic_error("ProbMessage: wrong length");
    }
    // Equal nonzero entries.
    double nonzero = -1.0;
    for (double v : values) {
        if (v <= kSupportTol) continue;
        if (nonzero < 0.0) {
            nonzero = v;
        } else if (std::abs(v - nonzero) > 1e-9 * nonzero) {
            throw std::logic_error("ProbMessage: nonzero entries differ");
        }
    }
    if (values[0] <= kSupportTol) {
        throw std::logic_error("ProbMessage: zero symbol not in support");
    }
    // Support closed under addition.
    const SubspaceBasis v = support(m);
    int count = 0;
    for (double x : values) count += (x > kSupportTol);
    if ((1 << v.dim()) != count) {
        throw std::logic_error("ProbMessage: support is not a subspace");
    }
    // Transform proportional to the indicator of the orthogonal complement.
    std::vector<double> phi = wht(values);
    const SubspaceBasis perp = orthogonal_complement(v);
    const double scale = phi[0];
    for (std::size_t alpha = 0; alpha < phi.size(); ++alpha) {
        const double expect = perp.contains(alpha) ? scale : 0.0;
        if (std::abs(phi[alpha] - expect) > 1e-9 * std::max(1.0, std::abs(scale))) {
            throw std::logic_error("ProbMessage: transform is not a scaled complement indicator");
        }
    }
}

std::vector<ProbMessage> channel_prob_messages(const std::vector<SubspaceBasis>& init) {
    std::vector<ProbMessage> out;
    out.reserve(init.size());
    for (const SubspaceBasis& s : init) out.push_back(ProbMessage::uniform_over(s));
    return out;
}

namespace {

void normalize(std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    if (sum <= 0.0) throw std::logic_error("probvec decoder: message vanished");
    for (double& x : v) x /= sum;
}

// out[alpha] = in[map(alpha)]
std::vector<double> permute_by(const BitMatrix& map, const std::vector<double>& in) {
    std::vector<double> out(in.size());
    for (std::uint64_t alpha = 0; alpha < in.size(); ++alpha) {
        out[alpha] = in[map.apply(alpha)];
    }
    return out;
}

}  // namespace

DecodeTrace bp_decode_probvec(const TannerGraph& g, const std::vector<ProbMessage>& init,
                              int max_iter, int record_iters, MessageLog* log) {
    if (static_cast<int>(init.size()) != g.n_var) {
        throw std::invalid_argument("bp_decode_probvec: one initial message per symbol required");
    }
    const int m = g.m;
    const std::size_t q = 1ull << m;
    const int n_edges = g.edge_count();
    record_iters = std::min(record_iters, max_iter);

    for (const ProbMessage& msg : init) msg.check_bec_form(m);

    std::vector<std::vector<double>> v2c(n_edges), c2v(n_edges, std::vector<double>(q, 1.0 / q));
    DecodeTrace trace;

    auto decision_dim = [&](int v) {
        std::vector<double> dec = init[v].values;
        for (int e : g.var_edges[v]) {
            for (std::size_t a = 0; a < q; ++a) dec[a] *= c2v[e][a];
        }
        normalize(dec);
        ProbMessage msg{std::move(dec)};
        msg.check_bec_form(m);
        return msg.dim();
    };

    auto count_residuals = [&](auto&& dim_of) {
        trace.residual_symbols = 0;
        trace.residual_bits = 0;
        for (int v = 0; v < g.n_var; ++v) {
            const int d = dim_of(v);
            if (d > 0) ++trace.residual_symbols;
            trace.residual_bits += d;
        }
    };

    count_residuals([&](int v) { return init[v].dim(); });
    bool done = false;
    if (trace.residual_symbols == 0) {
        trace.success = true;
        trace.iterations_used = 0;
        done = true;
    }

    long prev_dim_total = -1;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if (done && iter > record_iters) break;

        std::vector<long> hist(m + 1, 0);
        long dim_total = 0;

        // Variable side, then the edge action psi(f^{-1}(alpha)).
        for (int v = 0; v < g.n_var; ++v) {
            const auto& edges = g.var_edges[v];
            for (int out : edges) {
                std::vector<double> msg = init[v].values;
                for (int other : edges) {
                    if (other == out) continue;
                    for (std::size_t a = 0; a < q; ++a) msg[a] *= c2v[other][a];
                }
                normalize(msg);
                v2c[out] = permute_by(g.edges[out].label_inv, msg);
                ProbMessage pm{v2c[out]};
                pm.check_bec_form(m);
                ++hist[pm.dim()];
                dim_total += pm.dim();
            }
        }
        trace.dim_histogram.push_back(std::move(hist));

        // Check side: product of transforms, inverse transform, then the
        // inverse edge action psi(f(alpha)).
        for (int c = 0; c < g.n_chk; ++c) {
            const auto& edges = g.chk_edges[c];
            for (int out : edges) {
                std::vector<double> phi(q, 1.0);
                for (int other : edges) {
                    if (other == out) continue;
                    const std::vector<double> t = wht(v2c[other]);
                    for (std::size_t a = 0; a < q; ++a) phi[a] *= t[a];
                }
                wht_inplace(phi);  // inverse up to the factor q
                for (double& x : phi) x /= static_cast<double>(q);
                normalize(phi);
                c2v[out] = permute_by(g.edges[out].label, phi);
                ProbMessage pm{c2v[out]};
                pm.check_bec_form(m);
                dim_total += pm.dim();
            }
        }

        if (log) {
            std::vector<SubspaceBasis> v2c_sub, c2v_sub;
            v2c_sub.reserve(n_edges);
            c2v_sub.reserve(n_edges);
            for (int e = 0; e < n_edges; ++e) {
                v2c_sub.push_back(ProbMessage{v2c[e]}.support(m));
                c2v_sub.push_back(ProbMessage{c2v[e]}.support(m));
            }
            log->v2c.push_back(std::move(v2c_sub));
            log->c2v.push_back(std::move(c2v_sub));
        }

        if (!done) {
            count_residuals(decision_dim);
            if (trace.residual_symbols == 0) {
                trace.success = true;
                trace.iterations_used = iter;
                done = true;
            } else if (dim_total == prev_dim_total) {
                trace.stalled = true;
                trace.iterations_used = iter;
                done = true;
            }
            prev_dim_total = dim_total;
        }
    }
    if (!done) trace.iterations_used = max_iter;
    return trace;
}

}  // namespace nbldpc
