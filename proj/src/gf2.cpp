#include "nbldpc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace nbldpc {

namespace {

void check_cols(int cols) {
    if (cols < 1 || cols > 64) {
        throw std::invalid_argument("BitMatrix: cols must be in [1, 64]");
    }
}

}  // namespace

BitMatrix::BitMatrix(int rows, int cols) : cols_(cols), bits_(rows, 0) {
    check_cols(cols);
    if (rows < 0) throw std::invalid_argument("BitMatrix: negative row count");
}

BitMatrix BitMatrix::from_rows(int cols, std::vector<std::uint64_t> rows) {
    check_cols(cols);
    const std::uint64_t mask = (cols == 64) ? ~0ull : ((1ull << cols) - 1);
    for (std::uint64_t r : rows) {
        if (r & ~mask) throw std::invalid_argument("BitMatrix: row bits exceed cols");
    }
    BitMatrix out;
    out.cols_ = cols;
    out.bits_ = std::move(rows);
    return out;
}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.bits_[i] = 1ull << i;
    return m;
}

void BitMatrix::set(int r, int c, bool v) {
    if (v) {
        bits_[r] |= 1ull << c;
    } else {
        bits_[r] &= ~(1ull << c);
    }
}

std::uint64_t BitMatrix::apply(std::uint64_t x) const {
    std::uint64_t y = 0;
    for (int i = 0; i < rows(); ++i) {
        y |= static_cast<std::uint64_t>(std::popcount(bits_[i] & x) & 1) << i;
    }
    return y;
}

BitMatrix BitMatrix::multiply(const BitMatrix& other) const {
    if (cols_ != other.rows()) {
        throw std::invalid_argument("BitMatrix::multiply: dimension mismatch");
    }
    BitMatrix out(rows(), other.cols());
    for (int i = 0; i < rows(); ++i) {
        std::uint64_t acc = 0;
        std::uint64_t r = bits_[i];
        while (r) {
            const int j = std::countr_zero(r);
            acc ^= other.bits_[j];
            r &= r - 1;
        }
        out.bits_[i] = acc;
    }
    return out;
}

BitMatrix BitMatrix::inverse() const {
    const int n = rows();
    if (n != cols_) throw std::invalid_argument("BitMatrix::inverse: not square");
    // Gauss-Jordan on [A | I].
    std::vector<std::uint64_t> a(bits_);
    std::vector<std::uint64_t> inv(n);
    for (int i = 0; i < n; ++i) inv[i] = 1ull << i;
    int pivot_row = 0;
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int r = pivot_row; r < n; ++r) {
            if ((a[r] >> col) & 1u) { sel = r; break; }
        }
        if (sel < 0) throw std::invalid_argument("BitMatrix::inverse: singular matrix");
        std::swap(a[sel], a[pivot_row]);
        std::swap(inv[sel], inv[pivot_row]);
        for (int r = 0; r < n; ++r) {
            if (r != pivot_row && ((a[r] >> col) & 1u)) {
                a[r] ^= a[pivot_row];
                inv[r] ^= inv[pivot_row];
            }
        }
        ++pivot_row;
    }
    return BitMatrix::from_rows(n, std::move(inv));
}

std::string BitMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows(); ++i) {
        for (int j = 0; j < cols_; ++j) {
            os << (get(i, j) ? '1' : '0');
            if (j + 1 < cols_) os << ' ';
        }
        os << '\n';
    }
    return os.str();
}

RrefResult rref(const BitMatrix& mat) {
    std::vector<std::uint64_t> rows(mat.rows());
    for (int i = 0; i < mat.rows(); ++i) rows[i] = mat.row_bits(i);

    int rank = 0;
    for (int col = 0; col < mat.cols() && rank < mat.rows(); ++col) {
        int sel = -1;
        for (int r = rank; r < mat.rows(); ++r) {
            if ((rows[r] >> col) & 1u) { sel = r; break; }
        }
        if (sel < 0) continue;
        std::swap(rows[sel], rows[rank]);
        for (int r = 0; r < mat.rows(); ++r) {
            if (r != rank && ((rows[r] >> col) & 1u)) rows[r] ^= rows[rank];
        }
        ++rank;
    }
    BitMatrix out = BitMatrix::from_rows(mat.cols(), std::move(rows));
    return RrefResult{std::move(out), rank};
}

SubspaceBasis::SubspaceBasis(int ambient_dim)
    : ambient_(ambient_dim), basis_(0, ambient_dim) {
    if (ambient_dim < 1 || ambient_dim > 64) {
        throw std::invalid_argument("SubspaceBasis: ambient dim must be in [1, 64]");
    }
}

SubspaceBasis::SubspaceBasis(int ambient, BitMatrix canonical_basis)
    : ambient_(ambient), basis_(std::move(canonical_basis)) {}

SubspaceBasis SubspaceBasis::full(int ambient_dim) {
    return span_of(BitMatrix::identity(ambient_dim));
}

SubspaceBasis SubspaceBasis::span_of(const BitMatrix& rows) {
    auto [reduced, rank] = rref(rows);
    BitMatrix basis(rank, rows.cols());
    for (int i = 0; i < rank; ++i) basis.set_row(i, reduced.row_bits(i));
    return SubspaceBasis(rows.cols(), std::move(basis));
}

bool SubspaceBasis::contains(std::uint64_t v) const {
    // Reduce v against the canonical basis; membership iff it vanishes.
    for (int i = 0; i < basis_.rows(); ++i) {
        const std::uint64_t row = basis_.row_bits(i);
        const int pivot = std::countr_zero(row);
        if ((v >> pivot) & 1u) v ^= row;
    }
    return v == 0;
}

std::vector<std::uint64_t> SubspaceBasis::elements() const {
    const int k = dim();
    std::vector<std::uint64_t> out;
    out.reserve(1ull << k);
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
        std::uint64_t v = 0;
        for (int i = 0; i < k; ++i) {
            if ((mask >> i) & 1u) v ^= basis_.row_bits(i);
        }
        out.push_back(v);
    }
    return out;
}

SubspaceBasis null_space(const BitMatrix& mat) {
    const int m = mat.cols();
    auto [reduced, rank] = rref(mat);

    std::vector<int> pivot_col(rank);
    std::uint64_t pivot_mask = 0;
    for (int i = 0; i < rank; ++i) {
        pivot_col[i] = std::countr_zero(reduced.row_bits(i));
        pivot_mask |= 1ull << pivot_col[i];
    }

    BitMatrix kernel(m - rank, m);
    int out = 0;
    for (int c = 0; c < m; ++c) {
        if ((pivot_mask >> c) & 1u) continue;
        std::uint64_t v = 1ull << c;
        for (int i = 0; i < rank; ++i) {
            if (reduced.get(i, c)) v |= 1ull << pivot_col[i];
        }
        kernel.set_row(out++, v);
    }
    return SubspaceBasis::span_of(kernel);
}

SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw std::invalid_argument("subspace_sum: ambient dimension mismatch");
    }
    BitMatrix stacked(a.dim() + b.dim(), a.ambient_dim());
    for (int i = 0; i < a.dim(); ++i) stacked.set_row(i, a.basis().row_bits(i));
    for (int i = 0; i < b.dim(); ++i) stacked.set_row(a.dim() + i, b.basis().row_bits(i));
    return SubspaceBasis::span_of(stacked);
}

SubspaceBasis subspace_intersection(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw std::invalid_argument("subspace_intersection: ambient dimension mismatch");
    }
    return orthogonal_complement(
        subspace_sum(orthogonal_complement(a), orthogonal_complement(b)));
}

SubspaceBasis orthogonal_complement(const SubspaceBasis& a) {
    return null_space(a.basis());
}

SubspaceBasis apply_linear_map(const BitMatrix& w, const SubspaceBasis& s) {
    if (w.cols() != s.ambient_dim() || w.rows() != s.ambient_dim()) {
        throw std::invalid_argument("apply_linear_map: shape mismatch");
    }
    BitMatrix image(s.dim(), s.ambient_dim());
    for (int i = 0; i < s.dim(); ++i) {
        image.set_row(i, w.apply(s.basis().row_bits(i)));
    }
    return SubspaceBasis::span_of(image);
}

std::vector<SubspaceBasis> enumerate_subspaces(int m, int k) {
    if (m < 1 || m > 64) throw std::invalid_argument("enumerate_subspaces: bad m");
    if (k < 0 || k > m) throw std::invalid_argument("enumerate_subspaces: k out of range");

    std::vector<SubspaceBasis> out;
    if (k == 0) {
        out.emplace_back(m);
        return out;
    }

    // Walk every canonical form directly: choose pivot columns
    // c_0 < ... < c_{k-1}, then fill the free entries (row i may have
    // arbitrary bits in non-pivot columns right of c_i).
    std::vector<int> pivots(k);
    for (int i = 0; i < k; ++i) pivots[i] = i;

    auto emit = [&](const std::vector<int>& piv) {
        std::uint64_t pivot_mask = 0;
        for (int c : piv) pivot_mask |= 1ull << c;

        std::vector<std::pair<int, int>> free_pos;  // (row, col)
        for (int i = 0; i < k; ++i) {
            for (int c = piv[i] + 1; c < m; ++c) {
                if (!((pivot_mask >> c) & 1u)) free_pos.emplace_back(i, c);
            }
        }
        const std::size_t nfree = free_pos.size();
        for (std::uint64_t mask = 0; mask < (1ull << nfree); ++mask) {
            BitMatrix basis(k, m);
            for (int i = 0; i < k; ++i) basis.set(i, piv[i], true);
            for (std::size_t f = 0; f < nfree; ++f) {
                if ((mask >> f) & 1u) basis.set(free_pos[f].first, free_pos[f].second, true);
            }
            out.push_back(SubspaceBasis::span_of(basis));
        }
    };

    // Iterate k-combinations of {0..m-1} in lexicographic order.
    while (true) {
        emit(pivots);
        int i = k - 1;
        while (i >= 0 && pivots[i] == m - k + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    return out;
}

BitMatrix random_invertible(int m, std::mt19937_64& rng) {
    if (m < 1 || m > 64) throw std::invalid_argument("random_invertible: bad m");
    const std::uint64_t mask = (m == 64) ? ~0ull : ((1ull << m) - 1);
    while (true) {
        BitMatrix candidate(m, m);
        for (int i = 0; i < m; ++i) candidate.set_row(i, rng() & mask);
        if (rref(candidate).rank == m) return candidate;
    }
}

namespace {

int poly_degree(std::uint64_t poly) {
    return poly == 0 ? -1 : 63 - std::countl_zero(poly);
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
    const int db = poly_degree(b);
    int da = poly_degree(a);
    while (da >= db) {
        a ^= b << (da - db);
        da = poly_degree(a);
    }
    return a;
}

}  // namespace

bool is_irreducible(std::uint64_t poly, int degree) {
    if (degree < 1 || poly_degree(poly) != degree) return false;
    if ((poly & 1u) == 0) return degree == 1 && poly == 2;  // divisible by z
    for (int d = 1; 2 * d <= degree; ++d) {
        for (std::uint64_t f = (1ull << d); f < (1ull << (d + 1)); ++f) {
            if (poly_mod(poly, f) == 0) return false;
        }
    }
    return true;
}

std::uint64_t gf2m_multiply(std::uint64_t a, std::uint64_t b, std::uint64_t poly, int m) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if ((a >> m) & 1u) a ^= poly;
    }
    return r;
}

BitMatrix field_multiplication_matrix(int m, std::uint64_t primitive_poly,
                                      std::uint64_t field_elem) {
    if (m < 1 || m > 16) {
        throw std::invalid_argument("field_multiplication_matrix: m must be in [1, 16]");
    }
    if (!is_irreducible(primitive_poly, m)) {
        throw std::invalid_argument("field_multiplication_matrix: polynomial is reducible");
    }
    if (field_elem == 0 || field_elem >= (1ull << m)) {
        throw std::invalid_argument("field_multiplication_matrix: element out of range");
    }
    BitMatrix w(m, m);
    for (int j = 0; j < m; ++j) {
        const std::uint64_t col = gf2m_multiply(field_elem, 1ull << j, primitive_poly, m);
        for (int i = 0; i < m; ++i) {
            if ((col >> i) & 1u) w.set(i, j, true);
        }
    }
    return w;
}

}  // namespace nbldpc
