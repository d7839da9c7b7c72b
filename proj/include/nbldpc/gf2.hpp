#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nbldpc {

/// Dense matrix over GF(2). Rows are bit-packed into 64-bit words
/// (column j of row r is bit j of row_bits(r)), so cols <= 64.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols);

    static BitMatrix identity(int n);
    static BitMatrix from_rows(int cols, std::vector<std::uint64_t> rows);

    int rows() const { return static_cast<int>(bits_.size()); }
    int cols() const { return cols_; }

    bool get(int r, int c) const { return (bits_[r] >> c) & 1u; }
    void set(int r, int c, bool v);

    std::uint64_t row_bits(int r) const { return bits_[r]; }
    void set_row(int r, std::uint64_t bits) { bits_[r] = bits; }
    void append_row(std::uint64_t bits) { bits_.push_back(bits); }

    /// y = M x with vectors encoded as bit masks (bit i = coordinate i).
    std::uint64_t apply(std::uint64_t x) const;

    BitMatrix multiply(const BitMatrix& other) const;

    /// Gauss-Jordan inverse. Throws std::invalid_argument if singular
    /// or not square.
    BitMatrix inverse() const;

    bool operator==(const BitMatrix&) const = default;

    std::string to_string() const;

private:
    int cols_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct RrefResult {
    BitMatrix matrix;  // same shape, zero rows moved to the bottom
    int rank = 0;
};

/// Reduced row-echelon form over GF(2); row space is preserved.
RrefResult rref(const BitMatrix& mat);

/// A subspace of GF(2)^m held as its unique canonical basis: the reduced
/// row-echelon matrix with zero rows dropped. Two values compare equal
/// iff they span the same subspace.
class SubspaceBasis {
public:
    /// Zero subspace of GF(2)^m.
    explicit SubspaceBasis(int ambient_dim);

    static SubspaceBasis full(int ambient_dim);
    static SubspaceBasis zero(int ambient_dim) { return SubspaceBasis(ambient_dim); }

    /// Canonicalizes the row space of `rows` (ambient dim = rows.cols()).
    static SubspaceBasis span_of(const BitMatrix& rows);

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.rows(); }

    const BitMatrix& basis() const { return basis_; }

    bool contains(std::uint64_t v) const;

    /// All 2^dim member vectors; intended for small dims (tests, oracles).
    std::vector<std::uint64_t> elements() const;

    bool operator==(const SubspaceBasis&) const = default;

private:
    SubspaceBasis(int ambient, BitMatrix canonical_basis);

    int ambient_;
    BitMatrix basis_;
};

/// Canonical basis of {x : mat x^T = 0}; ambient dimension = mat.cols().
SubspaceBasis null_space(const BitMatrix& mat);

/// V_a + V_b = {u + v : u in V_a, v in V_b}.
SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b);

/// V_a ∩ V_b, computed via (V_a ∩ V_b)^perp = V_a^perp + V_b^perp.
SubspaceBasis subspace_intersection(const SubspaceBasis& a, const SubspaceBasis& b);

/// {w : w·v = 0 for all v in V}.
SubspaceBasis orthogonal_complement(const SubspaceBasis& a);

/// Image of the subspace under v -> W v.
SubspaceBasis apply_linear_map(const BitMatrix& w, const SubspaceBasis& s);

/// All k-dimensional subspaces of GF(2)^m, each in canonical form.
/// Count equals gaussian_binomial(m, k); intended for m <= 5.
std::vector<SubspaceBasis> enumerate_subspaces(int m, int k);

/// Uniform sample from GL(m, GF(2)) by rejection; acceptance probability
/// prod_{l>=1}(1 - 2^-l) > 0.288.
BitMatrix random_invertible(int m, std::mt19937_64& rng);

/// Trial division by every polynomial of degree 1..m/2.
bool is_irreducible(std::uint64_t poly, int degree);

/// Multiplication in GF(2^m) with the field defined by `poly`
/// (bit mask, LSB = constant term, bit m set).
std::uint64_t gf2m_multiply(std::uint64_t a, std::uint64_t b, std::uint64_t poly, int m);

/// m x m matrix of multiplication by `field_elem` in the polynomial basis
/// (1, z, ..., z^{m-1}); invertible for every nonzero element.
/// Throws std::invalid_argument for a reducible polynomial or zero element.
BitMatrix field_multiplication_matrix(int m, std::uint64_t primitive_poly,
                                      std::uint64_t field_elem);

}  // namespace nbldpc
