#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qltc {

class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    static BitVector from_support(size_t len, const std::vector<size_t> &support);

    size_t size() const { return len_; }
    size_t num_words() const { return words_.size(); }
    uint64_t *data() { return words_.data(); }
    const uint64_t *data() const { return words_.data(); }

    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v = true) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= m;
        } else {
            words_[i >> 6] &= ~m;
        }
    }
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVector &operator^=(const BitVector &other);
    bool operator==(const BitVector &other) const = default;

    size_t weight() const;
    bool any() const;
    bool dot(const BitVector &other) const;
    // Index of the lowest set bit, or size() when the vector is zero.
    size_t first_one() const;
    std::vector<size_t> support() const;
    std::string str() const;

   private:
    size_t len_ = 0;
    std::vector<uint64_t> words_;
};

// Rows are held bit-packed; the sparse view is produced on demand from the packed rows
// so the two can never disagree.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static BitMatrix identity(size_t n);
    static BitMatrix from_rows(size_t cols, const std::vector<std::vector<size_t>> &supports);
    static BitMatrix from_vectors(size_t cols, const std::vector<BitVector> &rows);

    size_t rows() const { return rows_.size(); }
    size_t cols() const { return cols_; }

    bool get(size_t r, size_t c) const { return rows_[r].get(c); }
    void set(size_t r, size_t c, bool v = true) { rows_[r].set(c, v); }
    void flip(size_t r, size_t c) { rows_[r].flip(c); }

    const BitVector &row(size_t r) const { return rows_[r]; }
    BitVector &row(size_t r) { return rows_[r]; }
    const std::vector<BitVector> &row_vectors() const { return rows_; }

    void append_row(const BitVector &v);
    std::vector<size_t> row_support(size_t r) const { return rows_[r].support(); }
    std::vector<std::vector<size_t>> sparse_rows() const;

    size_t row_weight(size_t r) const { return rows_[r].weight(); }
    std::vector<size_t> column_weights() const;
    size_t max_row_weight() const;
    size_t max_column_weight() const;
    size_t nnz() const;
    bool is_zero() const;

    BitMatrix transpose() const;
    BitMatrix select_columns(const std::vector<size_t> &cols) const;
    BitVector multiply(const BitVector &x) const;

    bool operator==(const BitMatrix &other) const = default;

   private:
    size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

// Reduced row-echelon basis with pivots in increasing column order.
struct EchelonForm {
    std::vector<BitVector> rows;
    std::vector<size_t> pivots;
};

EchelonForm rref(const BitMatrix &m);

struct RankKernel {
    size_t rank = 0;
    std::vector<BitVector> kernel_basis;
};

RankKernel rank_kernel(const BitMatrix &m);
size_t rank(const BitMatrix &m);

BitMatrix matmul(const BitMatrix &a, const BitMatrix &b);
BitMatrix kronecker(const BitMatrix &a, const BitMatrix &b);
BitMatrix hstack(const BitMatrix &a, const BitMatrix &b);
BitMatrix vstack(const BitMatrix &a, const BitMatrix &b);
bool row_space_equal(const BitMatrix &a, const BitMatrix &b);

// Incremental span with lowest-set-bit pivots; used for membership and independence tests.
class SpanBasis {
   public:
    explicit SpanBasis(size_t len) : len_(len), pivot_row_(len, SIZE_MAX) {}

    size_t dimension() const { return rows_.size(); }
    size_t length() const { return len_; }
    // Returns true when v was independent of the current span and has been added.
    bool insert(BitVector v);
    bool contains(BitVector v) const;
    BitVector reduce(BitVector v) const;

   private:
    size_t len_;
    std::vector<size_t> pivot_row_;
    std::vector<BitVector> rows_;
};

}  // namespace qltc
