#include "qltc/gf2.h"

#include <algorithm>
#include <utility>

namespace qltc {

namespace {

inline void xor_words_from(uint64_t *dst, const uint64_t *src, size_t start, size_t n) {
    for (size_t w = start; w < n; ++w) {
        dst[w] ^= src[w];
    }
}

void require(bool ok, const char *what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

}  // namespace

BitVector BitVector::from_support(size_t len, const std::vector<size_t> &support) {
    BitVector v(len);
    for (size_t i : support) {
        require(i < len, "BitVector::from_support: position out of range");
        v.flip(i);
    }
    return v;
}

BitVector &BitVector::operator^=(const BitVector &other) {
    require(len_ == other.len_, "BitVector xor: length mismatch");
    xor_words_from(words_.data(), other.words_.data(), 0, words_.size());
    return *this;
}

size_t BitVector::weight() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

bool BitVector::any() const {
    for (uint64_t w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

bool BitVector::dot(const BitVector &other) const {
    require(len_ == other.len_, "BitVector dot: length mismatch");
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); ++w) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

size_t BitVector::first_one() const {
    for (size_t w = 0; w < words_.size(); ++w) {
        if (words_[w]) {
            return w * 64 + std::countr_zero(words_[w]);
        }
    }
    return len_;
}

std::vector<size_t> BitVector::support() const {
    std::vector<size_t> out;
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t bits = words_[w];
        while (bits) {
            out.push_back(w * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return out;
}

std::string BitVector::str() const {
    std::string s(len_, '0');
    for (size_t i = 0; i < len_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        m.set(i, i);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(size_t cols, const std::vector<std::vector<size_t>> &supports) {
    BitMatrix m(supports.size(), cols);
    for (size_t r = 0; r < supports.size(); ++r) {
        for (size_t c : supports[r]) {
            require(c < cols, "BitMatrix::from_rows: column out of range");
            m.flip(r, c);
        }
    }
    return m;
}

BitMatrix BitMatrix::from_vectors(size_t cols, const std::vector<BitVector> &rows) {
    BitMatrix m(0, cols);
    for (const auto &v : rows) {
        m.append_row(v);
    }
    return m;
}

void BitMatrix::append_row(const BitVector &v) {
    require(v.size() == cols_, "BitMatrix::append_row: length mismatch");
    rows_.push_back(v);
}

std::vector<std::vector<size_t>> BitMatrix::sparse_rows() const {
    std::vector<std::vector<size_t>> out;
    out.reserve(rows_.size());
    for (const auto &r : rows_) {
        out.push_back(r.support());
    }
    return out;
}

std::vector<size_t> BitMatrix::column_weights() const {
    std::vector<size_t> w(cols_, 0);
    for (const auto &r : rows_) {
        for (size_t c : r.support()) {
            ++w[c];
        }
    }
    return w;
}

size_t BitMatrix::max_row_weight() const {
    size_t best = 0;
    for (const auto &r : rows_) {
        best = std::max(best, r.weight());
    }
    return best;
}

size_t BitMatrix::max_column_weight() const {
    auto w = column_weights();
    return w.empty() ? 0 : *std::max_element(w.begin(), w.end());
}

size_t BitMatrix::nnz() const {
    size_t total = 0;
    for (const auto &r : rows_) {
        total += r.weight();
    }
    return total;
}

bool BitMatrix::is_zero() const {
    return std::none_of(rows_.begin(), rows_.end(), [](const BitVector &r) { return r.any(); });
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_.size());
    for (size_t r = 0; r < rows_.size(); ++r) {
        for (size_t c : rows_[r].support()) {
            t.set(c, r);
        }
    }
    return t;
}

BitMatrix BitMatrix::select_columns(const std::vector<size_t> &cols) const {
    BitMatrix out(rows_.size(), cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        require(cols[j] < cols_, "select_columns: column out of range");
        for (size_t r = 0; r < rows_.size(); ++r) {
            if (rows_[r].get(cols[j])) {
                out.set(r, j);
            }
        }
    }
    return out;
}

BitVector BitMatrix::multiply(const BitVector &x) const {
    require(x.size() == cols_, "BitMatrix::multiply: length mismatch");
    BitVector out(rows_.size());
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].dot(x)) {
            out.set(r);
        }
    }
    return out;
}

EchelonForm rref(const BitMatrix &m) {
    EchelonForm ef;
    std::vector<BitVector> rows = m.row_vectors();
    size_t nw = (m.cols() + 63) / 64;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
        size_t p = r;
        while (p < rows.size() && !rows[p].get(c)) {
            ++p;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[p]);
        const uint64_t *piv = rows[r].data();
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i].get(c)) {
                xor_words_from(rows[i].data(), piv, c >> 6, nw);
            }
        }
        ef.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    ef.rows = std::move(rows);
    return ef;
}

size_t rank(const BitMatrix &m) {
    std::vector<BitVector> rows = m.row_vectors();
    size_t nw = (m.cols() + 63) / 64;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
        size_t p = r;
        while (p < rows.size() && !rows[p].get(c)) {
            ++p;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[p]);
        const uint64_t *piv = rows[r].data();
        for (size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i].get(c)) {
                xor_words_from(rows[i].data(), piv, c >> 6, nw);
            }
        }
        ++r;
    }
    return r;
}

RankKernel rank_kernel(const BitMatrix &m) {
    EchelonForm ef = rref(m);
    RankKernel out;
    out.rank = ef.pivots.size();
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : ef.pivots) {
        is_pivot[p] = true;
    }
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        BitVector v(m.cols());
        v.set(f);
        for (size_t i = 0; i < ef.pivots.size(); ++i) {
            if (ef.rows[i].get(f)) {
                v.set(ef.pivots[i]);
            }
        }
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

BitMatrix matmul(const BitMatrix &a, const BitMatrix &b) {
    require(a.cols() == b.rows(), "matmul: dimension mismatch");
    BitMatrix out(a.rows(), b.cols());
    size_t nw = (b.cols() + 63) / 64;
    for (size_t i = 0; i < a.rows(); ++i) {
        uint64_t *dst = out.row(i).data();
        for (size_t k : a.row(i).support()) {
            xor_words_from(dst, b.row(k).data(), 0, nw);
        }
    }
    return out;
}

BitMatrix kronecker(const BitMatrix &a, const BitMatrix &b) {
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    auto bs = b.sparse_rows();
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j : a.row(i).support()) {
            for (size_t k = 0; k < b.rows(); ++k) {
                for (size_t l : bs[k]) {
                    out.set(i * b.rows() + k, j * b.cols() + l);
                }
            }
        }
    }
    return out;
}

BitMatrix hstack(const BitMatrix &a, const BitMatrix &b) {
    require(a.rows() == b.rows(), "hstack: row count mismatch");
    BitMatrix out(a.rows(), a.cols() + b.cols());
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c : a.row(r).support()) {
            out.set(r, c);
        }
        for (size_t c : b.row(r).support()) {
            out.set(r, a.cols() + c);
        }
    }
    return out;
}

BitMatrix vstack(const BitMatrix &a, const BitMatrix &b) {
    require(a.cols() == b.cols(), "vstack: column count mismatch");
    BitMatrix out = a;
    for (const auto &r : b.row_vectors()) {
        out.append_row(r);
    }
    return out;
}

bool row_space_equal(const BitMatrix &a, const BitMatrix &b) {
    require(a.cols() == b.cols(), "row_space_equal: dimension mismatch");
    size_t ra = rank(a);
    if (ra != rank(b)) {
        return false;
    }
    return rank(vstack(a, b)) == ra;
}

bool SpanBasis::insert(BitVector v) {
    v = reduce(std::move(v));
    size_t p = v.first_one();
    if (p == len_) {
        return false;
    }
    pivot_row_[p] = rows_.size();
    rows_.push_back(std::move(v));
    return true;
}

BitVector SpanBasis::reduce(BitVector v) const {
    require(v.size() == len_, "SpanBasis: length mismatch");
    size_t nw = v.num_words();
    for (size_t w = 0; w < nw; ++w) {
        while (true) {
            uint64_t bits = v.data()[w];
            bool progressed = false;
            while (bits) {
                size_t c = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                size_t r = pivot_row_[c];
                if (r != SIZE_MAX) {
                    xor_words_from(v.data(), rows_[r].data(), w, nw);
                    progressed = true;
                    break;
                }
            }
            if (!progressed) {
                break;
            }
        }
    }
    return v;
}

bool SpanBasis::contains(BitVector v) const { return !reduce(std::move(v)).any(); }

}  // namespace qltc
