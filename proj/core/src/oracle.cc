#include "qltc/oracle.h"

#include <algorithm>
#include <limits>

namespace qltc {

namespace {

void check_budget(size_t exponent, int budget, const char *what) {
    if (exponent > static_cast<size_t>(std::max(budget, 0)) || exponent > 62) {
        throw BudgetExceeded(std::string(what) + ": enumeration of 2^" + std::to_string(exponent) +
                             " exceeds budget 2^" + std::to_string(budget));
    }
}

// Vectors of F2^n orthogonal to the given stabiliser rows, reduced modulo the check rows.
// A vector v in ker(check) lies in rowspace(stabilisers) iff it is orthogonal to all of them.
std::vector<BitVector> logical_tests(const BitMatrix &check, const BitMatrix &stabilisers) {
    SpanBasis span(check.cols());
    for (const auto &r : check.row_vectors()) {
        span.insert(r);
    }
    std::vector<BitVector> tests;
    for (auto &v : rank_kernel(stabilisers).kernel_basis) {
        if (span.insert(v)) {
            tests.push_back(std::move(v));
        }
    }
    return tests;
}

BitVector test_syndrome(const std::vector<BitVector> &tests, const BitVector &v) {
    BitVector out(tests.size());
    for (size_t i = 0; i < tests.size(); ++i) {
        if (tests[i].dot(v)) {
            out.set(i);
        }
    }
    return out;
}

DistanceResult by_kernel_enumeration(const BitMatrix &check, const std::vector<BitVector> &tests) {
    auto kernel = rank_kernel(check).kernel_basis;
    std::vector<BitVector> masks;
    masks.reserve(kernel.size());
    for (const auto &b : kernel) {
        masks.push_back(test_syndrome(tests, b));
    }
    DistanceResult best;
    best.value = std::numeric_limits<size_t>::max();
    best.method = Provenance::Exact;
    BitVector cur(check.cols());
    BitVector mask(tests.size());
    uint64_t total = uint64_t{1} << kernel.size();
    for (uint64_t i = 1; i < total; ++i) {
        size_t bit = std::countr_zero(i);
        cur ^= kernel[bit];
        mask ^= masks[bit];
        if (!mask.any()) {
            continue;
        }
        size_t w = cur.weight();
        if (w < best.value) {
            best.value = w;
            best.witness = cur;
        }
    }
    return best;
}

DistanceResult by_syndrome_table(const BitMatrix &check, const std::vector<BitVector> &tests,
                                 int budget) {
    BitMatrix m = check;
    for (const auto &t : tests) {
        m.append_row(t);
    }
    CosetTable table(m, budget);
    DistanceResult best;
    best.value = std::numeric_limits<size_t>::max();
    best.method = Provenance::Exact;
    uint64_t best_index = 0;
    size_t k = tests.size();
    for (uint64_t e = 1; e < (uint64_t{1} << k); ++e) {
        BitVector s(m.rows());
        for (size_t i = 0; i < k; ++i) {
            if ((e >> i) & 1) {
                s.set(check.rows() + i);
            }
        }
        uint64_t idx = table.index_of(s);
        size_t w = table.leader_weight(idx);
        if (w < best.value) {
            best.value = w;
            best_index = idx;
        }
    }
    best.witness = table.leader(best_index);
    return best;
}

// Minimum-weight nontrivial words are connected in the graph joining qubits that share a
// check, so it suffices to enumerate connected supports (each exactly once, ESU order).
class ConnectedSearch {
   public:
    ConnectedSearch(const BitMatrix &check, const std::vector<BitVector> &tests, uint64_t node_budget)
        : n_(check.cols()), node_budget_(node_budget) {
        BitMatrix ct = check.transpose();
        col_rows_ = ct.sparse_rows();
        for (const auto &c : col_rows_) {
            max_col_weight_ = std::max(max_col_weight_, c.size());
        }
        auto rows = check.sparse_rows();
        adj_.resize(n_);
        for (const auto &r : rows) {
            for (size_t a : r) {
                for (size_t b : r) {
                    if (a != b) {
                        adj_[a].push_back(b);
                    }
                }
            }
        }
        for (auto &a : adj_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        masks_.reserve(n_);
        for (size_t q = 0; q < n_; ++q) {
            masks_.push_back(test_syndrome(tests, BitVector::from_support(n_, {q})));
        }
        parity_.assign(check.rows(), 0);
        in_sub_.assign(n_, 0);
        near_.assign(n_, 0);
        mask_ = BitVector(tests.size());
    }

    // Returns true when the search over supports of size exactly w completed.
    bool run(size_t w) {
        cap_ = w;
        for (size_t v = 0; v < n_; ++v) {
            std::vector<size_t> ext;
            for (size_t u : adj_[v]) {
                if (u > v) {
                    ext.push_back(u);
                }
            }
            add(v);
            bool ok = extend(ext, v);
            remove(v);
            if (!ok || found_) {
                return ok;
            }
        }
        return true;
    }

    bool found() const { return found_; }
    const std::vector<size_t> &witness() const { return witness_; }

   private:
    void add(size_t q) {
        sub_.push_back(q);
        in_sub_[q] = 1;
        for (size_t u : adj_[q]) {
            ++near_[u];
        }
        for (size_t r : col_rows_[q]) {
            parity_[r] ^= 1;
            syndrome_weight_ += parity_[r] ? 1 : -1;
        }
        mask_ ^= masks_[q];
    }

    void remove(size_t q) {
        sub_.pop_back();
        in_sub_[q] = 0;
        for (size_t u : adj_[q]) {
            --near_[u];
        }
        for (size_t r : col_rows_[q]) {
            parity_[r] ^= 1;
            syndrome_weight_ += parity_[r] ? 1 : -1;
        }
        mask_ ^= masks_[q];
    }

    bool extend(std::vector<size_t> ext, size_t root) {
        if (++nodes_ > node_budget_) {
            return false;
        }
        if (sub_.size() == cap_) {
            if (syndrome_weight_ == 0 && mask_.any()) {
                found_ = true;
                witness_ = sub_;
            }
            return true;
        }
        size_t remaining = cap_ - sub_.size();
        if (static_cast<size_t>(syndrome_weight_) > remaining * max_col_weight_) {
            return true;
        }
        while (!ext.empty()) {
            size_t w = ext.back();
            ext.pop_back();
            std::vector<size_t> next = ext;
            for (size_t u : adj_[w]) {
                if (u > root && !in_sub_[u] && near_[u] == 0) {
                    next.push_back(u);
                }
            }
            add(w);
            bool ok = extend(std::move(next), root);
            remove(w);
            if (!ok || found_) {
                return ok;
            }
        }
        return true;
    }

    size_t n_;
    uint64_t node_budget_;
    uint64_t nodes_ = 0;
    size_t cap_ = 0;
    size_t max_col_weight_ = 0;
    std::vector<std::vector<size_t>> col_rows_;
    std::vector<std::vector<size_t>> adj_;
    std::vector<BitVector> masks_;
    std::vector<uint8_t> parity_;
    std::vector<uint8_t> in_sub_;
    std::vector<uint32_t> near_;
    long syndrome_weight_ = 0;
    BitVector mask_;
    std::vector<size_t> sub_;
    bool found_ = false;
    std::vector<size_t> witness_;
};

DistanceResult by_connected_search(const BitMatrix &check, const std::vector<BitVector> &tests,
                                   int budget) {
    uint64_t node_budget = uint64_t{1} << std::clamp(budget, 0, 62);
    ConnectedSearch search(check, tests, node_budget);
    DistanceResult out;
    for (size_t w = 1; w <= check.cols(); ++w) {
        if (!search.run(w)) {
            out.value = w;
            out.method = Provenance::Bound;
            return out;
        }
        if (search.found()) {
            out.value = w;
            out.method = Provenance::Exact;
            out.witness = BitVector::from_support(check.cols(), search.witness());
            return out;
        }
    }
    out.value = check.cols() + 1;
    out.method = Provenance::Bound;
    return out;
}

}  // namespace

CosetTable::CosetTable(const BitMatrix &h, int budget) : cols_(h.cols()), syndrome_len_(h.rows()) {
    BitMatrix ht = h.transpose();
    EchelonForm ef = rref(ht);
    check_budget(ef.pivots.size(), budget, "CosetTable");
    basis_ = std::move(ef.rows);
    pivots_ = std::move(ef.pivots);
    std::vector<uint64_t> gens;
    for (size_t j = 0; j < cols_; ++j) {
        uint64_t g = 0;
        for (size_t i = 0; i < pivots_.size(); ++i) {
            if (ht.row(j).get(pivots_[i])) {
                g |= uint64_t{1} << i;
            }
        }
        generators_.push_back(g);
        if (g) {
            gens.push_back(g);
        }
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    uint64_t total = uint64_t{1} << pivots_.size();
    dist_.assign(total, 255);
    dist_[0] = 0;
    std::vector<uint32_t> frontier{0};
    std::vector<uint32_t> next;
    uint8_t level = 0;
    while (!frontier.empty()) {
        ++level;
        next.clear();
        for (uint32_t s : frontier) {
            for (uint64_t g : gens) {
                uint64_t t = s ^ g;
                if (dist_[t] == 255) {
                    dist_[t] = level;
                    next.push_back(static_cast<uint32_t>(t));
                }
            }
        }
        frontier.swap(next);
    }
}

uint64_t CosetTable::index_of(const BitVector &syndrome) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < pivots_.size(); ++i) {
        if (syndrome.get(pivots_[i])) {
            idx |= uint64_t{1} << i;
        }
    }
    return idx;
}

BitVector CosetTable::syndrome_of(uint64_t index) const {
    BitVector s(syndrome_len_);
    for (size_t i = 0; i < basis_.size(); ++i) {
        if ((index >> i) & 1) {
            s ^= basis_[i];
        }
    }
    return s;
}

BitVector CosetTable::leader(uint64_t index) const {
    BitVector x(cols_);
    while (dist_[index] != 0) {
        for (size_t j = 0; j < cols_; ++j) {
            uint64_t t = index ^ generators_[j];
            if (generators_[j] && dist_[t] + 1 == dist_[index]) {
                x.flip(j);
                index = t;
                break;
            }
        }
    }
    return x;
}

size_t coset_distance(const BitMatrix &h, const BitVector &x, int budget) {
    if (x.size() != h.cols()) {
        throw std::invalid_argument("coset_distance: length mismatch");
    }
    RankKernel rk = rank_kernel(h);
    size_t kdim = rk.kernel_basis.size();
    if (kdim <= rk.rank) {
        check_budget(kdim, budget, "coset_distance");
        BitVector cur = x;
        size_t best = cur.weight();
        for (uint64_t i = 1; i < (uint64_t{1} << kdim); ++i) {
            cur ^= rk.kernel_basis[std::countr_zero(i)];
            best = std::min(best, cur.weight());
        }
        return best;
    }
    CosetTable table(h, budget);
    return table.leader_weight(table.index_of(h.multiply(x)));
}

SoundnessWitness brute_soundness(const BitMatrix &h, int budget) {
    CosetTable table(h, budget);
    if (table.rank() == 0) {
        throw std::domain_error("brute_soundness: every word lies in ker(h); soundness undefined");
    }
    size_t s = h.rows();
    size_t t = h.cols();
    BitVector syn(s);
    uint64_t best_index = 0;
    size_t best_w = 0, best_d = 0;
    uint64_t total = table.size();
    uint64_t gray = 0;
    for (uint64_t i = 1; i < total; ++i) {
        size_t bit = std::countr_zero(i);
        gray ^= uint64_t{1} << bit;
        syn ^= table.basis(bit);
        size_t w = syn.weight();
        size_t d = table.leader_weight(gray);
        if (best_d == 0 || w * best_d < best_w * d || (w * best_d == best_w * d && gray < best_index)) {
            best_w = w;
            best_d = d;
            best_index = gray;
        }
    }
    SoundnessWitness out;
    out.violated = best_w;
    out.distance = best_d;
    out.witness = table.leader(best_index);
    out.rho = Rational(static_cast<int64_t>(best_w * t), static_cast<int64_t>(s * best_d));
    return out;
}

QuantumSoundness quantum_soundness(const CssCode &code, int budget) {
    QuantumSoundness q;
    q.rho_x = brute_soundness(code.h_z, budget);
    q.rho_z = brute_soundness(code.h_x, budget);
    return q;
}

DistanceResult min_nontrivial_weight(const BitMatrix &check, const BitMatrix &stabilisers, int budget,
                                     bool allow_bound) {
    auto tests = logical_tests(check, stabilisers);
    if (tests.empty()) {
        throw std::domain_error("min_nontrivial_weight: no logical operators");
    }
    size_t rank_check = rank(check);
    size_t kernel_dim = check.cols() - rank_check;
    size_t table_dim = rank_check + tests.size();
    size_t lim = static_cast<size_t>(std::max(budget, 0));
    if (kernel_dim <= table_dim && kernel_dim <= lim && kernel_dim <= 62) {
        return by_kernel_enumeration(check, tests);
    }
    if (table_dim <= lim && table_dim <= 32) {
        return by_syndrome_table(check, tests, budget);
    }
    if (kernel_dim <= lim && kernel_dim <= 62) {
        return by_kernel_enumeration(check, tests);
    }
    DistanceResult r = by_connected_search(check, tests, budget);
    if (r.method == Provenance::Bound && !allow_bound) {
        throw BudgetExceeded("min_nontrivial_weight: exact distance exceeds budget; only d >= " +
                             std::to_string(r.value) + " certified");
    }
    return r;
}

namespace {

CodeDistances distances(const CssCode &code, int budget, bool allow_bound) {
    CodeDistances out;
    if (dimension(code) == 0) {
        out.no_logicals = true;
        return out;
    }
    out.d_x = min_nontrivial_weight(code.h_z, code.h_x, budget, allow_bound);
    out.d_z = min_nontrivial_weight(code.h_x, code.h_z, budget, allow_bound);
    return out;
}

}  // namespace

CodeDistances brute_distance(const CssCode &code, int budget) { return distances(code, budget, false); }

CodeDistances distance_or_bound(const CssCode &code, int budget) { return distances(code, budget, true); }

}  // namespace qltc
