#pragma once

// Deliberately naive reference implementations. They share no code with the library beyond
// reading BitMatrix entries. Enumerations use 64-bit masks and are only meant for n below about
// 24; rank, commutation and dimension use dynamic bitsets and accept any size.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "qltc/css.h"
#include "qltc/gf2.h"
#include "qltc/rational.h"

namespace oracle {

using Mask = uint64_t;

inline std::vector<Mask> masks(const qltc::BitMatrix &m) {
    std::vector<Mask> out(m.rows(), 0);
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < m.cols(); ++c) {
            if (m.get(r, c)) {
                out[r] |= Mask{1} << c;
            }
        }
    }
    return out;
}

inline Mask mask_of(const qltc::BitVector &v) {
    Mask m = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) {
            m |= Mask{1} << i;
        }
    }
    return m;
}

// Plain elimination keeping a basis indexed by highest set bit.
inline std::vector<Mask> basis(const std::vector<Mask> &rows) {
    std::vector<Mask> by_top(64, 0);
    for (Mask v : rows) {
        for (int b = 63; b >= 0 && v; --b) {
            if (!((v >> b) & 1)) {
                continue;
            }
            if (!by_top[b]) {
                by_top[b] = v;
                v = 0;
            } else {
                v ^= by_top[b];
            }
        }
    }
    std::vector<Mask> out;
    for (Mask v : by_top) {
        if (v) {
            out.push_back(v);
        }
    }
    return out;
}

inline size_t rank(const std::vector<Mask> &rows) { return basis(rows).size(); }

inline bool in_span(const std::vector<Mask> &rows, Mask v) {
    std::vector<Mask> ext = rows;
    ext.push_back(v);
    return rank(ext) == rank(rows);
}

inline bool in_kernel(const std::vector<Mask> &h, Mask x) {
    return std::all_of(h.begin(), h.end(), [x](Mask r) { return std::popcount(r & x) % 2 == 0; });
}

inline size_t syndrome_weight(const std::vector<Mask> &h, Mask x) {
    size_t s = 0;
    for (Mask r : h) {
        s += std::popcount(r & x) & 1;
    }
    return s;
}

// Every element of ker(h) by scanning the whole space.
inline std::vector<Mask> kernel_elements(const std::vector<Mask> &h, size_t n) {
    std::vector<Mask> out;
    for (Mask x = 0; x < (Mask{1} << n); ++x) {
        if (in_kernel(h, x)) {
            out.push_back(x);
        }
    }
    return out;
}

using Wide = boost::dynamic_bitset<>;

inline std::vector<Wide> wide_rows(const qltc::BitMatrix &m) {
    std::vector<Wide> out(m.rows(), Wide(m.cols()));
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < m.cols(); ++c) {
            out[r][c] = m.get(r, c);
        }
    }
    return out;
}

inline size_t wide_rank(std::vector<Wide> rows) {
    size_t rank = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
        size_t p = rank;
        while (p < rows.size() && !rows[p][c]) {
            ++p;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[p], rows[rank]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r][c]) {
                rows[r] ^= rows[rank];
            }
        }
        ++rank;
    }
    return rank;
}

inline size_t dimension(const qltc::CssCode &c) {
    return c.n() - wide_rank(wide_rows(c.h_x)) - wide_rank(wide_rows(c.h_z));
}

// Minimum weight of x in ker(check) outside span(stabilisers); nullopt when there is none.
inline std::optional<size_t> distance(const qltc::BitMatrix &check, const qltc::BitMatrix &stabilisers) {
    auto h = masks(check), s = masks(stabilisers);
    size_t n = check.cols();
    std::optional<size_t> best;
    for (Mask x : kernel_elements(h, n)) {
        size_t w = std::popcount(x);
        if (x && (!best || w < *best) && !in_span(s, x)) {
            best = w;
        }
    }
    return best;
}

inline std::optional<size_t> d_x(const qltc::CssCode &c) { return distance(c.h_z, c.h_x); }
inline std::optional<size_t> d_z(const qltc::CssCode &c) { return distance(c.h_x, c.h_z); }

// Hamming distance from every word to ker(h), by breadth-first search from all codewords.
inline std::vector<uint8_t> coset_distances(const std::vector<Mask> &h, size_t n) {
    std::vector<uint8_t> dist(size_t{1} << n, std::numeric_limits<uint8_t>::max());
    std::deque<Mask> queue;
    for (Mask c : kernel_elements(h, n)) {
        dist[c] = 0;
        queue.push_back(c);
    }
    while (!queue.empty()) {
        Mask x = queue.front();
        queue.pop_front();
        for (size_t i = 0; i < n; ++i) {
            Mask y = x ^ (Mask{1} << i);
            if (dist[y] == std::numeric_limits<uint8_t>::max()) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

// min over x outside ker(h) of (|h x| / m) / (d(x, ker h) / n).
inline qltc::Rational soundness(const qltc::BitMatrix &hm) {
    auto h = masks(hm);
    size_t n = hm.cols();
    auto dist = coset_distances(h, n);
    std::optional<qltc::Rational> best;
    for (Mask x = 0; x < (Mask{1} << n); ++x) {
        if (!dist[x]) {
            continue;
        }
        qltc::Rational r(static_cast<int64_t>(syndrome_weight(h, x) * n),
                         static_cast<int64_t>(h.size() * dist[x]));
        if (!best || r < *best) {
            best = r;
        }
    }
    return best.value_or(qltc::Rational(0));
}

inline bool commutes(const qltc::CssCode &c) {
    for (const Wide &x : wide_rows(c.h_x)) {
        for (const Wide &z : wide_rows(c.h_z)) {
            if ((x & z).count() % 2) {
                return false;
            }
        }
    }
    return true;
}

inline bool same_row_space(const qltc::BitMatrix &a, const qltc::BitMatrix &b) {
    if (a.cols() != b.cols()) {
        return false;
    }
    auto wa = wide_rows(a), wb = wide_rows(b);
    std::vector<Wide> both = wa;
    both.insert(both.end(), wb.begin(), wb.end());
    size_t r = wide_rank(both);
    return r == wide_rank(wa) && r == wide_rank(wb);
}

// Adjacency lists of a left-regular bipartite graph; minimum of |N(S)| / (|S| D) over all
// nonempty S with |S| <= k, and whether every such S has at least (1 - 2 eps)|S| D unique neighbours.
struct Expansion {
    double worst_ratio = 1;
    bool unique_ok = true;
    size_t subsets = 0;
};

inline Expansion expansion(const std::vector<std::vector<size_t>> &adj, size_t right, size_t k, double eps) {
    Expansion out;
    size_t n = adj.size();
    size_t d = adj.empty() ? 0 : adj[0].size();
    for (uint64_t s = 1; s < (uint64_t{1} << n); ++s) {
        size_t size = std::popcount(s);
        if (size > k) {
            continue;
        }
        ++out.subsets;
        std::vector<size_t> hits(right, 0);
        for (size_t u = 0; u < n; ++u) {
            if ((s >> u) & 1) {
                for (size_t v : adj[u]) {
                    ++hits[v];
                }
            }
        }
        size_t nb = 0, uniq = 0;
        for (size_t h : hits) {
            nb += h > 0;
            uniq += h == 1;
        }
        out.worst_ratio = std::min(out.worst_ratio, double(nb) / double(size * d));
        if (double(uniq) + 1e-9 < (1 - 2 * eps) * double(size * d)) {
            out.unique_ok = false;
        }
    }
    return out;
}

// Largest |E(S, T) - n |S||T| / b| / (n sqrt(|S||T|)) over all nonempty S, T.
inline double pseudorandom_eps(const std::vector<std::vector<size_t>> &counts, size_t n_in) {
    size_t b = counts.size();
    double worst = 0;
    for (uint64_t s = 1; s < (uint64_t{1} << b); ++s) {
        for (uint64_t t = 1; t < (uint64_t{1} << b); ++t) {
            double e = 0;
            for (size_t u = 0; u < b; ++u) {
                for (size_t v = 0; v < b; ++v) {
                    if (((s >> u) & 1) && ((t >> v) & 1)) {
                        e += double(counts[u][v]);
                    }
                }
            }
            double ss = std::popcount(s), tt = std::popcount(t);
            double dev = std::abs(e - double(n_in) * ss * tt / double(b));
            worst = std::max(worst, dev / (double(n_in) * std::sqrt(ss * tt)));
        }
    }
    return worst;
}

}  // namespace oracle
