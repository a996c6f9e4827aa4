#include "qltc/distance_amp.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qltc {

namespace {

std::vector<BitVector> logicals(const BitMatrix &check, const BitMatrix &stabilisers) {
    SpanBasis span(check.cols());
    for (const auto &r : stabilisers.row_vectors()) {
        span.insert(r);
    }
    std::vector<BitVector> out;
    for (const auto &v : rank_kernel(check).kernel_basis) {
        if (span.insert(v)) {
            out.push_back(v);
        }
    }
    return out;
}

BitMatrix permute_columns(const BitMatrix &m, const std::vector<size_t> &perm) {
    BitMatrix out(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c : m.row(r).support()) {
            out.set(r, perm[c]);
        }
    }
    return out;
}

}  // namespace

LogicalBasis logical_basis(const CssCode &code) {
    LogicalBasis lb;
    lb.z = logicals(code.h_x, code.h_z);
    std::vector<BitVector> x = logicals(code.h_z, code.h_x);
    size_t k = lb.z.size();
    if (k == 0) {
        throw std::domain_error("logical_basis: code has no logical qubits");
    }
    if (x.size() != k) {
        throw std::logic_error("logical_basis: X and Z logical counts differ");
    }
    BitMatrix gram(k, 2 * k);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            gram.set(i, j, x[i].dot(lb.z[j]));
        }
        gram.set(i, k + i);
    }
    EchelonForm ef = rref(gram);
    if (ef.pivots.size() < k || ef.pivots[k - 1] != k - 1) {
        throw std::logic_error("logical_basis: pairing matrix is singular");
    }
    for (size_t i = 0; i < k; ++i) {
        BitVector v(code.n());
        for (size_t j = 0; j < k; ++j) {
            if (ef.rows[i].get(k + j)) {
                v ^= x[j];
            }
        }
        lb.x.push_back(std::move(v));
    }
    return lb;
}

CssCode concatenate_css(const CssCode &outer, const CssCode &inner, size_t blocks) {
    LogicalBasis lb = logical_basis(inner);
    size_t k_in = lb.z.size(), n_in = inner.n();
    if (outer.n() % k_in != 0 || outer.n() / k_in != blocks) {
        throw std::invalid_argument("concatenate_css: outer length must equal blocks * inner dimension");
    }
    size_t n = blocks * n_in;
    auto encode = [&](const BitMatrix &rows, const std::vector<BitVector> &logical, BitMatrix &out) {
        for (const auto &row : rows.row_vectors()) {
            BitVector v(n);
            for (size_t q : row.support()) {
                size_t blk = q / k_in, slot = q % k_in;
                for (size_t c : logical[slot].support()) {
                    v.flip(blk * n_in + c);
                }
            }
            out.append_row(v);
        }
    };
    auto replicate = [&](const BitMatrix &rows, BitMatrix &out) {
        for (size_t blk = 0; blk < blocks; ++blk) {
            for (const auto &row : rows.row_vectors()) {
                BitVector v(n);
                for (size_t c : row.support()) {
                    v.set(blk * n_in + c);
                }
                out.append_row(v);
            }
        }
    };
    BitMatrix hx(0, n), hz(0, n);
    encode(outer.h_x, lb.x, hx);
    replicate(inner.h_x, hx);
    encode(outer.h_z, lb.z, hz);
    replicate(inner.h_z, hz);
    CssCode out(hx, hz);
    out.meta.stages = outer.meta.stages;
    out.meta.stages.push_back("concatenate");
    return out;
}

std::vector<std::vector<size_t>> PermGraph::counts() const {
    std::vector<std::vector<size_t>> c(b, std::vector<size_t>(b, 0));
    for (size_t u = 0; u < b; ++u) {
        for (size_t j = 0; j < n_in; ++j) {
            ++c[u][right_of(u, j)];
        }
    }
    return c;
}

PermGraph sample_perm_graph(size_t b, size_t n_in, uint64_t seed) {
    PermGraph g;
    g.b = b;
    g.n_in = n_in;
    g.seed = seed;
    g.target.resize(b * n_in);
    std::iota(g.target.begin(), g.target.end(), 0);
    std::mt19937_64 rng(seed);
    for (size_t i = g.target.size(); i > 1; --i) {
        std::uniform_int_distribution<size_t> pick(0, i - 1);
        std::swap(g.target[i - 1], g.target[pick(rng)]);
    }
    return g;
}

PseudorandomCheck verify_pseudorandom(const PermGraph &g) {
    if (g.b > 20) {
        throw std::invalid_argument("verify_pseudorandom: too many blocks for exact verification");
    }
    PseudorandomCheck out;
    auto cnt = g.counts();
    const double n = double(g.n_in), b = double(g.b);
    std::vector<std::pair<double, size_t>> dev(g.b);
    for (uint64_t s = 1; s < (uint64_t{1} << g.b); ++s) {
        double ss = double(std::popcount(s));
        for (size_t v = 0; v < g.b; ++v) {
            double r = 0;
            for (size_t u = 0; u < g.b; ++u) {
                if ((s >> u) & 1) {
                    r += double(cnt[u][v]);
                }
            }
            dev[v] = {r - n * ss / b, v};
        }
        std::sort(dev.begin(), dev.end(), [](const auto &a, const auto &c) {
            return a.first > c.first || (a.first == c.first && a.second < c.second);
        });
        double top = 0, bottom = 0;
        for (size_t t = 1; t <= g.b; ++t) {
            top += dev[t - 1].first;
            bottom += dev[g.b - t].first;
            bool use_top = std::abs(top) >= std::abs(bottom);
            double d = use_top ? std::abs(top) : std::abs(bottom);
            double ratio = d / (n * std::sqrt(ss * double(t)));
            if (ratio > out.eps + 1e-15) {
                out.eps = ratio;
                out.worst_deviation = d;
                out.worst_s.clear();
                for (size_t u = 0; u < g.b; ++u) {
                    if ((s >> u) & 1) {
                        out.worst_s.push_back(u);
                    }
                }
                out.worst_t.clear();
                for (size_t i = 0; i < t; ++i) {
                    out.worst_t.push_back(use_top ? dev[i].second : dev[g.b - 1 - i].second);
                }
                std::sort(out.worst_t.begin(), out.worst_t.end());
            }
        }
    }
    return out;
}

PermGraph sample_pseudorandom_graph(size_t b, size_t n_in, double eps, uint64_t seed, size_t retries) {
    if (!(eps > 0) || double(n_in) < 4 / (eps * eps)) {
        throw std::invalid_argument("sample_pseudorandom_graph: need n_in >= 4 / eps^2");
    }
    std::mt19937_64 seeds(seed);
    for (size_t attempt = 0; attempt < std::max<size_t>(retries, 1); ++attempt) {
        PermGraph g = sample_perm_graph(b, n_in, attempt == 0 ? seed : seeds());
        if (verify_pseudorandom(g).eps <= eps) {
            return g;
        }
    }
    throw std::runtime_error("sample_pseudorandom_graph: no pseudorandom sample within the retry cap");
}

HeavyVertexCheck heavy_vertex_check(const PermGraph &g, double eps, double alpha_in, double alpha_out) {
    HeavyVertexCheck out;
    out.allowed = alpha_out * double(g.b);
    double limit = (alpha_in - eps * std::sqrt(alpha_in / alpha_out)) * double(g.b);
    if (limit < 0) {
        return out;
    }
    out.max_t = std::min(g.b, static_cast<size_t>(std::floor(limit + 1e-12)));
    auto cnt = g.counts();
    double heavy_at = alpha_in * double(g.n_in);
    for (uint64_t t = 0; t < (uint64_t{1} << g.b); ++t) {
        if (static_cast<size_t>(std::popcount(t)) > out.max_t) {
            continue;
        }
        ++out.sets;
        size_t heavy = 0;
        for (size_t u = 0; u < g.b; ++u) {
            size_t e = 0;
            for (size_t v = 0; v < g.b; ++v) {
                if ((t >> v) & 1) {
                    e += cnt[u][v];
                }
            }
            if (double(e) > heavy_at + 1e-12) {
                ++heavy;
            }
        }
        if (heavy > out.worst_heavy || out.worst_t.empty()) {
            out.worst_heavy = std::max(out.worst_heavy, heavy);
            out.worst_t.clear();
            for (size_t v = 0; v < g.b; ++v) {
                if ((t >> v) & 1) {
                    out.worst_t.push_back(v);
                }
            }
        }
        if (double(heavy) > out.allowed + 1e-12) {
            out.holds = false;
        }
    }
    return out;
}

AelResult ael_amplify(const CssCode &outer, const CssCode &inner, const CssCode &block, const PermGraph &g) {
    if (dimension(block) != inner.n()) {
        throw std::invalid_argument("ael_amplify: block code dimension must equal the inner length");
    }
    if (g.n_in != inner.n()) {
        throw std::invalid_argument("ael_amplify: graph degree must equal the inner length");
    }
    size_t k_in = dimension(inner);
    if (k_in == 0 || outer.n() % k_in != 0 || outer.n() / k_in != g.b) {
        throw std::invalid_argument("ael_amplify: graph must have one vertex per inner block");
    }
    AelResult res;
    res.concatenated = concatenate_css(outer, inner, g.b);
    res.permutation = g.target;
    res.permuted = CssCode(permute_columns(res.concatenated.h_x, g.target),
                           permute_columns(res.concatenated.h_z, g.target));
    res.permuted.meta.stages = res.concatenated.meta.stages;
    res.permuted.meta.stages.push_back("permute");
    res.code = concatenate_css(res.permuted, block, g.b);
    res.code.meta.stages.back() = "ael";
    return res;
}

double ael_distance_bound(double delta_block, double delta_in, double delta_out, double eps) {
    return delta_block * (delta_in / 2 - eps * std::sqrt(delta_in / delta_out));
}

double ael_soundness_alpha(double rho_hat, size_t n_in, size_t k_in, size_t w_out) {
    double ni = double(n_in), ki = double(k_in), w = double(w_out);
    return rho_hat / (ni * ki * w + rho_hat + ki * (1 + ni) * (rho_hat + w) + 1);
}

double ael_soundness_bound(double alpha, size_t n_tilde, size_t n_x_tilde, size_t n_in, size_t n_block) {
    return (double(n_tilde) / double(n_x_tilde)) * alpha / (double(n_in) * double(n_block));
}

}  // namespace qltc
