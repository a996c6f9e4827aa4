#include "qltc/soundness_amp.h"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "qltc/oracle.h"

namespace qltc {

using boost::multiprecision::cpp_int;

size_t BipartiteGraph::right_cap() const { return right ? (left * degree + right - 1) / right : 0; }

std::vector<size_t> BipartiteGraph::right_degrees() const {
    std::vector<size_t> deg(right, 0);
    for (size_t r : edges) {
        ++deg[r];
    }
    return deg;
}

std::vector<size_t> BipartiteGraph::neighbours(const std::vector<size_t> &s) const {
    std::vector<size_t> out;
    for (size_t v : s) {
        for (size_t j = 0; j < degree; ++j) {
            out.push_back(edges[v * degree + j]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<size_t> BipartiteGraph::unique_neighbours(const std::vector<size_t> &s) const {
    std::vector<size_t> all;
    for (size_t v : s) {
        for (size_t j = 0; j < degree; ++j) {
            all.push_back(edges[v * degree + j]);
        }
    }
    std::sort(all.begin(), all.end());
    std::vector<size_t> out;
    for (size_t i = 0; i < all.size();) {
        size_t j = i;
        while (j < all.size() && all[j] == all[i]) {
            ++j;
        }
        if (j - i == 1) {
            out.push_back(all[i]);
        }
        i = j;
    }
    return out;
}

ExpanderParams expander_params(size_t n_left, size_t m_right, double eps) {
    if (m_right == 0 || m_right > n_left || !(eps > 0 && eps < 1)) {
        throw std::invalid_argument("expander_params: need 0 < m <= n and 0 < eps < 1");
    }
    const double e = std::numbers::e;
    ExpanderParams p;
    double ratio = 8 * e * e * double(n_left) / double(m_right);
    p.degree = static_cast<size_t>(std::ceil(std::log2(ratio) / eps - 1e-12));
    double ed = eps * double(p.degree);
    if (ed > 1) {
        double x = ed / (ed - 1);
        p.k_max_value = std::pow(eps, x) * double(m_right) / (2 * e * std::pow(double(p.degree), x));
        p.k_max = static_cast<size_t>(std::floor(p.k_max_value));
    }
    return p;
}

BipartiteGraph sample_bipartite(size_t n_left, size_t m_right, size_t degree, uint64_t seed) {
    if (m_right == 0) {
        throw std::invalid_argument("sample_bipartite: no right vertices");
    }
    BipartiteGraph g;
    g.left = n_left;
    g.right = m_right;
    g.degree = degree;
    g.seed = seed;
    size_t total = n_left * degree;
    size_t q = total / m_right, r = total % m_right;
    std::vector<size_t> slots;
    slots.reserve(total);
    for (size_t v = 0; v < m_right; ++v) {
        slots.insert(slots.end(), q + (v < r ? 1 : 0), v);
    }
    std::mt19937_64 rng(seed);
    for (size_t i = total; i > 1; --i) {
        std::uniform_int_distribution<size_t> pick(0, i - 1);
        std::swap(slots[i - 1], slots[pick(rng)]);
    }
    g.edges = std::move(slots);
    return g;
}

namespace {

struct SubsetWalker {
    const BipartiteGraph &g;
    double eps;
    std::vector<uint32_t> count;
    size_t distinct = 0, unique = 0;
    std::vector<size_t> current;
    LosslessCheck &out;
    double worst_unique_margin = 1e300;

    void add(size_t v) {
        for (size_t j = 0; j < g.degree; ++j) {
            uint32_t &c = count[g.edges[v * g.degree + j]];
            if (c == 0) {
                ++distinct;
                ++unique;
            } else if (c == 1) {
                --unique;
            }
            ++c;
        }
        current.push_back(v);
    }

    void remove(size_t v) {
        for (size_t j = 0; j < g.degree; ++j) {
            uint32_t &c = count[g.edges[v * g.degree + j]];
            --c;
            if (c == 0) {
                --distinct;
                --unique;
            } else if (c == 1) {
                ++unique;
            }
        }
        current.pop_back();
    }

    void score() {
        ++out.subsets;
        double sd = double(current.size() * g.degree);
        double ratio = double(distinct) / sd;
        if (ratio < out.worst_ratio || out.worst.empty()) {
            out.worst_ratio = std::min(out.worst_ratio, ratio);
            out.worst = current;
        }
        if (double(distinct) < (1 - eps) * sd - 1e-9) {
            out.ok = false;
        }
        double margin = double(unique) - (1 - 2 * eps) * sd;
        if (margin < worst_unique_margin) {
            worst_unique_margin = margin;
            out.unique_worst = current;
        }
        if (margin < -1e-9) {
            out.unique_ok = false;
        }
    }

    void enumerate(size_t start, size_t remaining) {
        for (size_t v = start; v < g.left; ++v) {
            add(v);
            score();
            if (remaining > 1) {
                enumerate(v + 1, remaining - 1);
            }
            remove(v);
        }
    }
};

}  // namespace

LosslessCheck verify_lossless(const BipartiteGraph &g, size_t k_max, double eps, int budget) {
    LosslessCheck out;
    SubsetWalker w{g, eps, std::vector<uint32_t>(g.right, 0), 0, 0, {}, out};
    k_max = std::min(k_max, g.left);
    if (k_max == 0 || g.degree == 0) {
        return out;
    }
    cpp_int total = 0, binom = 1;
    for (size_t s = 1; s <= k_max; ++s) {
        binom = binom * (g.left - s + 1) / s;
        total += binom;
    }
    cpp_int limit = cpp_int(1) << std::clamp(budget, 0, 62);
    if (total <= limit) {
        w.enumerate(0, k_max);
        return out;
    }
    out.exhaustive = false;
    std::mt19937_64 rng(g.seed ^ 0x5eedULL);
    std::vector<size_t> order(g.left);
    std::iota(order.begin(), order.end(), 0);
    uint64_t samples = uint64_t{1} << std::clamp(budget, 0, 20);
    for (uint64_t t = 0; t < samples; ++t) {
        size_t s = 1 + rng() % k_max;
        for (size_t i = 0; i < s; ++i) {
            std::uniform_int_distribution<size_t> pick(i, g.left - 1);
            std::swap(order[i], order[pick(rng)]);
        }
        std::vector<size_t> subset(order.begin(), order.begin() + static_cast<long>(s));
        std::sort(subset.begin(), subset.end());
        for (size_t v : subset) {
            w.add(v);
        }
        w.score();
        for (size_t i = subset.size(); i-- > 0;) {
            w.remove(subset[i]);
        }
    }
    return out;
}

BipartiteGraph sample_lossless_expander(size_t n_left, size_t m_right, double eps, uint64_t seed, size_t retries,
                                        int budget) {
    ExpanderParams p = expander_params(n_left, m_right, eps);
    std::mt19937_64 seeds(seed);
    for (size_t attempt = 0; attempt < std::max<size_t>(retries, 1); ++attempt) {
        uint64_t s = attempt == 0 ? seed : seeds();
        BipartiteGraph g = sample_bipartite(n_left, m_right, p.degree, s);
        if (verify_lossless(g, p.k_max, eps, budget).ok) {
            return g;
        }
    }
    throw std::runtime_error("sample_lossless_expander: no lossless sample within the retry cap");
}

const char *side_name(Side s) { return s == Side::X ? "x" : "z"; }

namespace {

cpp_int big(int64_t v) { return cpp_int(v); }

cpp_int pow_big(const cpp_int &b, int64_t e) {
    cpp_int r = 1;
    for (int64_t i = 0; i < e; ++i) {
        r *= b;
    }
    return r;
}

void check_alpha(const Rational &alpha) {
    if (alpha <= 0 || alpha >= 1) {
        throw std::invalid_argument("soundness amplification: alpha must lie in (0, 1)");
    }
}

}  // namespace

std::vector<size_t> sa_group_indices(const Rational &rho, const Rational &alpha) {
    check_alpha(alpha);
    if (rho <= 0) {
        throw std::invalid_argument("sa_group_indices: rho must be positive");
    }
    std::vector<size_t> out;
    if (rho >= 1) {
        return out;
    }
    // rho = p/q; kappa = a/b.
    Rational kappa = (Rational(1) + alpha) / 2;
    cpp_int p = big(rho.numerator()), q = big(rho.denominator());
    int64_t a = kappa.numerator(), b = kappa.denominator();
    cpp_int pa = pow_big(p, a), qa = pow_big(q, a);
    for (size_t i = 0; i < 63; ++i) {
        cpp_int two_i = cpp_int(1) << i;
        if (two_i * p > q) {
            break;
        }
        // 2^i >= (q/p)^kappa  <=>  2^(i b) p^a >= q^a
        if ((cpp_int(1) << (i * static_cast<size_t>(b))) * pa >= qa) {
            out.push_back(i);
        }
    }
    return out;
}

size_t sa_group_size(size_t n_x, size_t i, const Rational &alpha) {
    check_alpha(alpha);
    int64_t a = alpha.numerator(), b = alpha.denominator();
    cpp_int rhs = pow_big(cpp_int(n_x), b);
    size_t lo = 0, hi = n_x;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        cpp_int lhs = pow_big(cpp_int(mid), b) << (i * static_cast<size_t>(a));
        if (lhs <= rhs) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

bool sa_group_within_bound(size_t n_x, size_t i, const Rational &alpha, size_t m) {
    int64_t a = alpha.numerator(), b = alpha.denominator();
    return (pow_big(cpp_int(m), b) << (i * static_cast<size_t>(a))) <= pow_big(cpp_int(n_x), b);
}

double sa_group_eps(size_t i, const Rational &alpha) {
    double al = to_double(alpha), di = double(i);
    return std::sqrt(di * al / std::pow(2.0, di * (1 - al)));
}

SaRoundResult amplification_round(const CssCode &code, Side side, const SaRoundConfig &cfg, uint64_t seed,
                                  int budget) {
    const BitMatrix &h = side == Side::X ? code.h_x : code.h_z;
    SaRoundResult res;
    res.q_before = h.max_column_weight();
    BitMatrix out = h;
    size_t n_rows = h.rows();
    size_t old_w = h.max_row_weight();
    for (size_t i : sa_group_indices(cfg.rho, cfg.alpha)) {
        SaGroup grp;
        grp.index = i;
        grp.m = sa_group_size(n_rows, i, cfg.alpha);
        grp.eps = sa_group_eps(i, cfg.alpha);
        if (grp.m == 0 || !(grp.eps > 0 && grp.eps < 1)) {
            res.groups.push_back(grp);
            continue;
        }
        grp.params = expander_params(n_rows, grp.m, grp.eps);
        grp.guaranteed = grp.params.feasible();
        uint64_t gseed = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
        BipartiteGraph g = grp.guaranteed ? sample_lossless_expander(n_rows, grp.m, grp.eps, gseed, 32, budget)
                                          : sample_bipartite(n_rows, grp.m, grp.params.degree, gseed);
        if (grp.guaranteed) {
            grp.check = verify_lossless(g, grp.params.k_max, grp.eps, budget);
        }
        grp.weight_cap = old_w * g.right_cap();
        std::vector<BitVector> rows(grp.m, BitVector(code.n()));
        for (size_t e = 0; e < g.edges.size(); ++e) {
            rows[g.edges[e]] ^= h.row(e / g.degree);
        }
        for (auto &r : rows) {
            grp.max_new_weight = std::max(grp.max_new_weight, r.weight());
            out.append_row(r);
        }
        res.rows_added += grp.m;
        res.groups.push_back(grp);
    }
    res.row_space_preserved = row_space_equal(h, out);
    res.q_after = out.max_column_weight();
    res.code = side == Side::X ? CssCode(out, code.h_z) : CssCode(code.h_x, out);
    res.code.meta = code.meta;
    res.code.meta.stages.push_back(std::string("soundamp-") + side_name(side));
    return res;
}

AmplifyResult amplify_to_constant(const CssCode &code, Side side, const Rational &target, const Rational &alpha,
                                  uint64_t seed, int budget, size_t max_rounds) {
    AmplifyResult res;
    res.code = code;
    for (;;) {
        const BitMatrix &h = side == Side::X ? res.code.h_x : res.code.h_z;
        Rational rho = brute_soundness(h, budget).rho;
        res.trajectory.push_back(rho);
        if (rho >= target) {
            res.reached = true;
            break;
        }
        if (res.rounds >= max_rounds) {
            break;
        }
        SaRoundConfig cfg{alpha, rho};
        SaRoundResult round = amplification_round(res.code, side, cfg, seed + res.rounds, budget);
        if (round.rows_added == 0) {
            res.round_reports.push_back(std::move(round));
            break;
        }
        res.code = round.code;
        res.round_reports.push_back(std::move(round));
        ++res.rounds;
    }
    return res;
}

}  // namespace qltc
