#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qltc/css.h"
#include "qltc/rational.h"

namespace qltc {

// D-left-regular bipartite multigraph. Left vertex v owns edges v * degree .. v * degree + degree - 1,
// and edges[e] is the right endpoint of edge e.
struct BipartiteGraph {
    size_t left = 0;
    size_t right = 0;
    size_t degree = 0;
    std::vector<size_t> edges;
    uint64_t seed = 0;

    size_t right_cap() const;
    std::vector<size_t> right_degrees() const;
    std::vector<size_t> neighbours(const std::vector<size_t> &s) const;
    // Right vertices joined to s by exactly one edge.
    std::vector<size_t> unique_neighbours(const std::vector<size_t> &s) const;
};

struct ExpanderParams {
    size_t degree = 0;
    double k_max_value = 0;
    size_t k_max = 0;
    bool feasible() const { return k_max >= 1; }
};

ExpanderParams expander_params(size_t n_left, size_t m_right, double eps);

struct LosslessCheck {
    bool ok = true;
    bool exhaustive = true;
    size_t subsets = 0;
    double worst_ratio = 1;            // min |N(S)| / (|S| D)
    std::vector<size_t> worst;
    bool unique_ok = true;             // |N_1(S)| >= (1 - 2 eps) |S| D on every checked S
    std::vector<size_t> unique_worst;  // set with the smallest unique-neighbour margin
};

LosslessCheck verify_lossless(const BipartiteGraph &g, size_t k_max, double eps, int budget = 24);

// Half-edge matching with right half-edge counts fixed to ceil/floor of nD/m.
BipartiteGraph sample_bipartite(size_t n_left, size_t m_right, size_t degree, uint64_t seed);
// Samples with the degree from expander_params and redraws until verify_lossless passes.
BipartiteGraph sample_lossless_expander(size_t n_left, size_t m_right, double eps, uint64_t seed,
                                        size_t retries = 32, int budget = 24);

enum class Side { X, Z };
const char *side_name(Side s);

struct SaRoundConfig {
    Rational alpha{1, 3};
    Rational rho{1, 2};
};

struct SaGroup {
    size_t index = 0;
    size_t m = 0;
    double eps = 0;
    ExpanderParams params;
    bool guaranteed = false;  // false when the expander bound gives K_max < 1
    std::optional<LosslessCheck> check;
    size_t weight_cap = 0;
    size_t max_new_weight = 0;
};

// Integer group indices i with rho^kappa >= 2^-i >= rho, kappa = (1 + alpha) / 2.
std::vector<size_t> sa_group_indices(const Rational &rho, const Rational &alpha);
// Largest integer M with M <= n_x / 2^(i alpha), computed exactly.
size_t sa_group_size(size_t n_x, size_t i, const Rational &alpha);
double sa_group_eps(size_t i, const Rational &alpha);
// True iff m <= n_x / 2^(i alpha) exactly.
bool sa_group_within_bound(size_t n_x, size_t i, const Rational &alpha, size_t m);

struct SaRoundResult {
    CssCode code;
    std::vector<SaGroup> groups;
    size_t rows_added = 0;
    bool row_space_preserved = true;
    size_t q_before = 0, q_after = 0;
};

SaRoundResult amplification_round(const CssCode &code, Side side, const SaRoundConfig &cfg, uint64_t seed,
                                  int budget = 24);

struct AmplifyResult {
    CssCode code;
    size_t rounds = 0;
    bool reached = false;
    std::vector<Rational> trajectory;  // measured soundness before each round and at the end
    std::vector<SaRoundResult> round_reports;
};

// The soundness being raised is that of the amplified matrix: H_X for side X, H_Z for side Z.
AmplifyResult amplify_to_constant(const CssCode &code, Side side, const Rational &target, const Rational &alpha,
                                  uint64_t seed, int budget = 24, size_t max_rounds = 6);

}  // namespace qltc
