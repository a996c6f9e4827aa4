#include <gtest/gtest.h>

#include <cmath>

#include "qltc/oracle.h"
#include "qltc/soundness_amp.h"
#include "qltc/zoo.h"
#include "support/oracles.h"

using namespace qltc;

namespace {

std::vector<std::vector<size_t>> adjacency(const BipartiteGraph &g) {
    std::vector<std::vector<size_t>> adj(g.left);
    for (size_t v = 0; v < g.left; ++v) {
        adj[v].assign(g.edges.begin() + v * g.degree, g.edges.begin() + (v + 1) * g.degree);
    }
    return adj;
}

CssCode repetition_toy() { return CssCode(BitMatrix(0, 16), repetition_pcm(16)); }

}  // namespace

TEST(ExpanderParams, Values) {
    EXPECT_EQ(expander_params(12, 6, 0.5).degree, 14u);
    EXPECT_EQ(expander_params(16, 4, 0.5).degree, 16u);
    EXPECT_EQ(expander_params(12, 12, 0.5).degree, 12u);
    ExpanderParams big = expander_params(500, 500, 0.5);
    EXPECT_EQ(big.degree, 12u);
    EXPECT_NEAR(big.k_max_value, 2.0295, 1e-3);
    EXPECT_EQ(big.k_max, 2u);
    EXPECT_TRUE(big.feasible());
    EXPECT_FALSE(expander_params(12, 12, 0.5).feasible());
}

TEST(Bipartite, SampleIsRegularAndBalanced) {
    BipartiteGraph g = sample_bipartite(9, 4, 5, 11);
    EXPECT_EQ(g.edges.size(), 45u);
    auto deg = g.right_degrees();
    for (size_t d : deg) {
        EXPECT_TRUE(d == 11 || d == 12);
    }
    EXPECT_EQ(g.right_cap(), 12u);
}

TEST(Bipartite, Deterministic) {
    EXPECT_EQ(sample_bipartite(10, 5, 4, 3).edges, sample_bipartite(10, 5, 4, 3).edges);
    EXPECT_NE(sample_bipartite(10, 5, 4, 3).edges, sample_bipartite(10, 5, 4, 4).edges);
}

TEST(Bipartite, UniqueNeighbours) {
    BipartiteGraph g;
    g.left = 2;
    g.right = 3;
    g.degree = 2;
    g.edges = {0, 1, 1, 2};
    EXPECT_EQ(g.neighbours({0, 1}), (std::vector<size_t>{0, 1, 2}));
    EXPECT_EQ(g.unique_neighbours({0, 1}), (std::vector<size_t>{0, 2}));
    EXPECT_EQ(g.unique_neighbours({0}), (std::vector<size_t>{0, 1}));
}

TEST(Lossless, AgreesWithOracle) {
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        BipartiteGraph g = sample_bipartite(10, 8, 4, seed);
        for (size_t k : {1, 2, 3}) {
            LosslessCheck c = verify_lossless(g, k, 0.5);
            oracle::Expansion o = oracle::expansion(adjacency(g), g.right, k, 0.5);
            EXPECT_TRUE(c.exhaustive);
            EXPECT_EQ(c.subsets, o.subsets);
            EXPECT_NEAR(c.worst_ratio, o.worst_ratio, 1e-12);
            EXPECT_EQ(c.unique_ok, o.unique_ok);
        }
    }
}

TEST(Lossless, CompleteBipartiteFails) {
    BipartiteGraph g;
    g.left = 3;
    g.right = 3;
    g.degree = 3;
    g.edges = {0, 1, 2, 0, 1, 2, 0, 1, 2};
    LosslessCheck c = verify_lossless(g, 2, 0.25);
    EXPECT_FALSE(c.ok);
    EXPECT_DOUBLE_EQ(c.worst_ratio, 0.5);
    EXPECT_EQ(c.worst.size(), 2u);
}

TEST(Lossless, SampledExpanderAtSupplementaryParameters) {
    BipartiteGraph g = sample_lossless_expander(500, 500, 0.5, 1);
    LosslessCheck c = verify_lossless(g, 2, 0.5);
    EXPECT_TRUE(c.ok);
    EXPECT_TRUE(c.unique_ok);
    EXPECT_EQ(c.subsets, 125250u);
    EXPECT_GE(c.worst_ratio, 0.5);
}

TEST(SaGroups, Indices) {
    EXPECT_EQ(sa_group_indices(Rational(1, 16), Rational(1, 3)), (std::vector<size_t>{3, 4}));
    EXPECT_EQ(sa_group_size(100, 3, Rational(1, 3)), 50u);
    EXPECT_EQ(sa_group_size(100, 4, Rational(1, 3)), 39u);
    EXPECT_TRUE(sa_group_within_bound(100, 4, Rational(1, 3), 39));
    EXPECT_FALSE(sa_group_within_bound(100, 4, Rational(1, 3), 40));
    EXPECT_NEAR(sa_group_eps(3, Rational(1, 3)), 0.5, 1e-12);
    EXPECT_NEAR(sa_group_eps(4, Rational(1, 3)), 0.458, 1e-3);
}

TEST(SaRound, RepetitionToy) {
    CssCode toy = repetition_toy();
    EXPECT_EQ(brute_soundness(toy.h_z).rho, Rational(2, 15));
    SaRoundResult r = amplification_round(toy, Side::Z, {Rational(1, 3), Rational(1, 16)}, 7);
    ASSERT_EQ(r.groups.size(), 2u);
    EXPECT_EQ(r.groups[0].index, 3u);
    EXPECT_EQ(r.groups[1].index, 4u);
    for (const SaGroup &g : r.groups) {
        EXPECT_FALSE(g.guaranteed);
        EXPECT_LE(g.max_new_weight, g.weight_cap);
    }
    EXPECT_EQ(r.rows_added, 12u);
    EXPECT_TRUE(r.row_space_preserved);
    EXPECT_TRUE(oracle::same_row_space(toy.h_z, r.code.h_z));
    EXPECT_EQ(dimension(r.code), dimension(toy));
    EXPECT_EQ(r.q_before, 2u);
    EXPECT_EQ(r.q_after, 10u);
    EXPECT_EQ(oracle::soundness(r.code.h_z), Rational(32, 135));
}

TEST(SaRound, Deterministic) {
    CssCode toy = repetition_toy();
    SaRoundConfig cfg{Rational(1, 3), Rational(1, 16)};
    EXPECT_EQ(amplification_round(toy, Side::Z, cfg, 7).code, amplification_round(toy, Side::Z, cfg, 7).code);
}

TEST(SaRound, SideXLeavesZAlone) {
    CssCode c = dual(repetition_toy());
    SaRoundResult r = amplification_round(c, Side::X, {Rational(1, 3), Rational(1, 16)}, 7);
    EXPECT_EQ(r.code.h_z, c.h_z);
    EXPECT_TRUE(row_space_equal(r.code.h_x, c.h_x));
}

TEST(Amplify, ReachesTarget) {
    AmplifyResult a = amplify_to_constant(repetition_toy(), Side::Z, Rational(1, 2), Rational(1, 3), 3);
    EXPECT_TRUE(a.reached);
    EXPECT_EQ(a.rounds, 3u);
    EXPECT_EQ(a.trajectory, (std::vector<Rational>{Rational(2, 15), Rational(4, 21), Rational(16, 39),
                                                   Rational(40, 69)}));
    for (size_t i = 0; i + 1 < a.trajectory.size(); ++i) {
        EXPECT_LT(a.trajectory[i], a.trajectory[i + 1]);
    }
    EXPECT_EQ(dimension(a.code), 1u);
}

TEST(Amplify, AlreadyAtTargetDoesNothing) {
    CssCode c = toric_code(2);
    AmplifyResult a = amplify_to_constant(c, Side::X, Rational(1), Rational(1, 3), 3);
    EXPECT_TRUE(a.reached);
    EXPECT_EQ(a.rounds, 0u);
    EXPECT_EQ(a.code, c);
}
