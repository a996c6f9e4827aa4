#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qltc/css.h"
#include "qltc/gf2.h"

namespace qltc {

// x[i] overlaps z[j] oddly iff i == j.
struct LogicalBasis {
    std::vector<BitVector> x;
    std::vector<BitVector> z;
};

LogicalBasis logical_basis(const CssCode &code);

// Splits the outer qubits into blocks of k_in consecutive qubits and encodes each block into
// the inner code. Rows: outer X images, inner X rows per block; likewise for Z.
CssCode concatenate_css(const CssCode &outer, const CssCode &inner, size_t blocks);

// N_in-regular bipartite multigraph on b + b vertices. Edge j of left vertex u is
// target[u * n_in + j] = v * n_in + j', the j'-th edge of right vertex v.
struct PermGraph {
    size_t b = 0;
    size_t n_in = 0;
    std::vector<size_t> target;
    uint64_t seed = 0;

    size_t right_of(size_t u, size_t j) const { return target[u * n_in + j] / n_in; }
    std::vector<std::vector<size_t>> counts() const;  // counts[u][v] = edges between u and v
};

PermGraph sample_perm_graph(size_t b, size_t n_in, uint64_t seed);

struct PseudorandomCheck {
    double eps = 0;  // smallest eps for which the graph is eps-pseudorandom
    std::vector<size_t> worst_s, worst_t;
    double worst_deviation = 0;
};

// Exact over all (S, T); for each S and size |T| only the extreme T can be worst.
PseudorandomCheck verify_pseudorandom(const PermGraph &g);

// Redraws until the measured eps is at most eps; requires n_in >= 4 / eps^2.
PermGraph sample_pseudorandom_graph(size_t b, size_t n_in, double eps, uint64_t seed, size_t retries = 64);

struct HeavyVertexCheck {
    bool holds = true;
    size_t max_t = 0;            // largest |T| covered
    size_t sets = 0;
    size_t worst_heavy = 0;      // most left blocks with more than alpha_in * n_in edges into T
    std::vector<size_t> worst_t;
    double allowed = 0;          // alpha_out * b
};

HeavyVertexCheck heavy_vertex_check(const PermGraph &g, double eps, double alpha_in, double alpha_out);

struct AelResult {
    CssCode code;
    CssCode concatenated;  // outer encoded into inner blocks
    CssCode permuted;
    std::vector<size_t> permutation;  // old qubit -> new qubit in the concatenated code
};

AelResult ael_amplify(const CssCode &outer, const CssCode &inner, const CssCode &block, const PermGraph &g);

// Relative-distance lower bound Delta_block (Delta_in / 2 - eps sqrt(Delta_in / Delta_out)).
double ael_distance_bound(double delta_block, double delta_in, double delta_out, double eps);

// rho_hat = N_X,out rho_Z,out / N_out.
double ael_soundness_alpha(double rho_hat, size_t n_in, size_t k_in, size_t w_out);
// (N~ / N~_X) alpha / (N_in N_block).
double ael_soundness_bound(double alpha, size_t n_tilde, size_t n_x_tilde, size_t n_in, size_t n_block);

}  // namespace qltc
