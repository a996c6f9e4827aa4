#include "qltc/zoo.h"

#include <random>
#include <stdexcept>

namespace qltc {

BitMatrix repetition_pcm(size_t t) {
    if (t == 0) {
        throw std::invalid_argument("repetition_pcm: t must be positive");
    }
    BitMatrix h(t - 1, t);
    for (size_t i = 0; i + 1 < t; ++i) {
        h.set(i, i);
        h.set(i, i + 1);
    }
    return h;
}

CssCode toric_code(size_t L) {
    if (L < 2) {
        throw std::invalid_argument("toric_code: L must be at least 2");
    }
    // Horizontal edge (i,j) joins vertices (i,j),(i,j+1); vertical edge (i,j) joins (i,j),(i+1,j).
    auto h = [L](size_t i, size_t j) { return (i % L) * L + (j % L); };
    auto v = [L](size_t i, size_t j) { return L * L + (i % L) * L + (j % L); };
    size_t n = 2 * L * L;
    BitMatrix hx(L * L, n), hz(L * L, n);
    for (size_t i = 0; i < L; ++i) {
        for (size_t j = 0; j < L; ++j) {
            size_t r = i * L + j;
            hx.set(r, h(i, j));
            hx.set(r, h(i, j + L - 1));
            hx.set(r, v(i, j));
            hx.set(r, v(i + L - 1, j));
            hz.set(r, h(i, j));
            hz.set(r, h(i + 1, j));
            hz.set(r, v(i, j));
            hz.set(r, v(i, j + 1));
        }
    }
    return CssCode(hx, hz);
}

CssCode hypergraph_product(const BitMatrix &h1, const BitMatrix &h2) {
    size_t m1 = h1.rows(), n1 = h1.cols(), m2 = h2.rows(), n2 = h2.cols();
    BitMatrix hx = hstack(kronecker(h1, BitMatrix::identity(n2)), kronecker(BitMatrix::identity(m1), h2.transpose()));
    BitMatrix hz = hstack(kronecker(BitMatrix::identity(n1), h2), kronecker(h1.transpose(), BitMatrix::identity(m2)));
    return CssCode(hx, hz);
}

CssCode surface_code(size_t d) { return hypergraph_product(repetition_pcm(d), repetition_pcm(d)); }

CssCode cross_code(const BitMatrix &h_hat) {
    size_t n = h_hat.cols();
    BitMatrix hz = hstack(BitMatrix::identity(n), BitMatrix::identity(n));
    BitMatrix hx = hstack(h_hat, h_hat);
    return CssCode(hx, hz);
}

CssCode random_css(size_t n, size_t n_x, size_t n_z, uint64_t seed) {
    if (n == 0 || n_x + n_z >= n) {
        throw std::invalid_argument("random_css: need n > n_x + n_z");
    }
    std::mt19937_64 rng(seed);
    BitMatrix hz(n_z, n);
    for (size_t r = 0; r < n_z; ++r) {
        for (size_t c = 0; c < n; ++c) {
            if (rng() & 1) {
                hz.set(r, c);
            }
        }
    }
    auto kernel = rank_kernel(hz).kernel_basis;
    BitMatrix hx(n_x, n);
    for (size_t r = 0; r < n_x; ++r) {
        for (const auto &b : kernel) {
            if (rng() & 1) {
                hx.row(r) ^= b;
            }
        }
    }
    return CssCode(hx, hz);
}

CssCode make_code(const ZooSpec &spec) {
    if (spec.family == "toric") {
        return toric_code(spec.a);
    }
    if (spec.family == "surface") {
        return surface_code(spec.a);
    }
    if (spec.family == "hgp-rep") {
        return hypergraph_product(repetition_pcm(spec.a), repetition_pcm(spec.b ? spec.b : spec.a));
    }
    if (spec.family == "cross-rep") {
        return cross_code(repetition_pcm(spec.a));
    }
    if (spec.family == "random") {
        return random_css(spec.a, spec.b, spec.c, spec.seed);
    }
    throw std::invalid_argument("unknown code family: " + spec.family);
}

}  // namespace qltc
