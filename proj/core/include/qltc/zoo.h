#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "qltc/css.h"
#include "qltc/gf2.h"

namespace qltc {

struct ZooSpec {
    std::string family;
    size_t a = 0;
    size_t b = 0;
    size_t c = 0;
    uint64_t seed = 0;
};

BitMatrix repetition_pcm(size_t t);
CssCode toric_code(size_t L);
CssCode hypergraph_product(const BitMatrix &h1, const BitMatrix &h2);
// Open-boundary variant: hypergraph product of two length-d repetition codes.
CssCode surface_code(size_t d);
CssCode cross_code(const BitMatrix &h_hat);
CssCode random_css(size_t n, size_t n_x, size_t n_z, uint64_t seed);

// Families: "toric" (a = L), "surface" (a = d), "hgp-rep" (a = t1, b = t2),
// "cross-rep" (a = t), "random" (a = n, b = n_x, c = n_z, seed).
CssCode make_code(const ZooSpec &spec);

}  // namespace qltc
