#pragma once

#include "qltc/css.h"
#include "qltc/gf2.h"

namespace qltc {

struct ClassicalCode {
    BitMatrix h;
    bool independent_checks = false;

    ClassicalCode() = default;
    explicit ClassicalCode(BitMatrix h);

    size_t s() const { return h.rows(); }
    size_t t() const { return h.cols(); }
    size_t dim() const { return h.cols() - h.rows(); }
};

// The complex F2^s --H^T--> F2^t, with F2^t in degree 0.
ChainComplex dual_classical_complex(const ClassicalCode &r);

ChainComplex homological_product(const ChainComplex &x, const ChainComplex &y);

CssCode distance_balance(const CssCode &code, const ClassicalCode &r);
CssCode double_distance_balance(const CssCode &code, const ClassicalCode &r);

// Minimum weight of a nonzero word of ker(h), by enumeration.
size_t classical_distance(const BitMatrix &h, int budget = 28);

}  // namespace qltc
