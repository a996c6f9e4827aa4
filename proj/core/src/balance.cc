#include "qltc/balance.h"

#include <limits>
#include <stdexcept>

#include "qltc/oracle.h"

namespace qltc {

ClassicalCode::ClassicalCode(BitMatrix m) : h(std::move(m)) { independent_checks = rank(h) == h.rows(); }

ChainComplex dual_classical_complex(const ClassicalCode &r) {
    return ChainComplex({r.t(), r.s()}, {r.h.transpose()});
}

namespace {

struct Summand {
    size_t i, j, offset;
};

std::vector<Summand> summands(const ChainComplex &x, const ChainComplex &y, size_t p, size_t &total) {
    std::vector<Summand> out;
    total = 0;
    for (size_t i = std::min(p, x.length() - 1) + 1; i-- > 0;) {
        size_t j = p - i;
        if (j >= y.length()) {
            break;
        }
        out.push_back({i, j, total});
        total += x.dims[i] * y.dims[j];
    }
    return out;
}

}  // namespace

ChainComplex homological_product(const ChainComplex &x, const ChainComplex &y) {
    if (x.length() == 0 || y.length() == 0) {
        throw std::invalid_argument("homological_product: empty complex");
    }
    size_t top = x.length() + y.length() - 2;
    std::vector<std::vector<Summand>> layout(top + 1);
    std::vector<size_t> dims(top + 1);
    for (size_t p = 0; p <= top; ++p) {
        layout[p] = summands(x, y, p, dims[p]);
    }
    std::vector<BitMatrix> xcols, ycols;
    for (const auto &b : x.boundaries) {
        xcols.push_back(b.transpose());
    }
    for (const auto &b : y.boundaries) {
        ycols.push_back(b.transpose());
    }
    auto find = [&](size_t p, size_t i) -> const Summand * {
        for (const auto &s : layout[p]) {
            if (s.i == i) {
                return &s;
            }
        }
        return nullptr;
    };
    std::vector<BitMatrix> boundaries;
    for (size_t p = 1; p <= top; ++p) {
        BitMatrix d(dims[p - 1], dims[p]);
        for (const auto &s : layout[p]) {
            size_t dy = y.dims[s.j];
            if (s.i >= 1) {
                const Summand *to = find(p - 1, s.i - 1);
                const BitMatrix &bx = xcols[s.i - 1];
                for (size_t a = 0; a < x.dims[s.i]; ++a) {
                    for (size_t a2 : bx.row(a).support()) {
                        for (size_t b = 0; b < dy; ++b) {
                            d.flip(to->offset + a2 * dy + b, s.offset + a * dy + b);
                        }
                    }
                }
            }
            if (s.j >= 1) {
                const Summand *to = find(p - 1, s.i);
                const BitMatrix &by = ycols[s.j - 1];
                size_t dy2 = y.dims[s.j - 1];
                for (size_t a = 0; a < x.dims[s.i]; ++a) {
                    for (size_t b = 0; b < dy; ++b) {
                        for (size_t b2 : by.row(b).support()) {
                            d.flip(to->offset + a * dy2 + b2, s.offset + a * dy + b);
                        }
                    }
                }
            }
        }
        boundaries.push_back(std::move(d));
    }
    return ChainComplex(std::move(dims), std::move(boundaries));
}

CssCode distance_balance(const CssCode &code, const ClassicalCode &r) {
    if (!r.independent_checks) {
        throw std::invalid_argument("distance_balance: classical code must have independent checks");
    }
    ChainComplex product = homological_product(chain_css(code), dual_classical_complex(r));
    CssCode out = css_from_chain(product, 0);
    out.meta.stages = code.meta.stages;
    return out;
}

CssCode double_distance_balance(const CssCode &code, const ClassicalCode &r) {
    CssCode once = dual(distance_balance(code, r));
    return dual(distance_balance(once, r));
}

size_t classical_distance(const BitMatrix &h, int budget) {
    auto kernel = rank_kernel(h).kernel_basis;
    if (kernel.empty()) {
        throw std::domain_error("classical_distance: code has no nonzero codewords");
    }
    if (kernel.size() > static_cast<size_t>(budget)) {
        throw BudgetExceeded("classical_distance: kernel too large");
    }
    BitVector cur(h.cols());
    size_t best = std::numeric_limits<size_t>::max();
    for (uint64_t i = 1; i < (uint64_t{1} << kernel.size()); ++i) {
        cur ^= kernel[std::countr_zero(i)];
        best = std::min(best, cur.weight());
    }
    return best;
}

}  // namespace qltc
