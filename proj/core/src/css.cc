#include "qltc/css.h"

#include <algorithm>
#include <stdexcept>

#include "qltc/oracle.h"

namespace qltc {

CssCode::CssCode(BitMatrix hx, BitMatrix hz) : h_x(std::move(hx)), h_z(std::move(hz)) {
    if (h_x.cols() != h_z.cols()) {
        throw std::invalid_argument("CssCode: H_X and H_Z act on different numbers of qubits");
    }
}

ValidationReport validate(const CssCode &code) {
    ValidationReport report;
    if (code.h_x.cols() != code.h_z.cols()) {
        throw std::invalid_argument("validate: column count mismatch");
    }
    BitMatrix product = matmul(code.h_x, code.h_z.transpose());
    for (size_t i = 0; i < product.rows(); ++i) {
        for (size_t j : product.row(i).support()) {
            report.anticommuting.emplace_back(i, j);
        }
    }
    return report;
}

size_t dimension(const CssCode &code) { return code.n() - rank(code.h_x) - rank(code.h_z); }

CssCode dual(const CssCode &code) {
    CssCode out(code.h_z, code.h_x);
    out.meta.stages = code.meta.stages;
    return out;
}

ChainComplex::ChainComplex(std::vector<size_t> d, std::vector<BitMatrix> b)
    : dims(std::move(d)), boundaries(std::move(b)) {
    if (boundaries.size() + 1 != dims.size() && !(dims.empty() && boundaries.empty())) {
        throw std::invalid_argument("ChainComplex: need one boundary between each pair of spaces");
    }
    for (size_t i = 0; i < boundaries.size(); ++i) {
        if (boundaries[i].rows() != dims[i] || boundaries[i].cols() != dims[i + 1]) {
            throw std::invalid_argument("ChainComplex: boundary " + std::to_string(i) + " has wrong shape");
        }
    }
    for (size_t i = 0; i + 1 < boundaries.size(); ++i) {
        if (!matmul(boundaries[i], boundaries[i + 1]).is_zero()) {
            throw std::invalid_argument("ChainComplex: boundary composition " + std::to_string(i) +
                                        " is nonzero");
        }
    }
}

ChainComplex chain_css(const CssCode &code) {
    return ChainComplex({code.n_x(), code.n(), code.n_z()}, {code.h_x, code.h_z.transpose()});
}

CssCode css_from_chain(const ChainComplex &cx, size_t level) {
    if (level + 2 >= cx.length()) {
        throw std::invalid_argument("css_from_chain: need three consecutive spaces");
    }
    const BitMatrix &bx = cx.boundaries[level];
    const BitMatrix &bz = cx.boundaries[level + 1];
    if (!matmul(bx, bz).is_zero()) {
        throw std::invalid_argument("css_from_chain: boundary composition is nonzero");
    }
    return CssCode(bx, bz.transpose());
}

const char *provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Exact:
            return "exact";
        case Provenance::Bound:
            return "bound";
        case Provenance::Skipped:
            return "skipped";
    }
    return "skipped";
}

size_t CodeParams::locality() const { return std::max({w_x, w_z, q_x, q_z}); }

CodeParams measure(const CssCode &code, const MeasureOptions &opts) {
    CodeParams p;
    p.n = code.n();
    p.n_x = code.n_x();
    p.n_z = code.n_z();
    p.k = dimension(code);
    p.w_x = code.h_x.max_row_weight();
    p.w_z = code.h_z.max_row_weight();
    p.q_x = code.h_x.max_column_weight();
    p.q_z = code.h_z.max_column_weight();
    for (size_t r = 0; r < code.n_x(); ++r) {
        p.zero_rows_x += code.h_x.row(r).any() ? 0 : 1;
    }
    for (size_t r = 0; r < code.n_z(); ++r) {
        p.zero_rows_z += code.h_z.row(r).any() ? 0 : 1;
    }
    if (opts.distances && p.k > 0) {
        CodeDistances d = distance_or_bound(code, opts.budget);
        p.d_x = d.d_x.value;
        p.d_x_method = d.d_x.method;
        p.d_z = d.d_z.value;
        p.d_z_method = d.d_z.method;
    }
    if (opts.soundness) {
        try {
            p.rho_x = brute_soundness(code.h_z, opts.budget).rho;
            p.rho_x_method = Provenance::Exact;
        } catch (const BudgetExceeded &) {
        } catch (const std::domain_error &) {
        }
        try {
            p.rho_z = brute_soundness(code.h_x, opts.budget).rho;
            p.rho_z_method = Provenance::Exact;
        } catch (const BudgetExceeded &) {
        } catch (const std::domain_error &) {
        }
    }
    return p;
}

Rational parse_rational(const std::string &text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        return Rational(std::stoll(text));
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    int64_t den = 1;
    for (size_t i = dot + 1; i < text.size(); ++i) {
        den *= 10;
    }
    return Rational(std::stoll(digits), den);
}

}  // namespace qltc
