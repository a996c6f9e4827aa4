#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qltc/gf2.h"
#include "qltc/rational.h"

namespace qltc {

// Z-stabiliser rows [0, base_rows * l) of a thickened code come in blocks of l consecutive
// rows, one block per Z-stabiliser of the code that was thickened; row v * l + k is v at height k.
struct ThickeningMeta {
    size_t l = 1;
    size_t base_rows = 0;
    bool operator==(const ThickeningMeta &) const = default;
};

// A cycle of some local graph G_i, kept so the cone can later be reduced. Edge t of the
// cycle joins vertices t and t + 1 (cyclically). Vertices are Z-stabiliser rows, edges are
// qubits, and x_row is the X-stabiliser that the cycle became.
struct ConeDisc {
    size_t x_row = 0;
    std::vector<size_t> vertices;
    std::vector<size_t> edges;
    bool operator==(const ConeDisc &) const = default;
};

struct ConeMeta {
    size_t base_qubits = 0;
    size_t base_x_rows = 0;
    size_t base_z_rows = 0;
    size_t base_w_z = 0;
    size_t base_q_x = 0;
    std::vector<ConeDisc> discs;
    bool operator==(const ConeMeta &) const = default;
};

struct CodeMeta {
    std::vector<std::string> stages;
    std::optional<ThickeningMeta> thickening;
    std::optional<ConeMeta> cone;
    bool operator==(const CodeMeta &) const = default;
};

struct CssCode {
    BitMatrix h_x;
    BitMatrix h_z;
    CodeMeta meta;

    CssCode() = default;
    CssCode(BitMatrix hx, BitMatrix hz);

    size_t n() const { return h_x.cols(); }
    size_t n_x() const { return h_x.rows(); }
    size_t n_z() const { return h_z.rows(); }
    bool operator==(const CssCode &) const = default;
};

struct ValidationReport {
    std::vector<std::pair<size_t, size_t>> anticommuting;
    bool ok() const { return anticommuting.empty(); }
};

ValidationReport validate(const CssCode &code);
size_t dimension(const CssCode &code);
CssCode dual(const CssCode &code);

// Boundary i maps the degree i + 1 space to the degree i space; dims[0] is the lowest degree.
struct ChainComplex {
    std::vector<size_t> dims;
    std::vector<BitMatrix> boundaries;

    ChainComplex() = default;
    ChainComplex(std::vector<size_t> dims, std::vector<BitMatrix> boundaries);
    size_t length() const { return dims.size(); }
};

ChainComplex chain_css(const CssCode &code);
CssCode css_from_chain(const ChainComplex &cx, size_t level);

enum class Provenance { Exact, Bound, Skipped };
const char *provenance_name(Provenance p);

struct CodeParams {
    size_t n = 0, n_x = 0, n_z = 0, k = 0;
    size_t w_x = 0, w_z = 0, q_x = 0, q_z = 0;
    size_t zero_rows_x = 0, zero_rows_z = 0;
    std::optional<size_t> d_x, d_z;
    Provenance d_x_method = Provenance::Skipped, d_z_method = Provenance::Skipped;
    std::optional<Rational> rho_x, rho_z;
    Provenance rho_x_method = Provenance::Skipped, rho_z_method = Provenance::Skipped;

    size_t locality() const;
    bool operator==(const CodeParams &) const = default;
};

struct MeasureOptions {
    bool distances = false;
    bool soundness = false;
    int budget = 28;
};

CodeParams measure(const CssCode &code, const MeasureOptions &opts = {});

}  // namespace qltc
