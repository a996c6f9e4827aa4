#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qltc/css.h"
#include "qltc/gf2.h"
#include "qltc/ledger.h"

namespace qltc {

CssCode copying(const CssCode &code);
CssCode gauging(const CssCode &code);
// Distance balancing with the length-l repetition code; the result carries ThickeningMeta.
CssCode thicken(const CssCode &code, size_t l);

struct HeightChoice {
    size_t l = 1;
    std::vector<size_t> height;  // 0-based layer for each base stabiliser
};

enum class HeightStrategy { Greedy, Random, Explicit };

struct HeightOptions {
    HeightStrategy strategy = HeightStrategy::Greedy;
    uint64_t seed = 0;
    size_t restarts = 8;
    HeightChoice explicit_choice;
    // Target for the largest number of retained layered stabilisers touching any one qubit.
    size_t target_load = 1;
};

struct HeightResult {
    CssCode code;
    HeightChoice choice;
    size_t max_load = 0;
    bool target_met = true;
};

HeightResult choose_heights(const CssCode &thickened, const HeightOptions &opts = {});

// Smallest l >= 2 for which greedy heights reach the target load; returns the thickened
// code with heights applied.
struct ThickenHeightsResult {
    CssCode code;
    size_t l = 0;
    HeightChoice choice;
    size_t max_load = 0;
};
ThickenHeightsResult thicken_and_choose_heights(const CssCode &code, size_t l, const HeightOptions &opts = {});

struct ReasonableCheck {
    bool reasonable = true;
    size_t stabiliser = 0;
    std::optional<BitVector> witness;
};

ReasonableCheck is_reasonable(const CssCode &code);

struct LocalPair {
    size_t stabiliser = 0;  // X-stabiliser row
    size_t a = 0, b = 0;    // local vertex indices into qubits, a < b
};

struct LocalComplex {
    size_t index = 0;
    std::vector<size_t> qubits;     // Q_i, ascending
    std::vector<LocalPair> pairs;   // X_i, edges of G_i
    // R_i: each cycle as an edge sequence; edge t joins cycle_vertices[t] and cycle_vertices[t+1].
    std::vector<std::vector<size_t>> cycles;
    std::vector<std::vector<size_t>> cycle_vertices;
    size_t components = 0;
};

LocalComplex build_local_complex(const CssCode &code, size_t i);

struct ConeStats {
    size_t local_complexes = 0;
    size_t total_pairs = 0;
    size_t total_cycles = 0;
    size_t max_cycle_length = 0;
    size_t max_edge_multiplicity = 0;
    size_t total_cycle_weight = 0;
    bool rank_identity_holds = true;
};

CssCode cone(const CssCode &code, ConeStats *stats = nullptr);

struct ReduceConeOptions {
    size_t l2 = 0;  // 0 selects the smallest palette the greedy colouring needs (at least 2)
};

struct ReduceConeResult {
    CssCode code;
    size_t l2 = 0;
    size_t colours_needed = 0;
    size_t formula_palette = 0;
    bool l2_increased = false;
    size_t chords = 0;
    CssCode thickened;        // dual-thickened cone before any height choice
    CssCode full_heights;     // heights for every X-stabiliser in the bottom layer space
    CssCode partial_heights;  // heights only for disc stabilisers
};

ReduceConeResult reduce_cone(const CssCode &cone_code, const ReduceConeOptions &opts = {});

// Faces of the chord cellulation of a disc whose boundary has w edges: face f lists
// boundary edge positions and chord numbers; chord j joins vertices j and w - j.
struct DiscFace {
    std::vector<size_t> boundary_edges;
    std::vector<size_t> chords;
};
std::vector<DiscFace> cellulate_disc(size_t w);

struct WeightReductionConfig {
    size_t l1 = 0;  // 0 searches upward from 2
    size_t l2 = 0;
    HeightOptions heights;
    MeasureOptions measure{false, true, 24};
    LedgerConstants constants = default_ledger_constants();
};

struct StageRecord {
    std::string stage;
    CssCode code;
    CodeParams params;
};

struct WeightReductionResult {
    CssCode code;
    std::vector<StageRecord> stages;  // one per ledger stage, the input first
    size_t l1 = 0, l2 = 0;
    ConeStats cone_stats;
    std::vector<LedgerRow> ledger;
};

class StageFailure : public std::runtime_error {
public:
    StageFailure(const std::string &stage, const std::string &what)
        : std::runtime_error(stage + ": " + what), stage_(stage) {}
    const std::string &stage() const { return stage_; }

private:
    std::string stage_;
};

WeightReductionResult weight_reduce_full(const CssCode &code, const WeightReductionConfig &cfg = {});

}  // namespace qltc
