#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qltc/css.h"
#include "qltc/gf2.h"
#include "qltc/rational.h"

namespace qltc {

constexpr int kDefaultBudget = 28;

class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Minimum-weight coset leaders for every syndrome in the image of h, found by breadth-first
// search over the image with the columns of h as generators. Syndromes are indexed by their
// coordinates at the pivot positions of a reduced basis of the column space.
class CosetTable {
   public:
    CosetTable(const BitMatrix &h, int budget = kDefaultBudget);

    size_t rank() const { return basis_.size(); }
    uint64_t size() const { return uint64_t{1} << basis_.size(); }
    uint8_t leader_weight(uint64_t index) const { return dist_[index]; }
    uint64_t index_of(const BitVector &syndrome) const;
    BitVector syndrome_of(uint64_t index) const;
    BitVector leader(uint64_t index) const;
    // Column space basis vectors; syndrome(index) is the XOR of basis(i) over set bits i.
    const BitVector &basis(size_t i) const { return basis_[i]; }

   private:
    size_t cols_;
    size_t syndrome_len_;
    std::vector<BitVector> basis_;
    std::vector<size_t> pivots_;
    std::vector<uint64_t> generators_;
    std::vector<uint8_t> dist_;
};

size_t coset_distance(const BitMatrix &h, const BitVector &x, int budget = kDefaultBudget);

struct SoundnessWitness {
    Rational rho;
    BitVector witness;
    size_t violated = 0;
    size_t distance = 0;
};

// Throws std::domain_error when no word lies at positive distance from ker h.
SoundnessWitness brute_soundness(const BitMatrix &h, int budget = kDefaultBudget);

struct QuantumSoundness {
    SoundnessWitness rho_x;
    SoundnessWitness rho_z;
};

QuantumSoundness quantum_soundness(const CssCode &code, int budget = kDefaultBudget);

struct DistanceResult {
    size_t value = 0;
    Provenance method = Provenance::Skipped;
    std::optional<BitVector> witness;
};

// Minimum weight of a vector in ker(check) that is not in rowspace(stabilisers).
// Exact when an enumeration fits the budget; otherwise a search over Tanner-connected supports
// either finds the exact value or certifies a lower bound (method == Bound).
DistanceResult min_nontrivial_weight(const BitMatrix &check, const BitMatrix &stabilisers,
                                     int budget = kDefaultBudget, bool allow_bound = true);

struct CodeDistances {
    bool no_logicals = false;
    DistanceResult d_x;
    DistanceResult d_z;
};

// Exact distances; throws BudgetExceeded when neither enumeration fits.
CodeDistances brute_distance(const CssCode &code, int budget = kDefaultBudget);
// Same, but falls back to a certified lower bound instead of failing.
CodeDistances distance_or_bound(const CssCode &code, int budget = kDefaultBudget);

}  // namespace qltc
