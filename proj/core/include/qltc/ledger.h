#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qltc/css.h"

namespace qltc {

// Stage tags in pipeline order; index 0 is the input code.
extern const std::vector<std::string> kLedgerStages;

enum class BoundKind { Exact, Upper, Lower };
enum class LedgerStatus { Pass, Fail, Unevaluated };

const char *bound_kind_name(BoundKind k);
const char *ledger_status_name(LedgerStatus s);

struct LedgerCheck {
    std::string quantity;   // e.g. "w_z", "N_x", "rho_z"
    std::string formula;    // the table entry as text
    BoundKind kind = BoundKind::Exact;
    std::string constant;   // name of the hidden constant; empty for exact relations
    std::optional<double> measured;
    std::optional<double> base;   // formula value with the constant set to 1
    std::optional<double> bound;  // constant * base
    LedgerStatus status = LedgerStatus::Unevaluated;
    std::string note;

    bool operator==(const LedgerCheck &) const = default;
};

struct LedgerRow {
    std::string stage;
    CodeParams params;
    std::vector<LedgerCheck> checks;

    bool operator==(const LedgerRow &) const = default;
};

using LedgerConstants = std::map<std::string, double>;

// Constants fitted on the surface code pipeline with a factor 2 of slack.
LedgerConstants default_ledger_constants();

// stage_params[i] belongs to kLedgerStages[i]; fewer entries evaluate a prefix of the tables.
std::vector<LedgerRow> parameter_ledger(const std::vector<CodeParams> &stage_params, size_t l1, size_t l2,
                                        const LedgerConstants &constants);

// Tightest constant for every check: the largest measured/base ratio for upper bounds and the
// smallest for lower bounds.
LedgerConstants fit_ledger_constants(const std::vector<LedgerRow> &rows);

bool ledger_passes(const std::vector<LedgerRow> &rows);

}  // namespace qltc
