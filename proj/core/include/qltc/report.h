#pragma once

#include <string>
#include <vector>

#include "qltc/ledger.h"
#include "qltc/pipeline.h"

namespace qltc {

// One column per report, one row per parameter. Distances print as "d" when exact,
// ">=d" for certified lower bounds and "-" when skipped.
std::string render_report(const std::vector<TransformReport> &reports);

// One column per weight-reduction stage after the input, followed by every ledger check.
std::string render_ledger(const std::vector<LedgerRow> &rows);

std::string params_to_json(const CodeParams &p);
CodeParams params_from_json(const std::string &text);

// Structured variant of the same information; reports_from_json inverts it exactly.
std::string reports_to_json(const std::vector<TransformReport> &reports);
std::vector<TransformReport> reports_from_json(const std::string &text);

}  // namespace qltc
