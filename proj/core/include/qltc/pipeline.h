#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qltc/css.h"
#include "qltc/ledger.h"

namespace qltc {

struct PipelineStep {
    std::string op;
    std::map<std::string, std::string> params;
};

struct PipelineConfig {
    std::vector<PipelineStep> steps;
    int budget = 24;
    uint64_t seed = 0;
    bool distances = true;
    bool soundness = true;
    LedgerConstants ledger_constants = default_ledger_constants();
    std::optional<size_t> target_locality;  // checked against the final code
    std::string base_dir;  // relative code paths in step parameters resolve against this
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> &known_ops();
PipelineConfig parse_pipeline_config(const std::string &json_text, const std::string &base_dir = "");
LedgerConstants parse_ledger_constants(const std::string &json_text);

enum class CheckStatus { Pass, Fail, Skipped };
const char *check_status_name(CheckStatus s);

struct BoundCheck {
    std::string name;
    std::string detail;
    CheckStatus status = CheckStatus::Skipped;
    bool operator==(const BoundCheck &) const = default;
};

struct TransformReport {
    std::string op;
    std::map<std::string, std::string> params;
    CodeParams input;
    CodeParams output;
    std::vector<BoundCheck> checks;
    std::vector<LedgerRow> ledger;
    std::map<std::string, std::string> notes;

    bool passed() const;
    bool operator==(const TransformReport &) const = default;
};

struct PipelineResult {
    CssCode code;
    std::vector<TransformReport> reports;  // a measurement of the input first, then one per step
    bool ok = true;
    bool budget_exceeded = false;
    std::string error;
};

MeasureOptions measure_options(const PipelineConfig &cfg);
TransformReport run_step(const PipelineStep &step, const CssCode &input, const CodeParams &input_params,
                         const PipelineConfig &cfg, CssCode &output);
PipelineResult run_pipeline(const PipelineConfig &cfg, const CssCode &input);

}  // namespace qltc
