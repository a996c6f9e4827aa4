#include <gtest/gtest.h>

#include <algorithm>

#include "qltc/code_file.h"
#include "qltc/oracle.h"
#include "qltc/pipeline.h"
#include "qltc/report.h"
#include "qltc/weight_reduction.h"
#include "qltc/zoo.h"

using namespace qltc;

namespace {

size_t count_lines(const std::string &s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST(CodeFile, RoundTrip) {
    for (const CssCode &c : {toric_code(2), surface_code(3), cross_code(repetition_pcm(3)), thicken(toric_code(2), 2)}) {
        std::string text = serialize_code(c);
        CssCode back = parse_code(text);
        EXPECT_EQ(back, c);
        EXPECT_EQ(serialize_code(back), text);
    }
}

TEST(CodeFile, EmptyMatrices) {
    CssCode c(BitMatrix(0, 3), BitMatrix::from_rows(3, {{}, {0, 2}}));
    EXPECT_EQ(parse_code(serialize_code(c)), c);
}

TEST(CodeFile, OutOfRangeColumnReportsLine) {
    std::string text = "qltc-code 1\nn 3\nhx 1\n0 1\nhz 1\n0 7\nend\n";
    try {
        parse_code(text);
        FAIL() << "expected a parse error";
    } catch (const CodeFileError &e) {
        EXPECT_EQ(e.kind(), CodeFileError::Kind::Parse);
        EXPECT_EQ(e.line(), 6u);
    }
}

TEST(CodeFile, MalformedHeader) {
    EXPECT_THROW(parse_code("qltc-code 2\nn 3\n"), CodeFileError);
    EXPECT_THROW(parse_code(""), CodeFileError);
    EXPECT_THROW(parse_code("qltc-code 1\nn 3\nhx 2\n0 1\n"), CodeFileError);
}

TEST(CodeFile, NonCommutingRejectedUnlessForced) {
    std::string text = "qltc-code 1\nn 2\nhx 1\n0\nhz 1\n0\nend\n";
    try {
        parse_code(text);
        FAIL() << "expected an invalid code";
    } catch (const CodeFileError &e) {
        EXPECT_EQ(e.kind(), CodeFileError::Kind::Invalid);
    }
    CssCode forced = parse_code(text, true);
    EXPECT_FALSE(validate(forced).ok());
}

TEST(CodeFile, MissingFile) {
    try {
        load_code("/nonexistent/qltc.code");
        FAIL();
    } catch (const CodeFileError &e) {
        EXPECT_EQ(e.kind(), CodeFileError::Kind::Io);
    }
}

TEST(Config, ParsesStepsAndOptions) {
    PipelineConfig cfg = parse_pipeline_config(
        R"({"seed": 4, "budget": 18, "measure": {"distances": false}, "targets": {"locality": 12},
            "steps": [{"op": "thicken", "l": 3}, {"op": "soundamp", "side": "z", "alpha": "1/3"}]})");
    EXPECT_EQ(cfg.seed, 4u);
    EXPECT_EQ(cfg.budget, 18);
    EXPECT_FALSE(cfg.distances);
    EXPECT_TRUE(cfg.soundness);
    EXPECT_EQ(cfg.target_locality, 12u);
    ASSERT_EQ(cfg.steps.size(), 2u);
    EXPECT_EQ(cfg.steps[0].op, "thicken");
    EXPECT_EQ(cfg.steps[0].params.at("l"), "3");
    EXPECT_EQ(cfg.steps[1].params.at("alpha"), "1/3");
}

TEST(Config, Rejections) {
    EXPECT_THROW(parse_pipeline_config(R"({"steps": []})"), ConfigError);
    EXPECT_THROW(parse_pipeline_config(R"({"seed": 1, "steps": [{"op": "teleport"}]})"), ConfigError);
    EXPECT_THROW(parse_pipeline_config("{"), ConfigError);
    EXPECT_THROW(parse_pipeline_config(R"({"seed": 1, "steps": [{"l": 2}]})"), ConfigError);
}

TEST(Pipeline, EmptyStepsMeasuresInput) {
    PipelineConfig cfg = parse_pipeline_config(R"({"seed": 1, "steps": []})");
    PipelineResult r = run_pipeline(cfg, surface_code(3));
    EXPECT_TRUE(r.ok);
    ASSERT_EQ(r.reports.size(), 1u);
    EXPECT_EQ(r.reports[0].output.n, 13u);
    EXPECT_EQ(r.code, surface_code(3));
}

TEST(Pipeline, WeightReductionHitsLocalityTarget) {
    PipelineConfig cfg = parse_pipeline_config(
        R"({"seed": 3, "measure": {"soundness": false}, "targets": {"locality": 12}, "steps": [{"op": "wr-full"}]})");
    PipelineResult r = run_pipeline(cfg, surface_code(3));
    EXPECT_TRUE(r.ok) << r.error;
    ASSERT_EQ(r.reports.size(), 2u);
    EXPECT_EQ(r.reports[1].output.k, 1u);
    EXPECT_LE(r.reports[1].output.locality(), 12u);
    EXPECT_FALSE(r.reports[1].ledger.empty());
    EXPECT_TRUE(r.reports[1].passed());
}

TEST(Pipeline, LocalityTargetMissedFails) {
    PipelineConfig cfg = parse_pipeline_config(R"({"seed": 3, "targets": {"locality": 2}, "steps": []})");
    EXPECT_FALSE(run_pipeline(cfg, surface_code(3)).ok);
}

TEST(Pipeline, BalanceThenAmplify) {
    PipelineConfig cfg = parse_pipeline_config(
        R"({"seed": 2, "steps": [{"op": "ddb", "t": 2}, {"op": "soundamp", "side": "z", "rho": "1/16", "rounds": 1}]})");
    PipelineResult r = run_pipeline(cfg, toric_code(2));
    EXPECT_TRUE(r.ok) << r.error;
    ASSERT_EQ(r.reports.size(), 3u);
    EXPECT_EQ(r.reports[2].output.k, 2u);
    EXPECT_TRUE(validate(r.code).ok());
}

TEST(Pipeline, BudgetExceededIsReported) {
    PipelineConfig cfg = parse_pipeline_config(R"({"seed": 1, "budget": 4, "steps": [{"op": "soundamp", "side": "z", "rounds": 1}]})");
    PipelineResult r = run_pipeline(cfg, surface_code(4));
    EXPECT_TRUE(r.budget_exceeded);
    EXPECT_FALSE(r.ok);
}

TEST(Pipeline, Deterministic) {
    PipelineConfig cfg = parse_pipeline_config(
        R"({"seed": 9, "steps": [{"op": "copy"}, {"op": "gauge"}, {"op": "thicken", "l": 2}, {"op": "heights", "strategy": "random"}]})");
    PipelineResult a = run_pipeline(cfg, toric_code(2)), b = run_pipeline(cfg, toric_code(2));
    EXPECT_EQ(serialize_code(a.code), serialize_code(b.code));
    EXPECT_EQ(reports_to_json(a.reports), reports_to_json(b.reports));
    EXPECT_EQ(render_report(a.reports), render_report(b.reports));
}

TEST(Report, SingleStageHasOneColumn) {
    PipelineConfig cfg = parse_pipeline_config(R"({"seed": 1, "steps": []})");
    PipelineResult r = run_pipeline(cfg, toric_code(2));
    std::string table = render_report(r.reports);
    EXPECT_NE(table.find("input"), std::string::npos);
    EXPECT_NE(table.find("rho_X"), std::string::npos);
    EXPECT_GE(count_lines(table), 14u);
}

TEST(Report, LedgerHasEightStageColumns) {
    WeightReductionResult w = weight_reduce_full(surface_code(3));
    std::string text = render_ledger(w.ledger);
    for (size_t i = 1; i < kLedgerStages.size(); ++i) {
        EXPECT_NE(text.find(kLedgerStages[i]), std::string::npos) << kLedgerStages[i];
    }
    EXPECT_EQ(kLedgerStages.size(), 9u);
}

TEST(Report, JsonRoundTrip) {
    PipelineConfig cfg = parse_pipeline_config(R"({"seed": 5, "steps": [{"op": "copy"}, {"op": "thicken", "l": 2}]})");
    PipelineResult r = run_pipeline(cfg, surface_code(3));
    std::string json = reports_to_json(r.reports);
    std::vector<TransformReport> back = reports_from_json(json);
    EXPECT_EQ(back, r.reports);
    EXPECT_EQ(reports_to_json(back), json);
    CodeParams p = r.reports.back().output;
    EXPECT_EQ(params_from_json(params_to_json(p)), p);
}
