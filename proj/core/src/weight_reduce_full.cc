#include "qltc/weight_reduction.h"

namespace qltc {

namespace {

void require(bool ok, const std::string &stage, const std::string &what) {
    if (!ok) {
        throw StageFailure(stage, what);
    }
}

}  // namespace

WeightReductionResult weight_reduce_full(const CssCode &code, const WeightReductionConfig &cfg) {
    WeightReductionResult res;
    const size_t k = dimension(code);
    auto record = [&](const std::string &stage, const CssCode &c) {
        require(validate(c).ok(), stage, "stabilisers do not commute");
        require(dimension(c) == k, stage, "dimension changed");
        res.stages.push_back({stage, c, measure(c, cfg.measure)});
    };

    record(kLedgerStages[0], code);
    CssCode copied = copying(code);
    record(kLedgerStages[1], copied);
    CssCode gauged = gauging(copied);
    record(kLedgerStages[2], gauged);

    ThickenHeightsResult th = thicken_and_choose_heights(gauged, cfg.l1, cfg.heights);
    res.l1 = th.l;
    CssCode thick = thicken(gauged, th.l);
    require(row_space_equal(thick.h_z, th.code.h_z), kLedgerStages[3], "height choice changed the Z row space");
    record(kLedgerStages[3], th.code);

    ReasonableCheck rc = is_reasonable(th.code);
    require(rc.reasonable, kLedgerStages[4],
            "code before coning is not reasonable (Z-stabiliser " + std::to_string(rc.stabiliser) + ")");
    CssCode coned = cone(th.code, &res.cone_stats);
    require(res.cone_stats.rank_identity_holds, kLedgerStages[4], "cycle basis rank identity failed");
    record(kLedgerStages[4], coned);

    ReduceConeOptions ro;
    ro.l2 = cfg.l2;
    ReduceConeResult red = reduce_cone(coned, ro);
    res.l2 = red.l2;
    record(kLedgerStages[5], red.thickened);
    record(kLedgerStages[6], red.full_heights);
    record(kLedgerStages[7], red.partial_heights);
    record(kLedgerStages[8], red.code);
    res.code = red.code;

    std::vector<CodeParams> params;
    for (const auto &s : res.stages) {
        params.push_back(s.params);
    }
    res.ledger = parameter_ledger(params, res.l1, res.l2, cfg.constants);
    return res;
}

}  // namespace qltc
