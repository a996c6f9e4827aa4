#include "qltc/pipeline.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "qltc/balance.h"
#include "qltc/code_file.h"
#include "qltc/distance_amp.h"
#include "qltc/oracle.h"
#include "qltc/soundness_amp.h"
#include "qltc/weight_reduction.h"
#include "qltc/zoo.h"

namespace qltc {

using nlohmann::json;

const std::vector<std::string> &known_ops() {
    static const std::vector<std::string> ops = {
        "measure", "dual",        "copy",    "gauge",   "thicken", "heights",  "thicken-heights",
        "cone",    "reduce-cone", "wr-full", "balance", "ddb",     "soundamp", "ael"};
    return ops;
}

const char *check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass:
            return "pass";
        case CheckStatus::Fail:
            return "fail";
        case CheckStatus::Skipped:
            return "skipped";
    }
    return "?";
}

bool TransformReport::passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const BoundCheck &c) { return c.status == CheckStatus::Fail; });
}

MeasureOptions measure_options(const PipelineConfig &cfg) { return MeasureOptions{cfg.distances, cfg.soundness, cfg.budget}; }

namespace {

std::string scalar_string(const json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_unsigned()) {
        return std::to_string(v.get<uint64_t>());
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<int64_t>());
    }
    if (v.is_number_float()) {
        return v.dump();
    }
    if (v.is_array()) {
        std::string out;
        for (const auto &e : v) {
            out += (out.empty() ? "" : ",") + scalar_string(e);
        }
        return out;
    }
    throw ConfigError("unsupported parameter value " + v.dump());
}

const std::string *find_param(const PipelineStep &s, const std::string &key) {
    auto it = s.params.find(key);
    return it == s.params.end() ? nullptr : &it->second;
}

size_t parse_size(const std::string &key, const std::string &v) {
    size_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) {
        throw ConfigError("parameter '" + key + "' must be a non-negative integer, got '" + v + "'");
    }
    return out;
}

size_t size_param(const PipelineStep &s, const std::string &key, std::optional<size_t> fallback = std::nullopt) {
    if (const std::string *v = find_param(s, key)) {
        return parse_size(key, *v);
    }
    if (!fallback) {
        throw ConfigError("step '" + s.op + "' needs parameter '" + key + "'");
    }
    return *fallback;
}

Rational rational_param(const PipelineStep &s, const std::string &key, std::optional<Rational> fallback) {
    if (const std::string *v = find_param(s, key)) {
        try {
            return parse_rational(*v);
        } catch (const std::exception &) {
            throw ConfigError("parameter '" + key + "' must be a rational, got '" + *v + "'");
        }
    }
    if (!fallback) {
        throw ConfigError("step '" + s.op + "' needs parameter '" + key + "'");
    }
    return *fallback;
}

uint64_t seed_of(const PipelineStep &s, const PipelineConfig &cfg) {
    if (const std::string *v = find_param(s, "seed")) {
        return parse_size("seed", *v);
    }
    return cfg.seed;
}

std::string resolve(const PipelineConfig &cfg, const std::string &path) {
    std::filesystem::path p(path);
    if (p.is_relative() && !cfg.base_dir.empty()) {
        p = std::filesystem::path(cfg.base_dir) / p;
    }
    return p.string();
}

std::string str(const Rational &r) { return to_string(r); }

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(6);
    o << v;
    return o.str();
}

class Checks {
public:
    explicit Checks(std::vector<BoundCheck> &out) : out_(out) {}

    void flag(const std::string &name, bool ok, const std::string &detail) {
        out_.push_back({name, detail, ok ? CheckStatus::Pass : CheckStatus::Fail});
    }

    void skip(const std::string &name, const std::string &why) { out_.push_back({name, why, CheckStatus::Skipped}); }

    void eq(const std::string &name, size_t got, size_t want) {
        flag(name, got == want, std::to_string(got) + (got == want ? " == " : " != ") + std::to_string(want));
    }

    void le(const std::string &name, size_t got, size_t cap) {
        flag(name, got <= cap, std::to_string(got) + (got <= cap ? " <= " : " > ") + std::to_string(cap));
    }

    void dist_eq(const std::string &name, const std::optional<size_t> &got, Provenance how,
                 std::optional<size_t> want) {
        if (!got || !want) {
            skip(name, "distance not measured exactly");
        } else if (how == Provenance::Exact) {
            eq(name, *got, *want);
        } else if (*got > *want) {
            flag(name, false, "lower bound " + std::to_string(*got) + " > " + std::to_string(*want));
        } else {
            skip(name, "only the bound d >= " + std::to_string(*got) + " is known");
        }
    }

    void dist_ge(const std::string &name, const std::optional<size_t> &got, Provenance how, std::optional<size_t> need) {
        if (!got || !need) {
            skip(name, "distance not measured");
        } else if (*got >= *need) {
            flag(name, true, std::to_string(*got) + " >= " + std::to_string(*need));
        } else if (how == Provenance::Exact) {
            flag(name, false, std::to_string(*got) + " < " + std::to_string(*need));
        } else {
            skip(name, "bound " + std::to_string(*got) + " below " + std::to_string(*need) + "; inconclusive");
        }
    }

    void rho_ge(const std::string &name, const std::optional<Rational> &got, const std::optional<Rational> &need) {
        if (!got || !need) {
            skip(name, "soundness not measured");
            return;
        }
        flag(name, *got >= *need, str(*got) + (*got >= *need ? " >= " : " < ") + str(*need));
    }

    // Bounds whose hidden constant is unknown: positivity is asserted, the ratio recorded.
    void rho_ratio(const std::string &name, const std::optional<Rational> &got, const std::optional<Rational> &formula) {
        if (!got || !formula) {
            skip(name, "soundness not measured");
            return;
        }
        double ratio = *formula > 0 ? to_double(*got / *formula) : 0;
        flag(name, *got > 0, "measured " + str(*got) + ", formula " + str(*formula) + ", ratio " + fmt(ratio));
    }

private:
    std::vector<BoundCheck> &out_;
};

std::optional<size_t> exact(const std::optional<size_t> &d, Provenance how) {
    return d && how == Provenance::Exact ? d : std::nullopt;
}

std::optional<size_t> times(std::optional<size_t> a, size_t f) { return a ? std::optional<size_t>(*a * f) : std::nullopt; }

Rational R(size_t v) { return Rational(static_cast<int64_t>(v)); }

template <class F>
std::optional<Rational> formula(const std::optional<Rational> &rho, F f) {
    if (!rho) {
        return std::nullopt;
    }
    return f(*rho);
}

std::string join(const std::vector<size_t> &v) {
    std::string out;
    for (size_t x : v) {
        out += (out.empty() ? "" : ",") + std::to_string(x);
    }
    return out;
}

std::vector<size_t> parse_list(const std::string &key, const std::string &v) {
    std::vector<size_t> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        out.push_back(parse_size(key, tok));
    }
    return out;
}

Side parse_side(const std::string &v) {
    if (v == "x" || v == "X") {
        return Side::X;
    }
    if (v == "z" || v == "Z") {
        return Side::Z;
    }
    throw ConfigError("side must be x or z, got '" + v + "'");
}

void copy_checks(Checks &c, const CodeParams &in, const CodeParams &out) {
    size_t q = in.q_x;
    c.eq("n = n q_x", out.n, in.n * q);
    c.le("q_x <= 3", out.q_x, 3);
    c.eq("w_x = max(w_x, 2)", out.w_x, q >= 2 ? std::max<size_t>(in.w_x, 2) : in.w_x);
    c.eq("w_z = q_x w_z", out.w_z, q * in.w_z);
    c.eq("q_z = q_z", out.q_z, in.q_z);
    c.dist_eq("d_z = d_z q_x", out.d_z, out.d_z_method, times(exact(in.d_z, in.d_z_method), q));
    c.dist_eq("d_x = d_x", out.d_x, out.d_x_method, exact(in.d_x, in.d_x_method));
    c.rho_ge("rho_x >= q_x rho_x", out.rho_x, formula(in.rho_x, [&](Rational r) { return R(q) * r; }));
    c.rho_ge("rho_z copying bound", out.rho_z, formula(in.rho_z, [&](Rational r) {
                 return (R(out.n) / R(out.n_x)) * r /
                        (R(q) * r + (R(in.n) / R(in.n_x)) * R(q) * (R(q) * R(q) + 1));
             }));
}

void gauge_checks(Checks &c, const CodeParams &in, const CodeParams &out) {
    c.le("w_x <= 3", out.w_x, 3);
    c.le("q_x <= max(q_x, 2)", out.q_x, std::max<size_t>(in.q_x, 2));
    c.le("q_z <= w_x q_z", out.q_z, std::max<size_t>(in.w_x * in.q_z, in.q_z));
    c.le("w_z <= w_z (1 + w_x q_x)", out.w_z, in.w_z * (1 + in.w_x * in.q_x));
    c.dist_ge("d_z >= d_z", out.d_z, out.d_z_method, exact(in.d_z, in.d_z_method));
    c.rho_ratio("rho_z gauging bound", out.rho_z, formula(in.rho_z, [&](Rational r) {
                    Rational nx_n = R(in.n_x) / R(in.n);
                    return (R(out.n) / R(out.n_x)) * nx_n * r / (1 + R(in.w_x) * (R(in.q_x) + nx_n * r));
                }));
    c.rho_ratio("rho_x gauging bound", out.rho_x,
                formula(in.rho_x, [&](Rational r) { return (R(out.n) / R(in.n)) * r; }));
}

void thicken_checks(Checks &c, const CodeParams &in, const CodeParams &out, size_t l) {
    c.eq("n = n l + n_x (l - 1)", out.n, in.n * l + in.n_x * (l - 1));
    c.dist_eq("d_x = l d_x", out.d_x, out.d_x_method, times(exact(in.d_x, in.d_x_method), l));
    c.dist_eq("d_z = d_z", out.d_z, out.d_z_method, exact(in.d_z, in.d_z_method));
    c.rho_ge("rho_z thickening bound", out.rho_z, formula(in.rho_z, [&](Rational r) {
                 return (R(out.n) / R(out.n_x)) * std::min(R(in.n_x) * r / R(in.n), Rational(1)) / R(l);
             }));
    c.rho_ge("rho_x thickening bound", out.rho_x, formula(in.rho_x, [&](Rational r) {
                 return (R(out.n) / R(out.n_z)) * std::min(R(in.n_z) * r / R(in.n), Rational(1)) / R(l);
             }));
}

HeightOptions height_options(const PipelineStep &s, const PipelineConfig &cfg) {
    HeightOptions o;
    o.seed = seed_of(s, cfg);
    o.restarts = size_param(s, "restarts", o.restarts);
    o.target_load = size_param(s, "target_load", o.target_load);
    std::string strategy = find_param(s, "strategy") ? *find_param(s, "strategy") : "greedy";
    if (strategy == "greedy") {
        o.strategy = HeightStrategy::Greedy;
    } else if (strategy == "random") {
        o.strategy = HeightStrategy::Random;
    } else if (strategy == "explicit") {
        o.strategy = HeightStrategy::Explicit;
        o.explicit_choice.height = parse_list("heights", find_param(s, "heights") ? *find_param(s, "heights") : "");
    } else {
        throw ConfigError("unknown height strategy '" + strategy + "'");
    }
    return o;
}

void cone_checks(Checks &c, const CodeParams &in, const CodeParams &out) {
    c.dist_ge("d_x >= d_x", out.d_x, out.d_x_method, exact(in.d_x, in.d_x_method));
    Rational wqw = R(in.w_z * in.q_x * in.w_x);
    Rational n_nx = in.n_x ? R(in.n) / R(in.n_x) : Rational(0);
    c.rho_ratio("rho_z coning bound", out.rho_z, formula(in.rho_z, [&](Rational r) {
                    return (R(out.n) / R(out.n_x)) * r / (wqw * r + n_nx + wqw * n_nx);
                }));
    c.rho_ratio("rho_x coning bound", out.rho_x, formula(in.rho_x, [&](Rational r) {
                    Rational nz_n = R(in.n_z) / R(in.n);
                    return (R(out.n) / R(out.n_z)) * nz_n * r / (1 + nz_n * r * wqw + R(in.q_z) * wqw);
                }));
}

size_t min_distance(const CodeDistances &d) { return std::min(d.d_x.value, d.d_z.value); }

}  // namespace

LedgerConstants parse_ledger_constants(const std::string &json_text) {
    LedgerConstants out;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("ledger constants: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("ledger constants must be a JSON object");
    }
    for (const auto &[k, v] : j.items()) {
        if (!v.is_number()) {
            throw ConfigError("ledger constant '" + k + "' must be a number");
        }
        out[k] = v.get<double>();
    }
    return out;
}

PipelineConfig parse_pipeline_config(const std::string &json_text, const std::string &base_dir) {
    PipelineConfig cfg;
    cfg.base_dir = base_dir;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("pipeline config: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("pipeline config must be a JSON object");
    }
    try {
        if (j.contains("budget")) {
            cfg.budget = j.at("budget").get<int>();
        }
        if (!j.contains("seed")) {
            throw ConfigError("pipeline config needs an explicit 'seed'");
        }
        cfg.seed = j.at("seed").get<uint64_t>();
        if (j.contains("measure")) {
            const json &m = j.at("measure");
            cfg.distances = m.value("distances", cfg.distances);
            cfg.soundness = m.value("soundness", cfg.soundness);
        }
        if (j.contains("ledger_constants")) {
            cfg.ledger_constants = parse_ledger_constants(j.at("ledger_constants").dump());
        }
        if (j.contains("targets")) {
            const json &t = j.at("targets");
            if (t.contains("locality")) {
                cfg.target_locality = t.at("locality").get<size_t>();
            }
        }
        for (const auto &s : j.value("steps", json::array())) {
            PipelineStep step;
            step.op = s.at("op").get<std::string>();
            if (std::find(known_ops().begin(), known_ops().end(), step.op) == known_ops().end()) {
                throw ConfigError("unknown step '" + step.op + "'");
            }
            for (const auto &[k, v] : s.items()) {
                if (k != "op") {
                    step.params[k] = scalar_string(v);
                }
            }
            cfg.steps.push_back(std::move(step));
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("pipeline config: ") + e.what());
    }
    return cfg;
}

TransformReport run_step(const PipelineStep &step, const CssCode &input, const CodeParams &in,
                         const PipelineConfig &cfg, CssCode &output) {
    TransformReport rep;
    rep.op = step.op;
    rep.params = step.params;
    rep.input = in;
    Checks c(rep.checks);
    const MeasureOptions mo = measure_options(cfg);
    bool k_preserved = true;
    size_t k_expected = in.k;

    auto finish = [&](CssCode out) {
        output = std::move(out);
        rep.output = measure(output, mo);
        return rep.output;
    };

    const std::string &op = step.op;
    if (op == "measure") {
        finish(input);
    } else if (op == "dual") {
        CodeParams out = finish(dual(input));
        c.eq("w_x <-> w_z", out.w_x, in.w_z);
        c.eq("q_x <-> q_z", out.q_x, in.q_z);
        c.dist_eq("d_x <-> d_z", out.d_x, out.d_x_method, exact(in.d_z, in.d_z_method));
    } else if (op == "copy") {
        if (in.q_x == 0) {
            throw ConfigError("copy: code has no X-stabilisers touching any qubit");
        }
        copy_checks(c, in, finish(copying(input)));
    } else if (op == "gauge") {
        gauge_checks(c, in, finish(gauging(input)));
    } else if (op == "thicken") {
        size_t l = size_param(step, "l");
        if (l == 0) {
            throw ConfigError("thicken: l must be positive");
        }
        thicken_checks(c, in, finish(thicken(input, l)), l);
    } else if (op == "heights") {
        if (!input.meta.thickening) {
            throw ConfigError("heights: input carries no thickening metadata");
        }
        HeightResult hr = choose_heights(input, height_options(step, cfg));
        CodeParams out = finish(hr.code);
        c.flag("Z row space unchanged", row_space_equal(input.h_z, output.h_z), "row_space_equal");
        c.eq("n unchanged", out.n, in.n);
        c.dist_eq("d_z = d_z", out.d_z, out.d_z_method, exact(in.d_z, in.d_z_method));
        c.rho_ge("rho_z unchanged", out.rho_z, in.rho_z);
        size_t l = input.meta.thickening->l;
        c.rho_ratio("rho_x height bound", out.rho_x, formula(in.rho_x, [&](Rational r) {
                        return (R(in.n_z) / R(out.n_z)) * r / (1 + R(in.w_z * in.q_z * l));
                    }));
        rep.notes["max_load"] = std::to_string(hr.max_load);
        rep.notes["target_met"] = hr.target_met ? "true" : "false";
        rep.notes["heights"] = join(hr.choice.height);
    } else if (op == "thicken-heights") {
        ThickenHeightsResult th = thicken_and_choose_heights(input, size_param(step, "l", 0), height_options(step, cfg));
        CodeParams out = finish(th.code);
        c.flag("Z row space unchanged", row_space_equal(thicken(input, th.l).h_z, output.h_z), "row_space_equal");
        c.dist_eq("d_x = l d_x", out.d_x, out.d_x_method, times(exact(in.d_x, in.d_x_method), th.l));
        c.dist_eq("d_z = d_z", out.d_z, out.d_z_method, exact(in.d_z, in.d_z_method));
        rep.notes["l"] = std::to_string(th.l);
        rep.notes["max_load"] = std::to_string(th.max_load);
    } else if (op == "cone") {
        ReasonableCheck rc = is_reasonable(input);
        c.flag("reasonable", rc.reasonable,
               rc.reasonable ? "no Z-logical inside a Z-stabiliser"
                             : "Z-stabiliser " + std::to_string(rc.stabiliser) + " contains " + rc.witness->str());
        if (!rc.reasonable) {
            output = input;
            rep.output = in;
            return rep;
        }
        ConeStats st;
        CodeParams out = finish(cone(input, &st));
        c.flag("cycle basis rank identity", st.rank_identity_holds, std::to_string(st.total_cycles) + " cycles");
        cone_checks(c, in, out);
        rep.notes["cycles"] = std::to_string(st.total_cycles);
        rep.notes["max_cycle_length"] = std::to_string(st.max_cycle_length);
        rep.notes["max_edge_multiplicity"] = std::to_string(st.max_edge_multiplicity);
        rep.notes["total_cycle_weight"] = std::to_string(st.total_cycle_weight);
    } else if (op == "reduce-cone") {
        ReduceConeOptions ro;
        ro.l2 = size_param(step, "l2", 0);
        ReduceConeResult rr = reduce_cone(input, ro);
        CodeParams out = finish(rr.code);
        size_t c_cell = size_param(step, "c_cell", 4);
        c.le("w_z <= q_x + c", out.w_z, in.q_x + c_cell);
        std::optional<size_t> dz = exact(in.d_z, in.d_z_method);
        std::optional<size_t> need;
        if (dz && in.w_z) {
            need = (*dz * rr.l2 + in.w_z - 1) / in.w_z;
        }
        c.dist_ge("d_z >= d_z l2 / w_z", out.d_z, out.d_z_method, need);
        rep.notes["l2"] = std::to_string(rr.l2);
        rep.notes["colours_needed"] = std::to_string(rr.colours_needed);
        rep.notes["formula_palette"] = std::to_string(rr.formula_palette);
        rep.notes["l2_increased"] = rr.l2_increased ? "true" : "false";
        rep.notes["chords"] = std::to_string(rr.chords);
        rep.notes["c_measured"] = std::to_string(out.w_z > in.q_x ? out.w_z - in.q_x : 0);
    } else if (op == "wr-full") {
        WeightReductionConfig wc;
        wc.l1 = size_param(step, "l1", 0);
        wc.l2 = size_param(step, "l2", 0);
        wc.heights.seed = seed_of(step, cfg);
        wc.measure = MeasureOptions{false, cfg.soundness, cfg.budget};
        wc.constants = cfg.ledger_constants;
        WeightReductionResult wr = weight_reduce_full(input, wc);
        CodeParams out = finish(wr.code);
        rep.ledger = wr.ledger;
        c.flag("ledger inequalities", ledger_passes(wr.ledger), "ledger tables with configured constants");
        c.flag("cycle basis rank identity", wr.cone_stats.rank_identity_holds,
               std::to_string(wr.cone_stats.total_cycles) + " cycles");
        if (const std::string *cap = find_param(step, "max_locality")) {
            c.le("locality <= target", out.locality(), parse_size("max_locality", *cap));
        }
        rep.notes["l1"] = std::to_string(wr.l1);
        rep.notes["l2"] = std::to_string(wr.l2);
        rep.notes["locality"] = std::to_string(out.locality());
    } else if (op == "balance" || op == "ddb") {
        size_t t = size_param(step, "t");
        if (t == 0) {
            throw ConfigError(op + ": t must be positive");
        }
        ClassicalCode r(repetition_pcm(t));
        bool twice = op == "ddb";
        CodeParams out = finish(twice ? double_distance_balance(input, r) : distance_balance(input, r));
        k_expected = in.k * r.dim() * (twice ? r.dim() : 1);
        if (!twice) {
            c.eq("n = n t + n_x s", out.n, in.n * r.t() + in.n_x * r.s());
        }
        c.dist_eq("d_x = d_x d(R)", out.d_x, out.d_x_method, times(exact(in.d_x, in.d_x_method), t));
        c.dist_eq(twice ? "d_z = d_z d(R)" : "d_z = d_z", out.d_z, out.d_z_method,
                  times(exact(in.d_z, in.d_z_method), twice ? t : 1));
        c.rho_ratio("rho_x positive", out.rho_x, in.rho_x);
        c.rho_ratio("rho_z positive", out.rho_z, in.rho_z);
    } else if (op == "soundamp") {
        Side side = parse_side(find_param(step, "side") ? *find_param(step, "side") : "x");
        Rational alpha = rational_param(step, "alpha", Rational(1, 3));
        uint64_t seed = seed_of(step, cfg);
        std::vector<SaRoundResult> rounds;
        CssCode out_code;
        if (find_param(step, "target")) {
            AmplifyResult ar = amplify_to_constant(input, side, rational_param(step, "target", std::nullopt), alpha,
                                                   seed, cfg.budget, size_param(step, "rounds", 6));
            rounds = ar.round_reports;
            out_code = ar.code;
            std::string traj;
            for (const auto &r : ar.trajectory) {
                traj += (traj.empty() ? "" : " ") + str(r);
            }
            rep.notes["trajectory"] = traj;
            rep.notes["rounds"] = std::to_string(ar.rounds);
            rep.notes["target_reached"] = ar.reached ? "true" : "false";
        } else {
            const BitMatrix &h = side == Side::X ? input.h_x : input.h_z;
            Rational rho = find_param(step, "rho") ? rational_param(step, "rho", std::nullopt)
                                                   : brute_soundness(h, cfg.budget).rho;
            rounds.push_back(amplification_round(input, side, SaRoundConfig{alpha, rho}, seed, cfg.budget));
            out_code = rounds.back().code;
            rep.notes["rho_used"] = str(rho);
        }
        CodeParams out = finish(out_code);
        c.eq("n unchanged", out.n, in.n);
        c.dist_eq("d_x unchanged", out.d_x, out.d_x_method, exact(in.d_x, in.d_x_method));
        c.dist_eq("d_z unchanged", out.d_z, out.d_z_method, exact(in.d_z, in.d_z_method));
        size_t rows = side == Side::X ? in.n_x : in.n_z;
        for (size_t ri = 0; ri < rounds.size(); ++ri) {
            const SaRoundResult &r = rounds[ri];
            std::string tag = "round " + std::to_string(ri + 1) + ": ";
            c.flag(tag + "row space unchanged", r.row_space_preserved, "row_space_equal");
            size_t added = 0;
            bool within = true, weights = true, lossless = true;
            std::string groups;
            for (const SaGroup &g : r.groups) {
                added += g.m;
                within = within && sa_group_within_bound(rows, g.index, alpha, g.m);
                weights = weights && g.max_new_weight <= g.weight_cap;
                if (g.check) {
                    lossless = lossless && g.check->ok && g.check->unique_ok;
                }
                groups += (groups.empty() ? "" : " ") + std::to_string(g.index) + ":" + std::to_string(g.m) +
                          (g.guaranteed ? "" : "*");
            }
            c.flag(tag + "N_X growth within group-sum bound", within && added == r.rows_added,
                   std::to_string(rows) + " -> " + std::to_string(rows + added));
            c.flag(tag + "new weights <= w ceil(N D / M)", weights, "per group");
            c.flag(tag + "sampled expanders verified", lossless, "groups " + (groups.empty() ? "none" : groups));
            rows += added;
        }
        rep.notes["groups_marked_*"] = "K_max < 1, no expansion guarantee";
    } else if (op == "ael") {
        const std::string *ip = find_param(step, "inner");
        const std::string *bp = find_param(step, "block");
        if (!ip || !bp) {
            throw ConfigError("ael needs 'inner' and 'block' code files");
        }
        CssCode inner = load_code(resolve(cfg, *ip));
        CssCode block = load_code(resolve(cfg, *bp));
        size_t k_in = dimension(inner);
        if (k_in == 0 || input.n() % k_in) {
            throw ConfigError("ael: inner dimension must divide the outer length");
        }
        size_t b = input.n() / k_in;
        uint64_t seed = seed_of(step, cfg);
        PermGraph g;
        if (const std::string *e = find_param(step, "eps"); e && double(inner.n()) >= 4 / std::pow(to_double(parse_rational(*e)), 2)) {
            g = sample_pseudorandom_graph(b, inner.n(), to_double(parse_rational(*e)), seed);
        } else {
            g = sample_perm_graph(b, inner.n(), seed);
        }
        AelResult ar = ael_amplify(input, inner, block, g);
        CodeParams out = finish(ar.code);
        c.eq("n = b N_block", out.n, b * block.n());
        if (b <= 20) {
            PseudorandomCheck pc = verify_pseudorandom(g);
            rep.notes["eps_measured"] = fmt(pc.eps);
            CodeDistances di = distance_or_bound(inner, cfg.budget);
            CodeDistances db = distance_or_bound(block, cfg.budget);
            std::optional<size_t> dout;
            if (in.d_x && in.d_z) {
                dout = std::min(*in.d_x, *in.d_z);
            }
            if (dout) {
                double delta_in = double(min_distance(di)) / double(inner.n());
                double delta_block = double(min_distance(db)) / double(block.n());
                double delta_out = double(*dout) / double(in.n);
                double bound = ael_distance_bound(delta_block, delta_in, delta_out, pc.eps);
                rep.notes["relative_distance_bound"] = fmt(bound);
                std::optional<size_t> need = bound > 0 ? std::optional<size_t>(size_t(std::ceil(bound * double(out.n) - 1e-9))) : 0;
                if (out.d_x && out.d_z) {
                    bool exact_both = out.d_x_method == Provenance::Exact && out.d_z_method == Provenance::Exact;
                    c.dist_ge("d >= AEL distance bound", std::min(*out.d_x, *out.d_z),
                              exact_both ? Provenance::Exact : Provenance::Bound, need);
                } else {
                    c.skip("d >= AEL distance bound", "distance not measured");
                }
                HeavyVertexCheck l52 = heavy_vertex_check(g, pc.eps, delta_in, delta_out);
                c.flag("heavy vertex count", l52.holds,
                       std::to_string(l52.sets) + " sets T with |T| <= " + std::to_string(l52.max_t));
            }
            if (in.rho_z && in.n_x) {
                double rho_hat = double(in.n_x) * to_double(*in.rho_z) / double(in.n);
                double alpha = ael_soundness_alpha(rho_hat, inner.n(), k_in, in.locality());
                double bound = ael_soundness_bound(alpha, out.n, out.n_x, inner.n(), block.n());
                rep.notes["ael_soundness_bound"] = fmt(bound);
                if (out.rho_z) {
                    double got = to_double(*out.rho_z);
                    c.flag("rho_z >= AEL soundness bound", got >= bound - 1e-12, fmt(got) + " vs " + fmt(bound));
                } else {
                    c.skip("rho_z >= AEL soundness bound", "soundness not measured");
                }
            }
        }
        rep.notes["weight_ratio"] = fmt(double(out.locality()) / double(std::max<size_t>(in.locality(), 1) * inner.n() * inner.n()));
    } else {
        throw ConfigError("unknown step '" + op + "'");
    }

    if (op != "cone" || !rep.checks.empty()) {
        c.flag("stabilisers commute", validate(output).ok(), "H_X H_Z^T = 0");
    }
    if (k_preserved) {
        c.eq(op == "balance" || op == "ddb" ? "k = k dim(R)" : "k unchanged", rep.output.k, k_expected);
    }
    return rep;
}

PipelineResult run_pipeline(const PipelineConfig &cfg, const CssCode &input) {
    PipelineResult res;
    res.code = input;
    TransformReport first;
    first.op = "input";
    first.input = first.output = measure(input, measure_options(cfg));
    Checks(first.checks).flag("stabilisers commute", validate(input).ok(), "H_X H_Z^T = 0");
    res.reports.push_back(first);
    CodeParams params = first.output;
    for (const PipelineStep &step : cfg.steps) {
        CssCode out;
        try {
            TransformReport rep = run_step(step, res.code, params, cfg, out);
            bool passed = rep.passed();
            res.reports.push_back(std::move(rep));
            res.code = std::move(out);
            params = res.reports.back().output;
            if (!passed) {
                res.ok = false;
                res.error = "step '" + step.op + "' failed an invariant check";
                break;
            }
        } catch (const BudgetExceeded &e) {
            res.ok = false;
            res.budget_exceeded = true;
            res.error = "step '" + step.op + "': " + e.what();
            break;
        } catch (const ConfigError &) {
            throw;
        } catch (const std::exception &e) {
            TransformReport rep;
            rep.op = step.op;
            rep.params = step.params;
            rep.input = params;
            Checks(rep.checks).flag("step completed", false, e.what());
            res.reports.push_back(std::move(rep));
            res.ok = false;
            res.error = "step '" + step.op + "': " + e.what();
            break;
        }
    }
    if (res.ok && cfg.target_locality) {
        TransformReport &last = res.reports.back();
        Checks(last.checks).le("locality <= target", last.output.locality(), *cfg.target_locality);
        if (!last.passed()) {
            res.ok = false;
            res.error = "final locality exceeds the target";
        }
    }
    return res;
}

}  // namespace qltc
