#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qltc/code_file.h"
#include "qltc/oracle.h"
#include "qltc/pipeline.h"
#include "qltc/report.h"
#include "qltc/zoo.h"

namespace {

enum Exit { kOk = 0, kInvariant = 1, kUsage = 2, kBudget = 3 };

struct Global {
    int budget = 24;
    uint64_t seed = 0;
    bool force = false;
    std::string ledger_constants;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw qltc::CodeFileError(qltc::CodeFileError::Kind::Io, 0, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_out(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw qltc::CodeFileError(qltc::CodeFileError::Kind::Io, 0, "cannot write " + path);
    }
    out << text;
}

qltc::PipelineConfig base_config(const Global &g) {
    qltc::PipelineConfig cfg;
    cfg.budget = g.budget;
    cfg.seed = g.seed;
    if (!g.ledger_constants.empty()) {
        for (const auto &[k, v] : qltc::parse_ledger_constants(read_file(g.ledger_constants))) {
            cfg.ledger_constants[k] = v;
        }
    }
    return cfg;
}

int finish(const qltc::PipelineResult &res, const std::string &out_path, const std::string &json_path) {
    if (!out_path.empty()) {
        qltc::save_code(res.code, out_path);
    }
    if (!json_path.empty()) {
        write_out(json_path, qltc::reports_to_json(res.reports));
    }
    std::cout << qltc::render_report(res.reports);
    if (!res.error.empty()) {
        std::cerr << "qltc: " << res.error << '\n';
    }
    if (res.budget_exceeded) {
        return kBudget;
    }
    return res.ok ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Transformations and exact oracles for quantum CSS codes"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--budget", g.budget, "Enumeration cap as a power of two")->check(CLI::Range(1, 40));
    app.add_option("--seed", g.seed, "Seed for every randomised step");
    app.add_flag("--force", g.force, "Load codes whose stabilisers do not commute");
    app.add_option("--ledger-constants", g.ledger_constants, "JSON file overriding ledger constants")
        ->check(CLI::ExistingFile);

    auto *gen = app.add_subcommand("generate", "Write a code from the zoo");
    qltc::ZooSpec spec;
    std::string gen_out;
    gen->add_option("family", spec.family, "toric, surface, hgp-rep, cross-rep or random")->required();
    gen->add_option("-a", spec.a, "First size parameter")->required();
    gen->add_option("-b", spec.b, "Second size parameter");
    gen->add_option("-c", spec.c, "Third size parameter");
    gen->add_option("-o,--output", gen_out, "Output file (stdout by default)");

    auto *ana = app.add_subcommand("analyze", "Measure the parameters of a code");
    std::string ana_in, ana_json;
    bool no_distance = false, no_soundness = false;
    ana->add_option("code", ana_in, "Code file")->required()->check(CLI::ExistingFile);
    ana->add_flag("--no-distance", no_distance, "Skip distance computation");
    ana->add_flag("--no-soundness", no_soundness, "Skip soundness computation");
    ana->add_option("--json", ana_json, "Also write the structured report here");

    auto *tr = app.add_subcommand("transform", "Apply a single transformation");
    std::string tr_in, tr_out, tr_json, op;
    std::map<std::string, std::string> named;
    std::vector<std::string> extra;
    tr->add_option("code", tr_in, "Input code file")->required()->check(CLI::ExistingFile);
    tr->add_option("--op", op, "Operation")->required()->check(CLI::IsMember(qltc::known_ops()));
    tr->add_option("-o,--output", tr_out, "Output code file");
    tr->add_option("--json", tr_json, "Structured report file");
    for (const char *key : {"l", "l1", "l2", "t", "side", "alpha", "target", "rho", "rounds", "inner", "block", "eps",
                            "strategy", "heights", "restarts", "max_locality", "c_cell"}) {
        tr->add_option_function<std::string>(
            std::string("--") + key, [&named, key](const std::string &v) { named[key] = v; }, "Step parameter");
    }
    tr->add_option("--param", extra, "Additional step parameter as key=value");

    auto *pl = app.add_subcommand("pipeline", "Run a JSON pipeline configuration");
    std::string pl_cfg, pl_in, pl_out, pl_json;
    pl->add_option("config", pl_cfg, "Pipeline configuration")->required()->check(CLI::ExistingFile);
    pl->add_option("code", pl_in, "Input code file")->required()->check(CLI::ExistingFile);
    pl->add_option("-o,--output", pl_out, "Output code file");
    pl->add_option("--json", pl_json, "Structured report file");

    auto *ver = app.add_subcommand("verify", "Check that the stabilisers commute");
    std::string ver_in;
    ver->add_option("code", ver_in, "Code file")->required()->check(CLI::ExistingFile);

    auto *rep = app.add_subcommand("report", "Render a structured report as text");
    std::string rep_in;
    rep->add_option("reports", rep_in, "JSON report file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            spec.seed = g.seed;
            write_out(gen_out, qltc::serialize_code(qltc::make_code(spec)));
            return kOk;
        }
        if (*ana) {
            qltc::PipelineConfig cfg = base_config(g);
            cfg.distances = !no_distance;
            cfg.soundness = !no_soundness;
            return finish(qltc::run_pipeline(cfg, qltc::load_code(ana_in, g.force)), "", ana_json);
        }
        if (*tr) {
            qltc::PipelineConfig cfg = base_config(g);
            qltc::PipelineStep step{op, named};
            for (const std::string &kv : extra) {
                auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0) {
                    throw qltc::ConfigError("--param expects key=value, got '" + kv + "'");
                }
                step.params[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            cfg.steps.push_back(step);
            return finish(qltc::run_pipeline(cfg, qltc::load_code(tr_in, g.force)), tr_out, tr_json);
        }
        if (*pl) {
            qltc::PipelineConfig cfg =
                qltc::parse_pipeline_config(read_file(pl_cfg), std::filesystem::path(pl_cfg).parent_path().string());
            cfg.budget = app.count("--budget") ? g.budget : cfg.budget;
            if (app.count("--seed")) {
                cfg.seed = g.seed;
            }
            if (!g.ledger_constants.empty()) {
                for (const auto &[k, v] : qltc::parse_ledger_constants(read_file(g.ledger_constants))) {
                    cfg.ledger_constants[k] = v;
                }
            }
            return finish(qltc::run_pipeline(cfg, qltc::load_code(pl_in, g.force)), pl_out, pl_json);
        }
        if (*ver) {
            qltc::CssCode code = qltc::load_code(ver_in, true);
            qltc::ValidationReport v = qltc::validate(code);
            if (v.ok()) {
                std::cout << "ok: n = " << code.n() << ", k = " << qltc::dimension(code) << '\n';
                return kOk;
            }
            std::cout << v.anticommuting.size() << " anticommuting pairs\n";
            for (const auto &[x, z] : v.anticommuting) {
                std::cout << "  X row " << x << ", Z row " << z << '\n';
            }
            return kInvariant;
        }
        if (*rep) {
            std::cout << qltc::render_report(qltc::reports_from_json(read_file(rep_in)));
            return kOk;
        }
    } catch (const qltc::BudgetExceeded &e) {
        std::cerr << "qltc: " << e.what() << '\n';
        return kBudget;
    } catch (const qltc::CodeFileError &e) {
        std::cerr << "qltc: " << e.what() << '\n';
        return e.kind() == qltc::CodeFileError::Kind::Invalid ? kInvariant : kUsage;
    } catch (const qltc::ConfigError &e) {
        std::cerr << "qltc: " << e.what() << '\n';
        return kUsage;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "qltc: malformed report: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "qltc: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "qltc: " << e.what() << '\n';
        return kInvariant;
    }
    return kUsage;
}
