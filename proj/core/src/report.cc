#include "qltc/report.h"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace qltc {

using nlohmann::json;

namespace {

Provenance provenance_from(const std::string &s) {
    for (Provenance p : {Provenance::Exact, Provenance::Bound, Provenance::Skipped}) {
        if (s == provenance_name(p)) {
            return p;
        }
    }
    throw std::invalid_argument("unknown provenance '" + s + "'");
}

std::string dist_cell(const std::optional<size_t> &d, Provenance how) {
    if (!d || how == Provenance::Skipped) {
        return "-";
    }
    return (how == Provenance::Bound ? ">=" : "") + std::to_string(*d);
}

std::string rho_cell(const std::optional<Rational> &r) { return r ? to_string(*r) : "-"; }

using Row = std::pair<std::string, std::function<std::string(const CodeParams &)>>;

const std::vector<Row> &param_rows() {
    static const std::vector<Row> rows = {
        {"N", [](const CodeParams &p) { return std::to_string(p.n); }},
        {"N_X", [](const CodeParams &p) { return std::to_string(p.n_x); }},
        {"N_Z", [](const CodeParams &p) { return std::to_string(p.n_z); }},
        {"K", [](const CodeParams &p) { return std::to_string(p.k); }},
        {"d_X", [](const CodeParams &p) { return dist_cell(p.d_x, p.d_x_method); }},
        {"d_Z", [](const CodeParams &p) { return dist_cell(p.d_z, p.d_z_method); }},
        {"rho_X", [](const CodeParams &p) { return rho_cell(p.rho_x); }},
        {"rho_Z", [](const CodeParams &p) { return rho_cell(p.rho_z); }},
        {"w_X", [](const CodeParams &p) { return std::to_string(p.w_x); }},
        {"w_Z", [](const CodeParams &p) { return std::to_string(p.w_z); }},
        {"q_X", [](const CodeParams &p) { return std::to_string(p.q_x); }},
        {"q_Z", [](const CodeParams &p) { return std::to_string(p.q_z); }},
        {"locality", [](const CodeParams &p) { return std::to_string(p.locality()); }},
        {"zero rows", [](const CodeParams &p) {
             return std::to_string(p.zero_rows_x) + "/" + std::to_string(p.zero_rows_z);
         }},
    };
    return rows;
}

std::string table(const std::vector<std::string> &headers, const std::vector<const CodeParams *> &cols) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> first = {"parameter"};
    first.insert(first.end(), headers.begin(), headers.end());
    cells.push_back(first);
    for (const auto &[name, get] : param_rows()) {
        std::vector<std::string> line = {name};
        for (const CodeParams *p : cols) {
            line.push_back(get(*p));
        }
        cells.push_back(line);
    }
    std::vector<size_t> width(first.size(), 0);
    for (const auto &line : cells) {
        for (size_t i = 0; i < line.size(); ++i) {
            width[i] = std::max(width[i], line[i].size());
        }
    }
    std::ostringstream out;
    for (size_t r = 0; r < cells.size(); ++r) {
        for (size_t i = 0; i < cells[r].size(); ++i) {
            out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << (i ? std::right : std::left)
                << cells[r][i];
        }
        out << '\n';
        if (r == 0) {
            size_t total = 0;
            for (size_t w : width) {
                total += w + 2;
            }
            out << std::string(total - 2, '-') << '\n';
        }
    }
    return out.str();
}

std::string number(const std::optional<double> &v) {
    if (!v) {
        return "-";
    }
    std::ostringstream o;
    o << std::setprecision(6) << *v;
    return o.str();
}

json params_json(const CodeParams &p) {
    json j = {{"n", p.n},     {"n_x", p.n_x}, {"n_z", p.n_z}, {"k", p.k},
              {"w_x", p.w_x}, {"w_z", p.w_z}, {"q_x", p.q_x}, {"q_z", p.q_z},
              {"zero_rows_x", p.zero_rows_x}, {"zero_rows_z", p.zero_rows_z}};
    j["d_x"] = p.d_x ? json(*p.d_x) : json(nullptr);
    j["d_z"] = p.d_z ? json(*p.d_z) : json(nullptr);
    j["d_x_method"] = provenance_name(p.d_x_method);
    j["d_z_method"] = provenance_name(p.d_z_method);
    j["rho_x"] = p.rho_x ? json(to_string(*p.rho_x)) : json(nullptr);
    j["rho_z"] = p.rho_z ? json(to_string(*p.rho_z)) : json(nullptr);
    j["rho_x_method"] = provenance_name(p.rho_x_method);
    j["rho_z_method"] = provenance_name(p.rho_z_method);
    return j;
}

CodeParams params_of(const json &j) {
    CodeParams p;
    p.n = j.at("n");
    p.n_x = j.at("n_x");
    p.n_z = j.at("n_z");
    p.k = j.at("k");
    p.w_x = j.at("w_x");
    p.w_z = j.at("w_z");
    p.q_x = j.at("q_x");
    p.q_z = j.at("q_z");
    p.zero_rows_x = j.at("zero_rows_x");
    p.zero_rows_z = j.at("zero_rows_z");
    if (!j.at("d_x").is_null()) {
        p.d_x = j.at("d_x").get<size_t>();
    }
    if (!j.at("d_z").is_null()) {
        p.d_z = j.at("d_z").get<size_t>();
    }
    p.d_x_method = provenance_from(j.at("d_x_method"));
    p.d_z_method = provenance_from(j.at("d_z_method"));
    if (!j.at("rho_x").is_null()) {
        p.rho_x = parse_rational(j.at("rho_x").get<std::string>());
    }
    if (!j.at("rho_z").is_null()) {
        p.rho_z = parse_rational(j.at("rho_z").get<std::string>());
    }
    p.rho_x_method = provenance_from(j.at("rho_x_method"));
    p.rho_z_method = provenance_from(j.at("rho_z_method"));
    return p;
}

json opt_json(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_of(const json &j) {
    return j.is_null() ? std::nullopt : std::optional<double>(j.get<double>());
}

template <class E>
E enum_from(const std::string &s, std::initializer_list<E> all, const char *(*name)(E)) {
    for (E e : all) {
        if (s == name(e)) {
            return e;
        }
    }
    throw std::invalid_argument("unknown enum value '" + s + "'");
}

json ledger_json(const std::vector<LedgerRow> &rows) {
    json out = json::array();
    for (const LedgerRow &r : rows) {
        json checks = json::array();
        for (const LedgerCheck &c : r.checks) {
            checks.push_back({{"quantity", c.quantity},
                              {"formula", c.formula},
                              {"kind", bound_kind_name(c.kind)},
                              {"constant", c.constant},
                              {"measured", opt_json(c.measured)},
                              {"base", opt_json(c.base)},
                              {"bound", opt_json(c.bound)},
                              {"status", ledger_status_name(c.status)},
                              {"note", c.note}});
        }
        out.push_back({{"stage", r.stage}, {"params", params_json(r.params)}, {"checks", checks}});
    }
    return out;
}

std::vector<LedgerRow> ledger_of(const json &j) {
    std::vector<LedgerRow> rows;
    for (const json &r : j) {
        LedgerRow row;
        row.stage = r.at("stage");
        row.params = params_of(r.at("params"));
        for (const json &c : r.at("checks")) {
            LedgerCheck lc;
            lc.quantity = c.at("quantity");
            lc.formula = c.at("formula");
            lc.kind = enum_from(c.at("kind").get<std::string>(), {BoundKind::Exact, BoundKind::Upper, BoundKind::Lower},
                                bound_kind_name);
            lc.constant = c.at("constant");
            lc.measured = opt_of(c.at("measured"));
            lc.base = opt_of(c.at("base"));
            lc.bound = opt_of(c.at("bound"));
            lc.status = enum_from(c.at("status").get<std::string>(),
                                  {LedgerStatus::Pass, LedgerStatus::Fail, LedgerStatus::Unevaluated},
                                  ledger_status_name);
            lc.note = c.at("note");
            row.checks.push_back(std::move(lc));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string render_report(const std::vector<TransformReport> &reports) {
    std::vector<std::string> headers;
    std::vector<const CodeParams *> cols;
    for (const auto &r : reports) {
        headers.push_back(r.op);
        cols.push_back(&r.output);
    }
    std::ostringstream out;
    out << table(headers, cols);
    for (size_t i = 0; i < reports.size(); ++i) {
        const TransformReport &r = reports[i];
        out << '\n' << "[" << i << "] " << r.op;
        for (const auto &[k, v] : r.params) {
            out << ' ' << k << '=' << v;
        }
        out << (r.passed() ? "  PASS" : "  FAIL") << '\n';
        for (const BoundCheck &c : r.checks) {
            out << "  " << std::left << std::setw(8) << check_status_name(c.status) << c.name << ": " << c.detail
                << '\n';
        }
        for (const auto &[k, v] : r.notes) {
            out << "  note    " << k << " = " << v << '\n';
        }
        if (!r.ledger.empty()) {
            out << '\n' << render_ledger(r.ledger);
        }
    }
    return out.str();
}

std::string render_ledger(const std::vector<LedgerRow> &rows) {
    std::vector<std::string> headers;
    std::vector<const CodeParams *> cols;
    for (const LedgerRow &r : rows) {
        if (r.stage != kLedgerStages.front()) {
            headers.push_back(r.stage);
            cols.push_back(&r.params);
        }
    }
    std::ostringstream out;
    out << table(headers, cols);
    for (const LedgerRow &r : rows) {
        for (const LedgerCheck &c : r.checks) {
            out << "  " << std::left << std::setw(12) << ledger_status_name(c.status) << std::setw(16) << r.stage
                << std::setw(10) << c.quantity << c.formula << "  [" << bound_kind_name(c.kind);
            if (!c.constant.empty()) {
                out << ' ' << c.constant;
            }
            out << "] measured " << number(c.measured) << " bound " << number(c.bound);
            if (!c.note.empty()) {
                out << "  (" << c.note << ")";
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string params_to_json(const CodeParams &p) { return params_json(p).dump(); }

CodeParams params_from_json(const std::string &text) { return params_of(json::parse(text)); }

std::string reports_to_json(const std::vector<TransformReport> &reports) {
    json out = json::array();
    for (const TransformReport &r : reports) {
        json checks = json::array();
        for (const BoundCheck &c : r.checks) {
            checks.push_back({{"name", c.name}, {"detail", c.detail}, {"status", check_status_name(c.status)}});
        }
        out.push_back({{"op", r.op},
                       {"params", r.params},
                       {"input", params_json(r.input)},
                       {"output", params_json(r.output)},
                       {"checks", checks},
                       {"ledger", ledger_json(r.ledger)},
                       {"notes", r.notes},
                       {"passed", r.passed()}});
    }
    return out.dump(2);
}

std::vector<TransformReport> reports_from_json(const std::string &text) {
    json j = json::parse(text);
    std::vector<TransformReport> out;
    for (const json &r : j) {
        TransformReport rep;
        rep.op = r.at("op");
        rep.params = r.at("params").get<std::map<std::string, std::string>>();
        rep.input = params_of(r.at("input"));
        rep.output = params_of(r.at("output"));
        for (const json &c : r.at("checks")) {
            rep.checks.push_back({c.at("name"), c.at("detail"),
                                  enum_from(c.at("status").get<std::string>(),
                                            {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Skipped},
                                            check_status_name)});
        }
        rep.ledger = ledger_of(r.at("ledger"));
        rep.notes = r.at("notes").get<std::map<std::string, std::string>>();
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace qltc
