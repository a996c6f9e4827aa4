#include "qltc/code_file.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace qltc {

using nlohmann::json;

CodeFileError::CodeFileError(Kind kind, size_t line, const std::string &what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), kind_(kind), line_(line) {}

std::string meta_to_json(const CodeMeta &meta) {
    json j = json::object();
    j["stages"] = meta.stages;
    if (meta.thickening) {
        j["thickening"] = {{"l", meta.thickening->l}, {"base_rows", meta.thickening->base_rows}};
    }
    if (meta.cone) {
        const ConeMeta &c = *meta.cone;
        json discs = json::array();
        for (const auto &d : c.discs) {
            discs.push_back({{"x_row", d.x_row}, {"vertices", d.vertices}, {"edges", d.edges}});
        }
        j["cone"] = {{"base_qubits", c.base_qubits}, {"base_x_rows", c.base_x_rows}, {"base_z_rows", c.base_z_rows},
                     {"base_w_z", c.base_w_z},       {"base_q_x", c.base_q_x},       {"discs", discs}};
    }
    return j.dump();
}

CodeMeta meta_from_json(const std::string &text) {
    json j = json::parse(text);
    CodeMeta m;
    if (j.contains("stages")) {
        m.stages = j.at("stages").get<std::vector<std::string>>();
    }
    if (j.contains("thickening")) {
        const json &t = j.at("thickening");
        m.thickening = ThickeningMeta{t.at("l").get<size_t>(), t.at("base_rows").get<size_t>()};
    }
    if (j.contains("cone")) {
        const json &c = j.at("cone");
        ConeMeta cm;
        cm.base_qubits = c.at("base_qubits").get<size_t>();
        cm.base_x_rows = c.at("base_x_rows").get<size_t>();
        cm.base_z_rows = c.at("base_z_rows").get<size_t>();
        cm.base_w_z = c.at("base_w_z").get<size_t>();
        cm.base_q_x = c.at("base_q_x").get<size_t>();
        for (const auto &d : c.at("discs")) {
            cm.discs.push_back({d.at("x_row").get<size_t>(), d.at("vertices").get<std::vector<size_t>>(),
                                d.at("edges").get<std::vector<size_t>>()});
        }
        m.cone = std::move(cm);
    }
    return m;
}

namespace {

void write_rows(std::ostringstream &out, const char *tag, const BitMatrix &m) {
    out << tag << ' ' << m.rows() << '\n';
    for (size_t r = 0; r < m.rows(); ++r) {
        auto s = m.row_support(r);
        if (s.empty()) {
            out << "-\n";
            continue;
        }
        for (size_t i = 0; i < s.size(); ++i) {
            out << (i ? " " : "") << s[i];
        }
        out << '\n';
    }
}

class LineReader {
public:
    explicit LineReader(const std::string &text) : in_(text) {}

    std::string next(const char *expecting) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!line.empty() && line[0] != '#') {
                return line;
            }
        }
        throw CodeFileError(CodeFileError::Kind::Parse, line_, std::string("unexpected end of file, expected ") + expecting);
    }

    size_t line() const { return line_; }

    [[noreturn]] void fail(const std::string &what) const {
        throw CodeFileError(CodeFileError::Kind::Parse, line_, what);
    }

private:
    std::istringstream in_;
    size_t line_ = 0;
};

size_t parse_count(LineReader &rd, const std::string &token) {
    size_t v = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || p != token.data() + token.size()) {
        rd.fail("expected a non-negative integer, got '" + token + "'");
    }
    return v;
}

size_t parse_header(LineReader &rd, const std::string &tag) {
    std::istringstream ls(rd.next(tag.c_str()));
    std::string key, value, extra;
    ls >> key >> value;
    if (key != tag || value.empty() || (ls >> extra)) {
        rd.fail("expected '" + tag + " <count>'");
    }
    return parse_count(rd, value);
}

BitMatrix parse_rows(LineReader &rd, const std::string &tag, size_t n) {
    size_t rows = parse_header(rd, tag);
    BitMatrix m(rows, n);
    for (size_t r = 0; r < rows; ++r) {
        std::istringstream ls(rd.next("a stabiliser row"));
        std::string tok;
        long prev = -1;
        bool empty_marker = false;
        size_t count = 0;
        while (ls >> tok) {
            ++count;
            if (tok == "-") {
                empty_marker = true;
                continue;
            }
            size_t c = parse_count(rd, tok);
            if (c >= n) {
                rd.fail("column index " + tok + " out of range for n = " + std::to_string(n));
            }
            if (static_cast<long>(c) <= prev) {
                rd.fail("column indices must be strictly ascending");
            }
            prev = static_cast<long>(c);
            m.set(r, c);
        }
        if (empty_marker && count != 1) {
            rd.fail("'-' must stand alone");
        }
    }
    return m;
}

}  // namespace

std::string serialize_code(const CssCode &code) {
    std::ostringstream out;
    out << "qltc-code 1\n";
    out << "n " << code.n() << '\n';
    write_rows(out, "hx", code.h_x);
    write_rows(out, "hz", code.h_z);
    out << "meta " << meta_to_json(code.meta) << '\n';
    out << "end\n";
    return out.str();
}

CssCode parse_code(const std::string &text, bool force) {
    LineReader rd(text);
    if (rd.next("header") != "qltc-code 1") {
        rd.fail("expected header 'qltc-code 1'");
    }
    size_t n = parse_header(rd, "n");
    BitMatrix hx = parse_rows(rd, "hx", n);
    BitMatrix hz = parse_rows(rd, "hz", n);
    CssCode code(std::move(hx), std::move(hz));
    std::string line = rd.next("meta or end");
    if (line.rfind("meta ", 0) == 0) {
        try {
            code.meta = meta_from_json(line.substr(5));
        } catch (const std::exception &e) {
            rd.fail(std::string("bad metadata: ") + e.what());
        }
        line = rd.next("end");
    }
    if (line != "end") {
        rd.fail("expected 'end'");
    }
    if (!force) {
        ValidationReport v = validate(code);
        if (!v.ok()) {
            auto [x, z] = v.anticommuting.front();
            throw CodeFileError(CodeFileError::Kind::Invalid, 0,
                                "stabilisers do not commute: X row " + std::to_string(x) + " and Z row " +
                                    std::to_string(z) + " (" + std::to_string(v.anticommuting.size()) + " pairs)");
        }
    }
    return code;
}

CssCode load_code(const std::string &path, bool force) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CodeFileError(CodeFileError::Kind::Io, 0, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_code(buf.str(), force);
}

void save_code(const CssCode &code, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw CodeFileError(CodeFileError::Kind::Io, 0, "cannot write " + path);
    }
    out << serialize_code(code);
}

}  // namespace qltc
