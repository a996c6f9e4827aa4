#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "qltc/css.h"

namespace qltc {

// Text format, one stabiliser per line:
//
//   qltc-code 1
//   n <qubits>
//   hx <rows>
//   <ascending column indices, or "-" for an empty row>   (one line per row)
//   hz <rows>
//   ...
//   meta <single-line JSON>
//   end
class CodeFileError : public std::runtime_error {
public:
    enum class Kind { Parse, Invalid, Io };

    CodeFileError(Kind kind, size_t line, const std::string &what);
    Kind kind() const { return kind_; }
    size_t line() const { return line_; }

private:
    Kind kind_;
    size_t line_;
};

std::string serialize_code(const CssCode &code);
// Rejects codes whose stabilisers do not commute unless force is set.
CssCode parse_code(const std::string &text, bool force = false);

CssCode load_code(const std::string &path, bool force = false);
void save_code(const CssCode &code, const std::string &path);

std::string meta_to_json(const CodeMeta &meta);
CodeMeta meta_from_json(const std::string &json);

}  // namespace qltc
