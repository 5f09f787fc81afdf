#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nestfold {

/// 1-based source position. A zero line means "no position".
struct Pos {
    std::size_t line = 0;
    std::size_t col = 0;

    bool operator==(const Pos&) const = default;
};

enum class Severity { error, note };

struct Diagnostic {
    Pos pos;
    Severity severity = Severity::error;
    std::string message;
};

/// Renders `file:line:col: severity: message`.
inline std::string format_diagnostic(const Diagnostic& d, const std::string& file) {
    std::ostringstream out;
    out << file << ':' << d.pos.line << ':' << d.pos.col << ": "
        << (d.severity == Severity::error ? "error" : "note") << ": " << d.message;
    return out.str();
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds)
        if (d.severity == Severity::error) return true;
    return false;
}

/// Thrown by the parser and analysis entry points; carries every diagnostic found.
class Error : public std::runtime_error {
public:
    explicit Error(std::vector<Diagnostic> diags)
        : std::runtime_error(diags.empty() ? std::string("error") : diags.front().message),
          diags_(std::move(diags)) {}

    Error(Pos pos, const std::string& message)
        : Error(std::vector<Diagnostic>{Diagnostic{pos, Severity::error, message}}) {}

    const std::vector<Diagnostic>& diagnostics() const noexcept { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

/// Runtime failures: shape mismatch during evaluation, overflow, guard exhaustion.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nestfold
