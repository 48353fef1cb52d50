#ifndef TECSOE_DIAG_HPP
#define TECSOE_DIAG_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tecsoe {

// Half-open byte range into the source text, plus the 1-based line/column
// of its start for human-readable diagnostics.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;

    std::string to_string() const {
        return std::to_string(line) + ":" + std::to_string(column);
    }
};

inline bool operator==(const SourceSpan& a, const SourceSpan& b) {
    return a.begin == b.begin && a.end == b.end && a.line == b.line && a.column == b.column;
}

class CompileError : public std::runtime_error {
public:
    CompileError(SourceSpan span, const std::string& msg)
        : std::runtime_error(span.to_string() + ": " + msg), span_(span) {}

    const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

class LexError : public CompileError {
public:
    using CompileError::CompileError;
};

class ParseError : public CompileError {
public:
    ParseError(SourceSpan span, std::vector<std::string> expected, const std::string& found)
        : CompileError(span, format(expected, found)),
          expected_(std::move(expected)),
          found_(found) {}

    const std::vector<std::string>& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    static std::string format(const std::vector<std::string>& expected, const std::string& found) {
        std::string msg = "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
        }
        msg += ", found " + found;
        return msg;
    }

    std::vector<std::string> expected_;
    std::string found_;
};

// Semantic violations are data, not exceptions: a validation pass walks the
// whole input and reports everything it finds.
enum class ViolationKind {
    DuplicateName,
    UnknownSignature,
    UnknownCelltype,
    UnknownCell,
    UnknownEntryPort,
    UnknownCallPort,
    UnknownAttr,
    TypeMismatch,
    DuplicateBinding,
    DuplicateInit,
    CyclicJoins,
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::DuplicateName: return "DuplicateName";
        case ViolationKind::UnknownSignature: return "UnknownSignature";
        case ViolationKind::UnknownCelltype: return "UnknownCelltype";
        case ViolationKind::UnknownCell: return "UnknownCell";
        case ViolationKind::UnknownEntryPort: return "UnknownEntryPort";
        case ViolationKind::UnknownCallPort: return "UnknownCallPort";
        case ViolationKind::UnknownAttr: return "UnknownAttr";
        case ViolationKind::TypeMismatch: return "TypeMismatch";
        case ViolationKind::DuplicateBinding: return "DuplicateBinding";
        case ViolationKind::DuplicateInit: return "DuplicateInit";
        case ViolationKind::CyclicJoins: return "CyclicJoins";
    }
    return "?";
}

struct Violation {
    ViolationKind kind;
    SourceSpan span;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool empty() const { return violations.empty(); }

    void add(ViolationKind kind, SourceSpan span, std::string message) {
        violations.push_back({kind, span, std::move(message)});
    }

    std::string to_string() const {
        std::string out;
        for (const auto& v : violations) {
            out += v.span.to_string();
            out += ": ";
            out += tecsoe::to_string(v.kind);
            out += ": ";
            out += v.message;
            out += '\n';
        }
        return out;
    }
};

// Hard failures while resolving a validated AST into a model. These indicate
// an input the pipeline cannot proceed with (as opposed to Violations, which
// are collected).
enum class ModelErrorKind {
    UnboundCallPort,
    MissingAttrValue,
    SignatureMismatch,
};

class ModelError : public std::runtime_error {
public:
    ModelError(ModelErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ModelErrorKind kind() const { return kind_; }

private:
    ModelErrorKind kind_;
};

class TemplateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tecsoe

#endif // TECSOE_DIAG_HPP
