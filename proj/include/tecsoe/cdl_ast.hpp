#ifndef TECSOE_CDL_AST_HPP
#define TECSOE_CDL_AST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tecsoe/diag.hpp"

namespace tecsoe {

enum class ScalarType {
    Int8, Int16, Int32, Int64,
    UInt8, UInt16, UInt32, UInt64,
    Bool, Float32, Float64, Char,
};

inline std::optional<ScalarType> scalar_type_from_name(const std::string& name) {
    if (name == "int8") return ScalarType::Int8;
    if (name == "int16") return ScalarType::Int16;
    if (name == "int32") return ScalarType::Int32;
    if (name == "int64") return ScalarType::Int64;
    if (name == "uint8") return ScalarType::UInt8;
    if (name == "uint16") return ScalarType::UInt16;
    if (name == "uint32") return ScalarType::UInt32;
    if (name == "uint64") return ScalarType::UInt64;
    if (name == "bool") return ScalarType::Bool;
    if (name == "float32") return ScalarType::Float32;
    if (name == "float64") return ScalarType::Float64;
    if (name == "char") return ScalarType::Char;
    return std::nullopt;
}

inline const char* to_string(ScalarType t) {
    switch (t) {
        case ScalarType::Int8: return "int8";
        case ScalarType::Int16: return "int16";
        case ScalarType::Int32: return "int32";
        case ScalarType::Int64: return "int64";
        case ScalarType::UInt8: return "uint8";
        case ScalarType::UInt16: return "uint16";
        case ScalarType::UInt32: return "uint32";
        case ScalarType::UInt64: return "uint64";
        case ScalarType::Bool: return "bool";
        case ScalarType::Float32: return "float32";
        case ScalarType::Float64: return "float64";
        case ScalarType::Char: return "char";
    }
    return "?";
}

enum class LiteralKind { Int, Float, Bool };

// Literals keep their lexeme so printing reproduces the source form exactly.
struct Literal {
    LiteralKind kind = LiteralKind::Int;
    std::string lexeme;
    std::int64_t int_value = 0;
    double float_value = 0.0;
    bool bool_value = false;
    SourceSpan span;
};

inline bool same_literal(const Literal& a, const Literal& b) {
    return a.kind == b.kind && a.lexeme == b.lexeme;
}

enum class ParamDirection { In, Out, InOut };

inline const char* to_string(ParamDirection d) {
    switch (d) {
        case ParamDirection::In: return "in";
        case ParamDirection::Out: return "out";
        case ParamDirection::InOut: return "inout";
    }
    return "?";
}

struct ParamDecl {
    std::string name;
    ScalarType type = ScalarType::Int32;
    ParamDirection direction = ParamDirection::In;
    SourceSpan span;
};

struct FunctionDecl {
    std::string name;
    std::optional<ScalarType> return_type;  // nullopt = void
    std::vector<ParamDecl> params;
    SourceSpan span;
};

struct SignatureDecl {
    std::string name;
    std::vector<FunctionDecl> functions;
    SourceSpan span;
};

struct PortDecl {
    std::string signature;
    std::string name;
    SourceSpan span;
};

struct AttrDecl {
    std::string name;
    ScalarType type = ScalarType::Int32;
    std::optional<Literal> default_value;
    SourceSpan span;
};

struct VarDecl {
    std::string name;
    ScalarType type = ScalarType::Int32;
    Literal default_value;
    SourceSpan span;
};

struct CelltypeDecl {
    std::string name;
    std::vector<PortDecl> entries;
    std::vector<PortDecl> calls;
    std::vector<AttrDecl> attrs;
    std::vector<VarDecl> vars;
    SourceSpan span;
};

struct BindingDecl {
    std::string call_port;
    std::string target_cell;
    std::string target_entry;
    SourceSpan span;
};

struct AttrInit {
    std::string attr;
    Literal value;
    SourceSpan span;
};

struct CellDecl {
    std::string celltype;
    std::string name;
    std::vector<BindingDecl> bindings;
    std::vector<AttrInit> attr_inits;
    SourceSpan span;
};

// Declarations appear in the AST in textual order, both within each list and
// in the combined decl_order index (kind, index-within-kind).
struct CdlAst {
    enum class DeclKind { Signature, Celltype, Cell };

    std::vector<SignatureDecl> signatures;
    std::vector<CelltypeDecl> celltypes;
    std::vector<CellDecl> cells;
    std::vector<std::pair<DeclKind, std::size_t>> decl_order;
};

// Structural equality, spans ignored. Used by the reparse round-trip checks.
inline bool structurally_equal(const ParamDecl& a, const ParamDecl& b) {
    return a.name == b.name && a.type == b.type && a.direction == b.direction;
}

inline bool structurally_equal(const FunctionDecl& a, const FunctionDecl& b) {
    if (a.name != b.name || a.return_type != b.return_type) return false;
    if (a.params.size() != b.params.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i)
        if (!structurally_equal(a.params[i], b.params[i])) return false;
    return true;
}

inline bool structurally_equal(const SignatureDecl& a, const SignatureDecl& b) {
    if (a.name != b.name || a.functions.size() != b.functions.size()) return false;
    for (std::size_t i = 0; i < a.functions.size(); ++i)
        if (!structurally_equal(a.functions[i], b.functions[i])) return false;
    return true;
}

inline bool structurally_equal(const PortDecl& a, const PortDecl& b) {
    return a.signature == b.signature && a.name == b.name;
}

inline bool structurally_equal(const AttrDecl& a, const AttrDecl& b) {
    if (a.name != b.name || a.type != b.type) return false;
    if (a.default_value.has_value() != b.default_value.has_value()) return false;
    if (a.default_value && !same_literal(*a.default_value, *b.default_value)) return false;
    return true;
}

inline bool structurally_equal(const VarDecl& a, const VarDecl& b) {
    return a.name == b.name && a.type == b.type && same_literal(a.default_value, b.default_value);
}

inline bool structurally_equal(const CelltypeDecl& a, const CelltypeDecl& b) {
    if (a.name != b.name) return false;
    if (a.entries.size() != b.entries.size() || a.calls.size() != b.calls.size() ||
        a.attrs.size() != b.attrs.size() || a.vars.size() != b.vars.size())
        return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (!structurally_equal(a.entries[i], b.entries[i])) return false;
    for (std::size_t i = 0; i < a.calls.size(); ++i)
        if (!structurally_equal(a.calls[i], b.calls[i])) return false;
    for (std::size_t i = 0; i < a.attrs.size(); ++i)
        if (!structurally_equal(a.attrs[i], b.attrs[i])) return false;
    for (std::size_t i = 0; i < a.vars.size(); ++i)
        if (!structurally_equal(a.vars[i], b.vars[i])) return false;
    return true;
}

inline bool structurally_equal(const CellDecl& a, const CellDecl& b) {
    if (a.celltype != b.celltype || a.name != b.name) return false;
    if (a.bindings.size() != b.bindings.size() || a.attr_inits.size() != b.attr_inits.size())
        return false;
    for (std::size_t i = 0; i < a.bindings.size(); ++i) {
        if (a.bindings[i].call_port != b.bindings[i].call_port ||
            a.bindings[i].target_cell != b.bindings[i].target_cell ||
            a.bindings[i].target_entry != b.bindings[i].target_entry)
            return false;
    }
    for (std::size_t i = 0; i < a.attr_inits.size(); ++i) {
        if (a.attr_inits[i].attr != b.attr_inits[i].attr ||
            !same_literal(a.attr_inits[i].value, b.attr_inits[i].value))
            return false;
    }
    return true;
}

inline bool structurally_equal(const CdlAst& a, const CdlAst& b) {
    if (a.decl_order != b.decl_order) return false;
    if (a.signatures.size() != b.signatures.size() || a.celltypes.size() != b.celltypes.size() ||
        a.cells.size() != b.cells.size())
        return false;
    for (std::size_t i = 0; i < a.signatures.size(); ++i)
        if (!structurally_equal(a.signatures[i], b.signatures[i])) return false;
    for (std::size_t i = 0; i < a.celltypes.size(); ++i)
        if (!structurally_equal(a.celltypes[i], b.celltypes[i])) return false;
    for (std::size_t i = 0; i < a.cells.size(); ++i)
        if (!structurally_equal(a.cells[i], b.cells[i])) return false;
    return true;
}

} // namespace tecsoe

#endif // TECSOE_CDL_AST_HPP
