#ifndef TECSOE_CDL_PRINTER_HPP
#define TECSOE_CDL_PRINTER_HPP

#include <string>

#include "tecsoe/cdl_ast.hpp"

namespace tecsoe {

namespace detail {

inline void print_function(std::string& out, const FunctionDecl& fn) {
    out += "    ";
    out += fn.return_type ? to_string(*fn.return_type) : "void";
    out += ' ';
    out += fn.name;
    out += '(';
    if (fn.params.empty()) {
        out += "void";
    } else {
        for (std::size_t i = 0; i < fn.params.size(); ++i) {
            if (i > 0) out += ", ";
            const ParamDecl& p = fn.params[i];
            out += to_string(p.direction);
            out += ' ';
            out += to_string(p.type);
            out += ' ';
            out += p.name;
        }
    }
    out += ");\n";
}

inline void print_signature(std::string& out, const SignatureDecl& sig) {
    out += "signature " + sig.name + " {\n";
    for (const auto& fn : sig.functions) print_function(out, fn);
    out += "};\n";
}

inline void print_celltype(std::string& out, const CelltypeDecl& ct) {
    out += "celltype " + ct.name + " {\n";
    for (const auto& p : ct.entries) out += "    entry " + p.signature + " " + p.name + ";\n";
    for (const auto& p : ct.calls) out += "    call " + p.signature + " " + p.name + ";\n";
    if (!ct.attrs.empty()) {
        out += "    attr {\n";
        for (const auto& a : ct.attrs) {
            out += "        " + std::string(to_string(a.type)) + " " + a.name;
            if (a.default_value) out += " = " + a.default_value->lexeme;
            out += ";\n";
        }
        out += "    };\n";
    }
    if (!ct.vars.empty()) {
        out += "    var {\n";
        for (const auto& v : ct.vars) {
            out += "        " + std::string(to_string(v.type)) + " " + v.name + " = " +
                   v.default_value.lexeme + ";\n";
        }
        out += "    };\n";
    }
    out += "};\n";
}

inline void print_cell(std::string& out, const CellDecl& cell) {
    out += "cell " + cell.celltype + " " + cell.name + " {\n";
    for (const auto& b : cell.bindings)
        out += "    " + b.call_port + " = " + b.target_cell + "." + b.target_entry + ";\n";
    for (const auto& i : cell.attr_inits) out += "    " + i.attr + " = " + i.value.lexeme + ";\n";
    out += "};\n";
}

} // namespace detail

// Canonical text form; parse(pretty_print(ast)) is structurally equal to ast.
inline std::string pretty_print(const CdlAst& ast) {
    std::string out;
    for (auto [kind, idx] : ast.decl_order) {
        switch (kind) {
            case CdlAst::DeclKind::Signature: detail::print_signature(out, ast.signatures[idx]); break;
            case CdlAst::DeclKind::Celltype: detail::print_celltype(out, ast.celltypes[idx]); break;
            case CdlAst::DeclKind::Cell: detail::print_cell(out, ast.cells[idx]); break;
        }
    }
    return out;
}

} // namespace tecsoe

#endif // TECSOE_CDL_PRINTER_HPP
