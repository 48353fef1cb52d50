#ifndef TECSOE_CDL_VALIDATE_HPP
#define TECSOE_CDL_VALIDATE_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "tecsoe/cdl_ast.hpp"
#include "tecsoe/diag.hpp"

namespace tecsoe {

namespace detail {

inline bool int_fits(std::int64_t v, ScalarType t) {
    switch (t) {
        case ScalarType::Int8: return v >= -128 && v <= 127;
        case ScalarType::Int16: return v >= -32768 && v <= 32767;
        case ScalarType::Int32: return v >= INT64_C(-2147483648) && v <= INT64_C(2147483647);
        case ScalarType::Int64: return true;
        case ScalarType::UInt8: return v >= 0 && v <= 255;
        case ScalarType::UInt16: return v >= 0 && v <= 65535;
        case ScalarType::UInt32: return v >= 0 && v <= INT64_C(4294967295);
        case ScalarType::UInt64: return v >= 0;
        case ScalarType::Char: return v >= -128 && v <= 255;
        default: return true;
    }
}

inline bool literal_matches_type(const Literal& lit, ScalarType t) {
    switch (lit.kind) {
        case LiteralKind::Int:
            if (t == ScalarType::Bool) return false;
            if (t == ScalarType::Float32 || t == ScalarType::Float64) return true;
            return int_fits(lit.int_value, t);
        case LiteralKind::Float:
            return t == ScalarType::Float32 || t == ScalarType::Float64;
        case LiteralKind::Bool:
            return t == ScalarType::Bool;
    }
    return false;
}

} // namespace detail

// All violations are collected; nothing throws. An empty report means
// build_model can resolve every name in the AST.
inline ValidationReport validate_ast(const CdlAst& ast) {
    ValidationReport report;

    std::map<std::string, const SignatureDecl*> signatures;
    std::map<std::string, const CelltypeDecl*> celltypes;
    std::map<std::string, const CellDecl*> cells;

    for (const auto& sig : ast.signatures) {
        if (!signatures.emplace(sig.name, &sig).second)
            report.add(ViolationKind::DuplicateName, sig.span,
                       "duplicate signature '" + sig.name + "'");
        std::set<std::string> fn_names;
        for (const auto& fn : sig.functions) {
            if (!fn_names.insert(fn.name).second)
                report.add(ViolationKind::DuplicateName, fn.span,
                           "duplicate function '" + fn.name + "' in signature '" + sig.name + "'");
        }
    }

    for (const auto& ct : ast.celltypes) {
        if (!celltypes.emplace(ct.name, &ct).second)
            report.add(ViolationKind::DuplicateName, ct.span,
                       "duplicate celltype '" + ct.name + "'");

        std::set<std::string> member_names;
        auto check_member = [&](const std::string& name, SourceSpan span) {
            if (!member_names.insert(name).second)
                report.add(ViolationKind::DuplicateName, span,
                           "duplicate member '" + name + "' in celltype '" + ct.name + "'");
        };
        auto check_port = [&](const PortDecl& port) {
            check_member(port.name, port.span);
            if (!signatures.count(port.signature))
                report.add(ViolationKind::UnknownSignature, port.span,
                           "port '" + port.name + "' names unknown signature '" +
                               port.signature + "'");
        };
        for (const auto& p : ct.entries) check_port(p);
        for (const auto& p : ct.calls) check_port(p);
        for (const auto& a : ct.attrs) {
            check_member(a.name, a.span);
            if (a.default_value && !detail::literal_matches_type(*a.default_value, a.type))
                report.add(ViolationKind::TypeMismatch, a.default_value->span,
                           "default '" + a.default_value->lexeme + "' does not fit attr '" +
                               a.name + "' of type " + to_string(a.type));
        }
        for (const auto& v : ct.vars) {
            check_member(v.name, v.span);
            if (!detail::literal_matches_type(v.default_value, v.type))
                report.add(ViolationKind::TypeMismatch, v.default_value.span,
                           "default '" + v.default_value.lexeme + "' does not fit var '" +
                               v.name + "' of type " + to_string(v.type));
        }
    }

    for (const auto& cell : ast.cells) {
        if (!cells.emplace(cell.name, &cell).second)
            report.add(ViolationKind::DuplicateName, cell.span,
                       "duplicate cell '" + cell.name + "'");
    }

    for (const auto& cell : ast.cells) {
        auto ct_it = celltypes.find(cell.celltype);
        if (ct_it == celltypes.end()) {
            report.add(ViolationKind::UnknownCelltype, cell.span,
                       "cell '" + cell.name + "' names unknown celltype '" + cell.celltype + "'");
            continue;
        }
        const CelltypeDecl& ct = *ct_it->second;

        std::set<std::string> bound;
        for (const auto& b : cell.bindings) {
            if (!bound.insert(b.call_port).second)
                report.add(ViolationKind::DuplicateBinding, b.span,
                           "call port '" + b.call_port + "' bound twice in cell '" +
                               cell.name + "'");
            const PortDecl* call_port = nullptr;
            for (const auto& p : ct.calls)
                if (p.name == b.call_port) call_port = &p;
            if (!call_port) {
                report.add(ViolationKind::UnknownCallPort, b.span,
                           "celltype '" + ct.name + "' has no call port '" + b.call_port + "'");
                continue;
            }
            auto target_it = cells.find(b.target_cell);
            if (target_it == cells.end()) {
                report.add(ViolationKind::UnknownCell, b.span,
                           "binding targets unknown cell '" + b.target_cell + "'");
                continue;
            }
            auto target_ct = celltypes.find(target_it->second->celltype);
            if (target_ct == celltypes.end()) continue;  // reported on the target cell
            bool entry_found = false;
            for (const auto& p : target_ct->second->entries)
                if (p.name == b.target_entry) entry_found = true;
            if (!entry_found)
                report.add(ViolationKind::UnknownEntryPort, b.span,
                           "cell '" + b.target_cell + "' has no entry port '" +
                               b.target_entry + "'");
        }

        std::set<std::string> inited;
        for (const auto& init : cell.attr_inits) {
            if (!inited.insert(init.attr).second)
                report.add(ViolationKind::DuplicateInit, init.span,
                           "attr '" + init.attr + "' initialized twice in cell '" +
                               cell.name + "'");
            const AttrDecl* attr = nullptr;
            for (const auto& a : ct.attrs)
                if (a.name == init.attr) attr = &a;
            if (!attr) {
                report.add(ViolationKind::UnknownAttr, init.span,
                           "celltype '" + ct.name + "' has no attr '" + init.attr + "'");
                continue;
            }
            if (!detail::literal_matches_type(init.value, attr->type))
                report.add(ViolationKind::TypeMismatch, init.value.span,
                           "value '" + init.value.lexeme + "' does not fit attr '" + init.attr +
                               "' of type " + to_string(attr->type));
        }
    }

    return report;
}

} // namespace tecsoe

#endif // TECSOE_CDL_VALIDATE_HPP
