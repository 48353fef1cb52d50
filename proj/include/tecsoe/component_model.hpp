#ifndef TECSOE_COMPONENT_MODEL_HPP
#define TECSOE_COMPONENT_MODEL_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tecsoe/cdl_ast.hpp"
#include "tecsoe/diag.hpp"

namespace tecsoe {

struct PortRef {
    std::string cell;
    std::string port;
};

inline bool operator==(const PortRef& a, const PortRef& b) {
    return a.cell == b.cell && a.port == b.port;
}

struct Join {
    PortRef caller;  // (cell, call port)
    PortRef callee;  // (cell, entry port)
    std::string signature;
};

struct CellInstance {
    std::string name;
    std::string celltype;
    std::map<std::string, Literal> attr_values;  // defaults applied
    bool has_vars = false;
};

// Immutable after build_model; name-keyed so declaration order does not leak
// into downstream results.
struct ComponentModel {
    std::map<std::string, SignatureDecl> signatures;
    std::map<std::string, CelltypeDecl> celltypes;
    std::map<std::string, CellInstance> cells;
    std::vector<Join> joins;  // sorted by (caller.cell, caller.port)

    const CelltypeDecl& celltype_of(const std::string& cell_name) const {
        return celltypes.at(cells.at(cell_name).celltype);
    }

    const PortDecl* find_entry(const std::string& cell_name, const std::string& entry) const {
        auto it = cells.find(cell_name);
        if (it == cells.end()) return nullptr;
        auto ct = celltypes.find(it->second.celltype);
        if (ct == celltypes.end()) return nullptr;
        for (const auto& p : ct->second.entries)
            if (p.name == entry) return &p;
        return nullptr;
    }

    bool joined(const std::string& caller_cell, const std::string& callee_cell,
                const std::string& callee_entry) const {
        for (const auto& j : joins)
            if (j.caller.cell == caller_cell && j.callee.cell == callee_cell &&
                j.callee.port == callee_entry)
                return true;
        return false;
    }
};

// Requires validate_ast(ast) to be empty. Every call port must be bound and
// every attr covered by an init or a default.
inline ComponentModel build_model(const CdlAst& ast) {
    ComponentModel model;
    for (const auto& sig : ast.signatures) model.signatures.emplace(sig.name, sig);
    for (const auto& ct : ast.celltypes) model.celltypes.emplace(ct.name, ct);

    for (const auto& cell : ast.cells) {
        const CelltypeDecl& ct = model.celltypes.at(cell.celltype);

        CellInstance inst;
        inst.name = cell.name;
        inst.celltype = cell.celltype;
        inst.has_vars = !ct.vars.empty();
        for (const auto& attr : ct.attrs) {
            const Literal* value = nullptr;
            for (const auto& init : cell.attr_inits)
                if (init.attr == attr.name) value = &init.value;
            if (!value && attr.default_value) value = &*attr.default_value;
            if (!value)
                throw ModelError(ModelErrorKind::MissingAttrValue,
                                 "cell '" + cell.name + "': attr '" + attr.name +
                                     "' has neither an init nor a default");
            inst.attr_values.emplace(attr.name, *value);
        }
        model.cells.emplace(cell.name, std::move(inst));
    }

    for (const auto& cell : ast.cells) {
        const CelltypeDecl& ct = model.celltypes.at(cell.celltype);
        for (const auto& port : ct.calls) {
            const BindingDecl* binding = nullptr;
            for (const auto& b : cell.bindings)
                if (b.call_port == port.name) binding = &b;
            if (!binding)
                throw ModelError(ModelErrorKind::UnboundCallPort,
                                 "cell '" + cell.name + "': call port '" + port.name +
                                     "' is unbound");

            const PortDecl* entry = model.find_entry(binding->target_cell, binding->target_entry);
            if (!entry || entry->signature != port.signature)
                throw ModelError(ModelErrorKind::SignatureMismatch,
                                 "join " + cell.name + "." + port.name + " -> " +
                                     binding->target_cell + "." + binding->target_entry +
                                     ": signature mismatch (caller wants '" + port.signature +
                                     "')");

            Join join;
            join.caller = {cell.name, port.name};
            join.callee = {binding->target_cell, binding->target_entry};
            join.signature = port.signature;
            model.joins.push_back(std::move(join));
        }
    }

    std::sort(model.joins.begin(), model.joins.end(), [](const Join& a, const Join& b) {
        if (a.caller.cell != b.caller.cell) return a.caller.cell < b.caller.cell;
        return a.caller.port < b.caller.port;
    });
    return model;
}

// Empty report iff the cell-level join graph has no directed cycle; otherwise
// one witness cycle is reported.
inline ValidationReport check_acyclic(const ComponentModel& model) {
    ValidationReport report;

    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& j : model.joins) succ[j.caller.cell].push_back(j.callee.cell);

    enum class Mark { White, Grey, Black };
    std::map<std::string, Mark> mark;
    for (const auto& [name, _] : model.cells) mark[name] = Mark::White;

    std::vector<std::string> path;
    std::vector<std::string> cycle;

    auto dfs = [&](auto&& self, const std::string& cell) -> bool {
        mark[cell] = Mark::Grey;
        path.push_back(cell);
        for (const auto& next : succ[cell]) {
            if (mark[next] == Mark::Grey) {
                auto start = std::find(path.begin(), path.end(), next);
                cycle.assign(start, path.end());
                return true;
            }
            if (mark[next] == Mark::White && self(self, next)) return true;
        }
        path.pop_back();
        mark[cell] = Mark::Black;
        return false;
    };

    for (const auto& [name, _] : model.cells) {
        if (mark[name] == Mark::White && dfs(dfs, name)) {
            std::string desc = "join cycle:";
            for (const auto& c : cycle) desc += " " + c;
            report.add(ViolationKind::CyclicJoins, SourceSpan{}, desc);
            break;
        }
    }
    return report;
}

} // namespace tecsoe

#endif // TECSOE_COMPONENT_MODEL_HPP
