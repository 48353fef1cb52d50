#ifndef TECSOE_GENERATION_MODEL_HPP
#define TECSOE_GENERATION_MODEL_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tecsoe/callflow.hpp"
#include "tecsoe/component_model.hpp"
#include "tecsoe/lock_optimizer.hpp"

namespace tecsoe {

namespace names {

// tSensor -> TSensor, sSensor -> SSensor
inline std::string type_name(const std::string& source) {
    std::string out = source;
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

// Sensor1 -> SENSOR1
inline std::string static_name(const std::string& source) {
    std::string out;
    for (char c : source) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

// tSensor -> tsensor (file stem)
inline std::string file_stem(const std::string& source) {
    std::string out;
    for (char c : source) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// eSensor + TSensor -> ESensorForTSensor (entry-port glue type)
inline std::string glue_name(const std::string& entry, const std::string& struct_name) {
    return type_name(entry) + "For" + struct_name;
}

inline const char* rust_type(ScalarType t) {
    switch (t) {
        case ScalarType::Int8: return "i8";
        case ScalarType::Int16: return "i16";
        case ScalarType::Int32: return "i32";
        case ScalarType::Int64: return "i64";
        case ScalarType::UInt8: return "u8";
        case ScalarType::UInt16: return "u16";
        case ScalarType::UInt32: return "u32";
        case ScalarType::UInt64: return "u64";
        case ScalarType::Bool: return "bool";
        case ScalarType::Float32: return "f32";
        case ScalarType::Float64: return "f64";
        case ScalarType::Char: return "u8";
    }
    return "?";
}

} // namespace names

struct GenPort {
    std::string name;       // call-port field, source name kept
    std::string signature;
    std::string trait_name;
};

struct GenAttr {
    std::string name;
    ScalarType type;
};

struct GenVar {
    std::string name;
    ScalarType type;
    Literal default_value;
};

struct GenEntry {
    std::string port_name;
    std::string signature;
    std::string trait_name;
    std::string glue_name;
    bool defines_trait = false;  // trait text is emitted in this celltype's file
};

struct GenCelltype {
    std::string source_name;
    std::string struct_name;
    std::string var_struct;   // empty when the celltype has no vars
    std::string sync_struct;
    std::string file_name;    // path under gen/
    std::vector<GenPort> ports;
    std::vector<GenAttr> attrs;
    std::vector<GenVar> vars;
    std::vector<GenEntry> entries;
    DispatchMode dispatch;
};

struct GenEntryStatic {
    std::string port_name;
    std::string static_name;  // SENSOR1_ESENSOR
    std::string glue_type;    // ESensorForTSensor
};

struct GenCell {
    std::string source_name;
    std::string celltype;
    std::string static_name;
    std::string var_static;    // empty when no vars
    std::string lock_static;   // empty when the celltype has no lock field
    std::string lock_object;   // kernel object id, empty unless this cell is locked
    LockKind lock;
    bool dummy = false;        // unlocked cell of a DynamicDispatch celltype
    std::vector<GenEntryStatic> entry_statics;        // one glue instance per entry port
    std::map<std::string, std::string> port_targets;  // port -> target entry glue static
    std::map<std::string, Literal> attr_values;
};

struct GenLockObject {
    std::string name;  // kernel object id (SEM_* / MTX_*)
    LockKind kind;
};

struct GenTask {
    std::string name;
    int priority;
};

// Language-neutral description of everything the emitter writes. All
// identifiers are derived here so emission is pure text assembly.
struct GenerationModel {
    std::vector<GenCelltype> celltypes;  // sorted by source name
    std::vector<GenCell> cells;          // sorted by source name
    std::vector<GenLockObject> locks;    // one per locked cell
    std::vector<GenTask> tasks;          // sorted by name

    const GenCelltype& celltype(const std::string& source_name) const {
        for (const auto& ct : celltypes)
            if (ct.source_name == source_name) return ct;
        throw std::out_of_range("no generated celltype '" + source_name + "'");
    }
};

// Flows are only needed for the task list (RTOS configuration); pass 1 builds
// the model without them.
inline GenerationModel build_generation_model(const ComponentModel& model, const LockPlan& plan,
                                              const CallFlowSet* flows = nullptr) {
    GenerationModel gm;

    // First celltype (by name) entering a signature owns its trait text.
    std::set<std::string> traits_defined;

    for (const auto& [ct_name, ct] : model.celltypes) {
        GenCelltype gct;
        gct.source_name = ct_name;
        gct.struct_name = names::type_name(ct_name);
        gct.file_name = "gen/" + names::file_stem(ct_name) + ".rs";
        if (!ct.vars.empty()) {
            gct.var_struct = gct.struct_name + "Var";
            gct.sync_struct = gct.struct_name + "SyncVar";
        }
        for (const auto& p : ct.calls)
            gct.ports.push_back({p.name, p.signature, names::type_name(p.signature)});
        for (const auto& a : ct.attrs) gct.attrs.push_back({a.name, a.type});
        for (const auto& v : ct.vars) gct.vars.push_back({v.name, v.type, v.default_value});
        for (const auto& e : ct.entries) {
            GenEntry entry;
            entry.port_name = e.name;
            entry.signature = e.signature;
            entry.trait_name = names::type_name(e.signature);
            entry.glue_name = names::glue_name(e.name, gct.struct_name);
            entry.defines_trait = traits_defined.insert(e.signature).second;
            gct.entries.push_back(std::move(entry));
        }
        gct.dispatch = plan.per_celltype.at(ct_name);
        gm.celltypes.push_back(std::move(gct));
    }

    for (const auto& [cell_name, inst] : model.cells) {
        const GenCelltype& gct = gm.celltype(inst.celltype);
        const CellLock& lock = plan.per_cell.at(cell_name);

        GenCell gc;
        gc.source_name = cell_name;
        gc.celltype = inst.celltype;
        gc.static_name = names::static_name(cell_name);
        gc.lock = lock.kind;
        if (!gct.var_struct.empty()) gc.var_static = gc.static_name + "_VAR";

        if (gct.dispatch.mode != DispatchMode::Mode::FieldRemoved) {
            gc.lock_static = gc.static_name + "_EXC";
            if (lock.kind.is_lock()) {
                bool sem = lock.kind.tag == LockKind::Tag::BinarySemaphore;
                gc.lock_object = (sem ? "SEM_" : "MTX_") + gc.static_name;
                gm.locks.push_back({gc.lock_object, lock.kind});
            } else {
                gc.dummy = true;  // no-op lock object, empty lock/unlock
            }
        }

        for (const auto& entry : gct.entries) {
            gc.entry_statics.push_back(
                {entry.port_name,
                 gc.static_name + "_" + names::static_name(entry.port_name), entry.glue_name});
        }
        // Call ports point at the callee's entry glue instance, which is
        // where the signature trait is implemented.
        for (const auto& j : model.joins)
            if (j.caller.cell == cell_name)
                gc.port_targets[j.caller.port] =
                    names::static_name(j.callee.cell) + "_" + names::static_name(j.callee.port);
        gc.attr_values = inst.attr_values;
        gm.cells.push_back(std::move(gc));
    }

    if (flows) {
        for (const auto& t : flows->tasks) gm.tasks.push_back({t.name, t.priority});
        std::sort(gm.tasks.begin(), gm.tasks.end(),
                  [](const GenTask& a, const GenTask& b) { return a.name < b.name; });
    }

    std::sort(gm.locks.begin(), gm.locks.end(),
              [](const GenLockObject& a, const GenLockObject& b) { return a.name < b.name; });

    // Derived names must stay unique; colliding source names (e.g. cells that
    // differ only in case) cannot be emitted.
    std::set<std::string> seen;
    auto check = [&seen](const std::string& name) {
        if (!name.empty() && !seen.insert(name).second)
            throw std::runtime_error("emitted identifier collision: '" + name + "'");
    };
    for (const auto& ct : gm.celltypes) {
        check(ct.struct_name);
        check(ct.var_struct);
        check(ct.sync_struct);
        for (const auto& e : ct.entries) check(e.glue_name);
    }
    for (const auto& c : gm.cells) {
        check(c.static_name);
        check(c.var_static);
        check(c.lock_static);
        check(c.lock_object);
        for (const auto& e : c.entry_statics) check(e.static_name);
    }
    return gm;
}

} // namespace tecsoe

#endif // TECSOE_GENERATION_MODEL_HPP
