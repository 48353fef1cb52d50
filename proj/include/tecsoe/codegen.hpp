#ifndef TECSOE_CODEGEN_HPP
#define TECSOE_CODEGEN_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tecsoe/generation_model.hpp"
#include "tecsoe/text_template.hpp"

namespace tecsoe {

enum class FileKind { Scaffolding, UserStub, RtosConfig, Report };

struct EmittedFile {
    std::string text;
    FileKind kind = FileKind::Scaffolding;
};

// Paths are relative to the output directory (gen/... and src_user/...).
struct EmittedFileSet {
    std::map<std::string, EmittedFile> files;

    void add(std::string path, std::string text, FileKind kind) {
        files.emplace(std::move(path), EmittedFile{std::move(text), kind});
    }

    const std::string& text_of(const std::string& path) const { return files.at(path).text; }
    bool contains(const std::string& path) const { return files.count(path) > 0; }
};

inline EmittedFileSet merge(const EmittedFileSet& a, const EmittedFileSet& b) {
    EmittedFileSet out = a;
    for (const auto& [path, file] : b.files) out.files.emplace(path, file);
    return out;
}

namespace detail {

inline std::string render_params(const TemplateSet&, const FunctionDecl& fn) {
    std::string out;
    for (const auto& p : fn.params) {
        out += ", ";
        out += p.name;
        out += ": ";
        out += names::rust_type(p.type);
    }
    return out;
}

inline std::string render_return(const FunctionDecl& fn) {
    if (!fn.return_type) return "";
    return std::string(" -> ") + names::rust_type(*fn.return_type);
}

inline std::string default_return(const FunctionDecl& fn) {
    if (!fn.return_type) return "";
    switch (*fn.return_type) {
        case ScalarType::Float32:
        case ScalarType::Float64: return "        0.0\n";
        case ScalarType::Bool: return "        false\n";
        default: return "        0\n";
    }
}

inline std::string render_trait(const TemplateSet& t, const SignatureDecl& sig,
                                const std::string& trait_name) {
    std::string fns;
    for (const auto& fn : sig.functions) {
        fns += t.render("trait_fn", {{"fn", fn.name},
                                     {"params", render_params(t, fn)},
                                     {"ret", render_return(fn)}});
    }
    return t.render("trait_def", {{"trait", trait_name}, {"functions", fns}});
}

inline std::string render_celltype_file(const TemplateSet& t, const ComponentModel& model,
                                        const GenCelltype& ct) {
    std::string out = t.render("file_header", {});
    out += '\n';

    for (const auto& entry : ct.entries) {
        if (!entry.defines_trait) continue;
        out += render_trait(t, model.signatures.at(entry.signature), entry.trait_name);
        out += '\n';
    }

    if (!ct.var_struct.empty()) {
        std::string fields;
        for (const auto& v : ct.vars)
            fields += t.render("field_var", {{"var", v.name}, {"type", names::rust_type(v.type)}});
        out += t.render("var_struct", {{"var_struct", ct.var_struct}, {"fields", fields}});
        out += '\n';
        out += t.render("sync_struct",
                        {{"sync_struct", ct.sync_struct}, {"var_struct", ct.var_struct}});
        out += '\n';
    }

    out += t.render("struct_open", {{"struct", ct.struct_name}});
    for (const auto& p : ct.ports)
        out += t.render("field_port", {{"port", p.name}, {"trait", p.trait_name}});
    for (const auto& a : ct.attrs)
        out += t.render("field_attr", {{"attr", a.name}, {"type", names::rust_type(a.type)}});
    if (!ct.var_struct.empty())
        out += t.render("field_var_ref", {{"sync_struct", ct.sync_struct}});
    switch (ct.dispatch.mode) {
        case DispatchMode::Mode::FieldRemoved:
            break;
        case DispatchMode::Mode::DirectHandle:
            out += t.render("field_lock_direct",
                            {{"handle", ct.dispatch.handle == LockKind::Tag::BinarySemaphore
                                            ? "TECSSemaphoreRef"
                                            : "TECSMutexRef"}});
            break;
        case DispatchMode::Mode::DynamicDispatch:
            out += t.render("field_lock_dyn", {});
            break;
    }
    out += t.render("struct_close", {});
    out += '\n';

    for (const auto& entry : ct.entries) {
        out += t.render("entry_glue", {{"glue", entry.glue_name}, {"struct", ct.struct_name}});
        out += '\n';
    }

    bool has_vars = !ct.var_struct.empty();
    out += t.render("accessor_open",
                    {{"struct", ct.struct_name},
                     {"var_handle", has_vars ? "&'static mut " + ct.var_struct : "()"}});
    out += ct.dispatch.mode == DispatchMode::Mode::FieldRemoved ? t.render("accessor_noop", {})
                                                                : t.render("accessor_lock", {});
    if (has_vars) out += t.render("accessor_var", {});
    out += t.render(has_vars ? "accessor_close_vars" : "accessor_close_novars", {});
    return out;
}

inline std::string render_instances_file(const TemplateSet& t, const GenerationModel& gm) {
    std::string out = t.render("file_header", {});
    out += '\n';

    for (const auto& cell : gm.cells) {
        const GenCelltype& ct = gm.celltype(cell.celltype);

        if (!cell.lock_static.empty()) {
            if (cell.dummy)
                out += t.render("static_dummy", {{"LOCK_NAME", cell.lock_static}});
            else if (cell.lock.tag == LockKind::Tag::BinarySemaphore)
                out += t.render("static_sem",
                                {{"LOCK_NAME", cell.lock_static}, {"ID", cell.lock_object}});
            else
                out += t.render("static_mtx",
                                {{"LOCK_NAME", cell.lock_static}, {"ID", cell.lock_object}});
        }

        if (!cell.var_static.empty()) {
            std::string inits;
            for (const auto& v : ct.vars) {
                if (!inits.empty()) inits += ", ";
                inits += v.name + ": " + v.default_value.lexeme;
            }
            out += t.render("static_var", {{"VAR_NAME", cell.var_static},
                                           {"sync_struct", ct.sync_struct},
                                           {"var_struct", ct.var_struct},
                                           {"inits", inits}});
        }

        std::string fields;
        for (const auto& p : ct.ports)
            fields += t.render("cell_field_port",
                               {{"port", p.name}, {"TARGET", cell.port_targets.at(p.name)}});
        for (const auto& a : ct.attrs)
            fields += t.render("cell_field_attr",
                               {{"attr", a.name}, {"value", cell.attr_values.at(a.name).lexeme}});
        if (!cell.var_static.empty())
            fields += t.render("cell_field_var_ref", {{"VAR_NAME", cell.var_static}});
        if (!cell.lock_static.empty())
            fields += t.render("cell_field_lock", {{"LOCK_NAME", cell.lock_static}});
        out += t.render("static_cell", {{"CELL_NAME", cell.static_name},
                                        {"struct", ct.struct_name},
                                        {"fields", fields}});
        for (const auto& entry : cell.entry_statics)
            out += t.render("static_glue", {{"GLUE_NAME", entry.static_name},
                                            {"glue", entry.glue_type},
                                            {"CELL_NAME", cell.static_name}});
        out += '\n';
    }
    return out;
}

} // namespace detail

// One scaffolding file per celltype plus the instances file. Regeneration
// with the same inputs is byte-identical.
inline EmittedFileSet emit_scaffolding(const GenerationModel& gm, const ComponentModel& model,
                                       const TemplateSet& templates) {
    EmittedFileSet set;
    for (const auto& ct : gm.celltypes)
        set.add(ct.file_name, detail::render_celltype_file(templates, model, ct),
                FileKind::Scaffolding);
    set.add("gen/instances.rs", detail::render_instances_file(templates, gm),
            FileKind::Scaffolding);
    return set;
}

// One stub per (celltype, entry port). Paths already present in `existing`
// are skipped entirely: user files are never overwritten.
inline EmittedFileSet emit_user_stubs(const GenerationModel& gm, const ComponentModel& model,
                                      const TemplateSet& templates,
                                      const std::set<std::string>& existing = {}) {
    EmittedFileSet set;
    for (const auto& ct : gm.celltypes) {
        for (const auto& entry : ct.entries) {
            std::string path = "src_user/" + names::file_stem(ct.source_name) + "_" +
                               names::file_stem(entry.port_name) + ".rs";
            if (existing.count(path)) continue;

            std::string out = templates.render(
                "stub_header", {{"celltype", ct.source_name}, {"entry", entry.port_name}});
            out += templates.render("stub_impl_open",
                                    {{"trait", entry.trait_name}, {"glue", entry.glue_name}});
            const SignatureDecl& sig = model.signatures.at(entry.signature);
            for (std::size_t i = 0; i < sig.functions.size(); ++i) {
                const FunctionDecl& fn = sig.functions[i];
                if (i > 0) out += '\n';
                out += templates.render("stub_fn",
                                        {{"fn", fn.name},
                                         {"params", detail::render_params(templates, fn)},
                                         {"ret", detail::render_return(fn)},
                                         {"default_return", detail::default_return(fn)}});
            }
            out += templates.render("stub_impl_close", {});
            set.add(std::move(path), std::move(out), FileKind::UserStub);
        }
    }
    return set;
}

// ITRON static-API configuration: tasks by name, then semaphores, then
// mutexes.
inline EmittedFileSet emit_rtos_config(const GenerationModel& gm, const TemplateSet& templates) {
    std::string out;
    for (const auto& task : gm.tasks) {
        out += templates.render("cfg_task",
                                {{"NAME", names::static_name(task.name)},
                                 {"body", names::file_stem(task.name) + "_body"},
                                 {"priority", std::to_string(task.priority)}});
    }
    for (const auto& lock : gm.locks)
        if (lock.kind.tag == LockKind::Tag::BinarySemaphore)
            out += templates.render("cfg_sem", {{"NAME", lock.name}});
    for (const auto& lock : gm.locks)
        if (lock.kind.tag == LockKind::Tag::CeilingMutex)
            out += templates.render("cfg_mtx", {{"NAME", lock.name},
                                                {"ceiling", std::to_string(lock.kind.ceiling)}});
    EmittedFileSet set;
    set.add("gen/system.cfg", std::move(out), FileKind::RtosConfig);
    return set;
}

inline int count_nonblank_lines(const std::string& text) {
    int count = 0;
    bool has_content = false;
    for (char c : text) {
        if (c == '\n') {
            if (has_content) ++count;
            has_content = false;
        } else if (c != ' ' && c != '\t' && c != '\r') {
            has_content = true;
        }
    }
    if (has_content) ++count;
    return count;
}

// Counting rule: non-blank lines, comments included.
struct LineCounts {
    int cdl_file = 0;
    int auto_generated = 0;  // Scaffolding files only; config and reports are not code
    int user_written = 0;
};

inline LineCounts count_lines(const EmittedFileSet& set, const std::string& cdl_text) {
    LineCounts counts;
    counts.cdl_file = count_nonblank_lines(cdl_text);
    for (const auto& [path, file] : set.files) {
        if (file.kind == FileKind::Scaffolding)
            counts.auto_generated += count_nonblank_lines(file.text);
        else if (file.kind == FileKind::UserStub)
            counts.user_written += count_nonblank_lines(file.text);
    }
    return counts;
}

struct LineReport {
    LineCounts pass1;
    LineCounts pass2;
    bool has_pass2 = false;
    int user_lines_changed = 0;

    std::string to_tsv() const {
        auto col = [&](int p1, int p2) {
            return std::to_string(p1) + "\t" + (has_pass2 ? std::to_string(p2) : "-");
        };
        std::string out = "category\tpass1\tpass2\n";
        out += "cdl_file\t" + col(pass1.cdl_file, pass2.cdl_file) + "\n";
        out += "auto_generated\t" + col(pass1.auto_generated, pass2.auto_generated) + "\n";
        out += "user_written\t" + col(pass1.user_written, pass2.user_written) + "\n";
        out += "user_lines_changed\t" + col(0, user_lines_changed) + "\n";
        return out;
    }
};

namespace detail {

inline int diff_line_count(const std::string& a, const std::string& b) {
    std::vector<std::string> la, lb;
    auto split = [](const std::string& text, std::vector<std::string>& out) {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t nl = text.find('\n', start);
            if (nl == std::string::npos) {
                out.push_back(text.substr(start));
                break;
            }
            out.push_back(text.substr(start, nl - start));
            start = nl + 1;
        }
    };
    split(a, la);
    split(b, lb);
    std::size_t common = std::min(la.size(), lb.size());
    int changed = static_cast<int>(la.size() + lb.size() - 2 * common);
    for (std::size_t i = 0; i < common; ++i)
        if (la[i] != lb[i]) ++changed;
    return changed;
}

} // namespace detail

// Pass-over-pass comparison. The user-lines-changed figure is computed from
// the stub sets the two passes would write; optimization must leave it at 0.
inline LineReport line_report(const EmittedFileSet& pass1, const EmittedFileSet& pass2,
                              const std::string& cdl_text) {
    LineReport report;
    report.pass1 = count_lines(pass1, cdl_text);
    report.pass2 = count_lines(pass2, cdl_text);
    report.has_pass2 = true;

    std::set<std::string> stub_paths;
    for (const auto& [path, file] : pass1.files)
        if (file.kind == FileKind::UserStub) stub_paths.insert(path);
    for (const auto& [path, file] : pass2.files)
        if (file.kind == FileKind::UserStub) stub_paths.insert(path);
    static const std::string empty;
    for (const auto& path : stub_paths) {
        const std::string& a = pass1.contains(path) ? pass1.text_of(path) : empty;
        const std::string& b = pass2.contains(path) ? pass2.text_of(path) : empty;
        report.user_lines_changed += detail::diff_line_count(a, b);
    }
    return report;
}

} // namespace tecsoe

#endif // TECSOE_CODEGEN_HPP
