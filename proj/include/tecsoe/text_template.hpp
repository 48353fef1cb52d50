#ifndef TECSOE_TEXT_TEMPLATE_HPP
#define TECSOE_TEXT_TEMPLATE_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "tecsoe/diag.hpp"

namespace tecsoe {

using TemplateBindings = std::map<std::string, std::string>;

// Fills {{name}} placeholders. Unknown placeholders are an error so template
// and emitter cannot drift apart silently.
inline std::string render_template(std::string_view tmpl, const TemplateBindings& bindings) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        std::size_t open = tmpl.find("{{", pos);
        if (open == std::string_view::npos) {
            out += tmpl.substr(pos);
            break;
        }
        out += tmpl.substr(pos, open - pos);
        std::size_t close = tmpl.find("}}", open + 2);
        if (close == std::string_view::npos)
            throw TemplateError("unterminated placeholder near '" +
                                std::string(tmpl.substr(open, 20)) + "'");
        std::string name(tmpl.substr(open + 2, close - open - 2));
        auto it = bindings.find(name);
        if (it == bindings.end())
            throw TemplateError("missing placeholder '" + name + "'");
        out += it->second;
        pos = close + 2;
    }
    return out;
}

// Named snippets the emitter stitches together. The concrete target syntax
// lives here, not in emitter logic; a directory of <name>.tmpl files can
// override any snippet.
class TemplateSet {
public:
    const std::string& get(const std::string& name) const {
        auto it = templates_.find(name);
        if (it == templates_.end()) throw TemplateError("no template named '" + name + "'");
        return it->second;
    }

    std::string render(const std::string& name, const TemplateBindings& bindings) const {
        return render_template(get(name), bindings);
    }

    void set(const std::string& name, std::string text) {
        templates_[name] = std::move(text);
    }

    void load_overrides(const std::filesystem::path& dir) {
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            if (!entry.is_regular_file() || entry.path().extension() != ".tmpl") continue;
            std::ifstream in(entry.path());
            std::ostringstream buf;
            buf << in.rdbuf();
            templates_[entry.path().stem().string()] = buf.str();
        }
    }

    static TemplateSet builtin();

private:
    std::map<std::string, std::string> templates_;
};

inline TemplateSet TemplateSet::builtin() {
    TemplateSet set;

    // Shared file preamble. Names brought in here count as externally defined
    // for everything the scaffolding references: the lock-manager runtime and
    // the kernel object ids from the generated configuration.
    set.set("file_header",
            "// Generated by tecsoe. DO NOT EDIT.\n"
            "use tecs_rt::{LockGuard, LockManager, TECSDummyExCtrlRef, TECSMutexRef, "
            "TECSSemaphoreRef, UnsafeCell};\n"
            "use crate::kernel_cfg::*;\n");

    set.set("trait_def", "pub trait {{trait}} {\n{{functions}}}\n");
    set.set("trait_fn", "    fn {{fn}}(&self{{params}}){{ret}};\n");

    set.set("struct_open", "pub struct {{struct}} {\n");
    set.set("struct_close", "}\n");
    set.set("field_port", "    pub {{port}}: &'static dyn {{trait}},\n");
    set.set("field_attr", "    pub {{attr}}: {{type}},\n");
    set.set("field_var_ref", "    pub var_ref: &'static {{sync_struct}},\n");
    set.set("field_lock_direct", "    pub ex_ctrl_ref: &'static {{handle}},\n");
    set.set("field_lock_dyn", "    pub ex_ctrl_ref: &'static dyn LockManager,\n");
    set.set("field_var", "    pub {{var}}: {{type}},\n");

    set.set("var_struct", "pub struct {{var_struct}} {\n{{fields}}}\n");
    set.set("sync_struct",
            "pub struct {{sync_struct}} {\n"
            "    pub unsafe_var: UnsafeCell<{{var_struct}}>,\n"
            "}\n");

    set.set("entry_glue",
            "pub struct {{glue}} {\n"
            "    pub cell: &'static {{struct}},\n"
            "}\n");

    // The accessor always returns the same three-tuple shape, so user code is
    // untouched when a lock is optimized away.
    set.set("accessor_open",
            "impl {{struct}} {\n"
            "    #[inline]\n"
            "    pub fn get_cell_ref(&'static self) -> (&'static {{struct}}, {{var_handle}}, "
            "LockGuard) {\n");
    set.set("accessor_lock", "        let _lg = self.ex_ctrl_ref.lock();\n");
    set.set("accessor_noop", "        let _lg = LockGuard::none();\n");
    set.set("accessor_var", "        let var = unsafe { &mut *self.var_ref.unsafe_var.get() };\n");
    set.set("accessor_close_vars", "        (self, var, _lg)\n    }\n}\n");
    set.set("accessor_close_novars", "        (self, (), _lg)\n    }\n}\n");

    set.set("static_var",
            "pub static {{VAR_NAME}}: {{sync_struct}} = {{sync_struct}} {\n"
            "    unsafe_var: UnsafeCell::new({{var_struct}} { {{inits}} }),\n"
            "};\n");
    set.set("static_cell",
            "pub static {{CELL_NAME}}: {{struct}} = {{struct}} {\n{{fields}}};\n");
    set.set("cell_field_port", "    {{port}}: &{{TARGET}},\n");
    set.set("cell_field_attr", "    {{attr}}: {{value}},\n");
    set.set("cell_field_var_ref", "    var_ref: &{{VAR_NAME}},\n");
    set.set("cell_field_lock", "    ex_ctrl_ref: &{{LOCK_NAME}},\n");

    set.set("static_glue",
            "pub static {{GLUE_NAME}}: {{glue}} = {{glue}} { cell: &{{CELL_NAME}} };\n");
    set.set("static_sem",
            "pub static {{LOCK_NAME}}: TECSSemaphoreRef = TECSSemaphoreRef::new({{ID}});\n");
    set.set("static_mtx",
            "pub static {{LOCK_NAME}}: TECSMutexRef = TECSMutexRef::new({{ID}});\n");
    set.set("static_dummy",
            "pub static {{LOCK_NAME}}: TECSDummyExCtrlRef = TECSDummyExCtrlRef;\n");

    set.set("stub_header",
            "// Entry port functions for celltype {{celltype}}, entry {{entry}}.\n"
            "use crate::gen::*;\n\n");
    set.set("stub_impl_open", "impl {{trait}} for {{glue}} {\n");
    set.set("stub_fn",
            "    fn {{fn}}(&self{{params}}){{ret}} {\n"
            "        let (port, var, _lg) = self.cell.get_cell_ref();\n"
            "        // Developers implement the component behavior here.\n"
            "        let _ = (port, var);\n{{default_return}}"
            "    }\n");
    set.set("stub_impl_close", "}\n");

    // ITRON static-API configuration lines.
    set.set("cfg_task",
            "CRE_TSK({{NAME}}, { TA_ACT, 0, {{body}}, {{priority}}, STACK_SIZE, NULL });\n");
    set.set("cfg_sem", "CRE_SEM({{NAME}}, { TA_NULL, 1, 1 });\n");
    set.set("cfg_mtx", "CRE_MTX({{NAME}}, { TA_CEILING, {{ceiling}} });\n");

    return set;
}

} // namespace tecsoe

#endif // TECSOE_TEXT_TEMPLATE_HPP
