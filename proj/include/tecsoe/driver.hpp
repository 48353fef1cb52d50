#ifndef TECSOE_DRIVER_HPP
#define TECSOE_DRIVER_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "tecsoe/cdl_parser.hpp"
#include "tecsoe/cdl_validate.hpp"
#include "tecsoe/codegen.hpp"
#include "tecsoe/component_model.hpp"
#include "tecsoe/lock_optimizer.hpp"
#include "tecsoe/simcheck.hpp"
#include "tecsoe/text_template.hpp"

namespace tecsoe {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid_input = 1;  // lex/parse/validation failures
inline constexpr int exit_io_error = 2;
inline constexpr int exit_unsound_plan = 3;   // self-check failed; should never happen

struct RunConfig {
    std::filesystem::path cdl_path;
    std::optional<std::filesystem::path> flow_path;
    std::filesystem::path out_dir;
    enum class Mode { Pass1, Pass2, Both } mode = Mode::Both;
    bool simulate = false;
    std::size_t state_bound = 1000000;
    bool print_report = false;
};

struct RunResult {
    int status = exit_ok;
    EmittedFileSet files;
};

namespace detail {

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline bool write_files(const std::filesystem::path& out_dir, const EmittedFileSet& set,
                        std::ostream& err) {
    std::error_code ec;
    for (const auto& [rel, file] : set.files) {
        std::filesystem::path path = out_dir / rel;
        std::filesystem::create_directories(path.parent_path(), ec);
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            err << "error: cannot write " << path.string() << "\n";
            return false;
        }
        out << file.text;
    }
    return true;
}

inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

inline std::map<std::string, std::uint64_t> hash_dir(const std::filesystem::path& dir) {
    std::map<std::string, std::uint64_t> hashes;
    if (!std::filesystem::exists(dir)) return hashes;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (auto text = read_file(entry.path()))
            hashes[entry.path().string()] = fnv1a(*text);
    }
    return hashes;
}

inline TemplateSet make_templates() {
    TemplateSet templates = TemplateSet::builtin();
    if (const char* dir = std::getenv("TECSOE_TEMPLATES")) {
        if (std::filesystem::is_directory(dir)) templates.load_overrides(dir);
    }
    return templates;
}

// Shared front half of both passes: text -> validated model.
struct FrontEnd {
    std::string cdl_text;
    ComponentModel model;
};

inline std::optional<FrontEnd> run_frontend(const RunConfig& cfg, std::ostream& err,
                                            int& status) {
    auto text = read_file(cfg.cdl_path);
    if (!text) {
        err << "error: cannot read " << cfg.cdl_path.string() << "\n";
        status = exit_io_error;
        return std::nullopt;
    }
    try {
        CdlAst ast = parse_cdl(*text);
        ValidationReport report = validate_ast(ast);
        if (!report.empty()) {
            err << cfg.cdl_path.string() << ":\n" << report.to_string();
            status = exit_invalid_input;
            return std::nullopt;
        }
        ComponentModel model = build_model(ast);
        ValidationReport cycles = check_acyclic(model);
        if (!cycles.empty()) {
            err << cfg.cdl_path.string() << ":\n" << cycles.to_string();
            status = exit_invalid_input;
            return std::nullopt;
        }
        return FrontEnd{std::move(*text), std::move(model)};
    } catch (const CompileError& e) {
        err << cfg.cdl_path.string() << ":" << e.what() << "\n";
        status = exit_invalid_input;
        return std::nullopt;
    } catch (const ModelError& e) {
        err << cfg.cdl_path.string() << ": " << e.what() << "\n";
        status = exit_invalid_input;
        return std::nullopt;
    }
}

inline std::optional<CallFlowSet> run_flow_frontend(const RunConfig& cfg,
                                                    const ComponentModel& model,
                                                    std::ostream& err, int& status) {
    auto text = read_file(*cfg.flow_path);
    if (!text) {
        err << "error: cannot read " << cfg.flow_path->string() << "\n";
        status = exit_io_error;
        return std::nullopt;
    }
    try {
        return parse_callflow(*text, model);
    } catch (const CompileError& e) {
        err << cfg.flow_path->string() << ":" << e.what() << "\n";
        status = exit_invalid_input;
        return std::nullopt;
    }
}

inline std::set<std::string> existing_stub_paths(const RunConfig& cfg,
                                                 const EmittedFileSet& stubs) {
    std::set<std::string> existing;
    for (const auto& [rel, _] : stubs.files)
        if (std::filesystem::exists(cfg.out_dir / rel)) existing.insert(rel);
    return existing;
}

} // namespace detail

// Pass 1: full locking, scaffolding + stubs + line report.
inline RunResult run_pass1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    RunResult result;
    auto front = detail::run_frontend(cfg, err, result.status);
    if (!front) return result;

    std::optional<CallFlowSet> flows;
    if (cfg.flow_path) {
        flows = detail::run_flow_frontend(cfg, front->model, err, result.status);
        if (!flows) return result;
    }

    LockPlan plan = initial_plan(front->model, flows ? &*flows : nullptr);
    GenerationModel gm = build_generation_model(front->model, plan, flows ? &*flows : nullptr);
    TemplateSet templates = detail::make_templates();

    try {
        EmittedFileSet files = emit_scaffolding(gm, front->model, templates);
        EmittedFileSet all_stubs = emit_user_stubs(gm, front->model, templates);
        EmittedFileSet stubs =
            emit_user_stubs(gm, front->model, templates, detail::existing_stub_paths(cfg, all_stubs));

        LineReport report;
        report.pass1 = count_lines(merge(files, all_stubs), front->cdl_text);
        files.add("gen/lines.tsv", report.to_tsv(), FileKind::Report);

        for (const auto& [path, file] : stubs.files) files.files.emplace(path, file);
        if (!detail::write_files(cfg.out_dir, files, err)) {
            result.status = exit_io_error;
            return result;
        }
        if (cfg.print_report) out << plan_report(front->model, plan);
        result.files = std::move(files);
    } catch (const TemplateError& e) {
        err << "template error: " << e.what() << "\n";
        result.status = exit_invalid_input;
    }
    return result;
}

// Pass 2: optimize with the call flow, regenerate, emit the RTOS config, and
// (optionally) verify the plan with the interleaving simulator. User files
// are never modified; this is checked with content hashes.
inline RunResult run_pass2(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    RunResult result;
    if (!cfg.flow_path) {
        err << "error: pass 2 requires --flows\n";
        result.status = exit_invalid_input;
        return result;
    }
    auto front = detail::run_frontend(cfg, err, result.status);
    if (!front) return result;
    auto flows = detail::run_flow_frontend(cfg, front->model, err, result.status);
    if (!flows) return result;

    LockPlan plan1 = initial_plan(front->model, &*flows);
    LockPlan plan2 = optimize(front->model, *flows);
    GenerationModel gm1 = build_generation_model(front->model, plan1, &*flows);
    GenerationModel gm2 = build_generation_model(front->model, plan2, &*flows);
    TemplateSet templates = detail::make_templates();

    auto user_hashes_before = detail::hash_dir(cfg.out_dir / "src_user");

    try {
        // Pass-1 output is rebuilt in memory so the line report can compare
        // the two passes regardless of what already sits on disk.
        EmittedFileSet pass1_files =
            merge(emit_scaffolding(gm1, front->model, templates),
                  emit_user_stubs(gm1, front->model, templates));
        EmittedFileSet pass2_gen = emit_scaffolding(gm2, front->model, templates);
        EmittedFileSet pass2_stubs_all = emit_user_stubs(gm2, front->model, templates);

        LineReport report =
            line_report(pass1_files, merge(pass2_gen, pass2_stubs_all), front->cdl_text);

        EmittedFileSet files = pass2_gen;
        for (const auto& [path, file] : emit_rtos_config(gm2, templates).files)
            files.files.emplace(path, file);
        files.add("gen/lines.tsv", report.to_tsv(), FileKind::Report);
        EmittedFileSet stubs = emit_user_stubs(
            gm2, front->model, templates, detail::existing_stub_paths(cfg, pass2_stubs_all));
        for (const auto& [path, file] : stubs.files) files.files.emplace(path, file);

        if (cfg.simulate) {
            SimProgram program = lower_to_sim(front->model, *flows, plan2);
            ExploreResult sim = explore(program, ExploreBounds{cfg.state_bound});
            files.add("gen/simreport.txt", sim_report_text(sim), FileKind::Report);
            if (!sim.races.empty() || !sim.deadlocks.empty()) {
                err << "simulation found " << sim.races.size() << " race(s), "
                    << sim.deadlocks.size() << " deadlock(s)\n";
                result.status = exit_unsound_plan;
            } else if (sim.inconclusive) {
                err << "warning: simulation inconclusive (state bound " << cfg.state_bound
                    << " exceeded)\n";
            }
        }

        if (!detail::write_files(cfg.out_dir, files, err)) {
            result.status = exit_io_error;
            return result;
        }

        auto user_hashes_after = detail::hash_dir(cfg.out_dir / "src_user");
        for (const auto& [path, hash] : user_hashes_before) {
            auto it = user_hashes_after.find(path);
            if (it == user_hashes_after.end() || it->second != hash) {
                err << "error: optimization modified user file " << path << "\n";
                result.status = exit_unsound_plan;
                return result;
            }
        }

        if (cfg.print_report) out << plan_report(front->model, plan2);
        result.files = std::move(files);
    } catch (const TemplateError& e) {
        err << "template error: " << e.what() << "\n";
        result.status = exit_invalid_input;
    }
    return result;
}

inline RunResult run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.mode == RunConfig::Mode::Pass1) return run_pass1(cfg, out, err);
    if (cfg.mode == RunConfig::Mode::Pass2) return run_pass2(cfg, out, err);
    RunResult first = run_pass1(cfg, out, err);
    if (first.status != exit_ok) return first;
    RunResult second = run_pass2(cfg, out, err);
    for (const auto& [path, file] : first.files.files)
        second.files.files.emplace(path, file);
    return second;
}

} // namespace tecsoe

#endif // TECSOE_DRIVER_HPP
