#ifndef TECSOE_LOCK_OPTIMIZER_HPP
#define TECSOE_LOCK_OPTIMIZER_HPP

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tecsoe/callflow.hpp"
#include "tecsoe/component_model.hpp"

namespace tecsoe {

struct LockKind {
    enum class Tag { NoLock, BinarySemaphore, CeilingMutex };

    Tag tag = Tag::NoLock;
    int ceiling = 0;  // meaningful for CeilingMutex only

    static LockKind none() { return {Tag::NoLock, 0}; }
    static LockKind semaphore() { return {Tag::BinarySemaphore, 0}; }
    static LockKind mutex(int ceiling) { return {Tag::CeilingMutex, ceiling}; }

    bool is_lock() const { return tag != Tag::NoLock; }

    std::string to_string() const {
        switch (tag) {
            case Tag::NoLock: return "none";
            case Tag::BinarySemaphore: return "semaphore";
            case Tag::CeilingMutex: return "mutex(ceiling=" + std::to_string(ceiling) + ")";
        }
        return "?";
    }
};

inline bool operator==(const LockKind& a, const LockKind& b) {
    return a.tag == b.tag && (a.tag != LockKind::Tag::CeilingMutex || a.ceiling == b.ceiling);
}

enum class LockReason { NoVars, SingleTask, ChainElided, Required };

struct CellLock {
    LockKind kind;
    LockReason reason = LockReason::NoVars;
    std::string chain_head;  // set iff reason == ChainElided

    std::string reason_string() const {
        switch (reason) {
            case LockReason::NoVars: return "no_vars";
            case LockReason::SingleTask: return "single_task";
            case LockReason::ChainElided: return "chain_elided(" + chain_head + ")";
            case LockReason::Required: return "required";
        }
        return "?";
    }
};

// How a celltype's lock field is represented in generated code. A direct
// handle has exactly one concrete type, so it requires a single lock kind
// shared by every cell of the celltype; ceilings may differ per cell.
struct DispatchMode {
    enum class Mode { FieldRemoved, DirectHandle, DynamicDispatch };

    Mode mode = Mode::FieldRemoved;
    LockKind::Tag handle = LockKind::Tag::NoLock;  // meaningful for DirectHandle

    std::string to_string() const {
        switch (mode) {
            case Mode::FieldRemoved: return "field_removed";
            case Mode::DirectHandle:
                return handle == LockKind::Tag::BinarySemaphore ? "direct(semaphore)"
                                                                : "direct(mutex)";
            case Mode::DynamicDispatch: return "dynamic";
        }
        return "?";
    }
};

inline bool operator==(const DispatchMode& a, const DispatchMode& b) {
    return a.mode == b.mode &&
           (a.mode != DispatchMode::Mode::DirectHandle || a.handle == b.handle);
}

struct LockPlan {
    std::map<std::string, CellLock> per_cell;
    std::map<std::string, DispatchMode> per_celltype;

    bool locked(const std::string& cell) const { return per_cell.at(cell).kind.is_lock(); }

    std::vector<std::string> locked_cells() const {
        std::vector<std::string> out;
        for (const auto& [name, lock] : per_cell)
            if (lock.kind.is_lock()) out.push_back(name);
        return out;
    }
};

// FieldRemoved iff every cell of the celltype is unlocked (vacuously true for
// an uninstantiated celltype); DirectHandle iff all cells carry the same lock
// kind; DynamicDispatch covers every mixed case.
inline std::map<std::string, DispatchMode> classify_celltypes(const ComponentModel& model,
                                                              const LockPlan& plan) {
    std::map<std::string, DispatchMode> modes;
    for (const auto& [ct_name, _] : model.celltypes) {
        bool any_locked = false;
        bool any_unlocked = false;
        bool mixed_kinds = false;
        LockKind::Tag tag = LockKind::Tag::NoLock;
        for (const auto& [cell_name, inst] : model.cells) {
            if (inst.celltype != ct_name) continue;
            const LockKind& kind = plan.per_cell.at(cell_name).kind;
            if (!kind.is_lock()) {
                any_unlocked = true;
            } else {
                if (any_locked && kind.tag != tag) mixed_kinds = true;
                any_locked = true;
                tag = kind.tag;
            }
        }
        DispatchMode mode;
        if (!any_locked)
            mode = {DispatchMode::Mode::FieldRemoved, LockKind::Tag::NoLock};
        else if (any_unlocked || mixed_kinds)
            mode = {DispatchMode::Mode::DynamicDispatch, LockKind::Tag::NoLock};
        else
            mode = {DispatchMode::Mode::DirectHandle, tag};
        modes.emplace(ct_name, mode);
    }
    return modes;
}

// Pass-1 plan: every cell with variables is locked with a ceiling mutex. The
// ceiling is the highest (numerically smallest) priority in the system, or 1
// when no call flows are available yet.
inline LockPlan initial_plan(const ComponentModel& model, const CallFlowSet* flows = nullptr) {
    int ceiling = 1;
    if (flows && !flows->tasks.empty()) {
        ceiling = flows->tasks.front().priority;
        for (const auto& task : flows->tasks) ceiling = std::min(ceiling, task.priority);
    }

    LockPlan plan;
    for (const auto& [name, inst] : model.cells) {
        CellLock lock;
        if (inst.has_vars) {
            lock.kind = LockKind::mutex(ceiling);
            lock.reason = LockReason::Required;
        } else {
            lock.kind = LockKind::none();
            lock.reason = LockReason::NoVars;
        }
        plan.per_cell.emplace(name, lock);
    }
    plan.per_celltype = classify_celltypes(model, plan);
    return plan;
}

// A cell needs exclusive control iff it has variables and at least two tasks
// reach it.
inline std::map<std::string, bool> necessity(const AccessMatrix& matrix,
                                             const ComponentModel& model) {
    std::map<std::string, bool> need;
    for (const auto& [name, inst] : model.cells)
        need[name] = inst.has_vars && matrix.tasks_of(name).size() >= 2;
    return need;
}

// Lock-kind rule: a priority-ceiling mutex when three or more tasks with at
// least two distinct priorities contend; a binary semaphore otherwise. The
// ceiling is the numerically smallest priority among the accessing tasks.
inline LockKind select_kind(const std::string& cell, const std::vector<TaskDef>& tasks) {
    (void)cell;
    assert(tasks.size() >= 2 && "select_kind requires a contended cell");
    std::set<int> priorities;
    int ceiling = tasks.front().priority;
    for (const auto& t : tasks) {
        priorities.insert(t.priority);
        ceiling = std::min(ceiling, t.priority);
    }
    if (tasks.size() >= 3 && priorities.size() >= 2) return LockKind::mutex(ceiling);
    return LockKind::semaphore();
}

namespace detail {

// Occurrence of a cell in some task's flow, with the set of cells on the path
// above it (exclusive).
struct Occurrence {
    std::string task;
    std::set<std::string> ancestors;
};

inline std::map<std::string, std::vector<Occurrence>> collect_occurrences(
    const CallFlowSet& flows) {
    std::map<std::string, std::vector<Occurrence>> occ;
    auto walk = [&](auto&& self, const FlowNode& node, const std::string& task,
                    std::set<std::string>& path) -> void {
        occ[node.cell].push_back({task, path});
        // A cell cannot appear nested under itself (joins are acyclic), so the
        // erase cannot drop an outer occurrence of the same cell.
        bool added = path.insert(node.cell).second;
        for (const auto& child : node.children) self(self, child, task, path);
        if (added) path.erase(node.cell);
    };
    for (const auto& task : flows.tasks) {
        for (const auto& root : task.roots) {
            std::set<std::string> path;
            walk(walk, root, task.name, path);
        }
    }
    return occ;
}

inline bool dominates(const std::string& head,
                      const std::vector<Occurrence>& member_occurrences) {
    if (member_occurrences.empty()) return false;
    for (const auto& o : member_occurrences)
        if (!o.ancestors.count(head)) return false;
    return true;
}

} // namespace detail

// Chain elision: a locked cell whose every invocation (in every task) is
// nested under invocations of one other locked cell is protected by that
// cell's guard already, so its own lock is removed. The retained head is the
// outermost dominator, i.e. the one not itself dominated by another candidate.
inline LockPlan elide_chains(const ComponentModel& model, const CallFlowSet& flows,
                             LockPlan plan) {
    (void)model;
    auto occurrences = detail::collect_occurrences(flows);

    std::vector<std::string> locked = plan.locked_cells();  // lexicographic

    std::map<std::string, std::vector<std::string>> dominators;
    for (const auto& member : locked) {
        for (const auto& head : locked) {
            if (head == member) continue;
            if (detail::dominates(head, occurrences[member]))
                dominators[member].push_back(head);
        }
    }

    for (const auto& member : locked) {
        const auto& cands = dominators[member];
        if (cands.empty()) continue;

        // Outermost = not dominated by any other candidate. Domination is
        // transitive, so an outermost candidate is itself undominated and
        // stays locked.
        std::string head;
        for (const auto& cand : cands) {
            bool inner = false;
            for (const auto& other : cands)
                if (other != cand && detail::dominates(other, occurrences[cand])) inner = true;
            if (!inner) {
                head = cand;
                break;  // candidates are in lexicographic order
            }
        }
        assert(!head.empty());
        assert(dominators[head].empty() && "chain head must remain locked");

        CellLock& lock = plan.per_cell.at(member);
        lock.kind = LockKind::none();
        lock.reason = LockReason::ChainElided;
        lock.chain_head = head;
    }
    return plan;
}

namespace detail {

inline std::vector<TaskDef> accessing_tasks(const AccessMatrix& matrix, const CallFlowSet& flows,
                                            const std::string& cell) {
    std::vector<TaskDef> out;
    for (const auto& task : flows.tasks)
        if (matrix.tasks_of(cell).count(task.name)) out.push_back(task);
    std::sort(out.begin(), out.end(),
              [](const TaskDef& a, const TaskDef& b) { return a.name < b.name; });
    return out;
}

} // namespace detail

// Pass-2 plan: necessity, then kind selection, then chain elision, then
// per-celltype dispatch classification.
inline LockPlan optimize(const ComponentModel& model, const CallFlowSet& flows) {
    AccessMatrix matrix = compute_access_matrix(model, flows);
    std::map<std::string, bool> need = necessity(matrix, model);

    LockPlan plan;
    for (const auto& [name, inst] : model.cells) {
        CellLock lock;
        if (need.at(name)) {
            lock.kind = select_kind(name, detail::accessing_tasks(matrix, flows, name));
            lock.reason = LockReason::Required;
        } else {
            lock.kind = LockKind::none();
            lock.reason = inst.has_vars ? LockReason::SingleTask : LockReason::NoVars;
        }
        plan.per_cell.emplace(name, lock);
    }

    plan = elide_chains(model, flows, std::move(plan));

    // Universal nesting implies the head's tasks cover the member's tasks.
    for (const auto& [name, lock] : plan.per_cell) {
        if (lock.reason != LockReason::ChainElided) continue;
        const auto& member_tasks = matrix.tasks_of(name);
        const auto& head_tasks = matrix.tasks_of(lock.chain_head);
        (void)member_tasks;
        (void)head_tasks;
        assert(std::includes(head_tasks.begin(), head_tasks.end(), member_tasks.begin(),
                             member_tasks.end()));
    }

    plan.per_celltype = classify_celltypes(model, plan);
    return plan;
}

// Diagnostic dump: one tab-separated line per cell.
inline std::string plan_report(const ComponentModel& model, const LockPlan& plan) {
    std::string out = "cell\tkind\treason\tcelltype_mode\n";
    for (const auto& [name, lock] : plan.per_cell) {
        const std::string& ct = model.cells.at(name).celltype;
        out += name + "\t" + lock.kind.to_string() + "\t" + lock.reason_string() + "\t" + ct +
               ":" + plan.per_celltype.at(ct).to_string() + "\n";
    }
    return out;
}

} // namespace tecsoe

#endif // TECSOE_LOCK_OPTIMIZER_HPP
