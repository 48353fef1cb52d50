#ifndef TECSOE_SIMCHECK_HPP
#define TECSOE_SIMCHECK_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tecsoe/callflow.hpp"
#include "tecsoe/component_model.hpp"
#include "tecsoe/lock_optimizer.hpp"

namespace tecsoe {

enum class StepKind { Acquire, Enter, Access, Exit, Release };

inline const char* to_string(StepKind k) {
    switch (k) {
        case StepKind::Acquire: return "acquire";
        case StepKind::Enter: return "enter";
        case StepKind::Access: return "access";
        case StepKind::Exit: return "exit";
        case StepKind::Release: return "release";
    }
    return "?";
}

struct Step {
    StepKind kind;
    int cell = -1;  // index into SimProgram::cells
    int lock = -1;  // index into SimProgram::locks, Acquire/Release only
};

struct TaskProgram {
    std::string name;
    int priority = 1;
    std::vector<Step> steps;
};

// Flattened per-task step lists. Semaphores and ceiling mutexes are both
// modeled as binary locks; priority is carried as metadata only, and races
// are checked over all interleavings, which over-approximates any fixed
// priority schedule.
struct SimProgram {
    std::vector<TaskProgram> tasks;
    std::vector<std::string> cells;
    std::vector<bool> vars_bearing;    // indexed like cells
    std::vector<std::string> locks;    // named after the cell each lock protects
};

struct TraceStep {
    int task;
    int step;  // index into that task's step list
};

using Trace = std::vector<TraceStep>;

struct Race {
    std::string cell;
    std::string task_a;  // already inside the cell
    std::string task_b;  // entering
    Trace witness;       // last element is task_b's Enter
};

struct Deadlock {
    std::vector<std::string> task_cycle;
    Trace witness;
};

struct OverheadReport {
    int total_acquires = 0;
    std::map<std::string, int> per_cell;
};

struct ExploreBounds {
    std::size_t max_states = 1000000;
};

struct ExploreResult {
    std::vector<Race> races;
    // Pairs that were ever inside the same vars-bearing cell at once, lock
    // protection ignored. Races are exactly the unprotected overlaps, so a
    // cell with no overlap at all cannot race under any plan.
    std::vector<Race> overlaps;
    std::vector<Deadlock> deadlocks;
    OverheadReport overhead;
    std::size_t states_visited = 0;
    std::uint64_t interleavings = 0;  // saturating
    bool inconclusive = false;        // state bound exceeded
};

// Each flow node becomes [Acquire] Enter [Access] children... Exit [Release];
// the lock steps are present only where the plan assigns a lock, so the
// critical section spans exactly the entry function's execution.
inline SimProgram lower_to_sim(const ComponentModel& model, const CallFlowSet& flows,
                               const LockPlan& plan) {
    SimProgram program;
    std::map<std::string, int> cell_index;
    for (const auto& [name, inst] : model.cells) {
        cell_index[name] = static_cast<int>(program.cells.size());
        program.cells.push_back(name);
        program.vars_bearing.push_back(inst.has_vars);
    }

    std::map<std::string, int> lock_index;
    for (const auto& name : plan.locked_cells()) {
        lock_index[name] = static_cast<int>(program.locks.size());
        program.locks.push_back(name);
    }

    for (const auto& task : flows.tasks) {
        TaskProgram tp;
        tp.name = task.name;
        tp.priority = task.priority;
        auto walk = [&](auto&& self, const FlowNode& node) -> void {
            int cell = cell_index.at(node.cell);
            auto lock_it = lock_index.find(node.cell);
            bool locked = lock_it != lock_index.end();
            if (locked) tp.steps.push_back({StepKind::Acquire, cell, lock_it->second});
            tp.steps.push_back({StepKind::Enter, cell, -1});
            if (program.vars_bearing[cell]) tp.steps.push_back({StepKind::Access, cell, -1});
            for (const auto& child : node.children) self(self, child);
            tp.steps.push_back({StepKind::Exit, cell, -1});
            if (locked) tp.steps.push_back({StepKind::Release, cell, lock_it->second});
        };
        for (const auto& root : task.roots) walk(walk, root);
        program.tasks.push_back(std::move(tp));
    }
    return program;
}

// Static count of Acquire steps; identical across interleavings.
inline OverheadReport count_lock_ops(const SimProgram& program) {
    OverheadReport report;
    for (const auto& task : program.tasks) {
        for (const auto& step : task.steps) {
            if (step.kind != StepKind::Acquire) continue;
            ++report.total_acquires;
            ++report.per_cell[program.cells[step.cell]];
        }
    }
    return report;
}

namespace detail {

class Explorer {
public:
    Explorer(const SimProgram& program, ExploreBounds bounds)
        : program_(program), bounds_(bounds) {
        if (program.locks.size() > 64)
            throw std::runtime_error("simulator supports at most 64 locks");
        std::size_t n = program.tasks.size();
        pcs_.assign(n, 0);
        held_.assign(n, 0);
        inside_.assign(n, std::vector<int>(program.cells.size(), 0));
        holder_.assign(program.locks.size(), -1);
    }

    ExploreResult run() {
        result_.interleavings = dfs();
        result_.states_visited = memo_.size();
        result_.overhead = count_lock_ops(program_);
        auto by_cell_and_pair = [](const Race& a, const Race& b) {
            if (a.cell != b.cell) return a.cell < b.cell;
            if (a.task_a != b.task_a) return a.task_a < b.task_a;
            return a.task_b < b.task_b;
        };
        std::sort(result_.races.begin(), result_.races.end(), by_cell_and_pair);
        std::sort(result_.overlaps.begin(), result_.overlaps.end(), by_cell_and_pair);
        return std::move(result_);
    }

private:
    // Returns the number of maximal schedules from the current state. States
    // are keyed by the pc vector alone: lock holders and inside-sets are
    // functions of the pcs.
    std::uint64_t dfs() {
        if (aborted_) return 0;

        std::string key(reinterpret_cast<const char*>(pcs_.data()),
                        pcs_.size() * sizeof(pcs_[0]));
        auto memo_it = memo_.find(key);
        if (memo_it != memo_.end()) return memo_it->second;
        if (memo_.size() >= bounds_.max_states) {
            result_.inconclusive = true;
            aborted_ = true;
            return 0;
        }
        memo_.emplace(key, 0);  // placeholder; pc sums strictly grow, no cycles

        bool all_done = true;
        bool any_enabled = false;
        std::uint64_t paths = 0;

        for (int t = 0; t < static_cast<int>(program_.tasks.size()); ++t) {
            const auto& steps = program_.tasks[t].steps;
            if (pcs_[t] >= steps.size()) continue;
            all_done = false;
            const Step& step = steps[pcs_[t]];
            if (step.kind == StepKind::Acquire && holder_[step.lock] != -1) continue;
            any_enabled = true;

            if (step.kind == StepKind::Enter) check_race(t, step);

            apply(t, step);
            trace_.push_back({t, static_cast<int>(pcs_[t]) - 1});
            paths = saturating_add(paths, dfs());
            trace_.pop_back();
            undo(t, step);
            if (aborted_) break;
        }

        if (all_done) paths = 1;
        if (!all_done && !any_enabled && !aborted_) {
            record_deadlock();
            paths = 1;  // a stuck schedule is still a maximal schedule
        }

        if (!aborted_) memo_[key] = paths;
        return paths;
    }

    void check_race(int entering, const Step& step) {
        if (!program_.vars_bearing[step.cell]) return;
        for (int other = 0; other < static_cast<int>(program_.tasks.size()); ++other) {
            if (other == entering || inside_[other][step.cell] == 0) continue;
            std::string cell = program_.cells[step.cell];
            std::string a = program_.tasks[other].name;
            std::string b = program_.tasks[entering].name;
            // One report per unordered task pair and cell.
            std::string key = cell + "\x1f" + std::min(a, b) + "\x1f" + std::max(a, b);
            if (overlap_seen_.insert(key).second) {
                Trace witness = trace_;
                witness.push_back({entering, static_cast<int>(pcs_[entering])});
                result_.overlaps.push_back({cell, a, b, std::move(witness)});
            }
            if ((held_[other] & held_[entering]) != 0) continue;  // common lock protects
            if (!race_seen_.insert(key).second) continue;
            Trace witness = trace_;
            witness.push_back({entering, static_cast<int>(pcs_[entering])});
            result_.races.push_back({cell, a, b, std::move(witness)});
        }
    }

    void record_deadlock() {
        // Every unfinished task is blocked on a lock whose holder is itself
        // unfinished, so following wait-for edges must revisit a task.
        int start = -1;
        for (int t = 0; t < static_cast<int>(program_.tasks.size()); ++t)
            if (pcs_[t] < program_.tasks[t].steps.size()) start = t;
        std::vector<int> order;
        std::vector<int> at(program_.tasks.size(), -1);
        int current = start;
        while (at[current] == -1) {
            at[current] = static_cast<int>(order.size());
            order.push_back(current);
            const Step& blocked_on = program_.tasks[current].steps[pcs_[current]];
            current = holder_[blocked_on.lock];
        }
        Deadlock deadlock;
        for (std::size_t i = at[current]; i < order.size(); ++i)
            deadlock.task_cycle.push_back(program_.tasks[order[i]].name);
        deadlock.witness = trace_;
        result_.deadlocks.push_back(std::move(deadlock));
    }

    void apply(int t, const Step& step) {
        switch (step.kind) {
            case StepKind::Acquire:
                holder_[step.lock] = t;
                held_[t] |= std::uint64_t{1} << step.lock;
                break;
            case StepKind::Release:
                holder_[step.lock] = -1;
                held_[t] &= ~(std::uint64_t{1} << step.lock);
                break;
            case StepKind::Enter: ++inside_[t][step.cell]; break;
            case StepKind::Exit: --inside_[t][step.cell]; break;
            case StepKind::Access: break;
        }
        ++pcs_[t];
    }

    void undo(int t, const Step& step) {
        --pcs_[t];
        switch (step.kind) {
            case StepKind::Acquire:
                holder_[step.lock] = -1;
                held_[t] &= ~(std::uint64_t{1} << step.lock);
                break;
            case StepKind::Release:
                holder_[step.lock] = t;
                held_[t] |= std::uint64_t{1} << step.lock;
                break;
            case StepKind::Enter: --inside_[t][step.cell]; break;
            case StepKind::Exit: ++inside_[t][step.cell]; break;
            case StepKind::Access: break;
        }
    }

    static std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
        return a > UINT64_MAX - b ? UINT64_MAX : a + b;
    }

    const SimProgram& program_;
    ExploreBounds bounds_;
    ExploreResult result_;
    std::vector<std::size_t> pcs_;
    std::vector<std::uint64_t> held_;
    std::vector<std::vector<int>> inside_;
    std::vector<int> holder_;
    Trace trace_;
    std::unordered_map<std::string, std::uint64_t> memo_;
    std::set<std::string> race_seen_;
    std::set<std::string> overlap_seen_;
    bool aborted_ = false;
};

} // namespace detail

// Depth-first enumeration of all interleavings with blocking Acquire and
// visited-state deduplication.
inline ExploreResult explore(const SimProgram& program, ExploreBounds bounds = {}) {
    return detail::Explorer(program, bounds).run();
}

// Re-executes a witness trace step by step. Returns false if the trace is not
// a legal schedule of the program.
inline bool replay_trace(const SimProgram& program, const Trace& trace,
                         std::vector<std::size_t>& pcs_out, std::vector<int>& holder_out) {
    std::vector<std::size_t> pcs(program.tasks.size(), 0);
    std::vector<int> holder(program.locks.size(), -1);
    for (const auto& ts : trace) {
        if (ts.task < 0 || ts.task >= static_cast<int>(program.tasks.size())) return false;
        const auto& steps = program.tasks[ts.task].steps;
        if (pcs[ts.task] >= steps.size() || static_cast<int>(pcs[ts.task]) != ts.step)
            return false;
        const Step& step = steps[ts.step];
        if (step.kind == StepKind::Acquire) {
            if (holder[step.lock] != -1) return false;
            holder[step.lock] = ts.task;
        } else if (step.kind == StepKind::Release) {
            if (holder[step.lock] != ts.task) return false;
            holder[step.lock] = -1;
        }
        ++pcs[ts.task];
    }
    pcs_out = std::move(pcs);
    holder_out = std::move(holder);
    return true;
}

// A race witness replays to a state where, at its final Enter, another task
// is inside the same cell with no common lock held.
inline bool replay_reproduces_race(const SimProgram& program, const Race& race) {
    if (race.witness.empty()) return false;
    Trace prefix(race.witness.begin(), race.witness.end() - 1);
    std::vector<std::size_t> pcs;
    std::vector<int> holder;
    if (!replay_trace(program, prefix, pcs, holder)) return false;

    auto held_of = [&](int task) {
        std::uint64_t held = 0;
        const auto& steps = program.tasks[task].steps;
        for (std::size_t i = 0; i < pcs[task]; ++i) {
            if (steps[i].kind == StepKind::Acquire) held |= std::uint64_t{1} << steps[i].lock;
            if (steps[i].kind == StepKind::Release) held &= ~(std::uint64_t{1} << steps[i].lock);
        }
        return held;
    };
    auto inside_cell = [&](int task, int cell) {
        int depth = 0;
        const auto& steps = program.tasks[task].steps;
        for (std::size_t i = 0; i < pcs[task]; ++i) {
            if (steps[i].kind == StepKind::Enter && steps[i].cell == cell) ++depth;
            if (steps[i].kind == StepKind::Exit && steps[i].cell == cell) --depth;
        }
        return depth > 0;
    };

    const TraceStep& last = race.witness.back();
    const auto& steps = program.tasks[last.task].steps;
    if (static_cast<int>(pcs[last.task]) != last.step) return false;
    const Step& enter = steps[last.step];
    if (enter.kind != StepKind::Enter || program.cells[enter.cell] != race.cell) return false;
    if (program.tasks[last.task].name != race.task_b) return false;

    for (int t = 0; t < static_cast<int>(program.tasks.size()); ++t) {
        if (program.tasks[t].name != race.task_a) continue;
        return inside_cell(t, enter.cell) && (held_of(t) & held_of(last.task)) == 0;
    }
    return false;
}

// A deadlock witness replays to a non-final state with no enabled step.
inline bool replay_reproduces_deadlock(const SimProgram& program, const Deadlock& deadlock) {
    std::vector<std::size_t> pcs;
    std::vector<int> holder;
    if (!replay_trace(program, deadlock.witness, pcs, holder)) return false;
    bool all_done = true;
    for (std::size_t t = 0; t < program.tasks.size(); ++t) {
        const auto& steps = program.tasks[t].steps;
        if (pcs[t] >= steps.size()) continue;
        all_done = false;
        const Step& step = steps[pcs[t]];
        if (step.kind != StepKind::Acquire || holder[step.lock] == -1) return false;
    }
    return !all_done;
}

inline std::string sim_report_text(const ExploreResult& result) {
    std::string out;
    out += "races\t" + std::to_string(result.races.size()) + "\n";
    out += "deadlocks\t" + std::to_string(result.deadlocks.size()) + "\n";
    out += "inconclusive\t" + std::string(result.inconclusive ? "yes" : "no") + "\n";
    out += "states_visited\t" + std::to_string(result.states_visited) + "\n";
    out += "acquire_total\t" + std::to_string(result.overhead.total_acquires) + "\n";
    for (const auto& [cell, n] : result.overhead.per_cell)
        out += "acquire\t" + cell + "\t" + std::to_string(n) + "\n";
    for (const auto& race : result.races)
        out += "race\t" + race.cell + "\t" + race.task_a + "\t" + race.task_b + "\n";
    for (const auto& deadlock : result.deadlocks) {
        out += "deadlock";
        for (const auto& task : deadlock.task_cycle) out += "\t" + task;
        out += "\n";
    }
    return out;
}

} // namespace tecsoe

#endif // TECSOE_SIMCHECK_HPP
