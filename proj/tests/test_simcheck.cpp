#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include "tecsoe/callflow.hpp"
#include "tecsoe/cdl_parser.hpp"
#include "tecsoe/cdl_validate.hpp"
#include "tecsoe/component_model.hpp"
#include "tecsoe/lock_optimizer.hpp"
#include "tecsoe/simcheck.hpp"

#include "support/test_util.hpp"

using namespace tecsoe;

namespace {

struct System {
    ComponentModel model;
    CallFlowSet flows;
};

System load(const std::string& cdl, const std::string& flow_text) {
    CdlAst ast = parse_cdl(cdl);
    REQUIRE(validate_ast(ast).empty());
    System sys{build_model(ast), {}};
    sys.flows = parse_callflow(flow_text, sys.model);
    return sys;
}

System load_demo() {
    return load(testutil::fixture("demo.cdl"), testutil::fixture("demo.flows"));
}

const TaskProgram& task_named(const SimProgram& program, const std::string& name) {
    for (const auto& t : program.tasks)
        if (t.name == name) return t;
    throw std::out_of_range(name);
}

int step_index(const TaskProgram& task, StepKind kind, int cell) {
    for (std::size_t i = 0; i < task.steps.size(); ++i)
        if (task.steps[i].kind == kind && task.steps[i].cell == cell)
            return static_cast<int>(i);
    return -1;
}

} // namespace

TEST_CASE("lowering the demo main task") {
    System sys = load_demo();
    LockPlan plan = optimize(sys.model, sys.flows);
    SimProgram program = lower_to_sim(sys.model, sys.flows, plan);

    const TaskProgram& main = task_named(program, "Main");
    std::vector<StepKind> kinds;
    for (const auto& s : main.steps) kinds.push_back(s.kind);
    CHECK(kinds == std::vector<StepKind>{
                       StepKind::Enter,                                      // Ctrl1
                       StepKind::Acquire, StepKind::Enter, StepKind::Access, // Sensor1
                       StepKind::Exit, StepKind::Release,
                       StepKind::Enter, StepKind::Access, StepKind::Exit,    // Motor1 (no lock)
                       StepKind::Exit,                                       // Ctrl1
                   });
}

TEST_CASE("elided cell accesses sit inside the head's critical section") {
    System sys = load(testutil::fixture("chain.cdl"), testutil::fixture("chain.flows"));
    LockPlan plan = optimize(sys.model, sys.flows);
    SimProgram program = lower_to_sim(sys.model, sys.flows, plan);

    REQUIRE(program.locks == std::vector<std::string>{"Ctrl2"});
    int ctrl2 = static_cast<int>(
        std::find(program.cells.begin(), program.cells.end(), "Ctrl2") - program.cells.begin());
    int filter1 = static_cast<int>(
        std::find(program.cells.begin(), program.cells.end(), "Filter1") - program.cells.begin());

    for (const auto& task : program.tasks) {
        int acquire = step_index(task, StepKind::Acquire, ctrl2);
        int access = step_index(task, StepKind::Access, filter1);
        int release = step_index(task, StepKind::Release, ctrl2);
        REQUIRE(acquire >= 0);
        REQUIRE(access >= 0);
        REQUIRE(release >= 0);
        CHECK(acquire < access);
        CHECK(access < release);
    }
}

TEST_CASE("optimized demo plan explores clean") {
    System sys = load_demo();
    LockPlan plan = optimize(sys.model, sys.flows);
    ExploreResult result = explore(lower_to_sim(sys.model, sys.flows, plan));
    CHECK(result.races.empty());
    CHECK(result.deadlocks.empty());
    CHECK_FALSE(result.inconclusive);
    CHECK(result.states_visited > 0);
}

TEST_CASE("removing the sensor lock produces a race with a replayable witness") {
    System sys = load_demo();
    LockPlan plan = optimize(sys.model, sys.flows);
    plan.per_cell.at("Sensor1").kind = LockKind::none();

    SimProgram program = lower_to_sim(sys.model, sys.flows, plan);
    ExploreResult result = explore(program);
    REQUIRE_FALSE(result.races.empty());
    for (const auto& race : result.races) {
        CHECK(race.cell == "Sensor1");
        CHECK(replay_reproduces_race(program, race));
    }
}

TEST_CASE("single-task program has exactly one interleaving") {
    System sys = load(testutil::fixture("demo.cdl"),
                      "task Solo priority 1 { Ctrl1.eBody.run { Sensor1.eSensor.get_distance; "
                      "Motor1.eMotor.set_speed; } }");
    LockPlan plan = optimize(sys.model, sys.flows);
    ExploreResult result = explore(lower_to_sim(sys.model, sys.flows, plan));
    CHECK(result.interleavings == 1);
    CHECK(result.races.empty());
    CHECK(result.deadlocks.empty());
}

TEST_CASE("two independent two-step tasks interleave fully") {
    SimProgram program;
    program.cells = {"C"};
    program.vars_bearing = {false};
    program.tasks.push_back({"T1", 1, {{StepKind::Enter, 0, -1}, {StepKind::Exit, 0, -1}}});
    program.tasks.push_back({"T2", 2, {{StepKind::Enter, 0, -1}, {StepKind::Exit, 0, -1}}});
    ExploreResult result = explore(program);
    CHECK(result.interleavings == 6);  // interleavings of two 2-step sequences: C(4,2)
    CHECK(result.races.empty());
}

TEST_CASE("opposite lock orders deadlock and the witness replays") {
    SimProgram program;
    program.cells = {"X", "Y"};
    program.vars_bearing = {true, true};
    program.locks = {"X", "Y"};
    program.tasks.push_back({"T1", 1,
                             {{StepKind::Acquire, 0, 0},
                              {StepKind::Acquire, 1, 1},
                              {StepKind::Release, 1, 1},
                              {StepKind::Release, 0, 0}}});
    program.tasks.push_back({"T2", 2,
                             {{StepKind::Acquire, 1, 1},
                              {StepKind::Acquire, 0, 0},
                              {StepKind::Release, 0, 0},
                              {StepKind::Release, 1, 1}}});
    ExploreResult result = explore(program);
    REQUIRE_FALSE(result.deadlocks.empty());
    const Deadlock& deadlock = result.deadlocks.front();
    CHECK(deadlock.task_cycle.size() == 2);
    CHECK(replay_reproduces_deadlock(program, deadlock));
}

TEST_CASE("distinct locks do not protect against each other") {
    SimProgram program;
    program.cells = {"C"};
    program.vars_bearing = {true};
    program.locks = {"L1", "L2"};
    for (int t = 0; t < 2; ++t) {
        program.tasks.push_back({"T" + std::to_string(t + 1), t + 1,
                                 {{StepKind::Acquire, 0, t},
                                  {StepKind::Enter, 0, -1},
                                  {StepKind::Access, 0, -1},
                                  {StepKind::Exit, 0, -1},
                                  {StepKind::Release, 0, t}}});
    }
    ExploreResult result = explore(program);
    REQUIRE(result.races.size() == 1);
    CHECK(replay_reproduces_race(program, result.races.front()));
}

TEST_CASE("overlap on a cell without vars is not a race") {
    SimProgram program;
    program.cells = {"C"};
    program.vars_bearing = {false};
    for (int t = 0; t < 2; ++t) {
        program.tasks.push_back({"T" + std::to_string(t + 1), t + 1,
                                 {{StepKind::Enter, 0, -1}, {StepKind::Exit, 0, -1}}});
    }
    CHECK(explore(program).races.empty());
}

TEST_CASE("count_lock_ops on the demo, both passes") {
    System sys = load_demo();

    LockPlan pass1 = initial_plan(sys.model, &sys.flows);
    OverheadReport before = count_lock_ops(lower_to_sim(sys.model, sys.flows, pass1));
    CHECK(before.total_acquires == 4);
    CHECK(before.per_cell.at("Sensor1") == 2);
    CHECK(before.per_cell.at("Motor1") == 1);
    CHECK(before.per_cell.at("Log1") == 1);

    LockPlan pass2 = optimize(sys.model, sys.flows);
    OverheadReport after = count_lock_ops(lower_to_sim(sys.model, sys.flows, pass2));
    CHECK(after.total_acquires == 2);
    CHECK(after.per_cell.at("Sensor1") == 2);
    CHECK(after.per_cell.count("Motor1") == 0);
}

TEST_CASE("a no-lock plan acquires nothing") {
    System sys = load(testutil::fixture("demo.cdl"),
                      "task Solo priority 1 { Log1.eLog.put; }");
    LockPlan plan = optimize(sys.model, sys.flows);
    CHECK(count_lock_ops(lower_to_sim(sys.model, sys.flows, plan)).total_acquires == 0);
}

TEST_CASE("tiny state bound reports inconclusive") {
    System sys = load_demo();
    LockPlan plan = optimize(sys.model, sys.flows);
    ExploreResult result = explore(lower_to_sim(sys.model, sys.flows, plan), ExploreBounds{3});
    CHECK(result.inconclusive);
}

TEST_CASE("sim report text layout") {
    System sys = load_demo();
    LockPlan plan = optimize(sys.model, sys.flows);
    ExploreResult result = explore(lower_to_sim(sys.model, sys.flows, plan));
    std::string text = sim_report_text(result);
    CHECK(text.find("races\t0\n") != std::string::npos);
    CHECK(text.find("deadlocks\t0\n") != std::string::npos);
    CHECK(text.find("acquire_total\t2\n") != std::string::npos);
    CHECK(text.find("acquire\tSensor1\t2\n") != std::string::npos);
}
