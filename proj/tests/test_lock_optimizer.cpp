#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include "tecsoe/callflow.hpp"
#include "tecsoe/cdl_parser.hpp"
#include "tecsoe/cdl_validate.hpp"
#include "tecsoe/component_model.hpp"
#include "tecsoe/lock_optimizer.hpp"

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

System load_demo(const char* flow_file = "demo.flows") {
    return load(testutil::fixture("demo.cdl"), testutil::fixture(flow_file));
}

TaskDef task(const std::string& name, int priority) {
    TaskDef t;
    t.name = name;
    t.priority = priority;
    return t;
}

} // namespace

TEST_CASE("initial plan locks every vars-bearing cell with a ceiling mutex") {
    System sys = load_demo();
    LockPlan plan = initial_plan(sys.model, &sys.flows);

    for (const char* cell : {"Sensor1", "Motor1", "Log1"}) {
        const CellLock& lock = plan.per_cell.at(cell);
        CHECK(lock.kind == LockKind::mutex(1));
        CHECK(lock.reason == LockReason::Required);
    }
    CHECK(plan.per_cell.at("Ctrl1").kind == LockKind::none());
    CHECK(plan.per_cell.at("Ctrl1").reason == LockReason::NoVars);

    CHECK(plan.per_celltype.at("tSensor") ==
          DispatchMode{DispatchMode::Mode::DirectHandle, LockKind::Tag::CeilingMutex});
    CHECK(plan.per_celltype.at("tCtrl").mode == DispatchMode::Mode::FieldRemoved);
}

TEST_CASE("initial plan without flows defaults the ceiling to 1") {
    System sys = load_demo();
    LockPlan plan = initial_plan(sys.model);
    CHECK(plan.per_cell.at("Sensor1").kind == LockKind::mutex(1));
}

TEST_CASE("initial plan on a model without vars locks nothing") {
    CdlAst ast = parse_cdl("celltype tA {};\ncell tA A1 {};\ncell tA A2 {};");
    ComponentModel model = build_model(ast);
    LockPlan plan = initial_plan(model);
    CHECK(plan.locked_cells().empty());
    CHECK(plan.per_celltype.at("tA").mode == DispatchMode::Mode::FieldRemoved);
}

TEST_CASE("necessity on the demo") {
    System sys = load_demo();
    AccessMatrix matrix = compute_access_matrix(sys.model, sys.flows);
    auto need = necessity(matrix, sys.model);
    CHECK(need.at("Sensor1"));
    CHECK_FALSE(need.at("Motor1"));
    CHECK_FALSE(need.at("Log1"));
    CHECK_FALSE(need.at("Ctrl1"));
}

TEST_CASE("necessity is false without vars or without contention") {
    // Unreached vars cell and a contended no-vars cell.
    System sys = load(
        "signature sS { void f(void); };\n"
        "celltype tV { entry sS eIn; var { int32 x = 0; }; };\n"
        "celltype tP { entry sS eIn; };\n"
        "cell tV V1 {};\ncell tP P1 {};",
        "task T1 priority 1 { P1.eIn.f; }\ntask T2 priority 2 { P1.eIn.f; }");
    AccessMatrix matrix = compute_access_matrix(sys.model, sys.flows);
    auto need = necessity(matrix, sys.model);
    CHECK_FALSE(need.at("V1"));  // vars, zero accesses
    CHECK_FALSE(need.at("P1"));  // two tasks, no state
}

TEST_CASE("select_kind rule table") {
    // Three tasks, distinct priorities: ceiling mutex at the highest priority.
    CHECK(select_kind("c", {task("T1", 1), task("T2", 2), task("T3", 3)}) == LockKind::mutex(1));
    // Two tasks: semaphore regardless of priorities.
    CHECK(select_kind("c", {task("Main", 1), task("Aux", 2)}) == LockKind::semaphore());
    // Three tasks, equal priorities: semaphore.
    CHECK(select_kind("c", {task("A", 5), task("B", 5), task("C", 5)}) == LockKind::semaphore());
    // Ceiling follows the smallest priority value.
    CHECK(select_kind("c", {task("A", 4), task("B", 2), task("C", 4)}) == LockKind::mutex(2));
}

TEST_CASE("chain fixture elides the wrapped filter") {
    System sys = load(testutil::fixture("chain.cdl"), testutil::fixture("chain.flows"));
    LockPlan plan = optimize(sys.model, sys.flows);

    const CellLock& head = plan.per_cell.at("Ctrl2");
    CHECK(head.kind == LockKind::semaphore());
    CHECK(head.reason == LockReason::Required);

    const CellLock& member = plan.per_cell.at("Filter1");
    CHECK(member.kind == LockKind::none());
    CHECK(member.reason == LockReason::ChainElided);
    CHECK(member.chain_head == "Ctrl2");
}

TEST_CASE("demo has no elision: Aux reaches Sensor1 at root level") {
    System sys = load_demo();
    LockPlan plan = optimize(sys.model, sys.flows);
    CHECK(plan.per_cell.at("Sensor1").kind == LockKind::semaphore());
    CHECK(plan.per_cell.at("Sensor1").reason == LockReason::Required);
}

TEST_CASE("a single unnested invocation defeats elision") {
    // Same as the chain fixture, but T2 also calls Filter1 directly.
    System sys = load(testutil::fixture("chain.cdl"),
                      "task T1 priority 1 { Ctrl2.eBody.run { Filter1.eF.apply; } }\n"
                      "task T2 priority 2 { Ctrl2.eBody.run { Filter1.eF.apply; }\n"
                      "                     Filter1.eF.apply; }");
    LockPlan plan = optimize(sys.model, sys.flows);
    CHECK(plan.per_cell.at("Filter1").kind == LockKind::semaphore());
    CHECK(plan.per_cell.at("Filter1").reason == LockReason::Required);
}

TEST_CASE("elision picks the outermost dominator of a three-deep chain") {
    System sys = load(
        "signature sS { void f(void); };\n"
        "celltype tA { entry sS eIn; call sS cOut; var { int32 x = 0; }; };\n"
        "celltype tB { entry sS eIn; call sS cOut; var { int32 x = 0; }; };\n"
        "celltype tC { entry sS eIn; var { int32 x = 0; }; };\n"
        "cell tA A1 { cOut = B1.eIn; };\n"
        "cell tB B1 { cOut = C1.eIn; };\n"
        "cell tC C1 {};",
        "task T1 priority 1 { A1.eIn.f { B1.eIn.f { C1.eIn.f; } } }\n"
        "task T2 priority 2 { A1.eIn.f { B1.eIn.f { C1.eIn.f; } } }");
    LockPlan plan = optimize(sys.model, sys.flows);

    CHECK(plan.per_cell.at("A1").kind == LockKind::semaphore());
    CHECK(plan.per_cell.at("B1").reason == LockReason::ChainElided);
    CHECK(plan.per_cell.at("B1").chain_head == "A1");
    CHECK(plan.per_cell.at("C1").reason == LockReason::ChainElided);
    CHECK(plan.per_cell.at("C1").chain_head == "A1");
}

TEST_CASE("optimize the demo") {
    System sys = load_demo();
    LockPlan plan = optimize(sys.model, sys.flows);

    CHECK(plan.per_cell.at("Sensor1").kind == LockKind::semaphore());
    CHECK(plan.per_cell.at("Motor1").kind == LockKind::none());
    CHECK(plan.per_cell.at("Motor1").reason == LockReason::SingleTask);
    CHECK(plan.per_cell.at("Log1").kind == LockKind::none());
    CHECK(plan.per_cell.at("Ctrl1").reason == LockReason::NoVars);

    CHECK(plan.per_celltype.at("tSensor") ==
          DispatchMode{DispatchMode::Mode::DirectHandle, LockKind::Tag::BinarySemaphore});
    CHECK(plan.per_celltype.at("tMotor").mode == DispatchMode::Mode::FieldRemoved);
    CHECK(plan.per_celltype.at("tLogger").mode == DispatchMode::Mode::FieldRemoved);
    CHECK(plan.per_celltype.at("tCtrl").mode == DispatchMode::Mode::FieldRemoved);
}

TEST_CASE("optimize demo3: three distinct priorities pick a ceiling mutex") {
    System sys = load_demo("demo3.flows");
    LockPlan plan = optimize(sys.model, sys.flows);
    CHECK(plan.per_cell.at("Sensor1").kind == LockKind::mutex(1));
}

TEST_CASE("single-task systems need no locks") {
    System sys = load(testutil::fixture("demo.cdl"),
                      "task Solo priority 1 {\n"
                      "  Ctrl1.eBody.run { Sensor1.eSensor.get_distance; "
                      "Motor1.eMotor.set_speed; }\n"
                      "  Log1.eLog.put;\n"
                      "}");
    LockPlan plan = optimize(sys.model, sys.flows);
    CHECK(plan.locked_cells().empty());
    for (const auto& [ct, mode] : plan.per_celltype)
        CHECK(mode.mode == DispatchMode::Mode::FieldRemoved);
}

TEST_CASE("mixed celltype becomes dynamic dispatch") {
    System sys = load(
        "signature sS { void f(void); };\n"
        "celltype tF { entry sS eIn; var { int32 x = 0; }; };\n"
        "cell tF F1 {};\ncell tF F2 {};",
        "task T1 priority 1 { F1.eIn.f; F2.eIn.f; }\ntask T2 priority 2 { F1.eIn.f; }");
    LockPlan plan = optimize(sys.model, sys.flows);
    CHECK(plan.per_cell.at("F1").kind == LockKind::semaphore());
    CHECK(plan.per_cell.at("F2").kind == LockKind::none());
    CHECK(plan.per_celltype.at("tF").mode == DispatchMode::Mode::DynamicDispatch);
}

TEST_CASE("two lock kinds in one celltype also force dynamic dispatch") {
    System sys = load(
        "signature sS { void f(void); };\n"
        "celltype tF { entry sS eIn; var { int32 x = 0; }; };\n"
        "cell tF F1 {};\ncell tF F2 {};",
        "task T1 priority 1 { F1.eIn.f; F2.eIn.f; }\n"
        "task T2 priority 2 { F1.eIn.f; F2.eIn.f; }\n"
        "task T3 priority 3 { F2.eIn.f; }");
    LockPlan plan = optimize(sys.model, sys.flows);
    CHECK(plan.per_cell.at("F1").kind == LockKind::semaphore());
    CHECK(plan.per_cell.at("F2").kind == LockKind::mutex(1));
    CHECK(plan.per_celltype.at("tF").mode == DispatchMode::Mode::DynamicDispatch);
}

TEST_CASE("optimized lock set is a subset of the initial lock set") {
    for (const char* flows : {"demo.flows", "demo3.flows"}) {
        System sys = load_demo(flows);
        LockPlan pass1 = initial_plan(sys.model, &sys.flows);
        LockPlan pass2 = optimize(sys.model, sys.flows);
        auto initial = pass1.locked_cells();
        for (const auto& cell : pass2.locked_cells()) {
            INFO(flows << ": " << cell);
            CHECK(std::find(initial.begin(), initial.end(), cell) != initial.end());
        }
    }
}

TEST_CASE("plan report format") {
    System sys = load_demo();
    LockPlan plan = optimize(sys.model, sys.flows);
    std::string report = plan_report(sys.model, plan);
    CHECK(report.find("Sensor1\tsemaphore\trequired\ttSensor:direct(semaphore)\n") !=
          std::string::npos);
    CHECK(report.find("Motor1\tnone\tsingle_task\ttMotor:field_removed\n") != std::string::npos);
}
