// tecsoe - component scaffolding generator with exclusive-control optimization.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tecsoe/driver.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tecsoe: generate component scaffolding, optimize exclusive control "
                 "from call flows, and emit the RTOS configuration"};

    std::string cdl_path;
    std::string flow_path;
    std::string out_dir = "out";
    std::string pass = "both";
    bool simulate = false;
    bool report = false;
    std::size_t state_bound = 1000000;

    app.add_option("--cdl", cdl_path, "component description file")->required();
    app.add_option("--flows", flow_path, "per-task call flow file (required for pass 2)");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--pass", pass, "1, 2, or both")
        ->check(CLI::IsMember({"1", "2", "both"}))
        ->capture_default_str();
    app.add_flag("--simulate", simulate,
                 "verify the optimized plan by exhaustive interleaving simulation");
    app.add_option("--state-bound", state_bound, "simulator state limit")
        ->capture_default_str();
    app.add_flag("--report", report, "print the lock plan to stdout");

    CLI11_PARSE(app, argc, argv);

    tecsoe::RunConfig cfg;
    cfg.cdl_path = cdl_path;
    if (!flow_path.empty()) cfg.flow_path = flow_path;
    cfg.out_dir = out_dir;
    cfg.mode = pass == "1" ? tecsoe::RunConfig::Mode::Pass1
             : pass == "2" ? tecsoe::RunConfig::Mode::Pass2
                           : tecsoe::RunConfig::Mode::Both;
    cfg.simulate = simulate;
    cfg.state_bound = state_bound;
    cfg.print_report = report;

    if (cfg.mode != tecsoe::RunConfig::Mode::Pass1 && !cfg.flow_path) {
        std::cerr << "error: --pass " << pass << " requires --flows\n";
        return tecsoe::exit_invalid_input;
    }

    return tecsoe::run(cfg, std::cout, std::cerr).status;
}
