// igdyn: experiment runner for the information-geometry library.
//   igdyn run <config>     run one scenario, print/write the report
//   igdyn sweep <list>     run every scenario in a list file in parallel
//   igdyn check            run the built-in verification suite

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "igdyn/acceptance.hpp"
#include "igdyn/scenario.hpp"

namespace {

int write_report(const std::string& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report;
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "error: cannot write report to " << out_path << "\n";
            return 2;
        }
        f << report;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"information-geometry experiment runner"};
    app.require_subcommand(1);

    std::string config_path, list_path, out_dir, report_path;
    int criterion = 0;

    CLI::App* run = app.add_subcommand("run", "run a single scenario config");
    run->add_option("config", config_path, "scenario config file")->required();
    run->add_option("--out-dir", out_dir, "directory for artifact files");
    run->add_option("--report", report_path, "write the JSON report here instead of stdout");

    CLI::App* sweep = app.add_subcommand("sweep", "run every scenario in a list file");
    sweep->add_option("list", list_path, "file with one scenario config path per line")->required();
    sweep->add_option("--out-dir", out_dir, "directory for artifact files");
    sweep->add_option("--report", report_path, "write the JSON report here instead of stdout");

    CLI::App* check = app.add_subcommand("check", "run the built-in verification suite");
    check->add_option("--criterion", criterion, "run a single criterion (1-10)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const igdyn::ScenarioResult result = igdyn::run_scenario_file(config_path, out_dir);
            const int rc = write_report(igdyn::emit_report({result}), report_path);
            if (rc != 0) return rc;
            return result.all_pass() ? 0 : 1;
        }
        if (sweep->parsed()) {
            const auto results = igdyn::run_sweep(list_path, out_dir);
            const int rc = write_report(igdyn::emit_report(results), report_path);
            if (rc != 0) return rc;
            for (const auto& r : results)
                if (!r.all_pass()) return 1;
            return 0;
        }
        // check
        std::vector<igdyn::CriterionResult> results;
        if (criterion > 0) {
            results.push_back(igdyn::run_criterion(criterion));
        } else {
            results = igdyn::run_all_criteria();
        }
        bool all = true;
        for (const auto& r : results) {
            std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.index,
                        r.title.c_str(), r.seconds, r.detail.empty() ? "" : " -- ",
                        r.detail.c_str());
            all = all && r.pass;
        }
        return all ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
