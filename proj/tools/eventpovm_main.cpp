#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "eventpovm/config.hpp"
#include "eventpovm/povm_core.hpp"
#include "eventpovm/report_io.hpp"
#include "eventpovm/run_harness.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

std::string resolve_output_dir(const eventpovm::RunConfig& config) {
    if (!config.output.directory.empty()) return config.output.directory;
    if (const char* env = std::getenv("EVENTPOVM_OUTPUT_DIR"); env && *env) return env;
    return "eventpovm_out";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covariant event localization toolkit"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads, 0 uses one per hardware thread");

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "execute the tasks in a config file");
    run_cmd->fallthrough();
    run_cmd->add_option("config", config_path, "run config path")->required();

    double jmax = 2.0;
    auto* check_cmd =
        app.add_subcommand("check-algebra", "scan the representation identities");
    check_cmd->fallthrough();
    check_cmd->add_option("--jmax", jmax, "largest spin in the scan")
        ->check(CLI::Range(0.0, 8.0));

    auto* version_cmd = app.add_subcommand("version", "print the tool version");

    CLI11_PARSE(app, argc, argv);

    try {
        if (version_cmd->parsed()) {
            std::cout << "eventpovm " << kVersion << "\n";
            return 0;
        }
        if (check_cmd->parsed()) {
            const int two_j_max = static_cast<int>(std::lround(2.0 * jmax));
            const auto scan = eventpovm::algebra_scan(two_j_max, 10);
            std::cout << eventpovm::algebra_scan_csv(scan);
            std::cout << (scan.passed() ? "pass" : "fail") << ": max residual "
                      << scan.max_residual << " against threshold " << scan.threshold
                      << " over " << scan.rep_count << " representations\n";
            return scan.passed() ? 0 : 1;
        }
        const eventpovm::RunConfig config = eventpovm::parse_config(config_path);
        const int override_threads = app.count("--threads") > 0 ? threads : -1;
        const eventpovm::RunOutcome outcome =
            eventpovm::run_config(config, resolve_output_dir(config), override_threads);
        for (const auto& task : outcome.tasks) {
            if (task.ok)
                std::cout << task.task << ": ok\n";
            else
                std::cout << task.task << ": error: " << task.error << "\n";
        }
        std::cout << "report: " << outcome.report_path << "\n";
        return outcome.any_error ? 1 : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
