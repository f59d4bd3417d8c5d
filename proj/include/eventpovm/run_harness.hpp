#pragma once

#include <string>
#include <vector>

#include "eventpovm/config.hpp"

namespace eventpovm {

struct TaskOutcome {
    std::string task;
    bool ok = false;
    std::string error;
    // file names relative to the output directory, in write order
    std::vector<std::string> outputs;
};

struct RunOutcome {
    std::vector<TaskOutcome> tasks;
    std::string report_path;
    bool any_error = false;
};

// Executes config.tasks in declared order, writing every artifact atomically
// into output_dir (created if missing) and finishing with run_report.json.
// threads_override >= 0 replaces config.run.threads; the resolved value 0
// means one worker per hardware thread. Task failures become structured
// entries, not exceptions.
RunOutcome run_config(const RunConfig& config, const std::string& output_dir,
                      int threads_override = -1);

}  // namespace eventpovm
