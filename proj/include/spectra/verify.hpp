#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spectra {

enum class CheckStatus {
    pass,
    fail,        // a mathematical claim did not hold
    incomplete,  // a search exhausted its budget before deciding
};

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;   // what was covered, or why it failed
    double seconds = 0.0;
};

struct VerifyConfig {
    int n_min = 3;
    int n_max = 7;
    std::vector<std::string> tasks;   // run exactly these; see verify_task_names()
    uint64_t seed = 42;
    double budget_seconds = 600.0;    // per search-backed task
};

// Every named check, in execution order.
std::vector<std::string> verify_task_names();

// Runs the configured tasks, each clipped to the n range where its claim is
// stated; a task whose range clips to nothing passes with a note.  An empty
// task list is a no-op.  Unknown names throw std::invalid_argument.
std::vector<CheckResult> run_verify(const VerifyConfig& config);

bool all_passed(const std::vector<CheckResult>& results);
bool any_incomplete(const std::vector<CheckResult>& results);

} // namespace spectra
