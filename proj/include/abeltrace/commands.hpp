#ifndef ABELTRACE_COMMANDS_HPP
#define ABELTRACE_COMMANDS_HPP

#include "abeltrace/problem_io.hpp"

#include <string>

namespace abeltrace {

/// Exit-code convention: 0 = the tested criterion holds, 2 = it fails (a
/// mathematically meaningful negative), 1 = operational error (bad file,
/// tracking breakdown, rank deficiency, ...).
struct CommandResult {
    int exit_code = 0;
    std::string report;
};

CommandResult cmd_trace_test(const std::string& path, const CliOverrides& over = {});
CommandResult cmd_interpolate(const std::string& path, const std::string& out_path,
                              const CliOverrides& over = {});
CommandResult cmd_class_check(const std::string& path, const CliOverrides& over = {});
CommandResult cmd_residue_check(const std::string& path);
CommandResult cmd_mixed_volume(const std::string& path);

} // namespace abeltrace

#endif
