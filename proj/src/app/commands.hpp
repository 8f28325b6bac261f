#pragma once

#include "app/config.hpp"
#include "ffml/reference_data.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ffml::app {

inline constexpr int exit_ok = 0;
inline constexpr int exit_compare_failed = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_overflow = 3;
inline constexpr int exit_grid_mismatch = 4;

/// Lake trajectory for the configured grid, input and parameters.
[[nodiscard]] Trajectory<double> simulate_lake(const RunConfig& config, Scheme scheme, const FFOrder<double>& order);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, reference::TableId table, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_tables(const RunConfig& config, std::ostream& out);

/// Parses `args` (without the program name), dispatches, and maps failures
/// to exit statuses.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ffml::app
