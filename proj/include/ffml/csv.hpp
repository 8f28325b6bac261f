#pragma once

#include "ffml/schemes.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ffml::csv {

/// Header `s,L1,...,Ln`, 12 significant digits, one row per node.
void write_trajectory(std::ostream& out, const Trajectory<double>& traj);

/// Column-wise difference a - b on a shared grid, header `s,dL1,...`.
void write_delta(std::ostream& out, const Trajectory<double>& a, const Trajectory<double>& b);

/// gnuplot data: a comment header, then whitespace-separated `s L1 ... Ln`.
void write_plotdata(std::ostream& out, const Trajectory<double>& traj);

struct Table {
    std::vector<std::string> header;
    std::vector<double> times;
    Matrix<double> values;  // one row per data line, time column excluded
};

/// Parses a CSV with a header row and a leading time column.
[[nodiscard]] Table read_table(std::istream& in);

/// Phase-portrait files (L1,L2), (L1,L3), (L2,L3), (L1,L2,L3) named
/// `<stem>_L1_L2.csv` and so on. Returns the written paths.
std::vector<std::filesystem::path> write_phase_portraits(const std::filesystem::path& dir, const std::string& stem,
                                                         const Trajectory<double>& traj);

} // namespace ffml::csv
