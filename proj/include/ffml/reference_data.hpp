#pragma once

#include "ffml/lake_model.hpp"
#include "ffml/schemes.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ffml::reference {

enum class TableId { Linear, Exponential, Periodic };
enum class Column { ABM, NPM };

inline constexpr std::array<TableId, 3> all_tables = {TableId::Linear, TableId::Exponential, TableId::Periodic};

struct TableRow {
    int s = 0;
    std::array<double, 3> abm{};
    std::array<double, 3> npm{};

    [[nodiscard]] const std::array<double, 3>& column(Column c) const { return c == Column::ABM ? abm : npm; }
};

struct TableMeta {
    double h = 0.1;
    double theta = 1;
    double sigma = 1;
    lake::InputModel input;
};

/// Published loads (L1, L2, L3) at s = 0..10 for both schemes.
struct ReferenceTable {
    TableId id = TableId::Linear;
    std::vector<TableRow> rows;
    TableMeta meta;
};

[[nodiscard]] const ReferenceTable& load_reference(TableId id);

[[nodiscard]] std::string table_name(TableId id);
[[nodiscard]] TableId parse_table_name(const std::string& name);
[[nodiscard]] std::string column_name(Column column);

struct Cell {
    int s = 0;
    int component = 0;
    double computed = 0;
    double reference = 0;
    double abs_dev = 0;  // computed - reference
    double rel_dev = 0;  // |abs_dev| / |reference|; NaN where excluded from the statistics
};

struct ComparisonReport {
    TableId table_id = TableId::Linear;
    Column column = Column::ABM;
    std::vector<Cell> cells;
    double max_rel_dev = 0;
    double tolerance = 0;
    bool pass = false;
};

/// Compares a trajectory at s = 0..10 against one scheme column of a table.
/// Throws GridMismatchError unless every integer time up to 10 is a grid node.
[[nodiscard]] ComparisonReport compare(const Trajectory<double>& traj, const ReferenceTable& ref, Column column,
                                       double tol_rel);

/// Writes `s,L1,L2,L3` with 6 fixed decimals and LF line endings.
void write_table_csv(std::ostream& out, const ReferenceTable& table, Column column);

/// `table1_linear_abm.csv` and the like.
[[nodiscard]] std::string table_csv_filename(TableId id, Column column);

/// One CSV per (table, column) pair in `dir`; returns the written paths.
std::vector<std::filesystem::path> export_tables(const std::filesystem::path& dir);

/// Writes per-cell deviations with a header row.
void write_report_csv(std::ostream& out, const std::vector<ComparisonReport>& reports);

} // namespace ffml::reference
