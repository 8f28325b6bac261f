#include "ffml/reference_data.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

namespace ffml::reference {

namespace {

// s, ABM (L1, L2, L3), NPM (L1, L2, L3).
using RawRow = std::array<double, 7>;

constexpr std::array<RawRow, 11> linear_rows = {{
    {0, 0.000000, 0.000000, 0.000000, 0.000000, 0.000000, 0.000000},
    {1, 58.241762, 0.122200, 0.136038, 58.249029, 0.114027, 0.126944},
    {2, 216.569135, 0.912690, 1.018175, 216.603012, 0.891958, 0.995030},
    {3, 472.231987, 2.959673, 3.308340, 472.291839, 2.926723, 3.271438},
    {4, 824.018631, 6.830863, 7.650506, 824.103833, 6.786029, 7.600138},
    {5, 1270.753481, 13.074750, 14.671769, 1270.863423, 13.018359, 14.608218},
    {6, 1811.296055, 22.221220, 24.982726, 1811.430139, 22.153588, 24.906273},
    {7, 2444.539990, 34.782156, 39.177854, 2444.697632, 34.703595, 39.088774},
    {8, 3169.412094, 51.252025, 57.835881, 3169.592721, 51.162836, 57.734443},
    {9, 3984.871413, 72.108440, 81.520147, 3985.074465, 72.008917, 81.406618},
    {10, 4889.908324, 97.812711, 110.778966, 4890.133254, 97.703141, 110.653605},
}};

constexpr std::array<RawRow, 11> exponential_rows = {{
    {0, 0.000000, 0.000000, 0.000000, 0.000000, 0.000000, 0.000000},
    {1, 18.988642, 0.105437, 0.117578, 18.988592, 0.105145, 0.117021},
    {2, 18.748146, 0.219107, 0.245295, 18.752821, 0.216590, 0.242237},
    {3, 18.513934, 0.328934, 0.369679, 18.523194, 0.324269, 0.364185},
    {4, 18.286698, 0.435044, 0.490805, 18.300406, 0.428303, 0.482940},
    {5, 18.066244, 0.537556, 0.608748, 18.084267, 0.528808, 0.598573},
    {6, 17.852383, 0.636586, 0.723579, 17.874593, 0.625901, 0.711155},
    {7, 17.644931, 0.732247, 0.835369, 17.671201, 0.719691, 0.820757},
    {8, 17.443709, 0.824649, 0.944190, 17.473918, 0.810285, 0.927446},
    {9, 17.248540, 0.913898, 1.050109, 17.282570, 0.897787, 1.031291},
    {10, 17.059256, 1.000097, 1.153195, 17.096990, 0.982299, 1.132359},
}};

constexpr std::array<RawRow, 11> periodic_rows = {{
    {0, 0.000000, 0.000000, 0.000000, 0.000000, 0.000000, 0.000000},
    {1, 1.420794, 0.003639, 0.004053, 1.420289, 0.003637, 0.004052},
    {2, 3.352256, 0.018270, 0.020396, 3.349409, 0.017505, 0.019538},
    {3, 4.795526, 0.043383, 0.048562, 4.791798, 0.041836, 0.046821},
    {4, 5.304589, 0.073971, 0.083050, 5.303706, 0.071660, 0.080440},
    {5, 5.281611, 0.104988, 0.118274, 5.286096, 0.101974, 0.114856},
    {6, 5.607511, 0.135825, 0.153543, 5.616323, 0.132176, 0.149388},
    {7, 6.832362, 0.170701, 0.193553, 6.841809, 0.166454, 0.188698},
    {8, 8.669954, 0.214629, 0.243923, 8.677051, 0.209775, 0.238353},
    {9, 10.261233, 0.268650, 0.305891, 10.266407, 0.263162, 0.299573},
    {10, 10.964396, 0.328730, 0.375035, 10.971053, 0.322611, 0.367966},
}};

ReferenceTable build(TableId id, const std::array<RawRow, 11>& raw, double h, lake::InputModel input) {
    ReferenceTable table;
    table.id = id;
    table.meta = TableMeta{h, 1.0, 1.0, input};
    for (const auto& r : raw) {
        table.rows.push_back({static_cast<int>(r[0]), {r[1], r[2], r[3]}, {r[4], r[5], r[6]}});
    }
    return table;
}

} // namespace

const ReferenceTable& load_reference(TableId id) {
    static const ReferenceTable linear = build(TableId::Linear, linear_rows, 0.1, lake::InputModel::linear(100));
    static const ReferenceTable exponential =
        build(TableId::Exponential, exponential_rows, 0.01, lake::InputModel::exponential_decay(200, 10));
    static const ReferenceTable periodic =
        build(TableId::Periodic, periodic_rows, 0.1, lake::InputModel::periodic(1, 1, 1));
    switch (id) {
    case TableId::Linear: return linear;
    case TableId::Exponential: return exponential;
    case TableId::Periodic: return periodic;
    }
    return linear;
}

std::string table_name(TableId id) {
    switch (id) {
    case TableId::Linear: return "linear";
    case TableId::Exponential: return "exponential";
    case TableId::Periodic: return "periodic";
    }
    return "unknown";
}

TableId parse_table_name(const std::string& name) {
    if (name == "linear" || name == "1" || name == "table1") return TableId::Linear;
    if (name == "exponential" || name == "exp" || name == "2" || name == "table2") return TableId::Exponential;
    if (name == "periodic" || name == "3" || name == "table3") return TableId::Periodic;
    throw DomainError("unknown reference table '" + name + "' (expected linear, exponential or periodic)");
}

std::string column_name(Column column) { return column == Column::ABM ? "abm" : "npm"; }

ComparisonReport compare(const Trajectory<double>& traj, const ReferenceTable& ref, Column column, double tol_rel) {
    const double h = traj.grid().step();
    const double per_unit = 1.0 / h;
    const double stride_real = std::round(per_unit);
    if (stride_real < 1 || std::abs(per_unit - stride_real) > 1e-12 * per_unit) {
        throw GridMismatchError("grid step does not divide 1; integer times are not grid nodes");
    }
    const auto stride = static_cast<Eigen::Index>(stride_real);
    const int last_s = ref.rows.back().s;
    if (traj.node_count() < stride * last_s) {
        throw GridMismatchError("trajectory ends before s = " + std::to_string(last_s));
    }
    if (traj.dimension() != 3) {
        throw GridMismatchError("reference tables hold three components");
    }

    ComparisonReport report;
    report.table_id = ref.id;
    report.column = column;
    report.tolerance = tol_rel;
    for (const auto& row : ref.rows) {
        const auto& expected = row.column(column);
        for (int c = 0; c < 3; ++c) {
            Cell cell;
            cell.s = row.s;
            cell.component = c;
            cell.computed = traj.states()(stride * row.s, c);
            cell.reference = expected[static_cast<std::size_t>(c)];
            cell.abs_dev = cell.computed - cell.reference;
            cell.rel_dev = std::numeric_limits<double>::quiet_NaN();
            if (row.s > 0 && std::abs(cell.reference) > 1e-9) {
                cell.rel_dev = std::abs(cell.abs_dev) / std::abs(cell.reference);
                // NaN computed values must fail the comparison.
                if (!(cell.rel_dev <= report.max_rel_dev)) {
                    report.max_rel_dev = std::isnan(cell.rel_dev) ? std::numeric_limits<double>::infinity()
                                                                  : cell.rel_dev;
                }
            }
            report.cells.push_back(cell);
        }
    }
    report.pass = report.max_rel_dev <= tol_rel;
    return report;
}

void write_table_csv(std::ostream& out, const ReferenceTable& table, Column column) {
    out << "s,L1,L2,L3\n";
    char line[128];
    for (const auto& row : table.rows) {
        const auto& v = row.column(column);
        std::snprintf(line, sizeof line, "%d,%.6f,%.6f,%.6f\n", row.s, v[0], v[1], v[2]);
        out << line;
    }
}

std::string table_csv_filename(TableId id, Column column) {
    const int number = id == TableId::Linear ? 1 : id == TableId::Exponential ? 2 : 3;
    return "table" + std::to_string(number) + "_" + table_name(id) + "_" + column_name(column) + ".csv";
}

std::vector<std::filesystem::path> export_tables(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto id : all_tables) {
        for (const auto column : {Column::ABM, Column::NPM}) {
            const auto path = dir / table_csv_filename(id, column);
            std::ofstream out(path, std::ios::binary);
            if (!out) {
                throw std::runtime_error("cannot write " + path.string());
            }
            write_table_csv(out, load_reference(id), column);
            written.push_back(path);
        }
    }
    return written;
}

void write_report_csv(std::ostream& out, const std::vector<ComparisonReport>& reports) {
    out << "table,scheme,s,component,computed,reference,abs_dev,rel_dev\n";
    char line[256];
    for (const auto& report : reports) {
        for (const auto& cell : report.cells) {
            std::snprintf(line, sizeof line, "%s,%s,%d,L%d,%.12g,%.6f,%.6e,%.6e\n", table_name(report.table_id).c_str(),
                          column_name(report.column).c_str(), cell.s, cell.component + 1, cell.computed,
                          cell.reference, cell.abs_dev, cell.rel_dev);
            out << line;
        }
    }
}

} // namespace ffml::reference
