#include "ffml/reference_data.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace ffml;
using namespace ffml::reference;

namespace {

/// Trajectory on h = 0.1 holding the table column at integer nodes, linear in between.
Trajectory<double> from_table(const ReferenceTable& table, Column column, double scale = 1.0) {
    const GridSpec<double> grid(0.1, 10.0);
    Matrix<double> states(grid.node_count() + 1, 3);
    for (Eigen::Index k = 0; k <= grid.node_count(); ++k) {
        const auto lo = static_cast<std::size_t>(k / 10);
        const auto hi = std::min<std::size_t>(lo + 1, 10);
        const double f = double(k % 10) / 10;
        for (int c = 0; c < 3; ++c) {
            const auto i = static_cast<std::size_t>(c);
            states(k, c) = scale * ((1 - f) * table.rows[lo].column(column)[i] + f * table.rows[hi].column(column)[i]);
        }
    }
    return {grid, states, FFOrder<double>(1, 1), column == Column::ABM ? Scheme::ABM : Scheme::NPM,
            Convention::Published};
}

} // namespace

TEST(LoadReference, SpotValues) {
    const auto& linear = load_reference(TableId::Linear);
    EXPECT_EQ(linear.rows[5].abm[0], 1270.753481);
    EXPECT_EQ(linear.rows[5].abm[1], 13.074750);
    EXPECT_EQ(linear.rows[5].abm[2], 14.671769);
    const auto& exponential = load_reference(TableId::Exponential);
    EXPECT_EQ(exponential.rows[10].npm[0], 17.096990);
    EXPECT_EQ(exponential.rows[10].npm[1], 0.982299);
    EXPECT_EQ(exponential.rows[10].npm[2], 1.132359);
    EXPECT_EQ(exponential.meta.h, 0.01);
    EXPECT_EQ(linear.meta.h, 0.1);
    EXPECT_EQ(load_reference(TableId::Periodic).meta.h, 0.1);
}

TEST(LoadReference, ShapeInvariants) {
    for (const auto id : all_tables) {
        const auto& table = load_reference(id);
        ASSERT_EQ(table.rows.size(), 11U);
        for (int s = 0; s <= 10; ++s) EXPECT_EQ(table.rows[static_cast<std::size_t>(s)].s, s);
        for (const double v : table.rows[0].abm) EXPECT_EQ(v, 0.0);
        for (const double v : table.rows[0].npm) EXPECT_EQ(v, 0.0);
        EXPECT_EQ(table.meta.theta, 1.0);
        EXPECT_EQ(table.meta.sigma, 1.0);
    }
    EXPECT_EQ(load_reference(TableId::Periodic).meta.input.name(), "periodic");
}

TEST(LoadReference, ColumnsAgreeWithinTenPercentFromTwoOn) {
    for (const auto id : all_tables) {
        const auto& table = load_reference(id);
        for (std::size_t s = 2; s <= 10; ++s) {
            for (std::size_t c = 0; c < 3; ++c) {
                const double a = table.rows[s].abm[c];
                const double n = table.rows[s].npm[c];
                EXPECT_LT(std::abs(a - n) / std::abs(a), 0.1) << table_name(id) << " s=" << s << " c=" << c;
            }
        }
    }
}

TEST(Compare, IdenticalTrajectoryPasses) {
    const auto& table = load_reference(TableId::Linear);
    const auto report = compare(from_table(table, Column::NPM), table, Column::NPM, 0.0);
    EXPECT_EQ(report.max_rel_dev, 0.0);
    EXPECT_TRUE(report.pass);
    EXPECT_EQ(report.cells.size(), 33U);
    EXPECT_TRUE(std::isnan(report.cells[0].rel_dev));
}

TEST(Compare, ScaledTrajectoryFails) {
    const auto& table = load_reference(TableId::Periodic);
    const auto report = compare(from_table(table, Column::ABM, 1.001), table, Column::ABM, 1e-4);
    EXPECT_FALSE(report.pass);
    EXPECT_NEAR(report.max_rel_dev, 1e-3, 1e-9);
}

TEST(Compare, SwappingRolesFlipsDeviationSigns) {
    const auto& table = load_reference(TableId::Exponential);
    const auto traj = from_table(table, Column::ABM);
    // Read the NPM column back through a trajectory, then compare in both directions.
    const auto forward = compare(traj, table, Column::NPM, 1.0);
    ReferenceTable swapped = table;
    const auto npm_traj = from_table(table, Column::NPM);
    for (auto& row : swapped.rows) row.npm = row.abm;
    const auto backward = compare(npm_traj, swapped, Column::NPM, 1.0);
    ASSERT_EQ(forward.cells.size(), backward.cells.size());
    for (std::size_t i = 0; i < forward.cells.size(); ++i) {
        EXPECT_NEAR(forward.cells[i].abs_dev, -backward.cells[i].abs_dev, 1e-12);
    }
}

TEST(Compare, NonFiniteValuesFail) {
    const auto& table = load_reference(TableId::Linear);
    auto traj = from_table(table, Column::ABM);
    Matrix<double> states = traj.states();
    states(50, 1) = std::nan("");
    const Trajectory<double> broken(traj.grid(), states, traj.order(), traj.scheme(), traj.convention());
    EXPECT_FALSE(compare(broken, table, Column::ABM, 1.0).pass);
}

TEST(Compare, GridMismatch) {
    const auto& table = load_reference(TableId::Linear);
    const Trajectory<double> short_run(GridSpec<double>(0.1, 5.0), Matrix<double>::Zero(51, 3), FFOrder<double>(1, 1),
                                       Scheme::ABM, Convention::Published);
    EXPECT_THROW((void)compare(short_run, table, Column::ABM, 1.0), GridMismatchError);
    const Trajectory<double> odd_step(GridSpec<double>(0.3, 12.0), Matrix<double>::Zero(41, 3), FFOrder<double>(1, 1),
                                      Scheme::ABM, Convention::Published);
    EXPECT_THROW((void)compare(odd_step, table, Column::ABM, 1.0), GridMismatchError);
}

TEST(TableCsv, FormatIsFixedSixDecimals) {
    std::ostringstream out;
    write_table_csv(out, load_reference(TableId::Linear), Column::ABM);
    const std::string text = out.str();
    EXPECT_EQ(text.rfind("s,L1,L2,L3\n0,0.000000,0.000000,0.000000\n1,58.241762,0.122200,0.136038\n", 0), 0U);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_EQ(table_csv_filename(TableId::Exponential, Column::NPM), "table2_exponential_npm.csv");
}

TEST(TableCsv, CheckedInFilesMatchEmbeddedTables) {
    for (const auto id : all_tables) {
        for (const auto column : {Column::ABM, Column::NPM}) {
            const auto path = std::filesystem::path(FFML_SOURCE_DIR) / "data" / "reference" / table_csv_filename(id, column);
            std::ifstream in(path, std::ios::binary);
            ASSERT_TRUE(in) << path;
            std::stringstream golden;
            golden << in.rdbuf();
            std::ostringstream fresh;
            write_table_csv(fresh, load_reference(id), column);
            EXPECT_EQ(golden.str(), fresh.str()) << path;
        }
    }
}

TEST(TableNames, ParseRoundTrip) {
    for (const auto id : all_tables) EXPECT_EQ(parse_table_name(table_name(id)), id);
    EXPECT_EQ(parse_table_name("exp"), TableId::Exponential);
    EXPECT_THROW((void)parse_table_name("quartic"), DomainError);
}
