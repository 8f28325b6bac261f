#include "ffml/csv.hpp"
#include "ffml/lake_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace ffml;

namespace {

Trajectory<double> sample_run() {
    const auto rhs = lake::lake_rhs({}, lake::InputModel::periodic(1, 1, 1));
    return simulate_abm(rhs, Vector<double>(Eigen::Vector3d(1, 2, 3)), FFOrder<double>(0.9, 0.95),
                        GridSpec<double>(0.1, 6.0));
}

} // namespace

TEST(TrajectoryCsv, RoundTripToPrintedPrecision) {
    const auto traj = sample_run();
    std::stringstream buffer;
    csv::write_trajectory(buffer, traj);
    const auto table = csv::read_table(buffer);
    ASSERT_EQ(table.header, (std::vector<std::string>{"s", "L1", "L2", "L3"}));
    ASSERT_EQ(table.values.rows(), traj.node_count() + 1);
    for (Eigen::Index k = 0; k <= traj.node_count(); ++k) {
        EXPECT_NEAR(table.times[static_cast<std::size_t>(k)], traj.time(k), 1e-12 * (1 + traj.time(k)));
        for (Eigen::Index c = 0; c < 3; ++c) {
            const double v = traj.states()(k, c);
            EXPECT_NEAR(table.values(k, c), v, 5e-12 * std::abs(v));
        }
    }
}

TEST(TrajectoryCsv, SingleStepHasTwoRows) {
    const auto rhs = lake::lake_rhs({}, lake::InputModel::linear(100));
    const auto traj = simulate_abm(rhs, Vector<double>(Eigen::Vector3d::Zero()), FFOrder<double>(1, 1),
                                   GridSpec<double>(0.1, 0.1));
    std::stringstream buffer;
    csv::write_trajectory(buffer, traj);
    EXPECT_EQ(csv::read_table(buffer).values.rows(), 2);
}

TEST(TrajectoryCsv, RejectsMalformedInput) {
    std::stringstream bad_width("s,L1\n0,1,2\n");
    EXPECT_THROW((void)csv::read_table(bad_width), std::runtime_error);
    std::stringstream bad_number("s,L1\n0,abc\n");
    EXPECT_THROW((void)csv::read_table(bad_number), std::runtime_error);
    std::stringstream empty;
    EXPECT_THROW((void)csv::read_table(empty), std::runtime_error);
}

TEST(DeltaCsv, HoldsColumnDifferences) {
    const auto rhs = lake::lake_rhs({}, lake::InputModel::linear(100));
    const GridSpec<double> grid(0.5, 3.0);
    const Vector<double> init = Eigen::Vector3d::Zero();
    const auto a = simulate_abm(rhs, init, FFOrder<double>(1, 1), grid);
    const auto b = simulate_npm(rhs, init, FFOrder<double>(1, 1), grid);
    std::stringstream buffer;
    csv::write_delta(buffer, a, b);
    const auto table = csv::read_table(buffer);
    EXPECT_EQ(table.header[1], "dL1");
    for (Eigen::Index k = 0; k <= grid.node_count(); ++k) {
        const double expected = a.states()(k, 2) - b.states()(k, 2);
        EXPECT_NEAR(table.values(k, 2), expected, 1e-11 * (1 + std::abs(expected)));
    }
}

TEST(PlotData, GnuplotLayout) {
    const auto traj = sample_run();
    std::stringstream buffer;
    csv::write_plotdata(buffer, traj);
    std::string header;
    std::getline(buffer, header);
    EXPECT_EQ(header, "# s L1 L2 L3");
    std::string first;
    std::getline(buffer, first);
    EXPECT_EQ(first, "0 1 2 3");
}

TEST(PhasePortraits, WritesFourProjections) {
    const auto dir = std::filesystem::temp_directory_path() / "ffml_phase_test";
    std::filesystem::create_directories(dir);
    const auto paths = csv::write_phase_portraits(dir, "phase_abm", sample_run());
    ASSERT_EQ(paths.size(), 4U);
    EXPECT_EQ(paths[0].filename(), "phase_abm_L1_L2.csv");
    EXPECT_EQ(paths[3].filename(), "phase_abm_L1_L2_L3.csv");
    std::ifstream in(paths[1]);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "L1,L3");
    std::filesystem::remove_all(dir);
}
