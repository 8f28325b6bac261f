#include "ffml/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ffml::csv {

namespace {

std::string number(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

} // namespace

void write_trajectory(std::ostream& out, const Trajectory<double>& traj) {
    out << 's';
    for (Eigen::Index c = 0; c < traj.dimension(); ++c) {
        out << ",L" << c + 1;
    }
    out << '\n';
    for (Eigen::Index k = 0; k <= traj.node_count(); ++k) {
        out << number(traj.time(k));
        for (Eigen::Index c = 0; c < traj.dimension(); ++c) {
            out << ',' << number(traj.states()(k, c));
        }
        out << '\n';
    }
}

void write_delta(std::ostream& out, const Trajectory<double>& a, const Trajectory<double>& b) {
    if (!(a.grid() == b.grid()) || a.dimension() != b.dimension()) {
        throw std::invalid_argument("delta needs trajectories on the same grid");
    }
    out << 's';
    for (Eigen::Index c = 0; c < a.dimension(); ++c) {
        out << ",dL" << c + 1;
    }
    out << '\n';
    const Matrix<double> diff = a.states() - b.states();
    for (Eigen::Index k = 0; k <= a.node_count(); ++k) {
        out << number(a.time(k));
        for (Eigen::Index c = 0; c < a.dimension(); ++c) {
            out << ',' << number(diff(k, c));
        }
        out << '\n';
    }
}

void write_plotdata(std::ostream& out, const Trajectory<double>& traj) {
    out << "# s";
    for (Eigen::Index c = 0; c < traj.dimension(); ++c) {
        out << " L" << c + 1;
    }
    out << '\n';
    for (Eigen::Index k = 0; k <= traj.node_count(); ++k) {
        out << number(traj.time(k));
        for (Eigen::Index c = 0; c < traj.dimension(); ++c) {
            out << ' ' << number(traj.states()(k, c));
        }
        out << '\n';
    }
}

Table read_table(std::istream& in) {
    Table table;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("CSV input is empty");
    }
    table.header = split(line);
    if (table.header.size() < 2) {
        throw std::runtime_error("CSV header needs a time column and at least one value column");
    }
    const auto width = static_cast<Eigen::Index>(table.header.size()) - 1;
    std::vector<double> flat;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != table.header.size()) {
            throw std::runtime_error("CSV row has " + std::to_string(fields.size()) + " fields, expected "
                                     + std::to_string(table.header.size()));
        }
        for (std::size_t i = 0; i < fields.size(); ++i) {
            double value = 0;
            const auto* first = fields[i].data();
            const auto* last = first + fields[i].size();
            const auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last) {
                throw std::runtime_error("CSV field '" + fields[i] + "' is not a number");
            }
            if (i == 0) {
                table.times.push_back(value);
            } else {
                flat.push_back(value);
            }
        }
    }
    const auto rows = static_cast<Eigen::Index>(table.times.size());
    table.values = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        flat.data(), rows, width);
    return table;
}

std::vector<std::filesystem::path> write_phase_portraits(const std::filesystem::path& dir, const std::string& stem,
                                                         const Trajectory<double>& traj) {
    if (traj.dimension() != 3) {
        throw std::invalid_argument("phase portraits are defined for three-lake trajectories");
    }
    const std::vector<std::vector<int>> projections = {{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
    std::vector<std::filesystem::path> written;
    for (const auto& columns : projections) {
        std::string suffix;
        std::string header;
        for (const int c : columns) {
            suffix += "_L" + std::to_string(c + 1);
            header += (header.empty() ? "L" : ",L") + std::to_string(c + 1);
        }
        const auto path = dir / (stem + suffix + ".csv");
        auto out = open_output(path);
        out << header << '\n';
        for (Eigen::Index k = 0; k <= traj.node_count(); ++k) {
            for (std::size_t i = 0; i < columns.size(); ++i) {
                out << (i ? "," : "") << number(traj.states()(k, columns[i]));
            }
            out << '\n';
        }
        written.push_back(path);
    }
    return written;
}

} // namespace ffml::csv
