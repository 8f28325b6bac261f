#include "app/commands.hpp"

#include "ffml/csv.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>

namespace ffml::app {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    return out;
}

std::filesystem::path prepare_output_dir(const RunConfig& config) {
    std::filesystem::path dir = config.output_dir.empty() ? std::filesystem::path(".") : config.output_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

void report_warnings(const RunConfig& config, std::ostream& err) {
    for (const auto& warning : config.params.flow_balance_warnings()) {
        err << "warning: " << warning << '\n';
    }
}

void emit_artifacts(const RunConfig& config, const std::filesystem::path& dir, const std::string& stem,
                    const Trajectory<double>& traj, std::ostream& out) {
    if (config.emit.contains(Emit::TrajectoryCsv)) {
        const auto path = dir / ("trajectory_" + stem + ".csv");
        auto file = open_output(path);
        csv::write_trajectory(file, traj);
        out << "wrote " << path.string() << '\n';
    }
    if (config.emit.contains(Emit::PhaseCsv)) {
        for (const auto& path : csv::write_phase_portraits(dir, "phase_" + stem, traj)) {
            out << "wrote " << path.string() << '\n';
        }
    }
    if (config.emit.contains(Emit::Plotdata)) {
        const auto path = dir / ("plot_" + stem + ".dat");
        auto file = open_output(path);
        csv::write_plotdata(file, traj);
        out << "wrote " << path.string() << '\n';
    }
}

/// Linear interpolation of component c at time s.
double sample(const Trajectory<double>& traj, double s, Eigen::Index c) {
    const double position = s / traj.grid().step();
    const auto below = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(position + 1e-9)),
                                              traj.node_count());
    const double fraction = std::max(0.0, position - double(below));
    if (below == traj.node_count() || fraction < 1e-9) return traj.states()(below, c);
    return (1 - fraction) * traj.states()(below, c) + fraction * traj.states()(below + 1, c);
}

std::string format_order_value(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%g", value);
    return buffer;
}

} // namespace

Trajectory<double> simulate_lake(const RunConfig& config, Scheme scheme, const FFOrder<double>& order) {
    const auto rhs = lake::lake_rhs(config.params, config.input.build());
    const Vector<double> init = config.params.initial_state();
    return simulate(scheme, rhs, init, order, config.grid(), {config.convention});
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    report_warnings(config, err);
    const auto dir = prepare_output_dir(config);
    const auto order = config.order();
    std::vector<Trajectory<double>> runs;
    for (const auto scheme : config.schemes()) {
        runs.push_back(simulate_lake(config, scheme, order));
        emit_artifacts(config, dir, std::string(to_string(scheme)), runs.back(), out);
    }
    if (runs.size() == 2) {
        const auto path = dir / "delta.csv";
        auto file = open_output(path);
        csv::write_delta(file, runs[0], runs[1]);
        out << "wrote " << path.string() << '\n';
    }
    out << lake::format_report(lake::analyze(config.params, order, config.horizon), config.horizon);
    return exit_ok;
}

int cmd_compare(const RunConfig& config, reference::TableId table, std::ostream& out, std::ostream& err) {
    report_warnings(config, err);
    const auto& ref = reference::load_reference(table);
    std::vector<reference::ComparisonReport> reports;
    for (const auto scheme : config.schemes()) {
        const auto traj = simulate_lake(config, scheme, config.order());
        const auto column = scheme == Scheme::ABM ? reference::Column::ABM : reference::Column::NPM;
        reports.push_back(reference::compare(traj, ref, column, config.tol));
    }
    const auto dir = prepare_output_dir(config);
    const auto path = dir / ("report_" + reference::table_name(table) + ".csv");
    auto file = open_output(path);
    reference::write_report_csv(file, reports);
    bool pass = true;
    for (const auto& report : reports) {
        char line[160];
        std::snprintf(line, sizeof line, "%s vs %s: max relative deviation %.3e (tolerance %.3e) %s\n",
                      reference::column_name(report.column).c_str(), reference::table_name(table).c_str(),
                      report.max_rel_dev, report.tolerance, report.pass ? "PASS" : "FAIL");
        out << line;
        pass = pass && report.pass;
    }
    out << "wrote " << path.string() << '\n';
    return pass ? exit_ok : exit_compare_failed;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.orders.empty()) throw ConfigError("key 'sweep.orders': the order list is empty");
    report_warnings(config, err);
    const auto dir = prepare_output_dir(config);

    auto orders = config.orders;
    std::stable_sort(orders.begin(), orders.end());
    struct Job {
        Scheme scheme;
        FFOrder<double> order;
        std::future<Trajectory<double>> result;
    };
    std::vector<Job> jobs;
    for (const auto scheme : config.schemes()) {
        for (const auto& [theta, sigma] : orders) {
            const FFOrder<double> order(theta, sigma);
            jobs.push_back({scheme, order, std::async(std::launch::async, [&config, scheme, order] {
                                return simulate_lake(config, scheme, order);
                            })});
        }
    }

    std::vector<double> sample_times;
    for (double s = 10; s <= config.horizon * (1 + 1e-12); s += 10) sample_times.push_back(s);

    const auto summary_path = dir / "sweep_summary.csv";
    auto summary = open_output(summary_path);
    summary << "scheme,theta,sigma";
    for (const double s : sample_times) {
        for (int c = 1; c <= 3; ++c) summary << ",L" << c << "_s" << format_order_value(s);
    }
    summary << '\n';
    for (auto& job : jobs) {
        const auto traj = job.result.get();
        const std::string stem = std::string(to_string(job.scheme)) + "_theta" + format_order_value(job.order.theta())
                               + "_sigma" + format_order_value(job.order.sigma());
        emit_artifacts(config, dir, stem, traj, out);
        summary << to_string(job.scheme) << ',' << format_order_value(job.order.theta()) << ','
                << format_order_value(job.order.sigma());
        char cell[32];
        for (const double s : sample_times) {
            for (Eigen::Index c = 0; c < 3; ++c) {
                std::snprintf(cell, sizeof cell, ",%.12g", sample(traj, s, c));
                summary << cell;
            }
        }
        summary << '\n';
    }
    out << "wrote " << summary_path.string() << '\n';
    return exit_ok;
}

int cmd_tables(const RunConfig& config, std::ostream& out) {
    const auto dir = prepare_output_dir(config);
    for (const auto& path : reference::export_tables(dir)) {
        out << "wrote " << path.string() << '\n';
    }
    for (const auto id : reference::all_tables) {
        for (const auto column : {reference::Column::ABM, reference::Column::NPM}) {
            out << "# " << reference::table_name(id) << ' ' << reference::column_name(column) << '\n';
            reference::write_table_csv(out, reference::load_reference(id), column);
        }
    }
    return exit_ok;
}

namespace {

struct Overrides {
    std::string config;
    std::optional<std::string> scheme, input, out, convention, emit, orders;
    std::optional<double> theta, sigma, step, horizon, tol;
    std::string table;
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "INI config file");
    cmd->add_option("--scheme", o.scheme, "abm | npm | both");
    cmd->add_option("--theta", o.theta, "fractional order in (0, 1]");
    cmd->add_option("--sigma", o.sigma, "fractal dimension in (0, 1]");
    cmd->add_option("--step", o.step, "grid step h");
    cmd->add_option("--horizon", o.horizon, "final time S");
    cmd->add_option("--input", o.input, "linear | exp | periodic | zero");
    cmd->add_option("--out", o.out, "output directory (falls back to FFML_OUT, then .)");
    cmd->add_option("--tol", o.tol, "relative tolerance for compare");
    cmd->add_option("--convention", o.convention, "published | literal | bootstrapped");
    cmd->add_option("--emit", o.emit, "comma list of trajectory_csv, phase_csv, plotdata");
}

RunConfig resolve(const Overrides& o) {
    RunConfig config;
    if (!o.config.empty()) load_config_file(o.config, config);
    if (o.scheme) config.scheme = parse_scheme(*o.scheme);
    if (o.convention) config.convention = parse_convention(*o.convention);
    if (o.emit) config.emit = parse_emit(*o.emit);
    if (o.orders) config.orders = parse_orders(*o.orders);
    if (o.input) config.input.model = *o.input;
    if (o.theta) config.theta = *o.theta;
    if (o.sigma) config.sigma = *o.sigma;
    if (o.step) config.step = *o.step;
    if (o.horizon) config.horizon = *o.horizon;
    if (o.tol) config.tol = *o.tol;
    if (o.out) {
        config.output_dir = *o.out;
    } else if (config.output_dir.empty()) {
        if (const char* env = std::getenv("FFML_OUT"); env && *env) config.output_dir = env;
    }
    config.validate();
    return config;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractal-fractional three-lake pollution solver", "ffml"};
    app.require_subcommand(1);
    Overrides o;
    auto* run = app.add_subcommand("run", "simulate and write trajectories");
    auto* compare = app.add_subcommand("compare", "compare against an embedded reference table");
    auto* sweep = app.add_subcommand("sweep", "simulate several orders in parallel");
    auto* tables = app.add_subcommand("tables", "export the embedded reference tables");
    for (auto* cmd : {run, compare, sweep, tables}) add_common(cmd, o);
    compare->add_option("--table", o.table, "linear | exponential | periodic")->required();
    sweep->add_option("--orders", o.orders, "comma list; 0.9 means theta = sigma = 0.9, 0.9:0.8 sets both");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    }

    try {
        const RunConfig config = resolve(o);
        if (run->parsed()) return cmd_run(config, out, err);
        if (compare->parsed()) return cmd_compare(config, reference::parse_table_name(o.table), out, err);
        if (sweep->parsed()) return cmd_sweep(config, out, err);
        return cmd_tables(config, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << '\n';
        return exit_overflow;
    } catch (const GridMismatchError& e) {
        err << "grid mismatch: " << e.what() << '\n';
        return exit_grid_mismatch;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    }
}

} // namespace ffml::app
