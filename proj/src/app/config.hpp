#pragma once

#include "ffml/lake_model.hpp"
#include "ffml/schemes.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ffml::app {

/// Invalid configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SchemeChoice { ABM, NPM, Both };
enum class Emit { TrajectoryCsv, PhaseCsv, Plotdata };

/// Parameters of every input family; `model` picks which ones apply.
struct InputSettings {
    std::string model = "linear";
    double mu = 100;
    double r = 200;
    double p = 10;
    double a = 1;
    double tau = 1;
    double b = 1;

    [[nodiscard]] lake::InputModel build() const;
};

struct RunConfig {
    SchemeChoice scheme = SchemeChoice::Both;
    Convention convention = Convention::Published;
    double theta = 1;
    double sigma = 1;
    double step = 0.1;
    double horizon = 10;
    lake::LakeParams params;
    InputSettings input;
    std::filesystem::path output_dir;
    std::set<Emit> emit = {Emit::TrajectoryCsv};
    double tol = 2e-3;
    std::vector<std::pair<double, double>> orders;

    [[nodiscard]] FFOrder<double> order() const { return {theta, sigma}; }
    [[nodiscard]] GridSpec<double> grid() const { return {step, horizon}; }
    [[nodiscard]] std::vector<Scheme> schemes() const;

    /// Throws ConfigError when any field is out of range.
    void validate() const;
};

/// Reads an INI-style file with sections [order], [grid], [params], [input],
/// [run] and [sweep] into `config`, overwriting only the keys it sets.
void load_config_file(const std::filesystem::path& path, RunConfig& config);

/// Same as load_config_file, from text; `origin` labels diagnostics.
void load_config_text(const std::string& text, const std::string& origin, RunConfig& config);

[[nodiscard]] SchemeChoice parse_scheme(const std::string& text);
[[nodiscard]] Convention parse_convention(const std::string& text);
[[nodiscard]] std::set<Emit> parse_emit(const std::string& text);

/// "0.85, 0.9" gives theta = sigma pairs; "0.9:0.8" gives (theta, sigma).
[[nodiscard]] std::vector<std::pair<double, double>> parse_orders(const std::string& text);

} // namespace ffml::app
