#include "app/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace ffml::app {

namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::string lower(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
    return text;
}

double parse_number(const std::string& text, const std::string& key) {
    double value = 0;
    const auto* first = text.data();
    const auto* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw ConfigError("key '" + key + "': '" + text + "' is not a finite number");
    }
    return value;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

} // namespace

lake::InputModel InputSettings::build() const {
    const std::string m = lower(model);
    if (m == "linear") return lake::InputModel::linear(mu);
    if (m == "exp" || m == "exponential") {
        if (!(p > 0)) throw ConfigError("key 'input.p': exponential decay rate must be positive");
        return lake::InputModel::exponential_decay(r, p);
    }
    if (m == "periodic") return lake::InputModel::periodic(a, tau, b);
    if (m == "zero") return lake::InputModel::zero();
    throw ConfigError("key 'input.model': unknown input '" + model + "' (expected linear, exp, periodic or zero)");
}

std::vector<Scheme> RunConfig::schemes() const {
    switch (scheme) {
    case SchemeChoice::ABM: return {Scheme::ABM};
    case SchemeChoice::NPM: return {Scheme::NPM};
    case SchemeChoice::Both: return {Scheme::ABM, Scheme::NPM};
    }
    return {};
}

void RunConfig::validate() const {
    if (!(theta > 0 && theta <= 1)) throw ConfigError("key 'order.theta': must lie in (0, 1]");
    if (!(sigma > 0 && sigma <= 1)) throw ConfigError("key 'order.sigma': must lie in (0, 1]");
    if (!(step > 0)) throw ConfigError("key 'grid.step': must be positive");
    if (!(horizon >= step)) throw ConfigError("key 'grid.horizon': must be at least one step");
    if (!(tol >= 0)) throw ConfigError("key 'run.tol': must be non-negative");
    try {
        params.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("section 'params': ") + e.what());
    }
    (void)input.build();
    for (const auto& [t, s] : orders) {
        if (!(t > 0 && t <= 1) || !(s > 0 && s <= 1)) {
            throw ConfigError("key 'sweep.orders': every order must lie in (0, 1]");
        }
    }
}

SchemeChoice parse_scheme(const std::string& text) {
    const std::string t = lower(trim(text));
    if (t == "abm") return SchemeChoice::ABM;
    if (t == "npm") return SchemeChoice::NPM;
    if (t == "both") return SchemeChoice::Both;
    throw ConfigError("key 'scheme': unknown scheme '" + text + "' (expected abm, npm or both)");
}

Convention parse_convention(const std::string& text) {
    const std::string t = lower(trim(text));
    if (t == "published") return Convention::Published;
    if (t == "literal") return Convention::Literal;
    if (t == "bootstrapped") return Convention::Bootstrapped;
    throw ConfigError("key 'convention': unknown convention '" + text
                      + "' (expected published, literal or bootstrapped)");
}

std::set<Emit> parse_emit(const std::string& text) {
    std::set<Emit> emit;
    for (const auto& item : split_list(lower(text))) {
        if (item == "trajectory_csv") emit.insert(Emit::TrajectoryCsv);
        else if (item == "phase_csv") emit.insert(Emit::PhaseCsv);
        else if (item == "plotdata") emit.insert(Emit::Plotdata);
        else throw ConfigError("key 'emit': unknown artifact '" + item
                               + "' (expected trajectory_csv, phase_csv, plotdata)");
    }
    return emit;
}

std::vector<std::pair<double, double>> parse_orders(const std::string& text) {
    std::vector<std::pair<double, double>> orders;
    for (const auto& item : split_list(text)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            const double value = parse_number(item, "orders");
            orders.emplace_back(value, value);
        } else {
            orders.emplace_back(parse_number(trim(item.substr(0, colon)), "orders"),
                                parse_number(trim(item.substr(colon + 1)), "orders"));
        }
    }
    return orders;
}

void load_config_text(const std::string& text, const std::string& origin, RunConfig& config) {
    using Setter = void (*)(RunConfig&, const std::string&, const std::string&);
    static const std::map<std::string, Setter> setters = {
        {"order.theta", [](RunConfig& c, const std::string& v, const std::string& k) { c.theta = parse_number(v, k); }},
        {"order.sigma", [](RunConfig& c, const std::string& v, const std::string& k) { c.sigma = parse_number(v, k); }},
        {"grid.step", [](RunConfig& c, const std::string& v, const std::string& k) { c.step = parse_number(v, k); }},
        {"grid.horizon", [](RunConfig& c, const std::string& v, const std::string& k) { c.horizon = parse_number(v, k); }},
        {"params.f21", [](RunConfig& c, const std::string& v, const std::string& k) { c.params.f21 = parse_number(v, k); }},
        {"params.f31", [](RunConfig& c, const std::string& v, const std::string& k) { c.params.f31 = parse_number(v, k); }},
        {"params.f32", [](RunConfig& c, const std::string& v, const std::string& k) { c.params.f32 = parse_number(v, k); }},
        {"params.f13", [](RunConfig& c, const std::string& v, const std::string& k) { c.params.f13 = parse_number(v, k); }},
        {"params.v1", [](RunConfig& c, const std::string& v, const std::string& k) { c.params.v1 = parse_number(v, k); }},
        {"params.v2", [](RunConfig& c, const std::string& v, const std::string& k) { c.params.v2 = parse_number(v, k); }},
        {"params.v3", [](RunConfig& c, const std::string& v, const std::string& k) { c.params.v3 = parse_number(v, k); }},
        {"params.l10", [](RunConfig& c, const std::string& v, const std::string& k) { c.params.l10 = parse_number(v, k); }},
        {"params.l20", [](RunConfig& c, const std::string& v, const std::string& k) { c.params.l20 = parse_number(v, k); }},
        {"params.l30", [](RunConfig& c, const std::string& v, const std::string& k) { c.params.l30 = parse_number(v, k); }},
        {"input.model", [](RunConfig& c, const std::string& v, const std::string&) { c.input.model = lower(v); }},
        {"input.mu", [](RunConfig& c, const std::string& v, const std::string& k) { c.input.mu = parse_number(v, k); }},
        {"input.r", [](RunConfig& c, const std::string& v, const std::string& k) { c.input.r = parse_number(v, k); }},
        {"input.p", [](RunConfig& c, const std::string& v, const std::string& k) { c.input.p = parse_number(v, k); }},
        {"input.a", [](RunConfig& c, const std::string& v, const std::string& k) { c.input.a = parse_number(v, k); }},
        {"input.tau", [](RunConfig& c, const std::string& v, const std::string& k) { c.input.tau = parse_number(v, k); }},
        {"input.b", [](RunConfig& c, const std::string& v, const std::string& k) { c.input.b = parse_number(v, k); }},
        {"run.scheme", [](RunConfig& c, const std::string& v, const std::string&) { c.scheme = parse_scheme(v); }},
        {"run.convention", [](RunConfig& c, const std::string& v, const std::string&) { c.convention = parse_convention(v); }},
        {"run.out", [](RunConfig& c, const std::string& v, const std::string&) { c.output_dir = v; }},
        {"run.emit", [](RunConfig& c, const std::string& v, const std::string&) { c.emit = parse_emit(v); }},
        {"run.tol", [](RunConfig& c, const std::string& v, const std::string& k) { c.tol = parse_number(v, k); }},
        {"sweep.orders", [](RunConfig& c, const std::string& v, const std::string&) { c.orders = parse_orders(v); }},
    };

    std::istringstream in(text);
    std::string line;
    std::string section;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto where = origin + ":" + std::to_string(number) + ": ";
        const auto comment = line.find_first_of("#;");
        const std::string content = trim(comment == std::string::npos ? line : line.substr(0, comment));
        if (content.empty()) continue;
        if (content.front() == '[') {
            if (content.back() != ']') throw ConfigError(where + "unterminated section header '" + content + "'");
            section = lower(trim(content.substr(1, content.size() - 2)));
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected key = value, got '" + content + "'");
        const std::string key = lower(trim(content.substr(0, eq)));
        const std::string value = trim(content.substr(eq + 1));
        const std::string full = section.empty() ? key : section + "." + key;
        const auto setter = setters.find(full);
        if (setter == setters.end()) throw ConfigError(where + "unknown key '" + full + "'");
        try {
            setter->second(config, value, full);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
}

void load_config_file(const std::filesystem::path& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    load_config_text(buffer.str(), path.string(), config);
}

} // namespace ffml::app
