#include "ffml/lake_model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ffml::lake {

void LakeParams::validate() const {
    if (!(v1 > 0) || !(v2 > 0) || !(v3 > 0)) {
        throw DomainError("lake volumes must be strictly positive");
    }
    if (!(f21 >= 0) || !(f31 >= 0) || !(f32 >= 0) || !(f13 >= 0)) {
        throw DomainError("flow rates must be non-negative");
    }
    if (!(l10 >= 0) || !(l20 >= 0) || !(l30 >= 0)) {
        throw DomainError("initial loads must be non-negative");
    }
}

std::vector<std::string> LakeParams::flow_balance_warnings() const {
    std::vector<std::string> warnings;
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1 + std::abs(a) + std::abs(b)); };
    if (!close(f13, f31 + f21)) {
        warnings.push_back("lake 1 is not flow-balanced: F13 != F31 + F21");
    }
    if (!close(f21, f32)) {
        warnings.push_back("lake 2 is not flow-balanced: F21 != F32");
    }
    return warnings;
}

Eigen::Matrix3d LakeParams::exchange_matrix() const {
    Eigen::Matrix3d a;
    a << -(f31 + f21) / v1, 0, f13 / v3,
          f21 / v1, -f32 / v2, 0,
          f31 / v1, f32 / v2, -f13 / v3;
    return a;
}

InputModel::InputModel(Variant model) : model_(model) {
    if (const auto* e = std::get_if<ExponentialDecay>(&model_); e && !(e->p > 0)) {
        throw DomainError("exponential decay rate p must be positive");
    }
}

double InputModel::operator()(double s) const {
    struct Visitor {
        double s;
        double operator()(const Linear& m) const { return m.mu * s; }
        double operator()(const ExponentialDecay& m) const { return m.r * std::exp(-m.p * s); }
        double operator()(const Periodic& m) const { return m.a + m.tau * std::sin(m.b * s); }
        double operator()(const Zero&) const { return 0.0; }
    };
    return std::visit(Visitor{s}, model_);
}

std::string InputModel::name() const {
    struct Visitor {
        std::string operator()(const Linear&) const { return "linear"; }
        std::string operator()(const ExponentialDecay&) const { return "exp"; }
        std::string operator()(const Periodic&) const { return "periodic"; }
        std::string operator()(const Zero&) const { return "zero"; }
    };
    return std::visit(Visitor{}, model_);
}

SystemRhs<double> lake_rhs(const LakeParams& params, const InputModel& input) {
    params.validate();
    const Eigen::Matrix3d a = params.exchange_matrix();
    return {3, [a, input](double s, const Vector<double>& state) -> Vector<double> {
                Vector<double> q = a * state;
                q(0) += input(s);
                return q;
            }};
}

std::array<double, 3> lipschitz_constants(const LakeParams& params) {
    params.validate();
    return {(params.f31 + params.f21) / params.v1, params.f32 / params.v2, params.f13 / params.v3};
}

double uniqueness_bracket(const FFOrder<double>& order, double horizon) {
    if (!(horizon > 0) || !std::isfinite(horizon)) {
        throw DomainError("uniqueness_bracket needs a positive finite horizon");
    }
    const double theta = order.theta();
    const double sigma = order.sigma();
    const double ab = ab_coefficient(theta);
    const double local = (1 - theta) * sigma * std::pow(horizon, sigma - 1) / ab;
    const double memory = theta * sigma * std::pow(horizon, theta + sigma - 1) * gamma(sigma) / (ab * gamma(theta + sigma));
    const double bracket = local + memory;
    if (!std::isfinite(bracket)) {
        throw DomainError("bracket diverges near 0");
    }
    return bracket;
}

std::array<std::optional<double>, 3> ulam_hyers_constants(const FFOrder<double>& order, double horizon,
                                                         const std::array<double, 3>& alphas) {
    const double bracket = uniqueness_bracket(order, horizon);
    std::array<std::optional<double>, 3> constants;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (!(alphas[j] >= 0)) {
            throw DomainError("Lipschitz constants must be non-negative");
        }
        const double product = bracket * alphas[j];
        if (product < 1) {
            constants[j] = bracket / (1 - product);
        }
    }
    return constants;
}

AnalysisReport analyze(const LakeParams& params, const FFOrder<double>& order, double horizon) {
    AnalysisReport report;
    report.alphas = lipschitz_constants(params);
    report.bracket = uniqueness_bracket(order, horizon);
    for (std::size_t j = 0; j < 3; ++j) {
        report.uniqueness_ok[j] = report.bracket * report.alphas[j] < 1;
    }
    report.uh_constants = ulam_hyers_constants(order, horizon, report.alphas);
    return report;
}

std::string format_report(const AnalysisReport& report, double horizon) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "uniqueness bracket B(S=%g) = %.6f\n", horizon, report.bracket);
    out << line;
    for (std::size_t j = 0; j < 3; ++j) {
        const double product = report.bracket * report.alphas[j];
        std::snprintf(line, sizeof line, "  lake %zu: alpha = %.7f  B*alpha = %.6f  %s", j + 1, report.alphas[j],
                      product, report.uniqueness_ok[j] ? "pass" : "fail");
        out << line;
        if (report.uh_constants[j]) {
            std::snprintf(line, sizeof line, "  Ulam-Hyers a_Q%zu = %.6f", j + 1, *report.uh_constants[j]);
            out << line;
        } else {
            out << "  Ulam-Hyers a_Q" << j + 1 << " undefined";
        }
        out << '\n';
    }
    return out.str();
}

} // namespace ffml::lake
