#pragma once

#include "ffml/core.hpp"
#include "ffml/schemes.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace ffml::lake {

/// Flow rates F_ji (mi^3/year) from lake i to lake j, volumes V_i (mi^3) and
/// initial pollutant loads L_i0.
struct LakeParams {
    double f21 = 18;
    double f31 = 20;
    double f32 = 18;
    double f13 = 38;
    double v1 = 2900;
    double v2 = 850;
    double v3 = 1180;
    double l10 = 0;
    double l20 = 0;
    double l30 = 0;

    /// Throws DomainError for non-positive volumes, negative flows or loads.
    void validate() const;

    /// One message per violated channel balance (F13 = F31 + F21, F21 = F32).
    [[nodiscard]] std::vector<std::string> flow_balance_warnings() const;

    [[nodiscard]] Eigen::Vector3d initial_state() const { return {l10, l20, l30}; }

    /// Matrix A with Q = A L + (c(s), 0, 0).
    [[nodiscard]] Eigen::Matrix3d exchange_matrix() const;
};

struct Linear {
    double mu = 100;
};

struct ExponentialDecay {
    double r = 200;
    double p = 10;
};

struct Periodic {
    double a = 1;
    double tau = 1;
    double b = 1;
};

struct Zero {};

/// Pollutant source c(s) entering lake 1.
class InputModel {
public:
    using Variant = std::variant<Linear, ExponentialDecay, Periodic, Zero>;

    InputModel() : model_(Zero{}) {}
    explicit InputModel(Variant model);

    [[nodiscard]] static InputModel linear(double mu) { return InputModel(Linear{mu}); }
    [[nodiscard]] static InputModel exponential_decay(double r, double p) { return InputModel(ExponentialDecay{r, p}); }
    [[nodiscard]] static InputModel periodic(double a, double tau, double b) { return InputModel(Periodic{a, tau, b}); }
    [[nodiscard]] static InputModel zero() { return InputModel(Zero{}); }

    [[nodiscard]] double operator()(double s) const;
    [[nodiscard]] const Variant& variant() const noexcept { return model_; }
    [[nodiscard]] std::string name() const;

private:
    Variant model_;
};

[[nodiscard]] inline double input_eval(const InputModel& model, double s) { return model(s); }

/// Right-hand side of the three-lake system.
[[nodiscard]] SystemRhs<double> lake_rhs(const LakeParams& params, const InputModel& input);

/// alpha = ((F31 + F21)/V1, F32/V2, F13/V3).
[[nodiscard]] std::array<double, 3> lipschitz_constants(const LakeParams& params);

/// Factor B multiplying each alpha_j in the sufficient uniqueness condition B alpha_j < 1.
[[nodiscard]] double uniqueness_bracket(const FFOrder<double>& order, double horizon);

/// a_Qj = B / (1 - B alpha_j) where B alpha_j < 1, absent otherwise.
[[nodiscard]] std::array<std::optional<double>, 3> ulam_hyers_constants(const FFOrder<double>& order, double horizon,
                                                                       const std::array<double, 3>& alphas);

struct AnalysisReport {
    std::array<double, 3> alphas{};
    double bracket = 0;
    std::array<bool, 3> uniqueness_ok{};
    std::array<std::optional<double>, 3> uh_constants;
};

[[nodiscard]] AnalysisReport analyze(const LakeParams& params, const FFOrder<double>& order, double horizon);

/// Multi-line human-readable rendering.
[[nodiscard]] std::string format_report(const AnalysisReport& report, double horizon);

} // namespace ffml::lake
