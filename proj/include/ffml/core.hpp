#pragma once

#include "ffml/errors.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Core>

namespace ffml {

/// Fractional order theta and fractal dimension sigma, both in (0, 1].
template <typename Scalar = double>
class FFOrder {
public:
    FFOrder(Scalar theta, Scalar sigma) : theta_(theta), sigma_(sigma) {
        if (!(theta > 0 && theta <= 1)) {
            throw DomainError("fractional order theta must lie in (0, 1], got " + std::to_string(double(theta)));
        }
        if (!(sigma > 0 && sigma <= 1)) {
            throw DomainError("fractal dimension sigma must lie in (0, 1], got " + std::to_string(double(sigma)));
        }
    }

    [[nodiscard]] Scalar theta() const noexcept { return theta_; }
    [[nodiscard]] Scalar sigma() const noexcept { return sigma_; }

    friend bool operator==(const FFOrder&, const FFOrder&) = default;

private:
    Scalar theta_;
    Scalar sigma_;
};

/// Uniform grid s_k = k * step on [0, horizon].
template <typename Scalar = double>
class GridSpec {
public:
    GridSpec(Scalar step, Scalar horizon) : step_(step), horizon_(horizon) {
        if (!(step > 0) || !std::isfinite(step)) {
            throw DomainError("grid step must be positive and finite");
        }
        if (!(horizon > 0) || !std::isfinite(horizon)) {
            throw DomainError("grid horizon must be positive and finite");
        }
        // The relative slack keeps 10/0.1 from flooring to 99.
        const Scalar ratio = horizon / step;
        const Scalar n = std::floor(ratio * (1 + 64 * std::numeric_limits<Scalar>::epsilon()));
        if (n < 1) {
            throw DomainError("grid horizon is shorter than one step");
        }
        if (n > Scalar(std::numeric_limits<int>::max() / 2)) {
            throw DomainError("grid has too many nodes");
        }
        node_count_ = static_cast<Eigen::Index>(n);
    }

    [[nodiscard]] Scalar step() const noexcept { return step_; }
    [[nodiscard]] Scalar horizon() const noexcept { return horizon_; }
    [[nodiscard]] Eigen::Index node_count() const noexcept { return node_count_; }
    [[nodiscard]] Scalar node(Eigen::Index k) const noexcept { return Scalar(k) * step_; }

    /// Same step, truncated to the first `nodes` steps.
    [[nodiscard]] GridSpec prefix(Eigen::Index nodes) const { return GridSpec(step_, Scalar(nodes) * step_); }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    Scalar step_;
    Scalar horizon_;
    Eigen::Index node_count_ = 0;
};

namespace detail {

inline constexpr std::array<double, 9> lanczos_coefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

template <typename Scalar>
Scalar lanczos_gamma(Scalar x) {
    if (x < Scalar(0.5)) {
        const Scalar pi = std::numbers::pi_v<Scalar>;
        return pi / (std::sin(pi * x) * lanczos_gamma(1 - x));
    }
    x -= 1;
    Scalar series = Scalar(lanczos_coefficients[0]);
    for (std::size_t i = 1; i < lanczos_coefficients.size(); ++i) {
        series += Scalar(lanczos_coefficients[i]) / (x + Scalar(i));
    }
    const Scalar t = x + Scalar(7.5);
    // t^(x+0.5) overflows near x = 171; split the power in two halves.
    const Scalar half_power = std::pow(t, (x + Scalar(0.5)) / 2);
    return std::sqrt(2 * std::numbers::pi_v<Scalar>) * half_power * (half_power * std::exp(-t)) * series;
}

} // namespace detail

/// Gamma function on (0, 171]. Positive integers return the exact factorial.
template <typename Scalar>
[[nodiscard]] Scalar gamma(Scalar x) {
    if (!(x > 0) || x > 171) {
        throw DomainError("gamma is defined here only on (0, 171]");
    }
    if (x == std::floor(x)) {
        Scalar factorial = 1;
        for (Scalar i = 2; i < x; i += 1) {
            factorial *= i;
        }
        return factorial;
    }
    return detail::lanczos_gamma(x);
}

/// Atangana-Baleanu normalization AB(theta) = 1 - theta + theta / Gamma(theta).
template <typename Scalar>
[[nodiscard]] Scalar ab_coefficient(Scalar theta) {
    if (!(theta > 0 && theta <= 1)) {
        throw DomainError("ab_coefficient requires theta in (0, 1]");
    }
    return 1 - theta + theta / gamma(theta);
}

/// x^p with 0^p = 0 for p > 0 and 0^0 = 1.
template <typename Scalar>
[[nodiscard]] Scalar power(Scalar x, Scalar p) {
    if (x == 0) {
        return p == 0 ? Scalar(1) : Scalar(0);
    }
    return std::pow(x, p);
}

/// Weight sigma * s^(sigma - 1) applied to a right-hand side sample at time s.
/// The singular value at s = 0 for sigma < 1 is replaced by 0.
template <typename Scalar>
[[nodiscard]] Scalar fractal_factor(Scalar s, Scalar sigma) {
    if (s == 0) {
        return sigma == 1 ? Scalar(1) : Scalar(0);
    }
    return sigma * std::pow(s, sigma - 1);
}

template <typename Scalar>
struct AbmWeights {
    Scalar y1;
    Scalar y2;
};

template <typename Scalar>
struct NpmWeights {
    Scalar psi1;
    Scalar psi2;
    Scalar psi3;
};

/// Two-point Lagrange history weights as a function of the lag m = k - l.
template <typename Scalar>
[[nodiscard]] AbmWeights<Scalar> abm_weights_at_lag(Eigen::Index lag, Scalar theta) {
    const Scalar m = Scalar(lag);
    const Scalar a = power(m + 1, theta);
    const Scalar b = power(m, theta);
    return {a * (m + 2 + theta) - b * (m + 2 + 2 * theta), a * (m + 1) - b * (m + 1 + theta)};
}

/// Three-point Newton history weights as a function of the lag m = k - l.
template <typename Scalar>
[[nodiscard]] NpmWeights<Scalar> npm_weights_at_lag(Eigen::Index lag, Scalar theta) {
    const Scalar m = Scalar(lag);
    const Scalar a = power(m + 1, theta);
    const Scalar b = power(m, theta);
    const Scalar t = theta;
    return {
        a - b,
        a * (m + 3 + 2 * t) - b * (m + 3 + 3 * t),
        a * (2 * m * m + (3 * t + 10) * m + 2 * t * t + 9 * t + 12)
            - b * (2 * m * m + (5 * t + 10) * m + 6 * t * t + 18 * t + 12),
    };
}

/// Weights Y1(k, l), Y2(k, l) for 1 <= l <= k.
template <typename Scalar>
[[nodiscard]] AbmWeights<Scalar> abm_weights(Eigen::Index k, Eigen::Index ell, Scalar theta) {
    if (ell < 1 || ell > k) {
        throw DomainError("abm_weights requires 1 <= l <= k");
    }
    if (!(theta > 0 && theta <= 1)) {
        throw DomainError("abm_weights requires theta in (0, 1]");
    }
    return abm_weights_at_lag(k - ell, theta);
}

/// Weights Psi1(k, l), Psi2(k, l), Psi3(k, l) for 2 <= l <= k.
template <typename Scalar>
[[nodiscard]] NpmWeights<Scalar> npm_weights(Eigen::Index k, Eigen::Index ell, Scalar theta) {
    if (ell < 2 || ell > k) {
        throw DomainError("npm_weights requires 2 <= l <= k");
    }
    if (!(theta > 0 && theta <= 1)) {
        throw DomainError("npm_weights requires theta in (0, 1]");
    }
    return npm_weights_at_lag(k - ell, theta);
}

} // namespace ffml
