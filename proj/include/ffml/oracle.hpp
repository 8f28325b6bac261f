#pragma once

// Slow reference evaluation of the fractal-fractional integral with the
// Mittag-Leffler kernel. Used to check the schemes, never by them.

#include "ffml/core.hpp"

#include <cmath>
#include <limits>
#include <span>

#include <Eigen/Core>

namespace ffml::oracle {

namespace detail {

/// Continued fraction for the incomplete beta function (modified Lentz).
template <typename Scalar>
Scalar beta_continued_fraction(Scalar a, Scalar b, Scalar x) {
    const Scalar tiny = std::numeric_limits<Scalar>::min() / std::numeric_limits<Scalar>::epsilon();
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    Scalar c = 1;
    Scalar d = 1 - (a + b) * x / (a + 1);
    if (std::abs(d) < tiny) d = tiny;
    d = 1 / d;
    Scalar result = d;
    for (int m = 1; m <= 500; ++m) {
        const Scalar mm = Scalar(m);
        Scalar num = mm * (b - mm) * x / ((a + 2 * mm - 1) * (a + 2 * mm));
        d = 1 + num * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1 + num / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1 / d;
        result *= d * c;
        num = -(a + mm) * (a + b + mm) * x / ((a + 2 * mm) * (a + 2 * mm + 1));
        d = 1 + num * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1 + num / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1 / d;
        const Scalar delta = d * c;
        result *= delta;
        if (std::abs(delta - 1) < eps) {
            return result;
        }
    }
    throw DomainError("incomplete beta continued fraction did not converge");
}

/// Lower and upper regularized incomplete beta I_x(a, b), 1 - I_x(a, b).
/// `xc` is 1 - x, passed separately so it can be formed without rounding.
template <typename Scalar>
struct BetaTails {
    Scalar lower;
    Scalar upper;
};

template <typename Scalar>
BetaTails<Scalar> incomplete_beta(Scalar a, Scalar b, Scalar x, Scalar xc) {
    if (x <= 0) return {0, 1};
    if (xc <= 0) return {1, 0};
    const Scalar log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(xc);
    const Scalar front = std::exp(log_front);
    if (x < (a + 1) / (a + b + 2)) {
        const Scalar lower = front * beta_continued_fraction(a, b, x) / a;
        return {lower, 1 - lower};
    }
    const Scalar upper = front * beta_continued_fraction(b, a, xc) / b;
    return {1 - upper, upper};
}

} // namespace detail

/// Regularized incomplete beta function I_x(a, b).
template <typename Scalar>
[[nodiscard]] Scalar regularized_incomplete_beta(Scalar a, Scalar b, Scalar x) {
    if (!(a > 0) || !(b > 0) || !(x >= 0 && x <= 1)) {
        throw DomainError("regularized_incomplete_beta: need a, b > 0 and x in [0, 1]");
    }
    return detail::incomplete_beta(a, b, x, 1 - x).lower;
}

/// Linear functional mapping samples f_0..f_k on the grid s_j = j * step to the
/// fractal-fractional integral at s_k. The kernel w^(sigma-1) (s_k - w)^(theta-1)
/// is integrated exactly against the piecewise-linear interpolant of f.
template <typename Scalar>
[[nodiscard]] Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ff_integral_weights(const FFOrder<Scalar>& order, Scalar step,
                                                                          Eigen::Index k) {
    if (k < 1) {
        throw DomainError("ff_integral_weights needs k >= 1");
    }
    if (!(step > 0) || !std::isfinite(step)) {
        throw DomainError("ff_integral_weights needs a positive finite step");
    }
    const Scalar theta = order.theta();
    const Scalar sigma = order.sigma();
    const Scalar ab = 1 - theta + theta / std::tgamma(theta);
    const Scalar s = Scalar(k) * step;
    const Scalar kk = Scalar(k);

    // Moment p on [s_j, s_{j+1}]: s^(sigma+theta-1+p) B(sigma+p, theta) (I(x_{j+1}) - I(x_j)).
    Eigen::Matrix<Scalar, Eigen::Dynamic, 2> moments(k, 2);
    for (int p = 0; p < 2; ++p) {
        const Scalar a = sigma + Scalar(p);
        const Scalar scale = std::pow(s, sigma + theta - 1 + Scalar(p))
                           * std::exp(std::lgamma(a) + std::lgamma(theta) - std::lgamma(a + theta));
        auto tails = [&](Eigen::Index j) {
            return detail::incomplete_beta(a, theta, Scalar(j) / kk, Scalar(k - j) / kk);
        };
        auto left = tails(0);
        for (Eigen::Index j = 0; j < k; ++j) {
            const auto right = tails(j + 1);
            const Scalar increment = (Scalar(j + 1) / kk <= Scalar(0.5)) ? right.lower - left.lower
                                                                        : left.upper - right.upper;
            moments(j, p) = scale * increment;
            left = right;
        }
    }

    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(k + 1);
    const Scalar prefactor = theta * sigma / (ab * std::tgamma(theta));
    for (Eigen::Index j = 0; j < k; ++j) {
        const Scalar sj = Scalar(j) * step;
        const Scalar m0 = moments(j, 0);
        const Scalar slope_part = (moments(j, 1) - sj * m0) / step;
        weights(j) += prefactor * (m0 - slope_part);
        weights(j + 1) += prefactor * slope_part;
    }
    weights(k) += (1 - theta) * sigma * std::pow(s, sigma - 1) / ab;
    return weights;
}

/// Fractal-fractional integral of the sampled function f at s_k.
template <typename Scalar>
[[nodiscard]] Scalar ff_integral_reference(std::span<const Scalar> f, const FFOrder<Scalar>& order, Scalar step,
                                           Eigen::Index k) {
    if (k < 1 || static_cast<Eigen::Index>(f.size()) < k + 1) {
        throw DomainError("ff_integral_reference needs samples f_0..f_k with k >= 1");
    }
    const auto weights = ff_integral_weights(order, step, k);
    const Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> samples(f.data(), k + 1);
    return weights.dot(samples);
}

} // namespace ffml::oracle
