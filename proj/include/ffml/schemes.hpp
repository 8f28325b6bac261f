#pragma once

#include "ffml/core.hpp"
#include "ffml/quadrature.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include <Eigen/Core>

namespace ffml {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class Scheme { ABM, NPM };

/// How the first steps and the history samples are placed.
enum class Convention {
    /// History sample j is taken at s_{j+1}; the first step integrates a ramp to
    /// the first sample, and NPM takes its second step with the ABM formula.
    /// This placement reproduces the published ABM tables.
    Published,
    /// Samples at s_k exactly as the schemes are written; leading intervals that
    /// the sums do not reach contribute nothing.
    Literal,
    /// Samples at s_k; leading intervals are integrated by a product trapezoid
    /// rule with a predictor-corrector for the unknown end value.
    Bootstrapped,
};

[[nodiscard]] constexpr std::string_view to_string(Scheme scheme) noexcept {
    return scheme == Scheme::ABM ? "abm" : "npm";
}

[[nodiscard]] constexpr std::string_view to_string(Convention convention) noexcept {
    switch (convention) {
    case Convention::Published: return "published";
    case Convention::Literal: return "literal";
    case Convention::Bootstrapped: return "bootstrapped";
    }
    return "unknown";
}

/// Right-hand side Q(s, K) of a system of dimension `dimension`.
template <typename Scalar = double>
struct SystemRhs {
    Eigen::Index dimension = 1;
    std::function<Vector<Scalar>(Scalar, const Vector<Scalar>&)> eval;
};

/// Grid plus one state row per node.
template <typename Scalar = double>
class Trajectory {
public:
    Trajectory(GridSpec<Scalar> grid, Matrix<Scalar> states, FFOrder<Scalar> order, Scheme scheme,
               Convention convention)
        : grid_(grid), states_(std::move(states)), order_(order), scheme_(scheme), convention_(convention) {}

    [[nodiscard]] const GridSpec<Scalar>& grid() const noexcept { return grid_; }
    [[nodiscard]] const Matrix<Scalar>& states() const noexcept { return states_; }
    [[nodiscard]] const FFOrder<Scalar>& order() const noexcept { return order_; }
    [[nodiscard]] Scheme scheme() const noexcept { return scheme_; }
    [[nodiscard]] Convention convention() const noexcept { return convention_; }

    [[nodiscard]] Eigen::Index node_count() const noexcept { return grid_.node_count(); }
    [[nodiscard]] Eigen::Index dimension() const noexcept { return states_.cols(); }
    [[nodiscard]] Scalar time(Eigen::Index k) const noexcept { return grid_.node(k); }
    [[nodiscard]] auto state(Eigen::Index k) const { return states_.row(k); }

private:
    GridSpec<Scalar> grid_;
    Matrix<Scalar> states_;
    FFOrder<Scalar> order_;
    Scheme scheme_;
    Convention convention_;
};

struct SchemeOptions {
    Convention convention = Convention::Published;
};

namespace detail {

template <typename Scalar>
class Stepper {
public:
    Stepper(const SystemRhs<Scalar>& rhs, const Vector<Scalar>& init, const FFOrder<Scalar>& order,
            const GridSpec<Scalar>& grid, Scheme scheme, Convention convention)
        : rhs_(rhs), init_(init), order_(order), grid_(grid), scheme_(scheme), convention_(convention) {
        if (rhs.dimension < 1 || !rhs.eval) {
            throw DomainError("right-hand side needs dimension >= 1 and a callable");
        }
        if (init.size() != rhs.dimension) {
            throw DomainError("initial state has dimension " + std::to_string(init.size()) + ", expected "
                              + std::to_string(rhs.dimension));
        }
        if (!init.allFinite()) {
            throw DomainError("initial state must be finite");
        }
        const Scalar theta = order.theta();
        h_ = grid.step();
        ab_ = ab_coefficient(theta);
        local_ = (1 - theta) / ab_;
        const Scalar h_theta = std::pow(h_, theta);
        abm_factor_ = theta * h_theta / (ab_ * gamma(theta + 2));
        kernel_factor_ = theta / (ab_ * gamma(theta));

        const Eigen::Index n = grid.node_count();
        abm_current_.resize(n);
        abm_previous_.resize(n);
        for (Eigen::Index m = 0; m < n; ++m) {
            const auto w = abm_weights_at_lag(m, theta);
            abm_current_(m) = abm_factor_ * w.y1;
            abm_previous_(m) = abm_factor_ * w.y2;
        }
        if (scheme == Scheme::NPM) {
            const Scalar c1 = theta * h_theta / (ab_ * gamma(theta + 1));
            const Scalar c2 = theta * h_theta / (ab_ * gamma(theta + 2));
            const Scalar c3 = theta * h_theta / (2 * ab_ * gamma(theta + 3));
            npm_a_.resize(n);
            npm_b_.resize(n);
            npm_c_.resize(n);
            for (Eigen::Index m = 0; m < n; ++m) {
                const auto w = npm_weights_at_lag(m, theta);
                npm_a_(m) = c1 * w.psi1 - c2 * w.psi2 + c3 * w.psi3;
                npm_b_(m) = c2 * w.psi2 - 2 * c3 * w.psi3;
                npm_c_(m) = c3 * w.psi3;
            }
        }
        if (convention == Convention::Bootstrapped) {
            const Scalar alpha = theta - 1;
            const Scalar beta = order.sigma() - 1;
            rules_[0] = gauss_jacobi<Scalar>(quadrature_points, 0, 0);
            rules_[1] = gauss_jacobi<Scalar>(quadrature_points, 0, beta);
            rules_[2] = gauss_jacobi<Scalar>(quadrature_points, alpha, 0);
            rules_[3] = gauss_jacobi<Scalar>(quadrature_points, alpha, beta);
        }
    }

    Trajectory<Scalar> run() {
        const Eigen::Index n = grid_.node_count();
        const Eigen::Index dim = rhs_.dimension;
        states_.resize(n + 1, dim);
        history_.resize(n, dim);
        states_.row(0) = init_.transpose();
        for (Eigen::Index k = 0; k < n; ++k) {
            const Scalar t = sample_time(k);
            const Vector<Scalar> q = evaluate(t, states_.row(k).transpose());
            if (k < static_cast<Eigen::Index>(raw_.size())) {
                raw_[static_cast<std::size_t>(k)] = q;
            }
            history_.row(k) = (fractal_factor(t, order_.sigma()) * q).transpose();
            Vector<Scalar> next = step(k);
            if (!next.allFinite()) {
                throw OverflowError("state became non-finite at node " + std::to_string(k + 1)
                                        + " (s = " + std::to_string(double(grid_.node(k + 1))) + ")",
                                    static_cast<std::size_t>(k + 1));
            }
            states_.row(k + 1) = next.transpose();
        }
        return Trajectory<Scalar>(grid_, std::move(states_), order_, scheme_, convention_);
    }

private:
    static constexpr Eigen::Index quadrature_points = 12;

    [[nodiscard]] Scalar sample_time(Eigen::Index k) const {
        return convention_ == Convention::Published ? grid_.node(k + 1) : grid_.node(k);
    }

    Vector<Scalar> evaluate(Scalar t, const Vector<Scalar>& state) const {
        Vector<Scalar> q = rhs_.eval(t, state);
        if (q.size() != rhs_.dimension) {
            throw DomainError("right-hand side returned a vector of the wrong dimension");
        }
        return q;
    }

    /// Sum over l = 1..k of Y1 Q*_l - Y2 Q*_{l-1}, prefactor included.
    [[nodiscard]] Vector<Scalar> abm_history(Eigen::Index k) const {
        return history_.middleRows(1, k).transpose() * abm_current_.head(k).reverse()
             - history_.topRows(k).transpose() * abm_previous_.head(k).reverse();
    }

    /// The three Newton sums over l = 2..k, prefactors included.
    [[nodiscard]] Vector<Scalar> npm_history(Eigen::Index k) const {
        const Eigen::Index n = k - 1;
        return history_.topRows(n).transpose() * npm_a_.head(n).reverse()
             + history_.middleRows(1, n).transpose() * npm_b_.head(n).reverse()
             + history_.middleRows(2, n).transpose() * npm_c_.head(n).reverse();
    }

    [[nodiscard]] Vector<Scalar> base(Eigen::Index k) const {
        return init_ + local_ * history_.row(k).transpose();
    }

    Vector<Scalar> step(Eigen::Index k) {
        switch (convention_) {
        case Convention::Published: return step_published(k);
        case Convention::Literal: return step_literal(k);
        case Convention::Bootstrapped: return step_bootstrapped(k);
        }
        return {};
    }

    Vector<Scalar> step_literal(Eigen::Index k) const {
        Vector<Scalar> next = base(k);
        if (scheme_ == Scheme::ABM && k >= 1) next += abm_history(k);
        if (scheme_ == Scheme::NPM && k >= 2) next += npm_history(k);
        return next;
    }

    Vector<Scalar> step_published(Eigen::Index k) const {
        Vector<Scalar> next = base(k);
        if (k == 0) {
            next += abm_factor_ * history_.row(0).transpose();
        } else if (scheme_ == Scheme::ABM || k == 1) {
            next += abm_history(k);
        } else {
            next += npm_history(k);
        }
        return next;
    }

    /// Product trapezoid weights of interval [s_j, s_{j+1}] for the integral at
    /// s_target: integral of (s_target - w)^(theta-1) sigma w^(sigma-1) times the
    /// two hat functions, kernel prefactor included.
    [[nodiscard]] std::pair<Scalar, Scalar> interval_weights(Eigen::Index target, Eigen::Index j) const {
        const bool singular_left = (j == 0) && order_.sigma() < 1;
        const bool singular_right = (target == j + 1) && order_.theta() < 1;
        const auto& rule = rules_[(singular_right ? 2 : 0) + (singular_left ? 1 : 0)];
        const Scalar theta = order_.theta();
        const Scalar sigma = order_.sigma();
        const Scalar a = grid_.node(j);
        const Scalar s = grid_.node(target);
        const Scalar exponent = (singular_right ? theta - 1 : 0) + (singular_left ? sigma - 1 : 0) + 1;
        const Scalar scale = std::pow(h_ / 2, exponent);
        Scalar left = 0;
        Scalar right = 0;
        for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
            const Scalar u = (1 + rule.nodes(i)) / 2;
            const Scalar w = a + u * h_;
            Scalar g = sigma * rule.weights(i);
            if (!singular_right) g *= std::pow(s - w, theta - 1);
            if (!singular_left) g *= std::pow(w, sigma - 1);
            left += g * (1 - u);
            right += g * u;
        }
        return {kernel_factor_ * scale * left, kernel_factor_ * scale * right};
    }

    /// Contribution of the intervals [s_0, s_1], ..., [s_{count-1}, s_count] to the
    /// integral at s_target, using raw samples Q_0..Q_count.
    [[nodiscard]] Vector<Scalar> leading_intervals(Eigen::Index target, Eigen::Index count,
                                                   const Vector<Scalar>& last) const {
        Vector<Scalar> sum = Vector<Scalar>::Zero(rhs_.dimension);
        for (Eigen::Index j = 0; j < count; ++j) {
            const auto [wl, wr] = interval_weights(target, j);
            const Vector<Scalar>& qr = (j + 1 == count) ? last : raw_[static_cast<std::size_t>(j + 1)];
            sum += wl * raw_[static_cast<std::size_t>(j)] + wr * qr;
        }
        return sum;
    }

    Vector<Scalar> step_bootstrapped(Eigen::Index k) const {
        const Eigen::Index lead = scheme_ == Scheme::ABM ? 1 : 2;
        const Vector<Scalar> fixed = base(k);
        if (k == 0) {
            const Vector<Scalar> predicted = fixed + leading_intervals(1, 1, raw_[0]);
            return fixed + leading_intervals(1, 1, evaluate(grid_.node(1), predicted));
        }
        if (k == 1 && lead == 2) {
            const Vector<Scalar> predicted = fixed + leading_intervals(2, 1, raw_[1]) + abm_history(1);
            return fixed + leading_intervals(2, 2, evaluate(grid_.node(2), predicted));
        }
        Vector<Scalar> next = fixed + leading_intervals(k + 1, lead, raw_[static_cast<std::size_t>(lead)]);
        next += (lead == 1) ? abm_history(k) : npm_history(k);
        return next;
    }

    const SystemRhs<Scalar>& rhs_;
    Vector<Scalar> init_;
    FFOrder<Scalar> order_;
    GridSpec<Scalar> grid_;
    Scheme scheme_;
    Convention convention_;

    Scalar h_ = 0;
    Scalar ab_ = 1;
    Scalar local_ = 0;
    Scalar abm_factor_ = 0;
    Scalar kernel_factor_ = 0;
    Vector<Scalar> abm_current_, abm_previous_;
    Vector<Scalar> npm_a_, npm_b_, npm_c_;
    std::array<QuadratureRule<Scalar>, 4> rules_;
    std::array<Vector<Scalar>, 3> raw_;

    Matrix<Scalar> states_;
    Matrix<Scalar> history_;
};

} // namespace detail

/// Adams-Bashforth type scheme built on two-point Lagrange interpolation of
/// Q* = sigma s^(sigma-1) Q.
template <typename Scalar>
[[nodiscard]] Trajectory<Scalar> simulate_abm(const SystemRhs<Scalar>& rhs,
                                              const std::type_identity_t<Vector<Scalar>>& init,
                                              const FFOrder<Scalar>& order, const GridSpec<Scalar>& grid,
                                              SchemeOptions options = {}) {
    return detail::Stepper<Scalar>(rhs, init, order, grid, Scheme::ABM, options.convention).run();
}

/// Newton polynomial scheme built on three-point interpolation of Q*.
template <typename Scalar>
[[nodiscard]] Trajectory<Scalar> simulate_npm(const SystemRhs<Scalar>& rhs,
                                              const std::type_identity_t<Vector<Scalar>>& init,
                                              const FFOrder<Scalar>& order, const GridSpec<Scalar>& grid,
                                              SchemeOptions options = {}) {
    return detail::Stepper<Scalar>(rhs, init, order, grid, Scheme::NPM, options.convention).run();
}

template <typename Scalar>
[[nodiscard]] Trajectory<Scalar> simulate(Scheme scheme, const SystemRhs<Scalar>& rhs,
                                          const std::type_identity_t<Vector<Scalar>>& init,
                                          const FFOrder<Scalar>& order, const GridSpec<Scalar>& grid,
                                          SchemeOptions options = {}) {
    return detail::Stepper<Scalar>(rhs, init, order, grid, scheme, options.convention).run();
}

/// Empirical order p = log2(|T_h - T_{h/2}| / |T_{h/2} - T_{h/4}|), max norm over
/// the nodes of the coarsest grid.
template <typename Scalar>
[[nodiscard]] Scalar self_convergence_order(Scheme scheme, const SystemRhs<Scalar>& rhs,
                                            const std::type_identity_t<Vector<Scalar>>& init,
                                            const FFOrder<Scalar>& order, const GridSpec<Scalar>& base_grid,
                                            SchemeOptions options = {}) {
    const Eigen::Index n = base_grid.node_count();
    const Scalar h = base_grid.step();
    const Scalar horizon = Scalar(n) * h;
    const auto coarse = simulate(scheme, rhs, init, order, GridSpec<Scalar>(h, horizon), options);
    const auto middle = simulate(scheme, rhs, init, order, GridSpec<Scalar>(h / 2, horizon), options);
    const auto fine = simulate(scheme, rhs, init, order, GridSpec<Scalar>(h / 4, horizon), options);
    if (middle.node_count() != 2 * n || fine.node_count() != 4 * n) {
        throw DomainError("refined grids do not nest within the base grid");
    }
    using Stride = Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>;
    auto every = [n](const Matrix<Scalar>& states, Eigen::Index stride) {
        return Eigen::Map<const Matrix<Scalar>, 0, Stride>(states.data(), n + 1, states.cols(),
                                                            Stride(states.rows(), stride));
    };
    const Scalar e1 = (coarse.states() - every(middle.states(), 2)).cwiseAbs().maxCoeff();
    const Scalar e2 = (every(middle.states(), 2) - every(fine.states(), 4)).cwiseAbs().maxCoeff();
    const Scalar scale = fine.states().cwiseAbs().maxCoeff();
    const Scalar floor = 64 * std::numeric_limits<Scalar>::epsilon() * scale + std::numeric_limits<Scalar>::min();
    if (!(e1 > floor) || !(e2 > floor)) {
        throw DegenerateError("refinement differences are at rounding level; order is undefined");
    }
    return std::log2(e1 / e2);
}

} // namespace ffml
