#ifndef VOLENT_GEOMETRY_HPP
#define VOLENT_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "volent/catalog.hpp"
#include "volent/errors.hpp"

// Metric geometry in eigenvalue (polar) coordinates. The angular part of
// the polar coordinates only contributes a multiplicative constant to every
// volume integral, which cancels in all growth rates, so everything here is
// a function of the radial eigenvalues alone.

namespace volent::geometry {

/// Radial part (lambda_1 >= ... >= lambda_s >= 0) of a point in polar
/// coordinates. Weakly decreasing and nonnegative by construction.
class EigenvalueVector {
public:
    EigenvalueVector() = default;

    explicit EigenvalueVector(std::vector<double> values) : values_(std::move(values)) {
        for (size_t i = 0; i < values_.size(); ++i) {
            if (!(values_[i] >= 0.0))
                throw Error("eigenvalues must be nonnegative");
            if (i > 0 && values_[i] > values_[i - 1])
                throw Error("eigenvalues must be weakly decreasing");
        }
    }

    std::span<const double> values() const { return values_; }
    size_t size() const { return values_.size(); }
    double operator[](size_t i) const { return values_[i]; }

    /// Maximal rank with distinct positive entries.
    bool is_regular(int64_t rank) const {
        if (std::ssize(values_) != rank) return false;
        for (size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] <= 0.0) return false;
            if (i > 0 && values_[i] >= values_[i - 1]) return false;
        }
        return true;
    }

    friend bool operator==(const EigenvalueVector&, const EigenvalueVector&) = default;

private:
    std::vector<double> values_;
};

/// Rank and multiplicities entering the radial volume density.
struct RadialDensityParams {
    int64_t r = 1;
    int64_t a = 0;
    int64_t b = 0;

    RadialDensityParams() = default;
    RadialDensityParams(int64_t r_, int64_t a_, int64_t b_) : r(r_), a(a_), b(b_) {}
    explicit RadialDensityParams(const catalog::DomainSpec& spec)
        : r(spec.r), a(spec.a), b(spec.b) {}
};

/// Exponential map at the origin: componentwise tanh. Order preserving,
/// lands strictly inside the unit ball.
inline EigenvalueVector exp_origin(const EigenvalueVector& t) {
    std::vector<double> out(t.size());
    for (size_t i = 0; i < t.size(); ++i) out[i] = std::tanh(t[i]);
    return EigenvalueVector(std::move(out));
}

/// Geodesic distance from the origin, sqrt(sum_j arctanh^2(lambda_j)).
/// Throws OutsideDomainError when some lambda_j >= 1.
inline double dist_origin(std::span<const double> lambda) {
    double sum = 0.0;
    for (double l : lambda) {
        if (l >= 1.0)
            throw OutsideDomainError("eigenvalue " + std::to_string(l) +
                                     " >= 1 lies outside the domain");
        const double u = std::atanh(l);
        sum += u * u;
    }
    return std::sqrt(sum);
}

inline double dist_origin(const EigenvalueVector& lambda) {
    return dist_origin(lambda.values());
}

/// Symplectic duality map in radial coordinates, t_j -> t_j / sqrt(t_j^2+1).
/// Maps the flat model onto the bounded domain, preserving order. Entries
/// stay strictly below one: past t ~ 9e7 the ratio would round to 1.0, so
/// it is capped at the largest double inside the ball.
inline EigenvalueVector duality_map(const EigenvalueVector& t) {
    constexpr double kJustInside = 1.0 - 0x1p-53;
    std::vector<double> out(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
        out[i] = std::min(t[i] / std::sqrt(t[i] * t[i] + 1.0), kJustInside);
    }
    return EigenvalueVector(std::move(out));
}

/// Distance from the origin after the duality map, sqrt(sum_j asinh^2(t_j)).
/// Identical to dist_origin(duality_map(t)).
inline double dual_distance(std::span<const double> t) {
    double sum = 0.0;
    for (double v : t) {
        const double u = std::asinh(v);
        sum += u * u;
    }
    return std::sqrt(sum);
}

inline double dual_distance(const EigenvalueVector& t) { return dual_distance(t.values()); }

/// Radial density of the flat volume form in polar coordinates:
///   prod_j lambda_j^(2b+1) * prod_{j<k} (lambda_j^2 - lambda_k^2)^a.
/// Strictly positive on regular vectors, zero on ties when a > 0.
inline double radial_density(std::span<const double> lambda, const RadialDensityParams& p) {
    double density = 1.0;
    for (size_t j = 0; j < lambda.size(); ++j) {
        double pw = 1.0;
        for (int64_t q = 0; q < 2 * p.b + 1; ++q) pw *= lambda[j];
        density *= pw;
        for (size_t k = j + 1; k < lambda.size(); ++k) {
            double diff = lambda[j] * lambda[j] - lambda[k] * lambda[k];
            double dp = 1.0;
            for (int64_t q = 0; q < p.a; ++q) dp *= diff;
            density *= dp;
        }
    }
    return density;
}

inline double radial_density(const EigenvalueVector& lambda, const RadialDensityParams& p) {
    return radial_density(lambda.values(), p);
}

/// log(sinh x) for x > 0 without overflow; -inf at x <= 0.
inline double log_sinh(double x) {
    if (x <= 0.0) return -std::numeric_limits<double>::infinity();
    // sinh x = e^x (1 - e^{-2x}) / 2
    return x - std::numbers::ln2_v<double> + std::log1p(-std::exp(-2.0 * x));
}

/// log(cosh x) without overflow.
inline double log_cosh(double x) {
    x = std::abs(x);
    return x - std::numbers::ln2_v<double> + std::log1p(std::exp(-2.0 * x));
}

/// Log of the substituted radial density (see radial_density_t). This is
/// the form the integrators accumulate; the difference factors use
/// sinh^2 u - sinh^2 v = sinh(u+v) sinh(u-v) to stay accurate near ties
/// and finite at large arguments.
inline double log_radial_density_t(std::span<const double> t, const RadialDensityParams& p) {
    double logd = 0.0;
    for (size_t j = 0; j < t.size(); ++j) {
        logd += static_cast<double>(2 * p.b + 1) * log_sinh(t[j]) + log_cosh(t[j]);
        if (p.a > 0) { // a == 0 would multiply -inf by 0 on ties
            for (size_t k = j + 1; k < t.size(); ++k) {
                logd += static_cast<double>(p.a) *
                        (log_sinh(t[j] + t[k]) + log_sinh(t[j] - t[k]));
            }
        }
    }
    return logd;
}

/// Radial density after substituting lambda_j = sinh(t_j), including the
/// cosh Jacobian factors:
///   prod_j sinh^(2b+1)(t_j) * prod_{j<k} (sinh^2 t_j - sinh^2 t_k)^a * prod_j cosh(t_j).
/// Equals radial_density(sinh t) * prod_j cosh(t_j).
inline double radial_density_t(std::span<const double> t, const RadialDensityParams& p) {
    // Ties with a > 0 and zero entries give log -inf, exp -> 0, matching
    // the vanishing of the direct product.
    return std::exp(log_radial_density_t(t, p));
}

inline double radial_density_t(const EigenvalueVector& t, const RadialDensityParams& p) {
    return radial_density_t(t.values(), p);
}

} // namespace volent::geometry

#endif
