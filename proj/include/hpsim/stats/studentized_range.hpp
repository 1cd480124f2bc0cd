#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hpsim/core/error.hpp"

namespace hpsim::stats {

namespace detail {

struct GaussLegendre16 {
    std::array<double, 16> nodes{};
    std::array<double, 16> weights{};

    GaussLegendre16() {
        constexpr int n = 16;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            nodes[static_cast<std::size_t>(i)] = x;
            weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussLegendre16& gauss_legendre16() {
    static const GaussLegendre16 rule;
    return rule;
}

/// Composite 16-point Gauss-Legendre over [a, b] split into equal panels.
template <typename F>
double integrate(F&& f, double a, double b, int panels) {
    const auto& gl = gauss_legendre16();
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double acc = 0.0;
        for (std::size_t i = 0; i < 16; ++i) acc += gl.weights[i] * f(mid + 0.5 * h * gl.nodes[i]);
        total += 0.5 * h * acc;
    }
    return total;
}

inline double upper_normal_tail(double z) { return 0.5 * std::erfc(z / M_SQRT2); }

struct RangeGrid {
    static constexpr int kPanels = 17;
    static constexpr double kLo = -8.5;
    static constexpr double kHi = 8.5;
    std::array<double, kPanels * 16> z{};
    std::array<double, kPanels * 16> weighted_phi{};
    std::array<double, kPanels * 16> tail{};

    RangeGrid() {
        const auto& gl = gauss_legendre16();
        const double h = (kHi - kLo) / kPanels;
        for (int p = 0; p < kPanels; ++p) {
            const double mid = kLo + (p + 0.5) * h;
            for (std::size_t i = 0; i < 16; ++i) {
                const std::size_t j = static_cast<std::size_t>(p) * 16 + i;
                z[j] = mid + 0.5 * h * gl.nodes[i];
                weighted_phi[j] = 0.5 * h * gl.weights[i] * std::exp(-0.5 * z[j] * z[j]) / std::sqrt(2.0 * M_PI);
                tail[j] = upper_normal_tail(z[j]);
            }
        }
    }
};

inline const RangeGrid& range_grid() {
    static const RangeGrid grid;
    return grid;
}

/// P(range of k iid standard normals <= w).
inline double normal_range_cdf(double w, int k) {
    if (w <= 0.0) return 0.0;
    const auto& g = range_grid();
    double acc = 0.0;
    for (std::size_t j = 0; j < g.z.size(); ++j) {
        const double inner = g.tail[j] - upper_normal_tail(g.z[j] + w);
        acc += g.weighted_phi[j] * std::pow(inner, k - 1);
    }
    return std::min(1.0, std::max(0.0, k * acc));
}

}  // namespace detail

/**
 * CDF of the studentized range with k groups and df error degrees of freedom.
 *
 * P(Q <= q) = integral over s of f_df(s) * P(range <= q s), where s is the
 * scaled chi variable sqrt(chi2_df / df). Both integrals use composite
 * Gauss-Legendre quadrature.
 */
inline double studentized_range_cdf(double q, int k, int df) {
    if (q <= 0.0) return 0.0;
    const double nu = static_cast<double>(df);
    const double log_norm = std::log(2.0) + 0.5 * nu * std::log(0.5 * nu) - std::lgamma(0.5 * nu);
    const double mean = std::sqrt(2.0 / nu) * std::exp(std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu));
    const double sd = std::sqrt(std::max(0.0, 1.0 - mean * mean));
    const double lo = std::max(0.0, mean - 14.0 * sd);
    const double hi = mean + 14.0 * sd;
    auto integrand = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double log_density = log_norm + (nu - 1.0) * std::log(s) - 0.5 * nu * s * s;
        return std::exp(log_density) * detail::normal_range_cdf(q * s, k);
    };
    // For large q the inner CDF climbs from 0 to 1 over a short stretch of s; resolve it separately.
    const double knee = std::clamp(12.0 / q, lo, hi);
    double p = detail::integrate(integrand, knee, hi, 32);
    if (knee > lo) p += detail::integrate(integrand, lo, knee, 32);
    return std::min(1.0, std::max(0.0, p));
}

/// Upper-tail p-value P(Q > q).
inline double studentized_range_sf(double q, int k, int df) { return 1.0 - studentized_range_cdf(q, k, df); }

/// Critical value q such that P(Q > q) = alpha.
inline double studentized_range_quantile(double alpha, int k, int df) {
    if (!(alpha > 0.0 && alpha < 1.0) || k < 2 || df < 1) {
        throw Error(ErrorCode::ConvergenceFailure, "invalid arguments: alpha in (0,1), k >= 2, df >= 1 required");
    }
    const double target = 1.0 - alpha;
    double lo = 0.0;
    double f_lo = -target;
    double hi = 1.0;
    double f_hi = studentized_range_cdf(hi, k, df) - target;
    while (f_hi < 0.0) {
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        if (hi > 1e4) throw Error(ErrorCode::ConvergenceFailure, "could not bracket the quantile");
        f_hi = studentized_range_cdf(hi, k, df) - target;
    }
    // Illinois variant of regula falsi.
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        const double x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        const double fx = studentized_range_cdf(x, k, df) - target;
        if (std::abs(fx) < 1e-13 || (hi - lo) < 1e-12 * hi) return x;
        if ((fx < 0.0) == (f_lo < 0.0)) {
            lo = x;
            f_lo = fx;
            if (side == -1) f_hi *= 0.5;
            side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if (side == 1) f_lo *= 0.5;
            side = 1;
        }
    }
    throw Error(ErrorCode::ConvergenceFailure, "quantile iteration did not converge");
}

}  // namespace hpsim::stats
