#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>

#include "hpsim/core/error.hpp"
#include "hpsim/stats/ols.hpp"

namespace hpsim::stats {

/// Deterministic terms of the test regression. Only a constant is supported.
enum class AdfRegression { ConstantOnly };

enum class Stationarity { Stationary, NonStationary };

constexpr std::string_view to_string(Stationarity s) noexcept {
    return s == Stationarity::Stationary ? "Stationary" : "NonStationary";
}

inline constexpr double kAdfAlpha = 0.05;

/**
 * Augmented Dickey-Fuller result.
 *
 * H0: the series has a unit root. classification is NonStationary exactly when
 * p_value > 0.05, i.e. when H0 cannot be rejected.
 */
struct AdfResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int lag = 1;
    int nobs = 0;
    Stationarity classification = Stationarity::NonStationary;
    std::array<double, 3> critical_values{};  // 1%, 5%, 10%
};

namespace detail {

// MacKinnon (1994) response surface, constant-only regression, one I(1) series.
inline constexpr double kTauMax = 2.74;
inline constexpr double kTauMin = -18.83;
inline constexpr double kTauStar = -1.61;
inline constexpr std::array<double, 3> kSmallP{2.1659, 1.4412, 3.8269e-2};
inline constexpr std::array<double, 4> kLargeP{1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2};

// MacKinnon (2010) finite-sample critical values: b0 + b1/T + b2/T^2 + b3/T^3.
inline constexpr std::array<std::array<double, 4>, 3> kCrit{{
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
}};

template <std::size_t N>
double polyval_ascending(const std::array<double, N>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

struct AdfRegressionData {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

// Rows use a common start so that fits with different lag counts share a sample.
inline AdfRegressionData build_regression(std::span<const double> series, int lag, int sample_lag) {
    const auto n = static_cast<int>(series.size());
    const int nobs = n - 1 - sample_lag;
    AdfRegressionData d;
    d.X.resize(nobs, 2 + lag);
    d.y.resize(nobs);
    for (int r = 0; r < nobs; ++r) {
        const int t = sample_lag + r;  // index into first differences
        d.y(r) = series[t + 1] - series[t];
        d.X(r, 0) = 1.0;
        d.X(r, 1) = series[t];
        for (int j = 1; j <= lag; ++j) d.X(r, 1 + j) = series[t - j + 1] - series[t - j];
    }
    return d;
}

inline void require_usable(std::span<const double> series, int lag) {
    if (lag < 0) throw Error(ErrorCode::SeriesTooShort, "negative lag");
    if (series.size() < static_cast<std::size_t>(lag) + 10) {
        throw Error(ErrorCode::SeriesTooShort, "need at least lag + 10 observations, got " +
                                                   std::to_string(series.size()));
    }
    const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    if (*lo == *hi) throw Error(ErrorCode::DegenerateSeries, "series has zero variance");
}

}  // namespace detail

/// Approximate p-value of an ADF tau statistic (constant-only regression).
inline double adf_p_value(double tau) {
    if (tau > detail::kTauMax) return 1.0;
    if (tau < detail::kTauMin) return 0.0;
    const double z = tau <= detail::kTauStar ? detail::polyval_ascending(detail::kSmallP, tau)
                                             : detail::polyval_ascending(detail::kLargeP, tau);
    return boost::math::cdf(boost::math::normal_distribution<double>(), z);
}

inline std::array<double, 3> adf_critical_values(int nobs) {
    std::array<double, 3> out{};
    const double inv = 1.0 / static_cast<double>(nobs);
    for (std::size_t i = 0; i < 3; ++i) out[i] = detail::polyval_ascending(detail::kCrit[i], inv);
    return out;
}

/// OLS of dy_t on (1, y_{t-1}, dy_{t-1..t-lag}); the statistic is the t-ratio on y_{t-1}.
inline AdfResult adf_test(std::span<const double> series, int lag = 1,
                          AdfRegression /*regression*/ = AdfRegression::ConstantOnly) {
    detail::require_usable(series, lag);
    const auto data = detail::build_regression(series, lag, lag);
    const auto fit = ols_fit(data.X, data.y, true);
    if (fit.rank < data.X.cols() || fit.std_errors.size() == 0 ||
        fit.rss <= 1e-24 * std::max(1.0, data.y.squaredNorm())) {
        throw Error(ErrorCode::DegenerateSeries, "test regression is singular or fits exactly");
    }

    AdfResult res;
    res.statistic = fit.beta(1) / fit.std_errors(1);
    res.p_value = adf_p_value(res.statistic);
    res.lag = lag;
    res.nobs = static_cast<int>(data.y.size());
    res.classification = res.p_value > kAdfAlpha ? Stationarity::NonStationary : Stationarity::Stationary;
    res.critical_values = adf_critical_values(res.nobs);
    return res;
}

/// Lag chosen by minimum AIC over 0..max_lag on a common sample, then refit on the full sample.
inline AdfResult adf_test_aic(std::span<const double> series, int max_lag) {
    detail::require_usable(series, max_lag);
    int best_lag = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int lag = 0; lag <= max_lag; ++lag) {
        const auto data = detail::build_regression(series, lag, max_lag);
        const auto fit = ols_fit(data.X, data.y);
        const double n = static_cast<double>(fit.nobs);
        const double llf = -0.5 * n * (std::log(2.0 * M_PI) + std::log(fit.rss / n) + 1.0);
        const double aic = -2.0 * llf + 2.0 * static_cast<double>(data.X.cols());
        if (aic < best_aic) {
            best_aic = aic;
            best_lag = lag;
        }
    }
    return adf_test(series, best_lag);
}

}  // namespace hpsim::stats
