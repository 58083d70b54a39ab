// stats.hpp — small statistics helpers for the experiment harness.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace qwl {

inline double mean(std::span<const double> xs) {
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double sample_stddev(std::span<const double> xs) {
    if (xs.size() < 2) return 0;
    const double m = mean(xs);
    double s = 0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

// Wilson score interval lower bound; z = 2.5758 is the 99% two-sided quantile.
inline double wilson_lower(std::uint64_t successes, std::uint64_t trials, double z = 2.5758293035489) {
    if (trials == 0) throw std::invalid_argument("wilson_lower: no trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = p + z2 / (2 * n);
    const double rad = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    return (centre - rad) / denom;
}

inline double wilson_upper(std::uint64_t successes, std::uint64_t trials, double z = 2.5758293035489) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = p + z2 / (2 * n);
    const double rad = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    return (centre + rad) / denom;
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 points");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

// Least-squares fit y = a*x + b; returns {a, b}.
inline std::pair<double, double> linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 points");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    const double a = (static_cast<double>(n) * sxy - sx * sy) / denom;
    const double b = (sy - a * sx) / static_cast<double>(n);
    return {a, b};
}

}  // namespace qwl
