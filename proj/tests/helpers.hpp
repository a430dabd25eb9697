// helpers.hpp — shared test utilities: fits, KS tests, independent FI oracle
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace testutil {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    const double sxy_c = sxy - sx * sy / n;
    const double sxx_c = sxx - sx * sx / n;
    const double syy_c = syy - sy * sy / n;
    fit.r2 = (syy_c > 0.0) ? sxy_c * sxy_c / (sxx_c * syy_c) : 1.0;
    return fit;
}

// Kolmogorov distribution tail Q(lambda) = 2 sum_j (-1)^{j-1} exp(-2 j^2 lambda^2).
inline double ks_tail(double lambda) {
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = 2.0 * std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1) ? term : -term;
    }
    return std::clamp(sum, 0.0, 1.0);
}

// One-sample KS p-value against a CDF.
template <typename Cdf>
double ks_test_one_sample(std::vector<double> samples, Cdf cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    const double sn = std::sqrt(n);
    return ks_tail((sn + 0.12 + 0.11 / sn) * d);
}

inline double ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            ++i;
        } else {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    const double ne = static_cast<double>(a.size()) * b.size() / (a.size() + b.size());
    const double sn = std::sqrt(ne);
    return ks_tail((sn + 0.12 + 0.11 / sn) * d);
}

// Independent FI-rate oracle: direct Gibbs sum with naively written kernels.
// Deliberately separate from the library implementation path.
inline double oracle_fermionic_kernel(double x) {
    const double e = std::exp(x);
    return x * x * e * e / ((1.0 + e) * (1.0 + e) * (1.0 + e));
}

inline double oracle_bosonic_kernel(double x, double s) {
    if (x == 0.0) return 0.0;
    const double e = std::exp(x);
    const double d = std::abs(e - 1.0);
    return std::pow(std::abs(x), 2.0 + s) * e * e / (d * d * d);
}

inline double oracle_fi_rate(std::span<const double> levels, bool bosonic, double s) {
    double z = 0.0;
    for (double x : levels) z += std::exp(-x);
    double total = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double p = std::exp(-levels[i]) / z;
        for (std::size_t j = 0; j < levels.size(); ++j) {
            if (i == j) continue;
            const double gap = levels[j] - levels[i];
            total += p * (bosonic ? oracle_bosonic_kernel(gap, s) : oracle_fermionic_kernel(gap));
        }
    }
    return total;
}

} // namespace testutil
