#include "thermo/bath.hpp"

#include <cmath>
#include <string>

namespace thermo {

BathModel BathModel::fermionic(double gamma) {
    if (!(gamma > 0.0)) throw DomainError("bath coupling gamma must be positive");
    return BathModel{BathKind::Fermionic, gamma, 0.0};
}

BathModel BathModel::bosonic(double gamma, double s) {
    if (!(gamma > 0.0)) throw DomainError("bath coupling gamma must be positive");
    if (!(s > 1.0)) {
        throw DomainError("bosonic ohmicity must satisfy s > 1, got s=" + std::to_string(s));
    }
    return BathModel{BathKind::BosonicOhmic, gamma, s};
}

double fermi_occupation(double x) {
    if (x > 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

double bose_occupation_abs(double x) {
    // |n_B(x)|: occupation for x > 0, occupation + 1 for x < 0
    if (x > 0.0) return 1.0 / std::expm1(x);
    return 1.0 / -std::expm1(x);
}

namespace {

// |x|^s / |e^x - 1| with the small-|x| series |x|^{s-1} (1 - x/2 + x^2/12).
double bosonic_rate(double x, double s) {
    if (x == 0.0) return 0.0;
    const double ax = std::abs(x);
    if (ax < 1e-8) return std::pow(ax, s - 1.0) * (1.0 - 0.5 * x);
    return std::pow(ax, s) * bose_occupation_abs(x);
}

// x^2 e^{2x} / (1+e^x)^3, rewritten with negative exponents for x > 0.
double fermionic_kernel(double x) {
    if (x > 0.0) {
        const double e = std::exp(-x);
        const double d = 1.0 + e;
        return x * x * e / (d * d * d);
    }
    const double e = std::exp(x);
    const double d = 1.0 + e;
    return x * x * e * e / (d * d * d);
}

// |x|^{2+s} e^{2x} / |e^x - 1|^3; 0 at x = 0 (limit |x|^{s-1} for s > 1).
double bosonic_kernel(double x, double s) {
    if (x == 0.0) return 0.0;
    const double ax = std::abs(x);
    if (ax < 1e-8) return std::pow(ax, s - 1.0) * (1.0 + 0.5 * x);
    if (x > 0.0) {
        const double e = std::exp(-x);
        const double d = -std::expm1(-x);  // 1 - e^{-x}
        return std::pow(ax, 2.0 + s) * e / (d * d * d);
    }
    const double e = std::exp(x);
    const double d = -std::expm1(x);  // 1 - e^x
    return std::pow(ax, 2.0 + s) * e * e / (d * d * d);
}

} // namespace

double rate(const BathModel& bath, double gap) {
    if (!std::isfinite(gap)) throw DomainError("rate: gap must be finite");
    if (bath.is_bosonic()) return bosonic_rate(gap, bath.s);
    return fermi_occupation(gap);
}

double rate_fi_kernel(const BathModel& bath, double gap) {
    if (!std::isfinite(gap)) throw DomainError("rate_fi_kernel: gap must be finite");
    if (bath.is_bosonic()) return bosonic_kernel(gap, bath.s);
    return fermionic_kernel(gap);
}

double paired_fi_kernel(const BathModel& bath, double gap) {
    if (!(gap > 0.0)) throw DomainError("paired_fi_kernel: gap must be positive");
    const double e = std::exp(-gap);
    const double e3 = std::exp(-3.0 * gap);
    if (bath.is_bosonic()) {
        const double d = -std::expm1(-gap);
        return std::pow(gap, 2.0 + bath.s) * (e + e3) / (d * d * d);
    }
    const double d = 1.0 + e;
    return gap * gap * (e + e3) / (d * d * d);
}

GeneratorMatrix generator(const EnergySpectrum& spec, const BathModel& bath, double temperature) {
    if (!(temperature > 0.0)) throw DomainError("generator: temperature must be positive");
    const int n = spec.size();
    GeneratorMatrix g(n);
    const double scale = bath.is_bosonic() ? bath.gamma * std::pow(temperature, bath.s) : bath.gamma;
    for (int i = 0; i < n; ++i) {
        double exit = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double gap = spec.level(j) - spec.level(i);
            if (bath.is_bosonic() && gap == 0.0) g.degenerate_bosonic_pairs = true;
            const double r = scale * rate(bath, gap);
            g.at(i, j) = r;
            exit += r;
        }
        g.at(i, i) = -exit;
    }
    return g;
}

} // namespace thermo
