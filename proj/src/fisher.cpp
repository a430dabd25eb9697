#include "thermo/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "thermo/optimize.hpp"

namespace thermo {

namespace {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct LevelGroup {
    double x;
    double multiplicity;
};

// Exactly repeated levels collapse into (energy, multiplicity) pairs.
std::vector<LevelGroup> group_levels(std::span<const double> levels) {
    std::vector<double> sorted(levels.begin(), levels.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<LevelGroup> groups;
    for (double x : sorted) {
        if (!groups.empty() && groups.back().x == x) {
            groups.back().multiplicity += 1.0;
        } else {
            groups.push_back({x, 1.0});
        }
    }
    return groups;
}

// C(1-C) / (C + (1-C) e^{-x})
double degeneracy_weight(double c, double gap) {
    return c * (1.0 - c) / (c + (1.0 - c) * std::exp(-gap));
}

// Population-average kernel at gap x > 0: x^2 / (2(e^x + 1)) fermionic,
// x^{2+s} / (2(e^x - 1)) bosonic, in overflow-safe form.
double empirical_pair_kernel(const BathModel& bath, double gap) {
    const double e = std::exp(-gap);
    if (bath.is_bosonic()) {
        return std::pow(gap, 2.0 + bath.s) * e / (2.0 * -std::expm1(-gap));
    }
    return gap * gap * e / (2.0 * (1.0 + e));
}

} // namespace

FiRate fi_rate_exact(const EnergySpectrum& spec, const BathModel& bath) {
    const auto groups = group_levels(spec.levels());
    std::vector<double> energies(groups.size());
    for (std::size_t u = 0; u < groups.size(); ++u) energies[u] = groups[u].x;
    const auto weights = gibbs_weights(energies);  // per-group Gibbs weight of one level

    // normalise by multiplicity: p_level(u) = m_u e^{-x_u} / sum_v m_v e^{-x_v}
    double z = 0.0;
    for (std::size_t u = 0; u < groups.size(); ++u) z += groups[u].multiplicity * weights[u];

    KahanSum total;
    for (std::size_t u = 0; u < groups.size(); ++u) {
        const double p_level = weights[u] / z;
        for (std::size_t v = 0; v < groups.size(); ++v) {
            if (v == u) continue;  // zero-gap pairs carry no temperature information
            const double kernel = rate_fi_kernel(bath, groups[v].x - groups[u].x);
            total.add(groups[u].multiplicity * p_level * groups[v].multiplicity * kernel);
        }
    }
    return FiRate{total.sum};
}

FiRate fi_rate_two_level(const TwoLevelAnsatz& ansatz, const BathModel& bath) {
    const double n0 = ansatz.n0;
    const double n1 = ansatz.excited();
    const double front = n0 * n1 / (n0 + n1 * std::exp(-ansatz.gap));
    return FiRate{front * paired_fi_kernel(bath, ansatz.gap)};
}

double optimal_degeneracy_fraction(double gap, FiVariant variant) {
    if (!(gap > 0.0)) throw DomainError("optimal_degeneracy_fraction: gap must be positive");
    switch (variant) {
        case FiVariant::Monitored:
        case FiVariant::Empirical:
            return 1.0 / (1.0 + std::exp(0.5 * gap));
        case FiVariant::Equilibrium:
            return 1.0 / (1.0 + std::exp(gap));
    }
    throw DomainError("unknown FI variant");
}

double fi_rate_asymptotic(double gap, const BathModel& bath) {
    if (!(gap > 0.0)) throw DomainError("fi_rate_asymptotic: gap must be positive");
    const double c = optimal_degeneracy_fraction(gap, FiVariant::Monitored);
    return degeneracy_weight(c, gap) * paired_fi_kernel(bath, gap);
}

double empirical_fi_asymptotic(double gap, const BathModel& bath) {
    if (!(gap > 0.0)) throw DomainError("empirical_fi_asymptotic: gap must be positive");
    const double c = optimal_degeneracy_fraction(gap, FiVariant::Empirical);
    return degeneracy_weight(c, gap) * empirical_pair_kernel(bath, gap);
}

FiRate empirical_fi_two_level(const TwoLevelAnsatz& ansatz, const BathModel& bath) {
    const double n0 = ansatz.n0;
    const double n1 = ansatz.excited();
    const double front = n0 * n1 / (n0 + n1 * std::exp(-ansatz.gap));
    return FiRate{front * empirical_pair_kernel(bath, ansatz.gap)};
}

FiRate empirical_fi_rate(const EnergySpectrum& spec, const BathModel& bath) {
    const int n = spec.size();
    const auto p = gibbs_weights(spec.levels());
    for (double v : p) {
        if (v <= 0.0) throw SingularPopulationError("equilibrium population underflowed to zero");
    }

    // dimensionless temperature derivative of the Gibbs vector,
    // d_i = (x_i - <x>) p_i
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += p[static_cast<std::size_t>(i)] * spec.level(i);
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        d[static_cast<std::size_t>(i)] = (spec.level(i) - mean) * p[static_cast<std::size_t>(i)];
    }

    // -(1/2) d^T P^{-1} W d with W the generator acting on column probability
    // vectors, i.e. W_{ij} = rate j -> i. Under detailed balance P^{-1} W is
    // symmetric and the form is nonnegative.
    BathModel unit = bath;
    unit.gamma = 1.0;
    const GeneratorMatrix g = generator(spec, unit, 1.0);
    KahanSum total;
    for (int i = 0; i < n; ++i) {
        const double di_over_pi = d[static_cast<std::size_t>(i)] / p[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            total.add(di_over_pi * g(j, i) * d[static_cast<std::size_t>(j)]);
        }
    }
    return FiRate{-0.5 * total.sum};
}

double equilibrium_fi_two_level(int n, int n0, double gap) {
    TwoLevelAnsatz check(n, n0, gap);  // validates the inputs
    const double a = static_cast<double>(n0);
    const double b = static_cast<double>(n - n0);
    const double e = std::exp(-gap);
    const double z = a + b * e;
    return a * b * gap * gap * e / (z * z);
}

double equilibrium_fi(const EnergySpectrum& spec) {
    const auto p = gibbs_weights(spec.levels());
    double mean = 0.0;
    for (int i = 0; i < spec.size(); ++i) mean += p[static_cast<std::size_t>(i)] * spec.level(i);
    double var = 0.0;
    for (int i = 0; i < spec.size(); ++i) {
        const double dx = spec.level(i) - mean;
        var += p[static_cast<std::size_t>(i)] * dx * dx;
    }
    return var;
}

ResetBound reset_bound(int n, const BathModel& bath) {
    if (n < 2) throw DomainError("reset_bound: n must be at least 2");
    const auto best = maximize_1d([&](double x) { return rate_fi_kernel(bath, x); }, 1e-6, 50.0, 1e-10);
    return ResetBound{best.x, best.value, (n - 1) * best.value};
}

EquilibriumOptimum equilibrium_optimum(int n) {
    if (n < 3) throw DomainError("equilibrium_optimum: n must be at least 3");
    EquilibriumOptimum best;
    for (int n0 = 1; n0 < n; ++n0) {
        const auto m = maximize_1d([&](double x) { return equilibrium_fi_two_level(n, n0, x); },
                                   1e-6, 50.0, 1e-10);
        if (m.value > best.value) {
            best = EquilibriumOptimum{m.x, n0, m.value};
        }
    }
    return best;
}

RobustnessBound robustness_lower_bound(const EnergySpectrum& spec, const BathModel& bath,
                                       double x_star, double sigma) {
    if (!(x_star > 0.0) || sigma < 0.0) {
        throw DomainError("robustness_lower_bound: need x_star > 0 and sigma >= 0");
    }
    RobustnessBound b;
    const int n = spec.size();
    long in_low = 0, in_high = 0;
    for (double x : spec.levels()) {
        if (x >= -sigma / 2.0 && x <= sigma / 2.0) ++in_low;
        if (x >= x_star - sigma / 2.0 && x <= x_star + sigma / 2.0) ++in_high;
        if (x < -sigma / 2.0) ++b.below_low_window;
    }
    b.q = static_cast<double>(in_low) / n;
    b.p = static_cast<double>(in_high) / n;
    b.c = 1.0 / (1.0 - b.p + b.p * std::exp(-x_star));

    // kernel minima over the widened gap window [x* - sigma, x* + sigma]
    const int grid = 2001;
    double cp = HUGE_VAL, cm = HUGE_VAL;
    for (int i = 0; i < grid; ++i) {
        const double x = x_star - sigma + 2.0 * sigma * i / (grid - 1);
        cp = std::min(cp, rate_fi_kernel(bath, x));
        cm = std::min(cm, rate_fi_kernel(bath, -x));
        if (sigma == 0.0) break;
    }
    b.c_plus = cp;
    b.c_minus = cm;
    b.value = b.q * b.p * n * b.c * std::exp(-sigma) * (b.c_plus + b.c_minus * std::exp(-x_star));
    return b;
}

double fi_dimensional(FiRate rate, const BathModel& bath, double temperature, double tau) {
    if (!(temperature > 0.0) || !(tau > 0.0)) {
        throw DomainError("fi_dimensional: temperature and tau must be positive");
    }
    if (bath.is_bosonic()) {
        return bath.gamma * tau * std::pow(temperature, bath.s - 2.0) * rate.value;
    }
    return bath.gamma * tau * rate.value / (temperature * temperature);
}

} // namespace thermo
