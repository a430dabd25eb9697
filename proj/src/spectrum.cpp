#include "thermo/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "thermo/rng.hpp"

namespace thermo {

namespace {

void validate_levels(const std::vector<double>& levels) {
    if (levels.size() < 2) {
        throw DomainError("spectrum requires at least 2 levels, got " + std::to_string(levels.size()));
    }
    for (double x : levels) {
        if (!std::isfinite(x)) throw DomainError("spectrum levels must be finite");
    }
}

} // namespace

EnergySpectrum::EnergySpectrum(std::vector<double> levels)
    : levels_(std::move(levels)), canonical_(true) {
    validate_levels(levels_);
    original_.resize(levels_.size());
    std::iota(original_.begin(), original_.end(), 0);
    // stable sort keeps a usable input-position map for degenerate levels
    std::stable_sort(original_.begin(), original_.end(),
                     [&](int a, int b) { return levels_[static_cast<std::size_t>(a)] < levels_[static_cast<std::size_t>(b)]; });
    std::vector<double> sorted(levels_.size());
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        sorted[i] = levels_[static_cast<std::size_t>(original_[i])];
    }
    levels_ = std::move(sorted);
}

EnergySpectrum::EnergySpectrum(std::vector<double> levels, KeepInputOrder)
    : levels_(std::move(levels)), canonical_(false) {
    validate_levels(levels_);
    original_.resize(levels_.size());
    std::iota(original_.begin(), original_.end(), 0);
    canonical_ = std::is_sorted(levels_.begin(), levels_.end());
}

EnergySpectrum EnergySpectrum::shifted(double offset) const {
    std::vector<double> out(levels_.begin(), levels_.end());
    for (double& x : out) x += offset;
    return canonical_ ? EnergySpectrum(std::move(out)) : EnergySpectrum(std::move(out), KeepInputOrder{});
}

TwoLevelAnsatz::TwoLevelAnsatz(int n_in, int n0_in, double gap_in) : n(n_in), n0(n0_in), gap(gap_in) {
    if (n < 2) throw DomainError("invalid-degeneracy: ansatz requires n >= 2");
    if (n0 < 1 || n0 > n - 1) {
        throw DomainError("invalid-degeneracy: n0 must lie in [1, n-1], got n0=" + std::to_string(n0) +
                          " for n=" + std::to_string(n));
    }
    if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("invalid-gap: gap must be positive and finite");
}

EnergySpectrum TwoLevelAnsatz::to_spectrum() const {
    std::vector<double> levels(static_cast<std::size_t>(n), gap);
    std::fill_n(levels.begin(), n0, 0.0);
    return EnergySpectrum(std::move(levels));
}

EnergySpectrum make_two_level(int n, int n0, double gap) {
    return TwoLevelAnsatz(n, n0, gap).to_spectrum();
}

EnergySpectrum perturb_gaussian(const TwoLevelAnsatz& base, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw DomainError("perturb_gaussian: sigma must be nonnegative");
    if (sigma == 0.0) return base.to_spectrum();
    Rng rng(seed);
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(base.n));
    for (int i = 0; i < base.n0; ++i) levels.push_back(rng.normal(0.0, sigma));
    for (int i = base.n0; i < base.n; ++i) levels.push_back(rng.normal(base.gap, sigma));
    return EnergySpectrum(std::move(levels));
}

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : p_(std::move(entries)) {
    double sum = 0.0;
    for (double v : p_) {
        if (!(v >= 0.0)) throw DomainError("probability entries must be nonnegative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw DomainError("probability entries must sum to 1 within 1e-12");
    }
}

std::vector<double> gibbs_weights(std::span<const double> levels) {
    // subtract the minimum so weights never overflow; the result is
    // shift-invariant by construction
    double xmin = levels[0];
    for (double x : levels) xmin = std::min(xmin, x);
    std::vector<double> w(levels.size());
    double z = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        w[i] = std::exp(-(levels[i] - xmin));
        z += w[i];
    }
    for (double& v : w) v /= z;
    return w;
}

ProbabilityVector equilibrium_distribution(const EnergySpectrum& spec) {
    return ProbabilityVector(gibbs_weights(spec.levels()));
}

} // namespace thermo
