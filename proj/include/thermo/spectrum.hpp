// spectrum.hpp — probe energy structures and their equilibrium populations
//
// Energies are dimensionless throughout the core: x_i = beta * eps_i with
// k_B = 1. A single pair of helpers converts between (eps, T) and x.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "thermo/errors.hpp"

namespace thermo {

// Constructor tag: keep the caller's level order (stable state labels for
// trajectory simulation) instead of the canonical ascending order.
struct KeepInputOrder {};

class EnergySpectrum {
public:
    explicit EnergySpectrum(std::vector<double> levels);
    EnergySpectrum(std::vector<double> levels, KeepInputOrder);

    int size() const { return static_cast<int>(levels_.size()); }
    std::span<const double> levels() const { return levels_; }
    double level(int i) const { return levels_[static_cast<std::size_t>(i)]; }

    // Position of stored level i in the constructor input (identity when the
    // input order was kept).
    int original_index(int stored) const { return original_[static_cast<std::size_t>(stored)]; }

    bool canonical() const { return canonical_; }

    EnergySpectrum shifted(double offset) const;

private:
    std::vector<double> levels_;
    std::vector<int> original_;
    bool canonical_;
};

struct TwoLevelAnsatz {
    int n;       // total level count
    int n0;      // ground-manifold degeneracy, 1 <= n0 <= n-1
    double gap;  // dimensionless gap x > 0

    TwoLevelAnsatz(int n, int n0, double gap);

    int excited() const { return n - n0; }
    double ground_fraction() const { return static_cast<double>(n0) / n; }
    EnergySpectrum to_spectrum() const;
};

class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> entries);

    int size() const { return static_cast<int>(p_.size()); }
    std::span<const double> entries() const { return p_; }
    double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }

private:
    std::vector<double> p_;
};

EnergySpectrum make_two_level(int n, int n0, double gap);

// Ground levels drawn from Normal(0, sigma^2), excited from Normal(gap, sigma^2).
// sigma = 0 reproduces the base exactly; the draw is deterministic in the seed.
EnergySpectrum perturb_gaussian(const TwoLevelAnsatz& base, double sigma, std::uint64_t seed);

ProbabilityVector equilibrium_distribution(const EnergySpectrum& spec);

// Gibbs weights with max-subtraction; sums to 1. Shared by the FI routines
// that work on grouped or raw level arrays.
std::vector<double> gibbs_weights(std::span<const double> levels);

inline double dimensionless_gap(double energy, double temperature) { return energy / temperature; }
inline double energy_from_gap(double x, double temperature) { return x * temperature; }

} // namespace thermo
