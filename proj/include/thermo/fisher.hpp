// fisher.hpp — Fisher-information rates: exact N-level sums, two-level closed
// forms, asymptotic per-level coefficients, reset bound, population-average
// (empirical) variant, and the equilibrium-thermometry baseline.
#pragma once

#include "thermo/bath.hpp"
#include "thermo/spectrum.hpp"

namespace thermo {

// Dimensionless FI rate. Dimensional conversion: F(T) = gamma tau beta^2 value
// for fermionic baths and F(T) = gamma tau T^{s-2} value for bosonic ones
// (temperature-derivative convention; see fi_dimensional).
struct FiRate {
    double value = 0.0;
};

enum class FiVariant { Monitored, Empirical, Equilibrium };

// Full double sum over level pairs; exactly repeated levels are grouped by
// multiplicity so degenerate two-manifold spectra evaluate in O(1).
FiRate fi_rate_exact(const EnergySpectrum& spec, const BathModel& bath);

// Closed form N0 (N-N0) / (N0 + (N-N0) e^{-x}) * paired_fi_kernel(x).
FiRate fi_rate_two_level(const TwoLevelAnsatz& ansatz, const BathModel& bath);

// Optimal ground-manifold fraction C(x) for the continuous-degeneracy limit:
// 1/(1+e^{x/2}) monitored and empirical, 1/(1+e^x) equilibrium.
double optimal_degeneracy_fraction(double gap, FiVariant variant);

// Per-level coefficient of the large-N limit, F ~ N f(x), with the ground
// fraction already optimised at each gap.
double fi_rate_asymptotic(double gap, const BathModel& bath);
double empirical_fi_asymptotic(double gap, const BathModel& bath);

// FI available from the average populations alone.
FiRate empirical_fi_two_level(const TwoLevelAnsatz& ansatz, const BathModel& bath);
FiRate empirical_fi_rate(const EnergySpectrum& spec, const BathModel& bath);

// Equilibrium (single energy measurement of a thermalised probe) baseline.
double equilibrium_fi_two_level(int n, int n0, double gap);
double equilibrium_fi(const EnergySpectrum& spec);  // Gibbs variance of the levels

struct ResetBound {
    double x_reset;      // gap maximising the per-pair kernel
    double coefficient;  // kernel value at the maximum
    double value;        // (N-1) * coefficient
};

// Linear-in-N ceiling achievable by measure-and-reset strategies.
ResetBound reset_bound(int n, const BathModel& bath);

struct EquilibriumOptimum {
    double x_star = 0.0;
    int n0_star = 0;
    double value = 0.0;
};

// Brute force over integer n0 and continuous gap.
EquilibriumOptimum equilibrium_optimum(int n);

// Dimensional FI per the conventions above; tau in 1/rate units.
double fi_dimensional(FiRate rate, const BathModel& bath, double temperature, double tau);

// Analytic lower bound on the FI rate of a perturbed two-manifold spectrum:
// keep only the level pairs inside width-sigma windows around 0 and x_star,
// bound their populations and kernels by window extremes.
struct RobustnessBound {
    double q = 0.0;            // fraction of levels within sigma/2 of 0
    double p = 0.0;            // fraction within sigma/2 of x_star
    double c = 0.0;            // population constant 1 / (1 - p + p e^{-x*})
    double c_plus = 0.0;       // kernel minima over [x* - sigma, x* + sigma]
    double c_minus = 0.0;
    double value = 0.0;        // q p N c e^{-sigma} (c_+ + c_- e^{-x*})
    long below_low_window = 0; // levels under -sigma/2, where the bound's
                               // population cap does not strictly apply
};

RobustnessBound robustness_lower_bound(const EnergySpectrum& spec, const BathModel& bath,
                                       double x_star, double sigma);

} // namespace thermo
