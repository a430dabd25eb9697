// optimize.hpp — FI maximisation over energy structures
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "thermo/fisher.hpp"
#include "thermo/spectrum.hpp"

namespace thermo {

struct Maximum1d {
    double x = 0.0;
    double value = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Derivative-free bracketed maximisation: coarse scan, golden-section
// shrinkage, parabolic polish. Throws NoBracketError when the objective is
// flat across the whole interval.
Maximum1d maximize_1d(const std::function<double(double)>& objective, double lo, double hi, double tol);

struct OptimizationResult {
    std::optional<EnergySpectrum> best_spectrum;
    std::optional<TwoLevelAnsatz> ansatz;
    double fi_rate = 0.0;                // objective at the optimum (total, not per level)
    double x_star = 0.0;
    double c_star = 0.0;                 // ground fraction, when applicable
    double coefficient_per_level = 0.0;
    long iterations = 0;
    int restarts_used = 0;
    bool converged = false;
};

// Maximise the per-level asymptotic coefficient over the gap; x <= 50 with a
// decreasing-tail guard against silent truncation.
OptimizationResult optimize_asymptotic(const BathModel& bath, FiVariant variant = FiVariant::Monitored);

// Exhaustive n0 scan for n <= 512, otherwise a window around C*(x_guess) n;
// each candidate gets a 1-D gap maximisation.
OptimizationResult optimize_two_level(int n, const BathModel& bath, FiVariant variant = FiVariant::Monitored);

// Multi-start local search over the n-1 free gaps (lowest level pinned to 0):
// random initialisations plus a two-level warm start, refined by cyclic
// golden-section line searches. Deterministic given seed; restart results are
// reduced by value with ties broken by restart index.
OptimizationResult optimize_global(int n, const BathModel& bath, int restarts, std::uint64_t seed,
                                   int workers = 1);

} // namespace thermo
