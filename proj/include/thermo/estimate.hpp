// estimate.hpp — temperature estimation from monitored two-manifold data
//
// The coarse record (k, l, tau0, tau) is everything the two-level likelihood
// needs. Closed-form maximum-likelihood estimates come from the quadratic
// stationarity condition for the occupation number; the coupling (and, for
// bosonic baths, the spectral density at the gap) is assumed known.
#pragma once

#include <cstdint>

#include "thermo/bath.hpp"
#include "thermo/spectrum.hpp"
#include "thermo/trajectory.hpp"

namespace thermo {

struct EstimationConfig {
    TwoLevelAnsatz ansatz;  // manifold sizes; the gap field is the design gap
    BathModel bath;
    double epsilon;      // physical gap, energy units (k_B = 1)
    double known_gamma;  // coupling assumed known by the estimator

    EstimationConfig(TwoLevelAnsatz a, BathModel b, double eps)
        : ansatz(a), bath(b), epsilon(eps), known_gamma(b.gamma) {
        if (!(epsilon > 0.0)) throw DomainError("estimation gap epsilon must be positive");
    }
};

// Per-pair transition rates at temperature T: x = epsilon / T.
double pair_rate_up(const EstimationConfig& cfg, double temperature);
double pair_rate_down(const EstimationConfig& cfg, double temperature);

// k log[(N-N0) G01] + l log[N0 G10] - (N-N0) G01 tau0 - N0 G10 (tau - tau0)
double log_likelihood(const SufficientStats& stats, const EstimationConfig& cfg, double temperature);

// Analytic temperature derivative of the log-likelihood.
double score(const SufficientStats& stats, const EstimationConfig& cfg, double temperature);

// Coefficients of the occupation quadratic. exposure_imbalance drives the
// fermionic solution; weighted_exposure the bosonic one. The _alt variant
// replaces the excited-exposure weight N0 by N and exists for diagnostics
// only (it does not maximise the likelihood; see the estimator tests).
double exposure_imbalance(const SufficientStats& stats, const EstimationConfig& cfg);
double weighted_exposure(const SufficientStats& stats, const EstimationConfig& cfg);
double weighted_exposure_alt(const SufficientStats& stats, const EstimationConfig& cfg);

struct MleResult {
    double t_hat = 0.0;
    double occupation_hat = 0.0;
    bool valid = false;
    double log_likelihood_at_hat = 0.0;
};

MleResult mle_fermionic(const SufficientStats& stats, const EstimationConfig& cfg);
MleResult mle_bosonic(const SufficientStats& stats, const EstimationConfig& cfg);
MleResult mle_bosonic_alt(const SufficientStats& stats, const EstimationConfig& cfg);  // diagnostic
MleResult mle(const SufficientStats& stats, const EstimationConfig& cfg);

struct CrbReport {
    double t_true = 0.0;
    double mse = 0.0;
    double crb = 0.0;
    double ratio = 0.0;          // mse / crb
    double ratio_stderr = 0.0;
    double invalid_fraction = 0.0;
    long replicas = 0;
    long valid_replicas = 0;
    double mean_t_hat = 0.0;
};

// Simulate, estimate, and compare the estimator's mean-squared error with the
// Cramer-Rao bound 1/F(T). Replicas without a usable estimate are counted and
// reported, never silently dropped into the average.
CrbReport crb_benchmark(const EstimationConfig& cfg, double t_true, double tau, long replicas,
                        std::uint64_t seed, int workers = 1);

struct ScoreVarianceFi {
    double fi = 0.0;
    double fi_stderr = 0.0;
    double mean_score = 0.0;
    double mean_score_stderr = 0.0;
    long replicas = 0;
    double tau = 0.0;
};

// Monte Carlo FI estimate: the variance of the analytic score across
// simulated records. Cross-validates the closed-form FI rates.
ScoreVarianceFi fi_score_variance_mc(const EstimationConfig& cfg, double temperature, double tau,
                                     long replicas, std::uint64_t seed, int workers = 1);

} // namespace thermo
