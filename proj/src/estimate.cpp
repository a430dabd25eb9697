#include "thermo/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "thermo/fisher.hpp"
#include "thermo/parallel.hpp"
#include "thermo/rng.hpp"

namespace thermo {

double pair_rate_up(const EstimationConfig& cfg, double temperature) {
    if (!(temperature > 0.0)) throw DomainError("pair_rate_up: temperature must be positive");
    const double x = cfg.epsilon / temperature;
    if (cfg.bath.is_bosonic()) {
        const double kappa = cfg.known_gamma * std::pow(cfg.epsilon, cfg.bath.s);
        return kappa * bose_occupation_abs(x);
    }
    return cfg.known_gamma * fermi_occupation(x);
}

double pair_rate_down(const EstimationConfig& cfg, double temperature) {
    if (!(temperature > 0.0)) throw DomainError("pair_rate_down: temperature must be positive");
    const double x = cfg.epsilon / temperature;
    if (cfg.bath.is_bosonic()) {
        const double kappa = cfg.known_gamma * std::pow(cfg.epsilon, cfg.bath.s);
        return kappa * (bose_occupation_abs(x) + 1.0);
    }
    return cfg.known_gamma * fermi_occupation(-x);
}

double log_likelihood(const SufficientStats& stats, const EstimationConfig& cfg, double temperature) {
    const double up = (cfg.ansatz.n - cfg.ansatz.n0) * pair_rate_up(cfg, temperature);
    const double down = cfg.ansatz.n0 * pair_rate_down(cfg, temperature);
    double ll = -up * stats.tau0 - down * (stats.tau - stats.tau0);
    if (stats.k > 0) ll += stats.k * std::log(up);
    if (stats.l > 0) ll += stats.l * std::log(down);
    return ll;
}

double score(const SufficientStats& stats, const EstimationConfig& cfg, double temperature) {
    const double x = cfg.epsilon / temperature;
    const double beta2_eps = cfg.epsilon / (temperature * temperature);
    if (cfg.bath.is_bosonic()) {
        const double nb = bose_occupation_abs(x);
        const double zeta = weighted_exposure(stats, cfg);
        return beta2_eps * (stats.k * (nb + 1.0) + stats.l * nb - zeta * nb * (nb + 1.0));
    }
    const double nf = fermi_occupation(x);
    const double xi = exposure_imbalance(stats, cfg);
    return beta2_eps * (stats.k * (1.0 - nf) - stats.l * nf + xi * nf * (1.0 - nf));
}

double exposure_imbalance(const SufficientStats& stats, const EstimationConfig& cfg) {
    return cfg.known_gamma * (cfg.ansatz.n0 * stats.tau - cfg.ansatz.n * stats.tau0);
}

double weighted_exposure(const SufficientStats& stats, const EstimationConfig& cfg) {
    const double kappa = cfg.known_gamma * std::pow(cfg.epsilon, cfg.bath.s);
    return kappa * ((cfg.ansatz.n - cfg.ansatz.n0) * stats.tau0 +
                    cfg.ansatz.n0 * (stats.tau - stats.tau0));
}

double weighted_exposure_alt(const SufficientStats& stats, const EstimationConfig& cfg) {
    const double kappa = cfg.known_gamma * std::pow(cfg.epsilon, cfg.bath.s);
    return kappa * ((cfg.ansatz.n - cfg.ansatz.n0) * stats.tau0 +
                    cfg.ansatz.n * (stats.tau - stats.tau0));
}

namespace {

void require_jumps(const SufficientStats& stats) {
    if (stats.k + stats.l < 1) throw NoJumpsError("no informative jumps in the record");
    if (stats.k < 0 || stats.l < 0 || stats.tau0 < 0.0 || stats.tau0 > stats.tau) {
        throw DomainError("inconsistent sufficient statistics");
    }
}

// Roots of a x^2 + b x + c without cancellation.
void stable_roots(double a, double b, double c, double& r1, double& r2) {
    const double disc = b * b - 4.0 * a * c;
    const double sq = std::sqrt(std::max(0.0, disc));
    const double q = -0.5 * (b + std::copysign(sq, b));
    r1 = q / a;
    r2 = (q != 0.0) ? c / q : -b / a - r1;
}

MleResult finish_fermionic(double occupation, const SufficientStats& stats,
                           const EstimationConfig& cfg) {
    MleResult out;
    out.occupation_hat = occupation;
    out.t_hat = cfg.epsilon / std::log((1.0 - occupation) / occupation);
    out.valid = occupation > 0.0 && occupation < 0.5;
    out.log_likelihood_at_hat =
        out.valid ? log_likelihood(stats, cfg, out.t_hat) : std::numeric_limits<double>::quiet_NaN();
    if (!out.valid && occupation == 0.0) out.t_hat = 0.0;
    return out;
}

MleResult finish_bosonic(double occupation, const SufficientStats& stats,
                         const EstimationConfig& cfg) {
    MleResult out;
    out.occupation_hat = occupation;
    out.t_hat = occupation > 0.0 ? cfg.epsilon / std::log1p(1.0 / occupation) : 0.0;
    out.valid = occupation > 0.0;
    out.log_likelihood_at_hat =
        out.valid ? log_likelihood(stats, cfg, out.t_hat) : std::numeric_limits<double>::quiet_NaN();
    return out;
}

MleResult bosonic_from_exposure(double zeta, const SufficientStats& stats,
                                const EstimationConfig& cfg) {
    require_jumps(stats);
    const double k = static_cast<double>(stats.k);
    const double l = static_cast<double>(stats.l);
    if (!(zeta > 0.0)) {
        // degenerate exposure: k (n+1) + l n = 0 has no nonnegative solution
        throw InvalidRootError("nonpositive exposure leaves no nonnegative occupation root");
    }
    double occupation;
    if (k == 0.0) {
        occupation = std::max(0.0, l / zeta - 1.0);
    } else {
        double r1, r2;
        stable_roots(zeta, zeta - k - l, -k, r1, r2);
        occupation = std::max(r1, r2);
        if (!(occupation >= 0.0) || !std::isfinite(occupation)) {
            throw InvalidRootError("no nonnegative occupation root; corrupted statistics");
        }
    }
    return finish_bosonic(occupation, stats, cfg);
}

} // namespace

MleResult mle_fermionic(const SufficientStats& stats, const EstimationConfig& cfg) {
    require_jumps(stats);
    const double k = static_cast<double>(stats.k);
    const double l = static_cast<double>(stats.l);
    const double xi = exposure_imbalance(stats, cfg);

    double occupation;
    if (std::abs(xi) < 1e-9 * (k + l)) {
        // balanced-exposure limit: the quadratic degenerates to (k+l) n = k
        occupation = k / (k + l);
    } else {
        double r1, r2;
        stable_roots(xi, k + l - xi, -k, r1, r2);
        constexpr double slack = 1e-12;
        double chosen = std::numeric_limits<double>::quiet_NaN();
        for (double r : {r1, r2}) {
            if (r >= -slack && r <= 1.0 + slack) {
                chosen = std::clamp(r, 0.0, 1.0);
                break;
            }
        }
        if (!std::isfinite(chosen)) {
            throw InvalidRootError("no occupation root in [0, 1]; corrupted statistics");
        }
        occupation = chosen;
    }
    return finish_fermionic(occupation, stats, cfg);
}

MleResult mle_bosonic(const SufficientStats& stats, const EstimationConfig& cfg) {
    return bosonic_from_exposure(weighted_exposure(stats, cfg), stats, cfg);
}

MleResult mle_bosonic_alt(const SufficientStats& stats, const EstimationConfig& cfg) {
    return bosonic_from_exposure(weighted_exposure_alt(stats, cfg), stats, cfg);
}

MleResult mle(const SufficientStats& stats, const EstimationConfig& cfg) {
    return cfg.bath.is_bosonic() ? mle_bosonic(stats, cfg) : mle_fermionic(stats, cfg);
}

CrbReport crb_benchmark(const EstimationConfig& cfg, double t_true, double tau, long replicas,
                        std::uint64_t seed, int workers) {
    if (replicas < 100) throw DomainError("crb_benchmark: need at least 100 replicas");
    if (!(t_true > 0.0) || !(tau > 0.0)) throw DomainError("crb_benchmark: bad temperature or tau");

    // dimensionless design at the true temperature
    const TwoLevelAnsatz at_true(cfg.ansatz.n, cfg.ansatz.n0, cfg.epsilon / t_true);
    BathModel bath = cfg.bath;
    bath.gamma = cfg.known_gamma;

    std::vector<double> t_hats(static_cast<std::size_t>(replicas),
                               std::numeric_limits<double>::quiet_NaN());
    parallel_for_indexed(replicas, workers, [&](long i) {
        Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i));
        const SufficientStats stats = simulate_coarse_stats(at_true, bath, t_true, tau, rng);
        if (stats.k + stats.l < 1) return;  // stays NaN, counted as invalid
        const MleResult r = mle(stats, cfg);
        if (r.valid) t_hats[static_cast<std::size_t>(i)] = r.t_hat;
    });

    // order-independent accumulation over the stored slots
    long valid = 0;
    double sum_sq = 0.0, sum = 0.0, sum_sq2 = 0.0;
    for (double t : t_hats) {
        if (std::isnan(t)) continue;
        ++valid;
        const double err2 = (t - t_true) * (t - t_true);
        sum += t;
        sum_sq += err2;
        sum_sq2 += err2 * err2;
    }

    CrbReport report;
    report.t_true = t_true;
    report.replicas = replicas;
    report.valid_replicas = valid;
    report.invalid_fraction = static_cast<double>(replicas - valid) / replicas;
    if (valid == 0) throw DomainError("crb_benchmark: no valid replicas");
    report.mean_t_hat = sum / valid;
    report.mse = sum_sq / valid;

    const double fi = fi_dimensional(fi_rate_two_level(at_true, bath), bath, t_true, tau);
    report.crb = 1.0 / fi;
    report.ratio = report.mse / report.crb;
    const double var_err2 = sum_sq2 / valid - report.mse * report.mse;
    report.ratio_stderr = std::sqrt(std::max(0.0, var_err2) / valid) / report.crb;
    return report;
}

ScoreVarianceFi fi_score_variance_mc(const EstimationConfig& cfg, double temperature, double tau,
                                     long replicas, std::uint64_t seed, int workers) {
    if (replicas < 100) throw DomainError("fi_score_variance_mc: need at least 100 replicas");
    if (!(temperature > 0.0) || !(tau > 0.0)) {
        throw DomainError("fi_score_variance_mc: bad temperature or tau");
    }

    const TwoLevelAnsatz at_t(cfg.ansatz.n, cfg.ansatz.n0, cfg.epsilon / temperature);
    BathModel bath = cfg.bath;
    bath.gamma = cfg.known_gamma;

    std::vector<double> scores(static_cast<std::size_t>(replicas), 0.0);
    parallel_for_indexed(replicas, workers, [&](long i) {
        Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i));
        const SufficientStats stats = simulate_coarse_stats(at_t, bath, temperature, tau, rng);
        scores[static_cast<std::size_t>(i)] = score(stats, cfg, temperature);
    });

    double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
    for (double s : scores) {
        sum += s;
        sum2 += s * s;
        sum4 += s * s * s * s;
    }
    const double n = static_cast<double>(replicas);

    ScoreVarianceFi out;
    out.replicas = replicas;
    out.tau = tau;
    out.fi = sum2 / n;
    out.fi_stderr = std::sqrt(std::max(0.0, sum4 / n - out.fi * out.fi) / n);
    out.mean_score = sum / n;
    out.mean_score_stderr = std::sqrt(std::max(0.0, sum2 / n - out.mean_score * out.mean_score) / n);
    return out;
}

} // namespace thermo
