#include "thermo/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "thermo/rng.hpp"

namespace thermo {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr double kGapSearchHi = 50.0;           // kernels decay exponentially past their maxima

Maximum1d maximize_impl(const std::function<double(double)>& f, double lo, double hi, double tol,
                        int scan_points) {
    if (!(hi > lo)) throw DomainError("maximize_1d: need lo < hi");
    if (!(tol > 0.0)) throw DomainError("maximize_1d: tol must be positive");

    long evals = 0;
    const auto eval = [&](double x) {
        ++evals;
        return f(x);
    };

    // coarse scan to bracket the maximum
    std::vector<double> xs(static_cast<std::size_t>(scan_points));
    std::vector<double> fs(static_cast<std::size_t>(scan_points));
    double fmax = -HUGE_VAL, fmin = HUGE_VAL;
    int best = 0;
    for (int i = 0; i < scan_points; ++i) {
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (scan_points - 1);
        const double v = eval(xs[static_cast<std::size_t>(i)]);
        fs[static_cast<std::size_t>(i)] = v;
        if (v > fmax) {
            fmax = v;
            best = i;
        }
        fmin = std::min(fmin, v);
    }
    if (!(fmax > fmin)) {
        throw NoBracketError("maximize_1d: objective is flat over the search interval");
    }

    double a = xs[static_cast<std::size_t>(std::max(0, best - 1))];
    double b = xs[static_cast<std::size_t>(std::min(scan_points - 1, best + 1))];

    // golden-section shrinkage
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = eval(x1);
    double f2 = eval(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = eval(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = eval(x1);
        }
    }

    double xb = (f1 > f2) ? x1 : x2;
    double fb = std::max(f1, f2);

    // parabolic polish through (a, xb, b)
    for (int round = 0; round < 2; ++round) {
        const double fa = eval(a);
        const double fc = eval(b);
        const double num = (xb - a) * (xb - a) * (fb - fc) - (xb - b) * (xb - b) * (fb - fa);
        const double den = (xb - a) * (fb - fc) - (xb - b) * (fb - fa);
        if (den == 0.0) break;
        const double cand = xb - 0.5 * num / den;
        if (!(cand > a) || !(cand < b)) break;
        const double fcand = eval(cand);
        if (fcand > fb) {
            xb = cand;
            fb = fcand;
        }
    }

    const bool interior = xb > lo + tol && xb < hi - tol;
    return Maximum1d{xb, fb, evals, interior};
}

double two_level_objective(int n, int n0, double gap, const BathModel& bath, FiVariant variant) {
    switch (variant) {
        case FiVariant::Monitored:
            return fi_rate_two_level(TwoLevelAnsatz(n, n0, gap), bath).value;
        case FiVariant::Empirical:
            return empirical_fi_two_level(TwoLevelAnsatz(n, n0, gap), bath).value;
        case FiVariant::Equilibrium:
            return equilibrium_fi_two_level(n, n0, gap);
    }
    throw DomainError("unknown FI variant");
}

} // namespace

Maximum1d maximize_1d(const std::function<double(double)>& objective, double lo, double hi, double tol) {
    return maximize_impl(objective, lo, hi, tol, 65);
}

OptimizationResult optimize_asymptotic(const BathModel& bath, FiVariant variant) {
    if (variant == FiVariant::Equilibrium) {
        throw DomainError("equilibrium FI has no linear-in-N asymptotic coefficient");
    }
    const auto coeff = [&](double x) {
        return variant == FiVariant::Monitored ? fi_rate_asymptotic(x, bath)
                                               : empirical_fi_asymptotic(x, bath);
    };
    const auto best = maximize_impl(coeff, 1e-4, kGapSearchHi, 1e-9, 129);
    // monotone-tail guard: the objective must already be falling at the bound
    if (coeff(kGapSearchHi) >= best.value || coeff(kGapSearchHi) >= coeff(kGapSearchHi - 0.5)) {
        throw DomainError("optimize_asymptotic: objective not decreasing at the search bound");
    }

    OptimizationResult out;
    out.x_star = best.x;
    out.c_star = optimal_degeneracy_fraction(best.x, variant);
    out.coefficient_per_level = best.value;
    out.fi_rate = best.value;
    out.iterations = best.evaluations;
    out.restarts_used = 1;
    out.converged = best.converged;
    return out;
}

OptimizationResult optimize_two_level(int n, const BathModel& bath, FiVariant variant) {
    if (n < 2) throw DomainError("optimize_two_level: n must be at least 2");

    std::vector<int> candidates;
    if (n <= 512 || variant == FiVariant::Equilibrium) {
        candidates.resize(static_cast<std::size_t>(n - 1));
        for (int i = 1; i < n; ++i) candidates[static_cast<std::size_t>(i - 1)] = i;
    } else {
        // window around the asymptotically optimal ground fraction
        const auto asym = optimize_asymptotic(bath, variant);
        const int center = static_cast<int>(std::floor(asym.c_star * n));
        const int half = std::max(16, n / 100);
        for (int n0 = std::max(1, center - half); n0 <= std::min(n - 1, center + half); ++n0) {
            candidates.push_back(n0);
        }
    }

    OptimizationResult out;
    long evals = 0;
    double best_value = -HUGE_VAL;
    int best_n0 = candidates.front();
    double best_x = 1.0;
    bool best_converged = false;
    for (int n0 : candidates) {
        const auto m = maximize_impl(
            [&](double x) { return two_level_objective(n, n0, x, bath, variant); }, 1e-6,
            kGapSearchHi, 1e-10, 65);
        evals += m.evaluations;
        if (m.value > best_value) {
            best_value = m.value;
            best_n0 = n0;
            best_x = m.x;
            best_converged = m.converged;
        }
    }

    out.ansatz = TwoLevelAnsatz(n, best_n0, best_x);
    out.best_spectrum = out.ansatz->to_spectrum();
    out.fi_rate = best_value;
    out.x_star = best_x;
    out.c_star = static_cast<double>(best_n0) / n;
    out.coefficient_per_level = best_value / n;
    out.iterations = evals;
    out.restarts_used = 1;
    out.converged = best_converged;
    return out;
}

namespace {

struct RestartOutcome {
    std::vector<double> levels;  // full spectrum including the pinned zero
    double value = -HUGE_VAL;
    long evaluations = 0;
    bool converged = false;
};

RestartOutcome refine_levels(std::vector<double> free_levels, const BathModel& bath, double line_hi) {
    RestartOutcome out;
    std::vector<double> levels(free_levels.size() + 1, 0.0);  // level 0 pinned by shift invariance

    const auto objective = [&](const std::vector<double>& free) {
        for (std::size_t i = 0; i < free.size(); ++i) levels[i + 1] = free[i];
        return fi_rate_exact(EnergySpectrum(levels), bath).value;
    };

    double current = objective(free_levels);
    ++out.evaluations;

    const int max_sweeps = 80;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const double before = current;
        for (std::size_t i = 0; i < free_levels.size(); ++i) {
            const auto line = maximize_impl(
                [&](double x) {
                    std::vector<double> trial = free_levels;
                    trial[i] = x;
                    return objective(trial);
                },
                0.0, line_hi, 1e-8, 17);
            out.evaluations += line.evaluations;
            if (line.value > current) {
                free_levels[i] = line.x;
                current = line.value;
            }
        }
        if (current - before <= 1e-10 * std::max(1.0, std::abs(current))) {
            converged = true;
            break;
        }
    }

    for (std::size_t i = 0; i < free_levels.size(); ++i) levels[i + 1] = free_levels[i];
    out.levels = levels;
    out.value = current;
    out.converged = converged;
    return out;
}

} // namespace

OptimizationResult optimize_global(int n, const BathModel& bath, int restarts, std::uint64_t seed,
                                   int workers) {
    if (n < 2 || n > 256) throw DomainError("optimize_global: n must lie in [2, 256]");
    if (restarts < 1) throw DomainError("optimize_global: restarts must be at least 1");

    const double x_guess = optimize_asymptotic(bath).x_star;
    const double line_hi = std::min(kGapSearchHi, 3.0 * x_guess + 5.0);
    const auto warm = optimize_two_level(n, bath);

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
    const auto run_restart = [&](int r) {
        std::vector<double> free_levels(static_cast<std::size_t>(n - 1));
        if (r == 0) {
            const auto& spec = *warm.best_spectrum;
            for (int i = 1; i < n; ++i) free_levels[static_cast<std::size_t>(i - 1)] = spec.level(i);
        } else {
            Rng rng = Rng::split(seed, static_cast<std::uint64_t>(r));
            for (auto& x : free_levels) x = rng.uniform() * 3.0 * x_guess;
        }
        outcomes[static_cast<std::size_t>(r)] = refine_levels(std::move(free_levels), bath, line_hi);
    };

    if (workers <= 1) {
        for (int r = 0; r < restarts; ++r) run_restart(r);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        const int count = std::min(workers, restarts);
        pool.reserve(static_cast<std::size_t>(count));
        for (int w = 0; w < count; ++w) {
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1)) run_restart(r);
            });
        }
        for (auto& t : pool) t.join();
    }

    // deterministic reduction: strict improvement only, ties keep the earliest restart
    int best_r = 0;
    long total_evals = 0;
    for (int r = 0; r < restarts; ++r) {
        total_evals += outcomes[static_cast<std::size_t>(r)].evaluations;
        if (outcomes[static_cast<std::size_t>(r)].value > outcomes[static_cast<std::size_t>(best_r)].value) {
            best_r = r;
        }
    }
    const auto& top = outcomes[static_cast<std::size_t>(best_r)];

    OptimizationResult out;
    out.best_spectrum = EnergySpectrum(top.levels);
    out.fi_rate = top.value;

    // report the two-cluster structure of the optimised levels
    const double split = x_guess / 2.0;
    double lo_sum = 0.0, hi_sum = 0.0;
    int lo_count = 0, hi_count = 0;
    for (double x : out.best_spectrum->levels()) {
        if (x <= split) {
            lo_sum += x;
            ++lo_count;
        } else {
            hi_sum += x;
            ++hi_count;
        }
    }
    if (lo_count > 0 && hi_count > 0) {
        out.x_star = hi_sum / hi_count - lo_sum / lo_count;
        out.c_star = static_cast<double>(lo_count) / n;
    }
    out.coefficient_per_level = top.value / n;
    out.iterations = total_evals;
    out.restarts_used = restarts;
    out.converged = top.converged;
    return out;
}

} // namespace thermo
