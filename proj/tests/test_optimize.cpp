#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "thermo/fisher.hpp"
#include "thermo/optimize.hpp"

using namespace thermo;

TEST_CASE("maximize_1d nails a quadratic and rejects flat objectives") {
    const auto m = maximize_1d([](double x) { return -(x - 3.0) * (x - 3.0); }, 0.0, 10.0, 1e-6);
    CHECK(std::abs(m.x - 3.0) <= 1e-6);
    CHECK(m.converged);

    CHECK_THROWS_AS(maximize_1d([](double) { return 1.0; }, 0.0, 1.0, 1e-6), NoBracketError);
    CHECK_THROWS_AS(maximize_1d([](double) { return 0.0; }, 1.0, 0.0, 1e-6), DomainError);
}

TEST_CASE("asymptotic optimisation reproduces the reference constants") {
    const auto fermionic = optimize_asymptotic(BathModel::fermionic(1.0));
    CHECK(std::abs(fermionic.x_star - 2.9682) <= 2e-3);
    CHECK(std::abs(fermionic.c_star - 0.1848) <= 2e-3);
    CHECK(std::abs(fermionic.coefficient_per_level - 0.2596) <= 2e-3);
    CHECK(fermionic.converged);

    const auto s2 = optimize_asymptotic(BathModel::bosonic(1.0, 2.0));
    CHECK(std::abs(s2.x_star - 4.2681) <= 2e-3);
    CHECK(std::abs(s2.coefficient_per_level - 3.8782) <= 2e-3);

    const auto s1 = optimize_asymptotic(BathModel::bosonic(1.0, 1.0 + 1e-4));
    CHECK(std::abs(s1.x_star - 3.0880) <= 5e-3);
    CHECK(std::abs(s1.c_star - 0.1760) <= 5e-3);
    CHECK(std::abs(s1.coefficient_per_level - 1.0508) <= 5e-3);

    CHECK_THROWS_AS(optimize_asymptotic(BathModel::fermionic(1.0), FiVariant::Equilibrium),
                    DomainError);
}

TEST_CASE("reported 1-D optimum is first-order stationary") {
    const auto bath = BathModel::fermionic(1.0);
    const auto r = optimize_asymptotic(bath);
    const double h = 1e-5;
    const double grad =
        (fi_rate_asymptotic(r.x_star + h, bath) - fi_rate_asymptotic(r.x_star - h, bath)) /
        (2.0 * h);
    CHECK(std::abs(grad) <= 1e-4);
}

TEST_CASE("two-level optimisation beats an exhaustive grid at N = 4") {
    const auto bath = BathModel::fermionic(1.0);
    const auto r = optimize_two_level(4, bath);

    double grid_best = 0.0, grid_x = 0.0;
    int grid_n0 = 0;
    for (int n0 = 1; n0 <= 3; ++n0) {
        for (double x = 0.01; x <= 20.0; x += 1e-3) {
            const double v = fi_rate_two_level(TwoLevelAnsatz(4, n0, x), bath).value;
            if (v > grid_best) {
                grid_best = v;
                grid_x = x;
                grid_n0 = n0;
            }
        }
    }
    CHECK(r.fi_rate >= grid_best - 1e-9);
    CHECK(r.ansatz->n0 == grid_n0);
    CHECK(std::abs(r.x_star - grid_x) <= 2e-3);
}

TEST_CASE("two-level optimisation at scale tracks the asymptotic structure") {
    const auto bath = BathModel::fermionic(1.0);
    const auto r = optimize_two_level(1 << 10, bath);
    CHECK(std::abs(r.coefficient_per_level / 0.2596 - 1.0) < 0.01);
    CHECK(std::abs(r.ansatz->n0 - std::floor(0.1848 * 1024)) <= 2);
    CHECK(std::abs(r.x_star - 2.9682) <= 0.1);
    CHECK(r.fi_rate ==
          doctest::Approx(fi_rate_two_level(*r.ansatz, bath).value).epsilon(1e-10));

    const auto bosonic = optimize_two_level(1 << 8, BathModel::bosonic(1.0, 2.0));
    CHECK(std::abs(bosonic.ansatz->n0 - std::floor(0.1058 * 256)) <= 2);

    const int n0_1024 = static_cast<int>(std::floor(0.1058 * 1024));
    const double quoted =
        fi_rate_two_level(TwoLevelAnsatz(1 << 10, n0_1024, 4.2681), BathModel::bosonic(1.0, 2.0))
            .value;
    CHECK(std::abs(quoted / (3.8782 * 1024) - 1.0) < 0.01);
}

TEST_CASE("per-level two-level optimum is non-decreasing in N") {
    const auto bath = BathModel::fermionic(1.0);
    double prev = 0.0;
    for (int p = 2; p <= 10; ++p) {
        const double per_level = optimize_two_level(1 << p, bath).coefficient_per_level;
        CHECK(per_level >= prev - 1e-9);
        prev = per_level;
    }
    CHECK(std::abs(prev / 0.2596 - 1.0) < 0.01);
}

TEST_CASE("empirical variant optimisation tracks its own constants") {
    const auto r = optimize_two_level(1 << 9, BathModel::fermionic(1.0), FiVariant::Empirical);
    CHECK(std::abs(r.coefficient_per_level / 0.1448 - 1.0) < 0.01);
    CHECK(std::abs(r.x_star - 2.7233) <= 0.1);
}

TEST_CASE("global search: warm start dominance, determinism, grid oracle at N = 4") {
    const auto bath = BathModel::fermionic(1.0);

    const auto two_level = optimize_two_level(8, bath);
    const auto global = optimize_global(8, bath, 8, 42);
    CHECK(global.fi_rate >= two_level.fi_rate - 1e-6);
    CHECK(std::abs(global.fi_rate - two_level.fi_rate) / two_level.fi_rate < 0.01);

    const auto again = optimize_global(8, bath, 8, 42);
    CHECK(global.fi_rate == again.fi_rate);
    for (int i = 0; i < 8; ++i) {
        CHECK(global.best_spectrum->level(i) == again.best_spectrum->level(i));
    }

    // exhaustive 3-D oracle, step 0.05 on [0, 8]^3, level 0 pinned at zero
    const auto g4 = optimize_global(4, bath, 16, 7);
    double grid_best = 0.0;
    std::vector<double> levels(4, 0.0);
    for (int a = 0; a <= 160; ++a) {
        levels[1] = 0.05 * a;
        for (int b = 0; b <= 160; ++b) {
            levels[2] = 0.05 * b;
            for (int c = 0; c <= 160; ++c) {
                levels[3] = 0.05 * c;
                grid_best = std::max(grid_best, testutil::oracle_fi_rate(levels, false, 0.0));
            }
        }
    }
    CHECK(grid_best <= g4.fi_rate + 1e-3);

    const auto tl4 = optimize_two_level(4, bath);
    MESSAGE("N=4 global vs two-level: global=", g4.fi_rate, " two_level=", tl4.fi_rate,
            " rel gap=", (g4.fi_rate - tl4.fi_rate) / tl4.fi_rate);
}

TEST_CASE("global optimum at N = 64 has a two-cluster level structure") {
    const auto bath = BathModel::fermionic(1.0);
    const auto r = optimize_global(64, bath, 6, 3);
    const double split = 2.9682 / 2.0;
    double lo_sum = 0.0, hi_sum = 0.0, lo_max = 0.0, hi_spread = 0.0;
    int lo = 0, hi = 0;
    for (double x : r.best_spectrum->levels()) {
        if (x <= split) {
            lo_sum += x;
            lo_max = std::max(lo_max, x);
            ++lo;
        } else {
            hi_sum += x;
            ++hi;
        }
    }
    REQUIRE(lo > 0);
    REQUIRE(hi > 0);
    for (double x : r.best_spectrum->levels()) {
        if (x > split) hi_spread = std::max(hi_spread, std::abs(x - hi_sum / hi));
    }
    CHECK(std::abs((hi_sum / hi - lo_sum / lo) - 2.9682) <= 0.3);
    CHECK(lo_max <= 0.5);
    CHECK(hi_spread <= 0.5);
    CHECK(r.restarts_used == 6);

    CHECK_THROWS_AS(optimize_global(512, bath, 4, 1), DomainError);
    CHECK_THROWS_AS(optimize_global(8, bath, 0, 1), DomainError);
}
