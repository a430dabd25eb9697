#include <doctest.h>

#include <cmath>
#include <vector>

#include "thermo/bath.hpp"
#include "thermo/rng.hpp"
#include "thermo/spectrum.hpp"

using namespace thermo;

TEST_CASE("bath model validation") {
    CHECK_THROWS_AS(BathModel::fermionic(0.0), DomainError);
    CHECK_THROWS_AS(BathModel::bosonic(1.0, 1.0), DomainError);  // sub-Ohmic excluded
    CHECK_THROWS_AS(BathModel::bosonic(1.0, 0.5), DomainError);
    CHECK_NOTHROW(BathModel::bosonic(1.0, 1.0 + 1e-4));
}

TEST_CASE("fermionic rate: half at zero gap, detailed-balance ratio") {
    const auto bath = BathModel::fermionic(1.0);
    CHECK(rate(bath, 0.0) == doctest::Approx(0.5).epsilon(1e-15));

    Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        const double x = -8.0 + 16.0 * rng.uniform();
        if (std::abs(x) < 1e-3) continue;
        CHECK(rate(bath, x) / rate(bath, -x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
        CHECK(rate(bath, x) > 0.0);
        CHECK(rate(bath, x) < 1.0);
    }
    // stable far into both tails
    CHECK(rate(bath, 600.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rate(bath, -600.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("bosonic rate vanishes continuously at zero gap") {
    const auto bath = BathModel::bosonic(1.0, 2.0);
    CHECK(rate(bath, 0.0) == 0.0);
    // series check: |x|^{s-1} (1 - x/2 + x^2/12) near zero
    for (double x : {1e-3, 1e-5, -1e-3, -1e-5}) {
        const double expected = std::abs(x) * (1.0 - x / 2.0 + x * x / 12.0);
        CHECK(rate(bath, x) == doctest::Approx(expected).epsilon(1e-6));
    }
    // monotone decay towards zero from either side
    CHECK(rate(bath, 1e-2) < rate(bath, 1e-1));
    CHECK(rate(bath, -1e-2) < rate(bath, -1e-1));
}

TEST_CASE("FI kernel agrees with a finite-difference derivative oracle") {
    // kernel(x) must equal |d Gamma / d beta|^2 / Gamma at beta = 1, omega = x
    Rng rng(97);
    const double h = 1e-6;

    const auto fermionic = BathModel::fermionic(1.0);
    for (int i = 0; i < 20; ++i) {
        const double x = 0.1 + 19.9 * rng.uniform();
        const double d = (fermi_occupation((1.0 + h) * x) - fermi_occupation((1.0 - h) * x)) /
                         (2.0 * h);
        const double expected = d * d / fermi_occupation(x);
        CHECK(rate_fi_kernel(fermionic, x) == doctest::Approx(expected).epsilon(1e-5));
    }

    for (double s : {1.5, 2.0, 3.0}) {
        const auto bosonic = BathModel::bosonic(1.0, s);
        for (int i = 0; i < 20; ++i) {
            const double x = 0.1 + 19.9 * rng.uniform();
            const double kappa = std::pow(x, s);  // beta-independent spectral factor
            const double d =
                kappa *
                (bose_occupation_abs((1.0 + h) * x) - bose_occupation_abs((1.0 - h) * x)) /
                (2.0 * h);
            const double expected = d * d / (kappa * bose_occupation_abs(x));
            CHECK(rate_fi_kernel(bosonic, x) == doctest::Approx(expected).epsilon(1e-5));
        }
    }

    // downhill gaps carry the Boltzmann-suppressed kernel; spot check both baths
    const double xn = -2.3;
    const double dn =
        (fermi_occupation((1.0 + h) * xn) - fermi_occupation((1.0 - h) * xn)) / (2.0 * h);
    CHECK(rate_fi_kernel(fermionic, xn) ==
          doctest::Approx(dn * dn / fermi_occupation(xn)).epsilon(1e-5));
}

TEST_CASE("FI kernel fixed points") {
    const auto fermionic = BathModel::fermionic(1.0);
    CHECK(rate_fi_kernel(fermionic, 0.0) == 0.0);
    // kernel value at the quoted reset gap
    CHECK(rate_fi_kernel(fermionic, 2.5331) == doctest::Approx(0.4052).epsilon(5e-3));
    CHECK(rate_fi_kernel(BathModel::bosonic(1.0, 2.0), 3.7240) ==
          doctest::Approx(4.9953).epsilon(1e-3));
    CHECK(rate_fi_kernel(BathModel::bosonic(1.0, 2.0), 0.0) == 0.0);
}

TEST_CASE("paired kernel equals forward plus weighted backward kernel") {
    Rng rng(11);
    for (const auto& bath : {BathModel::fermionic(1.0), BathModel::bosonic(1.0, 1.7)}) {
        for (int i = 0; i < 20; ++i) {
            const double x = 0.05 + 10.0 * rng.uniform();
            const double split = rate_fi_kernel(bath, x) + std::exp(-x) * rate_fi_kernel(bath, -x);
            CHECK(paired_fi_kernel(bath, x) == doctest::Approx(split).epsilon(1e-12));
        }
    }
}

TEST_CASE("generator: two-level entries, conservation, detailed balance, stationarity") {
    const auto bath = BathModel::fermionic(1.3);
    const double x = 1.9;
    const auto g2 = generator(EnergySpectrum({0.0, x}), bath);
    CHECK(g2(0, 1) == doctest::Approx(1.3 * fermi_occupation(x)).epsilon(1e-15));
    CHECK(g2(1, 0) == doctest::Approx(1.3 * fermi_occupation(-x)).epsilon(1e-15));

    Rng rng(3);
    for (const auto& model : {BathModel::fermionic(0.8), BathModel::bosonic(1.1, 2.0)}) {
        std::vector<double> levels(6);
        for (auto& v : levels) v = 4.0 * rng.uniform();
        const EnergySpectrum spec(levels);
        const auto g = generator(spec, model);
        const auto p = equilibrium_distribution(spec);

        double max_rate = 0.0;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) max_rate = std::max(max_rate, std::abs(g(i, j)));

        for (int i = 0; i < 6; ++i) {
            double row = 0.0;
            for (int j = 0; j < 6; ++j) row += g(i, j);
            CHECK(std::abs(row) <= 1e-10 * max_rate);  // conservation
            for (int j = 0; j < 6; ++j) {
                if (i == j) continue;
                CHECK(g(i, j) >= 0.0);
                const double balance = std::exp(-(spec.level(j) - spec.level(i))) * g(j, i);
                if (g(i, j) > 0.0) {
                    CHECK(g(i, j) == doctest::Approx(balance).epsilon(1e-10));
                }
            }
        }
        for (int j = 0; j < 6; ++j) {
            double flux = 0.0;
            for (int i = 0; i < 6; ++i) flux += p[i] * g(i, j);
            CHECK(std::abs(flux) <= 1e-10 * max_rate);  // p^eq is stationary
        }
    }
}

TEST_CASE("zero-gap pairs: fermionic rate gamma/2, bosonic rate 0 with a flag") {
    const EnergySpectrum degenerate({0.0, 0.0, 1.0});
    const auto gf = generator(degenerate, BathModel::fermionic(2.0));
    CHECK(gf(0, 1) == doctest::Approx(1.0).epsilon(1e-15));  // gamma/2
    CHECK_FALSE(gf.degenerate_bosonic_pairs);

    const auto gb = generator(degenerate, BathModel::bosonic(1.0, 2.0));
    CHECK(gb(0, 1) == 0.0);
    CHECK(gb.degenerate_bosonic_pairs);
}

TEST_CASE("bosonic generator scales with T^s") {
    const EnergySpectrum spec({0.0, 2.0});
    const auto bath = BathModel::bosonic(1.0, 2.0);
    const auto g1 = generator(spec, bath, 1.0);
    const auto g2 = generator(spec, bath, 2.0);
    CHECK(g2(0, 1) == doctest::Approx(4.0 * g1(0, 1)).epsilon(1e-12));
}
