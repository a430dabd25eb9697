// bath.hpp — bath models, transition rates, FI kernels, generator construction
#pragma once

#include <vector>

#include "thermo/errors.hpp"
#include "thermo/spectrum.hpp"

namespace thermo {

enum class BathKind { Fermionic, BosonicOhmic };

struct BathModel {
    BathKind kind = BathKind::Fermionic;
    double gamma = 1.0;  // coupling strength, rate units
    double s = 0.0;      // ohmicity exponent, bosonic only, strictly > 1

    static BathModel fermionic(double gamma = 1.0);
    static BathModel bosonic(double gamma, double s);

    bool is_bosonic() const { return kind == BathKind::BosonicOhmic; }
};

// Occupation functions in overflow-safe form.
double fermi_occupation(double x);      // 1/(1+e^x)
double bose_occupation_abs(double x);   // |1/(e^x - 1)|, emission branch for x < 0

// Dimensionless per-pair rate in units of gamma (bosonic in units of gamma T^s):
// fermionic 1/(1+e^x); bosonic |x|^s / |e^x - 1| with the s > 1 limit 0 at x = 0.
double rate(const BathModel& bath, double gap);

// Per-pair FI summand so that F = sum_i p_i sum_{j != i} kernel(x_j - x_i):
// fermionic x^2 e^{2x} / (1+e^x)^3, bosonic |x|^{2+s} e^{2x} / |e^x - 1|^3.
double rate_fi_kernel(const BathModel& bath, double gap);

// Forward kernel plus Boltzmann-weighted backward kernel at gap x > 0; the
// per-pair contribution of one ground/excited pair to the two-level FI rate.
double paired_fi_kernel(const BathModel& bath, double gap);

// N x N transition-rate matrix, row convention: entry (i, j) is the jump rate
// from level i to level j; diagonals close each row to zero.
class GeneratorMatrix {
public:
    explicit GeneratorMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    int size() const { return n_; }
    double operator()(int i, int j) const { return a_[idx(i, j)]; }
    double& at(int i, int j) { return a_[idx(i, j)]; }
    double exit_rate(int i) const { return -(*this)(i, i); }

    // True when a bosonic bath met exactly-degenerate levels; those pairs get
    // rate zero (the s > 1 limit) and the manifolds do not mix.
    bool degenerate_bosonic_pairs = false;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j);
    }

    int n_;
    std::vector<double> a_;
};

// Physical generator at the given temperature (k_B = 1). Fermionic rates
// depend only on the dimensionless gaps; bosonic ones carry the spectral
// density factor gamma (T x)^s.
GeneratorMatrix generator(const EnergySpectrum& spec, const BathModel& bath, double temperature = 1.0);

} // namespace thermo
