// trajectory.hpp — monitored jump-process simulation and coarse statistics
//
// The simulator is exact and event driven: exponential waiting time at the
// current level's total exit rate, destination drawn proportionally to the
// off-diagonal rates. observe() models the finite-rate measurement record
// separately; the exact trajectory is its fast-observation limit.
#pragma once

#include <cstdint>
#include <vector>

#include "thermo/bath.hpp"
#include "thermo/rng.hpp"
#include "thermo/spectrum.hpp"

namespace thermo {

struct JumpRecord {
    double time;
    int state;
};

struct Trajectory {
    std::vector<JumpRecord> records;  // first record at t = 0; consecutive states differ
    double horizon = 0.0;             // tau
    int initial_state = 0;
    std::vector<double> levels;       // energy of each state label

    int jump_count() const { return static_cast<int>(records.size()) - 1; }
    int state_at(double t) const;  // state entered at or before t
};

struct ObservationSequence {
    int m = 0;                    // sample count minus one; grid t_k = k tau / m
    double dt = 0.0;
    std::vector<int> samples;     // length m + 1
    std::vector<double> levels;
};

// Coarse-grained record of a two-manifold trajectory: up-jump count, down-jump
// count, ground-manifold residence time and the horizon.
struct SufficientStats {
    long k = 0;
    long l = 0;
    double tau0 = 0.0;
    double tau = 0.0;
};

struct InitialState {
    bool thermal = true;
    int fixed_index = 0;

    static InitialState thermal_start() { return InitialState{}; }
    static InitialState fixed(int index) { return InitialState{false, index}; }
};

inline constexpr long kMaxTrajectoryJumps = 10'000'000;

Trajectory simulate_gillespie(const EnergySpectrum& spec, const BathModel& bath, double temperature,
                              double tau, std::uint64_t seed, InitialState initial = {});

// Piecewise-constant readout on the equidistant grid t_k = k tau / m.
ObservationSequence observe(const Trajectory& traj, int m);

SufficientStats sufficient_stats(const Trajectory& traj, const TwoLevelAnsatz& ansatz);

// Same statistics reconstructed from a finite-rate observation record; biased
// when several jumps fall between consecutive samples.
SufficientStats stats_from_observations(const ObservationSequence& obs, const TwoLevelAnsatz& ansatz);

// Aggregate manifold-exit rates of the exact coarse-grained two-state chain.
struct CoarseRates {
    double up;    // (n - n0) * pair rate up
    double down;  // n0 * pair rate down
};

CoarseRates coarse_rates(const TwoLevelAnsatz& ansatz, const BathModel& bath, double temperature);

// Streaming simulators: accumulate (k, l, tau0) without storing the record.
SufficientStats simulate_coarse_stats(const TwoLevelAnsatz& ansatz, const BathModel& bath,
                                      double temperature, double tau, Rng& rng,
                                      InitialState initial = {});
SufficientStats simulate_stats(const EnergySpectrum& spec, const BathModel& bath, double temperature,
                               double tau, std::uint64_t seed, const TwoLevelAnsatz& ansatz,
                               InitialState initial = {});

} // namespace thermo
