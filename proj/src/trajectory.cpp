#include "thermo/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace thermo {

namespace {

constexpr double kManifoldTol = 1e-9;

// true -> ground manifold, false -> excited; throws when a level fits neither
bool classify_level(double level, const TwoLevelAnsatz& ansatz) {
    if (std::abs(level) <= kManifoldTol) return true;
    if (std::abs(level - ansatz.gap) <= kManifoldTol) return false;
    throw PartitionMismatchError("level " + std::to_string(level) +
                                 " does not match the two-manifold structure");
}

std::vector<bool> classify_levels(const std::vector<double>& levels, const TwoLevelAnsatz& ansatz) {
    std::vector<bool> ground(levels.size());
    int n_ground = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        ground[i] = classify_level(levels[i], ansatz);
        n_ground += ground[i] ? 1 : 0;
    }
    if (static_cast<int>(levels.size()) != ansatz.n || n_ground != ansatz.n0) {
        throw PartitionMismatchError("manifold sizes do not match the ansatz");
    }
    return ground;
}

int sample_initial(const EnergySpectrum& spec, InitialState initial, Rng& rng) {
    if (!initial.thermal) {
        if (initial.fixed_index < 0 || initial.fixed_index >= spec.size()) {
            throw DomainError("initial state index out of range");
        }
        return initial.fixed_index;
    }
    const auto p = gibbs_weights(spec.levels());
    return static_cast<int>(rng.categorical(p, 1.0));
}

} // namespace

int Trajectory::state_at(double t) const {
    // last record with time <= t
    auto it = std::upper_bound(records.begin(), records.end(), t,
                               [](double value, const JumpRecord& r) { return value < r.time; });
    if (it == records.begin()) return initial_state;
    return std::prev(it)->state;
}

Trajectory simulate_gillespie(const EnergySpectrum& spec, const BathModel& bath, double temperature,
                              double tau, std::uint64_t seed, InitialState initial) {
    if (!(tau > 0.0)) throw DomainError("simulate_gillespie: tau must be positive");
    const GeneratorMatrix g = generator(spec, bath, temperature);
    const int n = spec.size();

    Rng rng(seed);
    Trajectory traj;
    traj.horizon = tau;
    traj.levels.assign(spec.levels().begin(), spec.levels().end());
    traj.initial_state = sample_initial(spec, initial, rng);
    traj.records.push_back({0.0, traj.initial_state});

    std::vector<double> row(static_cast<std::size_t>(n));
    double t = 0.0;
    int state = traj.initial_state;
    while (true) {
        const double exit = g.exit_rate(state);
        if (!(exit > 0.0)) {
            throw AbsorbingStateError("state " + std::to_string(state) + " has zero exit rate");
        }
        const double wait = rng.exponential(exit);
        if (t + wait >= tau) break;
        t += wait;
        for (int j = 0; j < n; ++j) {
            row[static_cast<std::size_t>(j)] = (j == state) ? 0.0 : g(state, j);
        }
        state = static_cast<int>(rng.categorical(row, exit));
        traj.records.push_back({t, state});
        if (traj.jump_count() > kMaxTrajectoryJumps) {
            throw TrajectoryOverflowError("trajectory exceeded " +
                                          std::to_string(kMaxTrajectoryJumps) +
                                          " jumps; use the streaming statistics mode");
        }
    }
    return traj;
}

ObservationSequence observe(const Trajectory& traj, int m) {
    if (m < 1) throw DomainError("observe: m must be at least 1");
    ObservationSequence obs;
    obs.m = m;
    obs.dt = traj.horizon / m;
    obs.levels = traj.levels;
    obs.samples.resize(static_cast<std::size_t>(m) + 1);
    std::size_t cursor = 0;
    for (int k = 0; k <= m; ++k) {
        const double t = traj.horizon * k / m;
        while (cursor + 1 < traj.records.size() && traj.records[cursor + 1].time <= t) ++cursor;
        obs.samples[static_cast<std::size_t>(k)] = traj.records[cursor].state;
    }
    return obs;
}

SufficientStats sufficient_stats(const Trajectory& traj, const TwoLevelAnsatz& ansatz) {
    const auto ground = classify_levels(traj.levels, ansatz);
    SufficientStats stats;
    stats.tau = traj.horizon;
    for (std::size_t i = 0; i < traj.records.size(); ++i) {
        const bool in_ground = ground[static_cast<std::size_t>(traj.records[i].state)];
        const double t0 = traj.records[i].time;
        const double t1 = (i + 1 < traj.records.size()) ? traj.records[i + 1].time : traj.horizon;
        if (in_ground) stats.tau0 += t1 - t0;
        if (i + 1 < traj.records.size()) {
            const bool next_ground = ground[static_cast<std::size_t>(traj.records[i + 1].state)];
            if (in_ground && !next_ground) ++stats.k;
            if (!in_ground && next_ground) ++stats.l;
        }
    }
    return stats;
}

SufficientStats stats_from_observations(const ObservationSequence& obs, const TwoLevelAnsatz& ansatz) {
    const auto ground = classify_levels(obs.levels, ansatz);
    SufficientStats stats;
    stats.tau = obs.dt * obs.m;
    for (int i = 0; i <= obs.m; ++i) {
        const bool in_ground = ground[static_cast<std::size_t>(obs.samples[static_cast<std::size_t>(i)])];
        if (i < obs.m && in_ground) stats.tau0 += obs.dt;
        if (i < obs.m) {
            const bool next_ground =
                ground[static_cast<std::size_t>(obs.samples[static_cast<std::size_t>(i) + 1])];
            if (in_ground && !next_ground) ++stats.k;
            if (!in_ground && next_ground) ++stats.l;
        }
    }
    return stats;
}

CoarseRates coarse_rates(const TwoLevelAnsatz& ansatz, const BathModel& bath, double temperature) {
    if (!(temperature > 0.0)) throw DomainError("coarse_rates: temperature must be positive");
    const double scale =
        bath.is_bosonic() ? bath.gamma * std::pow(temperature, bath.s) : bath.gamma;
    const double up_pair = scale * rate(bath, ansatz.gap);
    const double down_pair = scale * rate(bath, -ansatz.gap);
    return CoarseRates{ansatz.excited() * up_pair, ansatz.n0 * down_pair};
}

SufficientStats simulate_coarse_stats(const TwoLevelAnsatz& ansatz, const BathModel& bath,
                                      double temperature, double tau, Rng& rng,
                                      InitialState initial) {
    if (!(tau > 0.0)) throw DomainError("simulate_coarse_stats: tau must be positive");
    const CoarseRates rates = coarse_rates(ansatz, bath, temperature);
    if (!(rates.up > 0.0) || !(rates.down > 0.0)) {
        throw AbsorbingStateError("coarse chain has a zero manifold-exit rate");
    }

    bool in_ground;
    if (initial.thermal) {
        in_ground = rng.uniform() < rates.down / (rates.up + rates.down);
    } else {
        in_ground = initial.fixed_index < ansatz.n0;
    }

    SufficientStats stats;
    stats.tau = tau;
    double t = 0.0;
    while (true) {
        const double exit = in_ground ? rates.up : rates.down;
        const double wait = rng.exponential(exit);
        if (t + wait >= tau) {
            if (in_ground) stats.tau0 += tau - t;
            break;
        }
        if (in_ground) {
            stats.tau0 += wait;
            ++stats.k;
        } else {
            ++stats.l;
        }
        t += wait;
        in_ground = !in_ground;
    }
    return stats;
}

SufficientStats simulate_stats(const EnergySpectrum& spec, const BathModel& bath, double temperature,
                               double tau, std::uint64_t seed, const TwoLevelAnsatz& ansatz,
                               InitialState initial) {
    if (!(tau > 0.0)) throw DomainError("simulate_stats: tau must be positive");
    const std::vector<double> levels(spec.levels().begin(), spec.levels().end());
    const auto ground = classify_levels(levels, ansatz);
    const GeneratorMatrix g = generator(spec, bath, temperature);
    const int n = spec.size();

    Rng rng(seed);
    int state = sample_initial(spec, initial, rng);

    SufficientStats stats;
    stats.tau = tau;
    std::vector<double> row(static_cast<std::size_t>(n));
    double t = 0.0;
    while (true) {
        const double exit = g.exit_rate(state);
        if (!(exit > 0.0)) {
            throw AbsorbingStateError("state " + std::to_string(state) + " has zero exit rate");
        }
        const bool in_ground = ground[static_cast<std::size_t>(state)];
        const double wait = rng.exponential(exit);
        if (t + wait >= tau) {
            if (in_ground) stats.tau0 += tau - t;
            break;
        }
        if (in_ground) stats.tau0 += wait;
        t += wait;
        for (int j = 0; j < n; ++j) {
            row[static_cast<std::size_t>(j)] = (j == state) ? 0.0 : g(state, j);
        }
        const int next = static_cast<int>(rng.categorical(row, exit));
        const bool next_ground = ground[static_cast<std::size_t>(next)];
        if (in_ground && !next_ground) ++stats.k;
        if (!in_ground && next_ground) ++stats.l;
        state = next;
    }
    return stats;
}

} // namespace thermo
