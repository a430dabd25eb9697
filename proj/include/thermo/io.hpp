// io.hpp — file formats: spectrum/bath JSON, stats JSON, trajectory JSON-lines
#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "thermo/bath.hpp"
#include "thermo/spectrum.hpp"
#include "thermo/trajectory.hpp"

namespace thermo::io {

// {"levels": [...]} or the two-level shorthand
// {"two_level": {"n": N, "n0": N0, "x": gap}}.
EnergySpectrum read_spectrum(const nlohmann::json& j);
EnergySpectrum read_spectrum_file(const std::string& path);
nlohmann::json spectrum_json(const EnergySpectrum& spec);

// {"bath": "fermionic", "gamma": g} or {"bath": "bosonic", "gamma": g, "s": s},
// where s may be the string "1+" for the right limit s = 1 + 1e-4.
BathModel read_bath(const nlohmann::json& j);
BathModel read_bath_file(const std::string& path);
nlohmann::json bath_json(const BathModel& bath);

double parse_ohmicity(const nlohmann::json& value);

SufficientStats read_stats(const nlohmann::json& j);
SufficientStats read_stats_file(const std::string& path);
nlohmann::json stats_json(const SufficientStats& stats);

// One metadata header line, then one {"t": ..., "state": ...} line per record.
void write_trajectory_jsonl(std::ostream& os, const Trajectory& traj, const BathModel& bath,
                            double temperature, std::uint64_t seed);
Trajectory read_trajectory_jsonl(std::istream& is);

// FNV-1a over the canonical text form of the levels.
std::string spectrum_hash(const EnergySpectrum& spec);

} // namespace thermo::io
