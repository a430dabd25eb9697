#include "thermo/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "thermo/version.hpp"

namespace thermo::io {

namespace {

nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    nlohmann::json j;
    in >> j;  // nlohmann throws parse_error on malformed input
    return j;
}

} // namespace

EnergySpectrum read_spectrum(const nlohmann::json& j) {
    if (j.contains("two_level")) {
        const auto& t = j.at("two_level");
        return make_two_level(t.at("n").get<int>(), t.at("n0").get<int>(), t.at("x").get<double>());
    }
    if (j.contains("levels")) {
        return EnergySpectrum(j.at("levels").get<std::vector<double>>());
    }
    throw nlohmann::json::other_error::create(501, "spectrum needs 'levels' or 'two_level'", &j);
}

EnergySpectrum read_spectrum_file(const std::string& path) { return read_spectrum(parse_file(path)); }

nlohmann::json spectrum_json(const EnergySpectrum& spec) {
    return nlohmann::json{{"levels", std::vector<double>(spec.levels().begin(), spec.levels().end())}};
}

double parse_ohmicity(const nlohmann::json& value) {
    if (value.is_string()) {
        const auto s = value.get<std::string>();
        if (s == "1+") return 1.0 + 1e-4;  // right-limit shorthand
        return std::stod(s);
    }
    return value.get<double>();
}

BathModel read_bath(const nlohmann::json& j) {
    const auto kind = j.at("bath").get<std::string>();
    const double gamma = j.value("gamma", 1.0);
    if (kind == "fermionic") return BathModel::fermionic(gamma);
    if (kind == "bosonic") return BathModel::bosonic(gamma, parse_ohmicity(j.at("s")));
    throw nlohmann::json::other_error::create(502, "unknown bath kind '" + kind + "'", &j);
}

BathModel read_bath_file(const std::string& path) { return read_bath(parse_file(path)); }

nlohmann::json bath_json(const BathModel& bath) {
    nlohmann::json j{{"bath", bath.is_bosonic() ? "bosonic" : "fermionic"}, {"gamma", bath.gamma}};
    if (bath.is_bosonic()) j["s"] = bath.s;
    return j;
}

SufficientStats read_stats(const nlohmann::json& j) {
    SufficientStats s;
    s.k = j.at("k").get<long>();
    s.l = j.at("l").get<long>();
    s.tau0 = j.at("tau0").get<double>();
    s.tau = j.at("tau").get<double>();
    return s;
}

SufficientStats read_stats_file(const std::string& path) { return read_stats(parse_file(path)); }

nlohmann::json stats_json(const SufficientStats& stats) {
    return nlohmann::json{{"k", stats.k}, {"l", stats.l}, {"tau0", stats.tau0}, {"tau", stats.tau}};
}

void write_trajectory_jsonl(std::ostream& os, const Trajectory& traj, const BathModel& bath,
                            double temperature, std::uint64_t seed) {
    nlohmann::json header{{"meta",
                           {{"spectrum_hash", spectrum_hash(EnergySpectrum(traj.levels))},
                            {"levels", traj.levels},
                            {"bath", bath_json(bath)},
                            {"T", temperature},
                            {"tau", traj.horizon},
                            {"seed", seed},
                            {"version", std::string(kVersion)}}}};
    os << header.dump() << '\n';
    for (const auto& r : traj.records) {
        os << "{\"t\": " << nlohmann::json(r.time).dump() << ", \"state\": " << r.state << "}\n";
    }
}

Trajectory read_trajectory_jsonl(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::ios_base::failure("empty trajectory stream");
    const auto header = nlohmann::json::parse(line);
    Trajectory traj;
    traj.levels = header.at("meta").at("levels").get<std::vector<double>>();
    traj.horizon = header.at("meta").at("tau").get<double>();
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        traj.records.push_back({j.at("t").get<double>(), j.at("state").get<int>()});
    }
    if (traj.records.empty()) throw std::ios_base::failure("trajectory stream has no records");
    traj.initial_state = traj.records.front().state;
    return traj;
}

std::string spectrum_hash(const EnergySpectrum& spec) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
    char buf[32];
    for (double x : spec.levels()) {
        const int len = std::snprintf(buf, sizeof buf, "%.17g;", x);
        for (int i = 0; i < len; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return std::string(out);
}

} // namespace thermo::io
