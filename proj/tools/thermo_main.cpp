// thermo — command-line front end: reproduce reference constants and tables,
// run optimisations, simulations, estimation benchmarks and robustness sweeps.
//
// Exit codes: 0 ok, 1 golden-value mismatch, 2 I/O or parse failure, 3 domain error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermo/errors.hpp"
#include "thermo/estimate.hpp"
#include "thermo/fisher.hpp"
#include "thermo/io.hpp"
#include "thermo/optimize.hpp"
#include "thermo/spectrum.hpp"
#include "thermo/trajectory.hpp"
#include "thermo/version.hpp"

namespace {

using nlohmann::json;
using namespace thermo;

std::string g_command_line;

json meta_json(std::uint64_t seed) {
    return json{{"version", std::string(kVersion)},
                {"build", std::string(kBuildRef)},
                {"command", g_command_line},
                {"seed", seed}};
}

std::string meta_csv(std::uint64_t seed) {
    std::ostringstream os;
    os << "# version=" << kVersion << " build=" << kBuildRef << "\n";
    os << "# command=" << g_command_line << "\n";
    os << "# seed=" << seed << "\n";
    return os.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw std::ios_base::failure("cannot open output file " + out_path);
    os << text;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("THERMO_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

// ---------------------------------------------------------------- fisher ----

struct FisherArgs {
    std::string spectrum_path, bath_path, out;
    double temperature = 0.0, tau = 0.0, gamma_override = 0.0;
    bool empirical = false, equilibrium = false;
};

int run_fisher(const FisherArgs& a) {
    const EnergySpectrum spec = io::read_spectrum_file(a.spectrum_path);
    BathModel bath = io::read_bath_file(a.bath_path);
    if (a.gamma_override > 0.0) bath.gamma = a.gamma_override;

    const FiRate fi = fi_rate_exact(spec, bath);
    json out{{"n", spec.size()},
             {"fi_rate", fi.value},
             {"per_level", fi.value / spec.size()},
             {"spectrum_hash", io::spectrum_hash(spec)},
             {"meta", meta_json(0)}};
    if (a.temperature > 0.0 && a.tau > 0.0) {
        out["fi_dimensional"] = fi_dimensional(fi, bath, a.temperature, a.tau);
        out["T"] = a.temperature;
        out["tau"] = a.tau;
    }
    if (a.empirical) out["empirical_fi_rate"] = empirical_fi_rate(spec, bath).value;
    if (a.equilibrium) out["equilibrium_fi"] = equilibrium_fi(spec);
    if (bath.is_bosonic() && generator(spec, bath).degenerate_bosonic_pairs) {
        std::cerr << "warning: bosonic bath with exactly degenerate levels; those pairs do not mix\n";
    }
    emit(a.out, out.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- tables ----

struct GoldenRow {
    const char* variant;
    const char* bath_label;
    double s;  // 0 = fermionic
    double x, c, coeff, tol;
};

int run_tables(const std::string& out_path) {
    // reference values quoted to four decimals; right-limit rows get the
    // looser tolerance
    static const GoldenRow rows[] = {
        {"monitored", "fermionic", 0.0, 2.9682, 0.1848, 0.2596, 2e-3},
        {"monitored", "s=1+", 1.0 + 1e-4, 3.0880, 0.1760, 1.0508, 5e-3},
        {"monitored", "s=1.5", 1.5, 3.7195, 0.1347, 1.9403, 2e-3},
        {"monitored", "s=2", 2.0, 4.2681, 0.1058, 3.8782, 2e-3},
        {"monitored", "s=3", 3.0, 5.2706, 0.0669, 18.4880, 2e-3},
        {"empirical", "fermionic", 0.0, 2.7233, 0.2040, 0.1448, 2e-3},
        {"empirical", "s=1+", 1.0 + 1e-4, 3.4079, 0.1539, 0.4851, 5e-3},
        {"empirical", "s=1.5", 1.5, 3.9050, 0.1243, 0.9274, 2e-3},
        {"empirical", "s=2", 2.0, 4.3850, 0.1004, 1.8879, 2e-3},
        {"empirical", "s=3", 3.0, 5.3215, 0.0653, 9.1514, 2e-3},
    };

    std::ostringstream os;
    os << meta_csv(0);
    os << "variant,bath,x_star,c_star,coefficient,ref_x,ref_c,ref_coeff,status\n";
    bool all_ok = true;
    for (const auto& row : rows) {
        const BathModel bath =
            row.s > 0.0 ? BathModel::bosonic(1.0, row.s) : BathModel::fermionic(1.0);
        const FiVariant variant =
            std::string(row.variant) == "monitored" ? FiVariant::Monitored : FiVariant::Empirical;
        const auto r = optimize_asymptotic(bath, variant);
        const bool ok = std::abs(r.x_star - row.x) <= row.tol &&
                        std::abs(r.c_star - row.c) <= row.tol &&
                        std::abs(r.coefficient_per_level - row.coeff) <= row.tol;
        all_ok = all_ok && ok;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%s,%.6f,%.6f,%.6f,%.4f,%.4f,%.4f,%s\n", row.variant,
                      row.bath_label, r.x_star, r.c_star, r.coefficient_per_level, row.x, row.c,
                      row.coeff, ok ? "ok" : "FAIL");
        os << buf;
    }
    emit(out_path, os.str());
    return all_ok ? 0 : 1;
}

// --------------------------------------------------------------- scaling ----

struct ScalingArgs {
    std::string bath_path, mode = "two_level", out;
    int n_min = 4, n_max = 10, restarts = 32, workers = 1;
    std::uint64_t seed = 0;
};

int run_scaling(const ScalingArgs& a) {
    const BathModel bath = io::read_bath_file(a.bath_path);
    if (a.n_min < 2 || a.n_max < a.n_min) throw DomainError("scaling: need 2 <= n_min <= n_max");
    if (a.mode == "global" && a.n_max > 8) throw DomainError("scaling: global mode is limited to n <= 8");

    std::ostringstream os;
    os << meta_csv(a.seed);
    os << "n,N,x_star,n0_star,fi_rate,per_level\n";
    std::vector<double> ns, values;
    for (int n = a.n_min; n <= a.n_max; ++n) {
        const int levels = 1 << n;
        double fi = 0.0, x_star = 0.0;
        int n0_star = 0;
        if (a.mode == "two_level" || a.mode == "empirical") {
            const auto r = optimize_two_level(
                levels, bath, a.mode == "two_level" ? FiVariant::Monitored : FiVariant::Empirical);
            fi = r.fi_rate;
            x_star = r.x_star;
            n0_star = r.ansatz->n0;
        } else if (a.mode == "global") {
            const auto r = optimize_global(levels, bath, a.restarts, a.seed, a.workers);
            fi = r.fi_rate;
            x_star = r.x_star;
            n0_star = static_cast<int>(std::lround(r.c_star * levels));
        } else {
            const auto r = equilibrium_optimum(levels);
            fi = r.value;
            x_star = r.x_star;
            n0_star = r.n0_star;
        }
        ns.push_back(levels);
        values.push_back(fi);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%d,%.8f,%.8f\n", n, levels, x_star, n0_star, fi,
                      fi / levels);
        os << buf;
    }

    // fit diagnostics emitted as comments; hard gating lives in the test suite
    if (a.mode == "two_level" && ns.size() >= 2) {
        const std::size_t start = ns.size() / 2;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double count = static_cast<double>(ns.size() - start);
        for (std::size_t i = start; i < ns.size(); ++i) {
            sx += ns[i];
            sy += values[i];
            sxx += ns[i] * ns[i];
            sxy += ns[i] * values[i];
        }
        const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        const double asym = optimize_asymptotic(bath).coefficient_per_level;
        char buf[160];
        std::snprintf(buf, sizeof buf, "# top_half_slope=%.6f asymptotic=%.6f rel_err=%.4f\n", slope,
                      asym, std::abs(slope - asym) / asym);
        os << buf;
    }
    if (a.mode == "equilibrium" && ns.size() >= 3) {
        // linear fit of FI* against (log N)^2
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        const double count = static_cast<double>(ns.size());
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const double z = std::log(ns[i]) * std::log(ns[i]);
            sx += z;
            sy += values[i];
            sxx += z * z;
            sxy += z * values[i];
            syy += values[i] * values[i];
        }
        const double sxy_c = sxy - sx * sy / count;
        const double sxx_c = sxx - sx * sx / count;
        const double syy_c = syy - sy * sy / count;
        const double r2 = sxy_c * sxy_c / (sxx_c * syy_c);
        char buf[96];
        std::snprintf(buf, sizeof buf, "# r2_vs_logN_squared=%.6f\n", r2);
        os << buf;
    }
    emit(a.out, os.str());
    return 0;
}

// -------------------------------------------------------------- optimize ----

struct OptimizeArgs {
    std::string bath_path, mode = "two_level", variant = "monitored", out;
    bool asymptotic = false;
    int n = 0, restarts = 32, workers = 1;
    std::uint64_t seed = 0;
};

int run_optimize(const OptimizeArgs& a) {
    const BathModel bath = io::read_bath_file(a.bath_path);
    const FiVariant variant =
        a.variant == "empirical" ? FiVariant::Empirical : FiVariant::Monitored;

    OptimizationResult r;
    if (a.asymptotic) {
        r = optimize_asymptotic(bath, variant);
    } else if (a.n > 0) {
        if (a.mode == "global") {
            r = optimize_global(a.n, bath, a.restarts, a.seed, a.workers);
        } else {
            r = optimize_two_level(a.n, bath, variant);
        }
    } else {
        throw DomainError("optimize: pass --asymptotic or --n");
    }

    json out{{"x_star", r.x_star},
             {"n0_star", r.ansatz ? json(r.ansatz->n0) : json()},
             {"fi_rate", r.fi_rate},
             {"c_star", r.c_star},
             {"coefficient_per_level", r.coefficient_per_level},
             {"converged", r.converged},
             {"iterations", r.iterations},
             {"restarts_used", r.restarts_used},
             {"meta", meta_json(a.seed)}};
    if (a.mode == "global" && r.best_spectrum) {
        out["levels"] = std::vector<double>(r.best_spectrum->levels().begin(),
                                            r.best_spectrum->levels().end());
    }
    emit(a.out, out.dump(2) + "\n");
    return 0;
}

// -------------------------------------------------------------- simulate ----

struct SimulateArgs {
    std::string spectrum_path, bath_path, initial = "thermal", out;
    double temperature = 1.0, tau = 1.0;
    std::uint64_t seed = 0;
    bool stats_only = false;
};

InitialState parse_initial(const std::string& text) {
    if (text == "thermal") return InitialState::thermal_start();
    if (text.rfind("fixed:", 0) == 0) return InitialState::fixed(std::stoi(text.substr(6)));
    throw DomainError("simulate: initial must be 'thermal' or 'fixed:<index>'");
}

// Interpret a two-valued spectrum as a two-manifold structure; the caller
// shifts the ground manifold to zero (rates depend on gaps only).
TwoLevelAnsatz infer_ansatz(const EnergySpectrum& spec) {
    double lo = spec.level(0), hi = spec.level(0);
    for (double x : spec.levels()) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (!(hi > lo)) throw DomainError("statistics mode requires two distinct level values");
    int n0 = 0;
    for (double x : spec.levels()) {
        if (x == lo) {
            ++n0;
        } else if (x != hi) {
            throw DomainError("statistics mode requires a two-valued spectrum");
        }
    }
    return TwoLevelAnsatz(spec.size(), n0, hi - lo);
}

int run_simulate(const SimulateArgs& a) {
    const EnergySpectrum spec = io::read_spectrum_file(a.spectrum_path);
    const BathModel bath = io::read_bath_file(a.bath_path);
    const InitialState initial = parse_initial(a.initial);

    if (a.stats_only) {
        const TwoLevelAnsatz ansatz = infer_ansatz(spec);
        const EnergySpectrum grounded = spec.shifted(-spec.level(0));  // canonical: level 0 is min
        const SufficientStats stats =
            simulate_stats(grounded, bath, a.temperature, a.tau, a.seed, ansatz, initial);
        json out = io::stats_json(stats);
        out["meta"] = meta_json(a.seed);
        emit(a.out, out.dump(2) + "\n");
        return 0;
    }

    const Trajectory traj = simulate_gillespie(spec, bath, a.temperature, a.tau, a.seed, initial);
    std::ostringstream os;
    io::write_trajectory_jsonl(os, traj, bath, a.temperature, a.seed);
    emit(a.out, os.str());
    return 0;
}

// -------------------------------------------------------------- estimate ----

struct EstimateArgs {
    std::string stats_path, bath_path, out;
    int n = 2, n0 = 1;
    double epsilon = 1.0;
    bool diagnostics = false;
};

int run_estimate(const EstimateArgs& a) {
    const SufficientStats stats = io::read_stats_file(a.stats_path);
    const BathModel bath = io::read_bath_file(a.bath_path);
    const EstimationConfig cfg(TwoLevelAnsatz(a.n, a.n0, 1.0), bath, a.epsilon);

    const MleResult r = mle(stats, cfg);
    json out{{"t_hat", r.t_hat},
             {"occupation_hat", r.occupation_hat},
             {"valid", r.valid},
             {"log_likelihood", r.log_likelihood_at_hat},
             {"meta", meta_json(0)}};
    if (a.diagnostics && bath.is_bosonic()) {
        const MleResult alt = mle_bosonic_alt(stats, cfg);
        out["diagnostics"] = json{{"weighted_exposure", weighted_exposure(stats, cfg)},
                                  {"weighted_exposure_alt", weighted_exposure_alt(stats, cfg)},
                                  {"t_hat_alt", alt.t_hat}};
    }
    emit(a.out, out.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------------- crb ----

struct CrbArgs {
    std::string bath_path, out;
    int n = 64, n0 = 12, workers = 1;
    long replicas = 1000;
    double gap = 2.9682, t_true = 1.0, tau = 1e5;
    std::uint64_t seed = 0;
};

int run_crb(const CrbArgs& a) {
    const BathModel bath = io::read_bath_file(a.bath_path);
    const EstimationConfig cfg(TwoLevelAnsatz(a.n, a.n0, a.gap), bath,
                               energy_from_gap(a.gap, a.t_true));
    const CrbReport r = crb_benchmark(cfg, a.t_true, a.tau, a.replicas, a.seed, a.workers);
    json out{{"t_true", r.t_true},
             {"mse", r.mse},
             {"crb", r.crb},
             {"ratio", r.ratio},
             {"stderr", r.ratio_stderr},
             {"invalid_fraction", r.invalid_fraction},
             {"replicas", r.replicas},
             {"valid_replicas", r.valid_replicas},
             {"mean_t_hat", r.mean_t_hat},
             {"meta", meta_json(a.seed)}};
    emit(a.out, out.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------ robustness ----

struct RobustnessArgs {
    std::string bath_path, sigma_list = "0,0.25,0.5", out;
    int n = 10, trials = 100;
    std::uint64_t seed = 0;
};

int run_robustness(const RobustnessArgs& a) {
    const BathModel bath = io::read_bath_file(a.bath_path);
    if (a.trials < 10) throw DomainError("robustness: need at least 10 trials");
    const int levels = 1 << a.n;

    const auto opt = optimize_two_level(levels, bath);
    const TwoLevelAnsatz base = *opt.ansatz;
    const double optimum_per_level = opt.coefficient_per_level;

    std::vector<double> sigmas;
    {
        std::stringstream ss(a.sigma_list);
        std::string item;
        while (std::getline(ss, item, ',')) sigmas.push_back(std::stod(item));
    }

    std::ostringstream os;
    os << meta_csv(a.seed);
    char head[200];
    std::snprintf(head, sizeof head, "# N=%d n0_star=%d x_star=%.6f optimum_per_level=%.6f\n",
                  levels, base.n0, base.gap, optimum_per_level);
    os << head;
    os << "sigma,mean_per_level,std_per_level,frac_below_0.9opt,mean_bound_per_level,"
          "bound_violations,low_window_violation_rate\n";

    std::uint64_t stream = 0;
    for (double sigma : sigmas) {
        double sum = 0.0, sum2 = 0.0, bound_sum = 0.0;
        long below = 0, bound_violations = 0, low_violations = 0;
        for (int t = 0; t < a.trials; ++t) {
            const EnergySpectrum trial =
                perturb_gaussian(base, sigma, Rng::split(a.seed, stream++).next_u64());
            const double fi = fi_rate_exact(trial, bath).value / levels;
            sum += fi;
            sum2 += fi * fi;
            if (fi < 0.9 * optimum_per_level) ++below;
            const auto bound = robustness_lower_bound(trial, bath, base.gap, sigma);
            bound_sum += bound.value / levels;
            if (bound.value > fi * levels) ++bound_violations;
            if (bound.below_low_window > 0) ++low_violations;
        }
        const double mean = sum / a.trials;
        const double var = std::max(0.0, sum2 / a.trials - mean * mean);
        char buf[240];
        std::snprintf(buf, sizeof buf, "%.4f,%.6f,%.6f,%.4f,%.6f,%ld,%.4f\n", sigma, mean,
                      std::sqrt(var), static_cast<double>(below) / a.trials, bound_sum / a.trials,
                      bound_violations, static_cast<double>(low_violations) / a.trials);
        os << buf;
    }
    emit(a.out, os.str());
    return 0;
}

// ---------------------------------------------------------------- config ----

std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    // --config file.json injects defaults; explicit flags win via TakeLast
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
    }
    if (config_path.empty()) return args;
    if (args.empty() || args[0].rfind("--", 0) == 0) {
        throw DomainError("--config requires a subcommand");
    }

    std::ifstream in(config_path);
    if (!in) throw std::ios_base::failure("cannot open config file " + config_path);
    json cfg;
    in >> cfg;

    std::vector<std::string> tokens;
    for (const auto& [key, value] : cfg.items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) tokens.push_back("--" + key);
            continue;
        }
        tokens.push_back("--" + key);
        if (value.is_string()) {
            tokens.push_back(value.get<std::string>());
        } else if (value.is_array()) {
            std::string joined;
            for (const auto& v : value) {
                if (!joined.empty()) joined += ",";
                joined += v.is_string() ? v.get<std::string>() : v.dump();
            }
            tokens.push_back(joined);
        } else {
            tokens.push_back(value.dump());
        }
    }
    args.insert(args.begin() + 1, tokens.begin(), tokens.end());
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuously monitored thermometer toolkit"};
    app.require_subcommand(1);

    const std::uint64_t env_seed = default_seed();

    FisherArgs fisher_args;
    auto* cmd_fisher = app.add_subcommand("fisher", "Fisher-information rates of a spectrum");
    cmd_fisher->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_fisher->add_option("--spectrum", fisher_args.spectrum_path)->required();
    cmd_fisher->add_option("--bath", fisher_args.bath_path)->required();
    cmd_fisher->add_option("--T", fisher_args.temperature);
    cmd_fisher->add_option("--tau", fisher_args.tau);
    cmd_fisher->add_option("--gamma", fisher_args.gamma_override);
    cmd_fisher->add_flag("--empirical", fisher_args.empirical);
    cmd_fisher->add_flag("--equilibrium", fisher_args.equilibrium);
    cmd_fisher->add_option("--out", fisher_args.out);

    std::string tables_out;
    auto* cmd_tables = app.add_subcommand("tables", "reproduce the reference constant tables");
    cmd_tables->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_tables->add_option("--out", tables_out);

    ScalingArgs scaling_args;
    scaling_args.seed = env_seed;
    auto* cmd_scaling = app.add_subcommand("scaling", "optimal FI rate against probe size");
    cmd_scaling->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_scaling->add_option("--bath", scaling_args.bath_path)->required();
    cmd_scaling->add_option("--n-min", scaling_args.n_min);
    cmd_scaling->add_option("--n-max", scaling_args.n_max);
    cmd_scaling->add_option("--mode", scaling_args.mode)
        ->check(CLI::IsMember({"two_level", "global", "equilibrium", "empirical"}));
    cmd_scaling->add_option("--restarts", scaling_args.restarts);
    cmd_scaling->add_option("--seed", scaling_args.seed);
    cmd_scaling->add_option("--workers", scaling_args.workers);
    cmd_scaling->add_option("--out", scaling_args.out);

    OptimizeArgs optimize_args;
    optimize_args.seed = env_seed;
    auto* cmd_optimize = app.add_subcommand("optimize", "maximise the FI rate");
    cmd_optimize->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_optimize->add_option("--bath", optimize_args.bath_path)->required();
    cmd_optimize->add_flag("--asymptotic", optimize_args.asymptotic);
    cmd_optimize->add_option("--n", optimize_args.n);
    cmd_optimize->add_option("--mode", optimize_args.mode)
        ->check(CLI::IsMember({"two_level", "global"}));
    cmd_optimize->add_option("--variant", optimize_args.variant)
        ->check(CLI::IsMember({"monitored", "empirical"}));
    cmd_optimize->add_option("--restarts", optimize_args.restarts);
    cmd_optimize->add_option("--seed", optimize_args.seed);
    cmd_optimize->add_option("--workers", optimize_args.workers);
    cmd_optimize->add_option("--out", optimize_args.out);

    SimulateArgs simulate_args;
    simulate_args.seed = env_seed;
    auto* cmd_simulate = app.add_subcommand("simulate", "sample a monitored jump trajectory");
    cmd_simulate->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_simulate->add_option("--spectrum", simulate_args.spectrum_path)->required();
    cmd_simulate->add_option("--bath", simulate_args.bath_path)->required();
    cmd_simulate->add_option("--T", simulate_args.temperature);
    cmd_simulate->add_option("--tau", simulate_args.tau);
    cmd_simulate->add_option("--seed", simulate_args.seed);
    cmd_simulate->add_option("--initial", simulate_args.initial);
    cmd_simulate->add_flag("--stats-only", simulate_args.stats_only);
    cmd_simulate->add_option("--out", simulate_args.out);

    EstimateArgs estimate_args;
    auto* cmd_estimate = app.add_subcommand("estimate", "closed-form MLE from coarse statistics");
    cmd_estimate->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_estimate->add_option("--stats", estimate_args.stats_path)->required();
    cmd_estimate->add_option("--bath", estimate_args.bath_path)->required();
    cmd_estimate->add_option("--n", estimate_args.n)->required();
    cmd_estimate->add_option("--n0", estimate_args.n0)->required();
    cmd_estimate->add_option("--epsilon", estimate_args.epsilon)->required();
    cmd_estimate->add_flag("--diagnostics", estimate_args.diagnostics);
    cmd_estimate->add_option("--out", estimate_args.out);

    CrbArgs crb_args;
    crb_args.seed = env_seed;
    auto* cmd_crb = app.add_subcommand("crb", "estimator MSE against the Cramer-Rao bound");
    cmd_crb->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_crb->add_option("--bath", crb_args.bath_path)->required();
    cmd_crb->add_option("--n", crb_args.n);
    cmd_crb->add_option("--n0", crb_args.n0);
    cmd_crb->add_option("--x", crb_args.gap);
    cmd_crb->add_option("--T", crb_args.t_true);
    cmd_crb->add_option("--tau", crb_args.tau);
    cmd_crb->add_option("--replicas", crb_args.replicas);
    cmd_crb->add_option("--seed", crb_args.seed);
    cmd_crb->add_option("--workers", crb_args.workers);
    cmd_crb->add_option("--out", crb_args.out);

    RobustnessArgs robustness_args;
    robustness_args.seed = env_seed;
    auto* cmd_robustness = app.add_subcommand("robustness", "FI under Gaussian level perturbations");
    cmd_robustness->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_robustness->add_option("--bath", robustness_args.bath_path)->required();
    cmd_robustness->add_option("--n", robustness_args.n);
    cmd_robustness->add_option("--sigma", robustness_args.sigma_list);
    cmd_robustness->add_option("--trials", robustness_args.trials);
    cmd_robustness->add_option("--seed", robustness_args.seed);
    cmd_robustness->add_option("--out", robustness_args.out);

    std::vector<std::string> args(argv + 1, argv + argc);
    {
        std::ostringstream os;
        os << "thermo";
        for (const auto& a : args) os << ' ' << a;
        g_command_line = os.str();
    }

    try {
        args = apply_config_file(std::move(args));
        {
            // CLI11 consumes reversed token lists
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }

        if (cmd_fisher->parsed()) return run_fisher(fisher_args);
        if (cmd_tables->parsed()) return run_tables(tables_out);
        if (cmd_scaling->parsed()) return run_scaling(scaling_args);
        if (cmd_optimize->parsed()) return run_optimize(optimize_args);
        if (cmd_simulate->parsed()) return run_simulate(simulate_args);
        if (cmd_estimate->parsed()) return run_estimate(estimate_args);
        if (cmd_crb->parsed()) return run_crb(crb_args);
        if (cmd_robustness->parsed()) return run_robustness(robustness_args);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
