// oment: stationary entanglement between two filtered output fields of a
// three-mode optomechanical system. Subcommands: entangle, sweep, optimize,
// spectra, validate. Exit codes: 0 ok, 1 config error, 2 unstable system,
// 3 numerical failure, 4 validation failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "oment/approx.hpp"
#include "oment/config.hpp"
#include "oment/entanglement.hpp"
#include "oment/errors.hpp"
#include "oment/io.hpp"
#include "oment/optimize.hpp"
#include "oment/validate.hpp"

using nlohmann::json;
using namespace oment;

namespace {

struct ParamFlags {
    std::optional<std::string> config_path;
    std::optional<double> gamma, kappa1, kappa2, g1, g2, nm, n1, n2;
    std::optional<double> omega, sigma, tau1, tau2;
    std::optional<double> omega_over_kappa, omega_over_sigma;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--config", f.config_path, "flat key=value config file");
    cmd->add_option("--gamma", f.gamma, "mechanical damping rate");
    cmd->add_option("--kappa1", f.kappa1, "cavity-1 damping rate");
    cmd->add_option("--kappa2", f.kappa2, "cavity-2 damping rate");
    cmd->add_option("--g1", f.g1, "beam-splitter coupling G1");
    cmd->add_option("--g2", f.g2, "parametric coupling G2");
    cmd->add_option("--nm", f.nm, "mechanical bath population");
    cmd->add_option("--n1", f.n1, "cavity-1 bath population");
    cmd->add_option("--n2", f.n2, "cavity-2 bath population");
    cmd->add_option("--omega", f.omega, "filter center frequency");
    cmd->add_option("--sigma", f.sigma, "filter bandwidth");
    cmd->add_option("--tau1", f.tau1, "mode-1 emission delay");
    cmd->add_option("--tau2", f.tau2, "mode-2 emission delay");
    cmd->add_option("--omega-over-kappa", f.omega_over_kappa,
                    "filter center in units of kappa1 (resolved after absolute keys)");
    cmd->add_option("--omega-over-sigma", f.omega_over_sigma,
                    "filter center in units of sigma");
}

RunConfig resolve(const ParamFlags& f) {
    RunConfig rc;
    if (f.config_path)
        for (const auto& [k, v] : load_config_file(*f.config_path)) rc.apply(k, v);
    auto set = [&](const char* key, const std::optional<double>& v) {
        if (v) rc.apply(key, format_g17(*v));
    };
    set("gamma", f.gamma);
    set("kappa1", f.kappa1);
    set("kappa2", f.kappa2);
    set("g1", f.g1);
    set("g2", f.g2);
    set("nm", f.nm);
    set("n1", f.n1);
    set("n2", f.n2);
    set("omega", f.omega);
    set("sigma", f.sigma);
    set("tau1", f.tau1);
    set("tau2", f.tau2);
    if (f.omega_over_kappa) rc.filter.center = *f.omega_over_kappa * rc.system.kappa1;
    if (f.omega_over_sigma) rc.filter.center = *f.omega_over_sigma * rc.filter.bandwidth;
    return rc;
}

// option resolution: default < config-file options map < flag
template <typename T>
T opt_or(const RunConfig& rc, const std::string& key, const std::optional<T>& flag, T dflt);

template <>
double opt_or(const RunConfig& rc, const std::string& key,
              const std::optional<double>& flag, double dflt) {
    if (flag) return *flag;
    auto it = rc.options.find(key);
    if (it == rc.options.end()) return dflt;
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
        throw InvalidParams("config key '" + key + "' expects a number");
    return v;
}

template <>
std::string opt_or(const RunConfig& rc, const std::string& key,
                   const std::optional<std::string>& flag, std::string dflt) {
    if (flag) return *flag;
    auto it = rc.options.find(key);
    return it == rc.options.end() ? dflt : it->second;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!file) throw InvalidParams("cannot open output file '" + path + "'");
    return file;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InstabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UnphysicalInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_entangle(const ParamFlags& flags, const std::optional<std::string>& out_path) {
    const RunConfig rc = resolve(flags);
    const BandEvaluator ev(rc.system, rc.filter);
    const BandMoments& bm = ev.moments();
    const TmstParams t = tmst_from_moments(bm);
    const EntanglementResult closed = log_negativity_band(bm);

    json j;
    std::vector<std::string> warnings;
    j["nn1"] = bm.corr.nn1;
    j["nn2"] = bm.corr.nn2;
    j["re_m"] = bm.corr.m.real();
    j["im_m"] = bm.corr.m.imag();
    j["nbar1"] = t.nbar1;
    j["nbar2"] = t.nbar2;
    j["r12"] = t.r12;
    j["en_closed"] = closed.en;
    try {
        j["en_covariance"] = log_negativity_covariance(bm.corr).en;
    } catch (const UnphysicalInput&) {
        j["en_covariance"] = nullptr;
        warnings.push_back(
            "covariance route hit its physicality tolerance (near-saturated "
            "correlators at double precision); en_closed stands");
    }
    j["stability"] = true;  // the evaluator would have thrown otherwise
    if (!rc.system.zero_temperature())
        warnings.push_back("nonzero bath populations: en_closed computed from the "
                           "correlator triple rather than the exact band route");
    j["warnings"] = warnings;

    std::ofstream file;
    std::ostream& os = open_output(opt_or<std::string>(rc, "output", out_path, "-"), file);
    os << j.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const ParamFlags& flags, const std::optional<std::string>& variable,
              const std::optional<double>& from, const std::optional<double>& to,
              const std::optional<int>& points, const std::optional<std::string>& scale,
              bool optimize_tau_flag, const std::optional<std::string>& out_path) {
    const RunConfig rc = resolve(flags);
    AxisSpec axis;
    const std::string var = opt_or<std::string>(rc, "variable", variable, "omega");
    if (var == "omega") axis.variable = SweepVariable::omega;
    else if (var == "tau") axis.variable = SweepVariable::tau;
    else throw InvalidParams("variable must be 'omega' or 'tau'");
    axis.from = opt_or<double>(rc, "from", from, 0.0);
    axis.to = opt_or<double>(rc, "to", to, 0.0);
    axis.points = static_cast<int>(opt_or<double>(
        rc, "points", points ? std::optional<double>(*points) : std::nullopt, 0.0));
    const std::string sc = opt_or<std::string>(rc, "scale", scale, "linear");
    if (sc != "linear" && sc != "log") throw InvalidParams("scale must be 'linear' or 'log'");
    axis.log_scale = sc == "log";
    bool do_tau = optimize_tau_flag;
    if (!do_tau) {
        auto it = rc.options.find("optimize_tau");
        do_tau = it != rc.options.end() && it->second != "0" && it->second != "false";
    }

    const SweepResult result = sweep(rc.system, rc.filter, axis, do_tau);

    std::ofstream file;
    std::ostream& os = open_output(opt_or<std::string>(rc, "output", out_path, "-"), file);
    write_sweep_csv(os, result);
    bool any_ok = false;
    for (const auto& r : result.rows) any_ok |= r.error_code == 0;
    return any_ok ? 0 : 3;
}

int cmd_optimize(const ParamFlags& flags, const std::optional<std::string>& over,
                 const std::optional<double>& lo, const std::optional<double>& hi,
                 const std::optional<double>& tol, const std::optional<std::string>& out_path) {
    const RunConfig rc = resolve(flags);
    const std::string what = opt_or<std::string>(rc, "over", over, "omega");
    const double tol_v = opt_or<double>(rc, "tol", tol, 1e-5);

    OptimumReport rep;
    if (what == "omega") {
        const double lo_v = opt_or<double>(rc, "lo", lo, 0.5 * rc.filter.bandwidth);
        const double hi_v = opt_or<double>(rc, "hi", hi, 0.5 * rc.system.kappa1);
        std::optional<double> seed;
        if (auto regime = match_regime(rc.system, FilterSpec{0.5 * (lo_v + hi_v),
                                                             rc.filter.bandwidth,
                                                             rc.filter.tau1, rc.filter.tau2}))
            seed = omega_opt(rc.system, rc.filter, *regime).value;
        rep = maximize_en_over_omega(rc.system, rc.filter, lo_v, hi_v, tol_v, seed);
    } else if (what == "tau") {
        const auto [dlo, dhi] = default_tau_bracket(rc.system, rc.filter.center);
        const double lo_v = opt_or<double>(rc, "lo", lo, dlo);
        const double hi_v = opt_or<double>(rc, "hi", hi, dhi);
        rep = maximize_en_over_tau(rc.system, rc.filter, lo_v, hi_v, tol_v);
    } else {
        throw InvalidParams("over must be 'omega' or 'tau'");
    }

    json j;
    j["argmax"] = rep.argmax;
    j["value"] = rep.value;
    j["evaluations"] = rep.evaluations;
    j["bracket"] = {rep.bracket_lo, rep.bracket_hi};
    if (std::isfinite(rep.analytic_seed)) {
        j["analytic_seed"] = rep.analytic_seed;
        j["seed_value"] = rep.seed_value;
    }
    j["flat"] = rep.flat;

    std::ofstream file;
    std::ostream& os = open_output(opt_or<std::string>(rc, "output", out_path, "-"), file);
    os << j.dump(2) << "\n";
    return 0;
}

int cmd_spectra(const ParamFlags& flags, const std::optional<double>& from,
                const std::optional<double>& to, const std::optional<int>& points,
                const std::optional<std::string>& scale,
                const std::optional<std::string>& out_path) {
    const RunConfig rc = resolve(flags);
    const double from_v = opt_or<double>(rc, "from", from, -2.0 * rc.system.kappa1);
    const double to_v = opt_or<double>(rc, "to", to, 2.0 * rc.system.kappa1);
    const int n = static_cast<int>(opt_or<double>(
        rc, "points", points ? std::optional<double>(*points) : std::nullopt, 201.0));
    if (n < 2) throw InvalidParams("spectra requires at least 2 points");
    const std::string sc = opt_or<std::string>(rc, "scale", scale, "linear");
    if (sc == "log" && !(from_v > 0.0 && to_v > 0.0))
        throw InvalidParams("log-scale spectra require positive endpoints");

    std::vector<SpectralPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        const double w = sc == "log" ? std::exp(std::log(from_v) +
                                                t * (std::log(to_v) - std::log(from_v)))
                                     : from_v + t * (to_v - from_v);
        pts.push_back(spectral_point(rc.system, w));
    }
    std::ofstream file;
    std::ostream& os = open_output(opt_or<std::string>(rc, "output", out_path, "-"), file);
    write_spectra_csv(os, pts);
    return 0;
}

int cmd_validate(std::uint64_t seed, bool as_json,
                 const std::optional<std::string>& out_path) {
    const ValidationReport rep = run_validation(seed);
    std::ofstream file;
    std::ostream& os = open_output(out_path.value_or("-"), file);
    if (as_json) {
        json j = json::array();
        for (const auto& g : rep.groups)
            j.push_back({{"group", g.name}, {"passed", g.passed}, {"detail", g.detail}});
        os << j.dump(2) << "\n";
    } else {
        for (const auto& g : rep.groups)
            os << g.name << ": " << (g.passed ? "PASS" : "FAIL") << " (" << g.detail << ")\n";
    }
    if (!rep.all_passed()) {
        for (const auto& g : rep.groups)
            if (!g.passed) {
                std::cerr << "validation failed: " << g.name << "\n";
                break;
            }
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stationary output entanglement of a three-mode optomechanical system"};
    app.require_subcommand(1);

    ParamFlags flags;
    std::optional<std::string> out_path;

    auto* entangle = app.add_subcommand(
        "entangle", "filtered-mode correlators and log-negativity at one point");
    add_param_flags(entangle, flags);
    entangle->add_option("--output", out_path, "output path (default stdout)");

    auto* sw = app.add_subcommand("sweep", "pipeline over a parameter grid, CSV out");
    add_param_flags(sw, flags);
    std::optional<std::string> sw_var, sw_scale;
    std::optional<double> sw_from, sw_to;
    std::optional<int> sw_points;
    bool sw_opt_tau = false;
    sw->add_option("--variable", sw_var, "omega or tau");
    sw->add_option("--from", sw_from, "axis start");
    sw->add_option("--to", sw_to, "axis end");
    sw->add_option("--points", sw_points, "grid size (>= 2)");
    sw->add_option("--scale", sw_scale, "linear or log");
    sw->add_flag("--optimize-tau", sw_opt_tau, "per-point optimal delay");
    sw->add_option("--output", out_path, "output path (default stdout)");

    auto* opt = app.add_subcommand("optimize", "maximize E_n over omega or tau");
    add_param_flags(opt, flags);
    std::optional<std::string> opt_over;
    std::optional<double> opt_lo, opt_hi, opt_tol;
    opt->add_option("--over", opt_over, "omega or tau");
    opt->add_option("--lo", opt_lo, "bracket start");
    opt->add_option("--hi", opt_hi, "bracket end");
    opt->add_option("--tol", opt_tol, "relative bracket tolerance (>= 1e-6)");
    opt->add_option("--output", out_path, "output path (default stdout)");

    auto* spec = app.add_subcommand("spectra", "output spectral densities vs frequency");
    add_param_flags(spec, flags);
    std::optional<double> sp_from, sp_to;
    std::optional<int> sp_points;
    std::optional<std::string> sp_scale;
    spec->add_option("--from", sp_from, "frequency start");
    spec->add_option("--to", sp_to, "frequency end");
    spec->add_option("--points", sp_points, "grid size");
    spec->add_option("--scale", sp_scale, "linear or log");
    spec->add_option("--output", out_path, "output path (default stdout)");

    auto* val = app.add_subcommand("validate", "run the cross-module invariant suite");
    std::uint64_t val_seed = 12345;
    bool val_json = false;
    val->add_option("--seed", val_seed, "draw seed");
    val->add_flag("--json", val_json, "JSON report");
    val->add_option("--output", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // every command-line problem is a config error
    }

    if (entangle->parsed()) return guarded([&] { return cmd_entangle(flags, out_path); });
    if (sw->parsed())
        return guarded([&] {
            return cmd_sweep(flags, sw_var, sw_from, sw_to, sw_points, sw_scale, sw_opt_tau,
                             out_path);
        });
    if (opt->parsed())
        return guarded([&] { return cmd_optimize(flags, opt_over, opt_lo, opt_hi, opt_tol,
                                                 out_path); });
    if (spec->parsed())
        return guarded(
            [&] { return cmd_spectra(flags, sp_from, sp_to, sp_points, sp_scale, out_path); });
    if (val->parsed()) return guarded([&] { return cmd_validate(val_seed, val_json, out_path); });
    return 1;
}
