// Command-line front end.  Eight subcommands over the library: solve, table,
// figure, verify, oracle, mc, bounds, overshoot.  Every invocation produces
// one rectangular table rendered as aligned text, CSV, or JSON; --out writes
// the table to a file plus a <out>.manifest.json recording the run.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "shortlist/bounds.hpp"
#include "shortlist/io.hpp"
#include "shortlist/model.hpp"
#include "shortlist/montecarlo.hpp"
#include "shortlist/overshoot.hpp"
#include "shortlist/solver.hpp"
#include "shortlist/verify.hpp"
#include "shortlist/version.hpp"

namespace sl = shortlist;
using sl::json;

namespace {

// Everything the config file can set.  Builtin defaults live here; a config
// file overrides them; explicit flags override both.
struct Settings {
    sl::SolveConfig solver;
    std::uint64_t samples = 1000000;
    int stream_count = 64;
    int threads = 0;  // 0: SHORTLIST_THREADS env, else hardware concurrency
    std::uint64_t seed = 42;
};

double cfg_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != v.size() || !std::isfinite(d))
        throw std::runtime_error("config: bad numeric value for " + key + ": '" + v + "'");
    return d;
}

long long cfg_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long n = 0;
    try {
        n = std::stoll(v, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != v.size())
        throw std::runtime_error("config: bad integer value for " + key + ": '" + v + "'");
    return n;
}

bool cfg_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::runtime_error("config: bad boolean value for " + key + ": '" + v + "'");
}

void apply_config(Settings& s, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "boundary_tolerance")
            s.solver.boundary_tolerance = cfg_double(key, value);
        else if (key == "max_bisection_iters")
            s.solver.max_bisection_iters = static_cast<int>(cfg_int(key, value));
        else if (key == "multistart_count")
            s.solver.multistart_count = static_cast<int>(cfg_int(key, value));
        else if (key == "clamp_negative")
            s.solver.clamp_negative = cfg_bool(key, value);
        else if (key == "samples")
            s.samples = static_cast<std::uint64_t>(cfg_int(key, value));
        else if (key == "stream_count")
            s.stream_count = static_cast<int>(cfg_int(key, value));
        else if (key == "threads")
            s.threads = static_cast<int>(cfg_int(key, value));
        else if (key == "seed")
            s.seed = static_cast<std::uint64_t>(cfg_int(key, value));
        else
            throw std::runtime_error("config: unknown key: " + key);
    }
}

// --gamma or (--tau and --lambda); attached to the subcommands that take a bias
struct BiasFlags {
    double gamma = 0.0, tau = 0.0, lambda = 1.0;
    CLI::Option* gamma_opt = nullptr;
    CLI::Option* tau_opt = nullptr;
    CLI::Option* lambda_opt = nullptr;

    void attach(CLI::App* cmd) {
        gamma_opt = cmd->add_option("--gamma", gamma, "news coefficient gamma = (lambda - 1) tau");
        tau_opt = cmd->add_option("--tau", tau, "news weight tau >= 0");
        lambda_opt = cmd->add_option("--lambda", lambda, "loss-aversion ratio lambda >= 1");
        gamma_opt->excludes(tau_opt)->excludes(lambda_opt);
        tau_opt->needs(lambda_opt);
        lambda_opt->needs(tau_opt);
    }
    sl::BiasParams resolve() const {
        if (gamma_opt->count() > 0) return sl::BiasParams::from_gamma(gamma);
        if (tau_opt->count() > 0) return sl::BiasParams::from_tau_lambda(tau, lambda);
        throw std::runtime_error("pass --gamma, or --tau together with --lambda");
    }
    json params() const {
        json p = json::object();
        const sl::BiasParams b = resolve();
        p["gamma"] = b.gamma;
        p["tau"] = b.tau;
        p["lambda"] = b.lambda;
        return p;
    }
};

struct Emitter {
    std::string format = "table";
    std::string out_path;

    void emit(const std::string& command, const json& params, const sl::OutputTable& t) const {
        const std::string text = sl::render_table(t, format);
        if (out_path.empty()) {
            std::cout << text;
            return;
        }
        sl::write_text_file(out_path, text);
        json manifest_params = params;
        manifest_params["format"] = format;
        sl::write_manifest(out_path + ".manifest.json", command, manifest_params,
                           {out_path});
        std::cout << "wrote " << out_path << " and " << out_path << ".manifest.json\n";
    }
};

json solver_params(const sl::SolveConfig& c) {
    json p = json::object();
    p["boundary_tolerance"] = c.boundary_tolerance;
    p["max_bisection_iters"] = c.max_bisection_iters;
    p["multistart_count"] = c.multistart_count;
    p["clamp_negative"] = c.clamp_negative;
    return p;
}

// ---- solve ------------------------------------------------------------------

int run_solve(const Emitter& em, const Settings& s, const BiasFlags& bias, int k) {
    const sl::SolveReport rep = sl::solve(k, bias.resolve(), s.solver);
    sl::OutputTable t;
    t.header = {"i", "x_i", "delta_i", "residual_i", "perceived", "payoff", "boundary_error"};
    for (std::size_t i = 0; i < rep.portfolio.size(); ++i)
        t.add_row({static_cast<long long>(i + 1), rep.portfolio[i], rep.gaps.deltas[i],
                   rep.residuals[i], rep.perceived, rep.payoff, rep.boundary_error});
    json params = bias.params();
    params["k"] = k;
    params["solver"] = solver_params(s.solver);
    em.emit("solve", params, t);
    return 0;
}

// ---- table ------------------------------------------------------------------

int run_table(const Emitter& em, const Settings& s, const std::string& which,
              std::vector<double> gammas, std::vector<int> ks, int k_max, bool ks_given) {
    sl::OutputTable t;
    json params = json::object();
    params["which"] = which;
    if (which == "freezing") {
        // solved portfolios at the depth where the top schools have frozen
        if (gammas.empty()) {
            gammas = {1.0, 0.5, 0.1};
            ks = {6, 8, 14};
        } else if (!ks_given || ks.size() != gammas.size()) {
            throw std::runtime_error("table freezing: pass one --k per --gamma");
        }
        int max_k = 0;
        std::vector<sl::SolveReport> reps;
        t.header = {"i"};
        for (std::size_t j = 0; j < gammas.size(); ++j) {
            reps.push_back(sl::solve(ks[j], sl::BiasParams::from_gamma(gammas[j]), s.solver));
            max_k = std::max(max_k, ks[j]);
            t.header.push_back("x_g" + sl::format_real(gammas[j]) + "_k" + std::to_string(ks[j]));
        }
        for (int i = 1; i <= max_k; ++i) {
            std::vector<json> row = {static_cast<long long>(i)};
            for (std::size_t j = 0; j < reps.size(); ++j) {
                if (i <= ks[j])
                    row.push_back(reps[j].portfolio[static_cast<std::size_t>(i - 1)]);
                else
                    row.push_back("");
            }
            t.add_row(std::move(row));
        }
        params["gamma"] = gammas;
        params["k"] = ks;
    } else if (which == "payoff") {
        // true payoff of the biased-optimal portfolio by k, next to the
        // unbiased payoff k / (2 (k + 1))
        if (gammas.empty()) gammas = {0.01, 0.05, 0.1, 0.2, 0.5};
        std::vector<int> rows_k;
        for (int k = 1; k <= 10; ++k) rows_k.push_back(k);
        for (int k : {25, 50, 75, 100}) rows_k.push_back(k);
        std::vector<int> kept;
        for (int k : rows_k)
            if (k <= k_max) kept.push_back(k);
        std::vector<std::vector<sl::SolveReport>> ladders;
        for (double g : gammas)
            ladders.push_back(sl::solve_sequence(k_max, sl::BiasParams::from_gamma(g), s.solver));
        t.header = {"k", "unbiased"};
        for (double g : gammas) t.header.push_back("g" + sl::format_real(g));
        for (int k : kept) {
            std::vector<json> row = {static_cast<long long>(k),
                                     static_cast<double>(k) / (2.0 * (k + 1))};
            for (const auto& ladder : ladders)
                row.push_back(ladder[static_cast<std::size_t>(k - 1)].payoff);
            t.add_row(std::move(row));
        }
        params["gamma"] = gammas;
        params["k_max"] = k_max;
    } else {
        throw std::runtime_error("table: unknown --which: " + which);
    }
    params["solver"] = solver_params(s.solver);
    em.emit("table", params, t);
    return 0;
}

// ---- figure -----------------------------------------------------------------

int run_figure(const Emitter& em, const Settings& s, const std::string& which, double gamma,
               int k, int points, double gamma_min, double gamma_max) {
    sl::OutputTable t;
    json params = json::object();
    params["which"] = which;
    if (which == "portfolio_line") {
        const sl::SolveReport rep = sl::solve(k, sl::BiasParams::from_gamma(gamma), s.solver);
        t.header = {"i", "x_i", "unbiased"};
        for (std::size_t i = 0; i < rep.portfolio.size(); ++i)
            t.add_row({static_cast<long long>(i + 1), rep.portfolio[i],
                       static_cast<double>(k - static_cast<long long>(i)) / (k + 1)});
        params["gamma"] = gamma;
        params["k"] = k;
    } else if (which == "deltas") {
        const sl::SolveReport rep = sl::solve(k, sl::BiasParams::from_gamma(gamma), s.solver);
        t.header = {"i", "x_i", "delta_i"};
        for (std::size_t i = 0; i < rep.portfolio.size(); ++i)
            t.add_row({static_cast<long long>(i + 1), rep.portfolio[i], rep.gaps.deltas[i]});
        params["gamma"] = gamma;
        params["k"] = k;
    } else if (which == "h_curve") {
        t.header = {"gamma", "h_gamma"};
        for (int j = 0; j < points; ++j) {
            const double g =
                gamma_min * std::pow(gamma_max / gamma_min,
                                     points > 1 ? static_cast<double>(j) / (points - 1) : 0.0);
            t.add_row({g, sl::h_of_gamma(g)});
        }
        params["gamma_min"] = gamma_min;
        params["gamma_max"] = gamma_max;
        params["points"] = points;
    } else if (which == "m_curve") {
        t.header = {"c", "m_gamma_c"};
        for (int j = 1; j <= points; ++j) {
            const double c = (2.0 / 3.0) * j / (points + 1);
            t.add_row({c, sl::m_of_gamma_c(gamma, c)});
        }
        params["gamma"] = gamma;
        params["points"] = points;
    } else if (which == "x1_vs_gamma") {
        // top-school overshoot against the refined lower bound
        t.header = {"gamma", "x_1", "x_1_refined_lower", "unbiased"};
        for (int j = 1; j <= points; ++j) {
            const double g = gamma_max * j / points;
            const sl::SolveReport rep = sl::solve(k, sl::BiasParams::from_gamma(g), s.solver);
            const auto sw = sl::xi_sandwich_general(k, g, sl::refined_envelope(k, g));
            t.add_row({g, rep.portfolio[0], sw.first[0],
                       static_cast<double>(k) / (k + 1)});
        }
        params["k"] = k;
        params["gamma_max"] = gamma_max;
        params["points"] = points;
    } else {
        throw std::runtime_error("figure: unknown --which: " + which);
    }
    em.emit("figure", params, t);
    return 0;
}

// ---- verify -----------------------------------------------------------------

int run_verify(const Emitter& em, const Settings& s, const std::string& suite) {
    std::vector<sl::CheckResult> results;
    if (suite == "foc")
        results = sl::verify_foc(s.solver);
    else if (suite == "bounds")
        results = sl::verify_bounds(s.solver);
    else if (suite == "oracle")
        results = sl::verify_oracle(s.solver);
    else if (suite == "montecarlo")
        results = sl::verify_montecarlo(s.seed, s.samples, s.solver);
    else if (suite == "overshoot")
        results = sl::verify_overshoot(s.solver);
    else if (suite == "all")
        results = sl::verify_all(s.solver, s.seed, s.samples);
    else
        throw std::runtime_error("verify: unknown --suite: " + suite);

    sl::OutputTable t;
    t.header = {"check", "pass", "margin", "detail"};
    int failed = 0;
    for (const auto& r : results) {
        t.add_row({r.name, r.pass, r.margin, r.detail});
        if (!r.pass) ++failed;
    }
    json params = json::object();
    params["suite"] = suite;
    params["seed"] = s.seed;
    params["samples"] = s.samples;
    params["solver"] = solver_params(s.solver);
    em.emit("verify", params, t);
    std::cerr << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size()
              << " checks passed\n";
    return failed == 0 ? 0 : 1;
}

// ---- oracle -----------------------------------------------------------------

int run_oracle(const Emitter& em, const Settings& s, const BiasFlags& bias, int k,
               double resolution) {
    const sl::BiasParams b = bias.resolve();
    const sl::SolveReport grid = sl::oracle_solve(k, b, resolution);
    const sl::SolveReport solved = sl::solve(k, b, s.solver);
    sl::OutputTable t;
    t.header = {"i", "x_oracle", "x_solve", "abs_diff", "perceived_oracle", "perceived_solve"};
    for (std::size_t i = 0; i < grid.portfolio.size(); ++i)
        t.add_row({static_cast<long long>(i + 1), grid.portfolio[i], solved.portfolio[i],
                   std::abs(grid.portfolio[i] - solved.portfolio[i]), grid.perceived,
                   solved.perceived});
    json params = bias.params();
    params["k"] = k;
    params["resolution"] = resolution;
    params["solver"] = solver_params(s.solver);
    em.emit("oracle", params, t);
    return 0;
}

// ---- mc ---------------------------------------------------------------------

int run_mc(const Emitter& em, const Settings& s, const BiasFlags& bias, int k,
           const std::vector<double>& portfolio, bool k_given) {
    const sl::BiasParams b = bias.resolve();
    sl::Portfolio pf = portfolio.empty() ? sl::solve(k, b, s.solver).portfolio
                                         : sl::Portfolio(portfolio);
    if (!portfolio.empty() && k_given)
        throw std::runtime_error("mc: pass either --k or --portfolio, not both");
    sl::SimConfig sc;
    sc.samples = s.samples;
    sc.seed = s.seed;
    sc.stream_count = s.stream_count;
    sc.threads = s.threads;
    const sl::SimResult r = sl::simulate(pf, b, sc);
    sl::OutputTable t;
    t.header = {"samples",         "mean_perceived", "stderr_perceived",
                "mean_payoff",     "stderr_payoff",  "analytic_perceived",
                "analytic_payoff"};
    t.add_row({static_cast<unsigned long long>(sc.samples), r.mean_perceived, r.stderr_perceived,
               r.mean_payoff, r.stderr_payoff, sl::perceived_utility(pf, b), sl::true_payoff(pf)});
    json params = bias.params();
    if (portfolio.empty())
        params["k"] = k;
    else
        params["portfolio"] = portfolio;
    params["samples"] = sc.samples;
    params["seed"] = sc.seed;
    params["stream_count"] = sc.stream_count;
    params["threads"] = sc.threads;  // as requested; resolution happens at run time
    em.emit("mc", params, t);
    return 0;
}

// ---- bounds -----------------------------------------------------------------

int run_bounds(const Emitter& em, double gamma, int k, std::vector<double> cs) {
    if (cs.empty()) cs = {1.0 / 3.0};
    const sl::BoundsReport rep = sl::bounds_report(gamma, k, cs[0]);
    sl::OutputTable t;
    t.header = {"i", "xi_lower", "xi_upper", "h_gamma", "cap_two_thirds", "p_gamma", "k_gamma"};
    for (double c : cs) t.header.push_back("m_c" + sl::format_real(c));
    for (int i = 1; i <= k; ++i) {
        std::vector<json> row = {static_cast<long long>(i),
                                 rep.xi_lower[static_cast<std::size_t>(i - 1)],
                                 rep.xi_upper[static_cast<std::size_t>(i - 1)],
                                 rep.h_gamma,
                                 rep.above_two_thirds_cap,
                                 rep.p_gamma,
                                 rep.k_gamma};
        for (double c : cs) row.push_back(sl::m_of_gamma_c(gamma, c));
        t.add_row(std::move(row));
    }
    json params = json::object();
    params["gamma"] = gamma;
    params["k"] = k;
    params["c"] = cs;
    em.emit("bounds", params, t);
    return 0;
}

// ---- overshoot ----------------------------------------------------------------

int run_overshoot(const Emitter& em, const Settings& s, bool have_local, double a, double b,
                  bool have_theta, double theta, bool scan, bool trace,
                  std::vector<double> gammas, double gamma_max, int points, int k, int idx,
                  bool extended) {
    const int modes = (have_local ? 1 : 0) + (have_theta ? 1 : 0) + (scan ? 1 : 0) +
                      (trace ? 1 : 0);
    if (modes != 1)
        throw std::runtime_error(
            "overshoot: pass exactly one of --a/--b, --theta, --scan, --trace");
    sl::OutputTable t;
    json params = json::object();
    if (have_local) {
        if (gammas.size() != 1)
            throw std::runtime_error("overshoot: local mode needs exactly one --gamma");
        const sl::LocalOvershootResult r = sl::interior_optimum(a, b, gammas[0], extended);
        t.header = {"a", "b", "gamma", "x_star", "midpoint", "z", "overshoots"};
        t.add_row({a, b, gammas[0], r.x_star, r.midpoint, a + b, r.overshoots});
        params["a"] = a;
        params["b"] = b;
        params["gamma"] = gammas[0];
        params["extended"] = extended;
        params["mode"] = "local";
    } else if (have_theta) {
        if (gammas.size() != 1)
            throw std::runtime_error("overshoot: theta mode needs exactly one --gamma");
        const double z = sl::theta_threshold(theta, gammas[0]);
        t.header = {"theta", "gamma", "z_threshold"};
        t.add_row({theta, gammas[0], z});
        params["theta"] = theta;
        params["gamma"] = gammas[0];
        params["mode"] = "theta";
    } else if (scan) {
        if (gammas.empty())
            for (int j = 1; j <= points; ++j) gammas.push_back(gamma_max * j / points);
        const auto rows = sl::global_overshoot_scan(k, gammas, s.solver);
        t.header = {"gamma",          "x_1",   "x_k", "x1_minus_unbiased", "xk_minus_unbiased",
                    "overshoot_top",  "undershoot_bottom"};
        for (const auto& r : rows)
            t.add_row({r.gamma, r.x1, r.xk, r.x1_minus_unbiased, r.xk_minus_unbiased,
                       r.overshoot_top, r.undershoot_bottom});
        params["k"] = k;
        params["gamma"] = gammas;
        params["mode"] = "scan";
    } else {
        if (gammas.empty()) gammas = {0.03, 0.02, 0.01, 0.005, 0.002, 0.001};
        const auto xs = sl::convergence_trace(k, idx, gammas, s.solver);
        t.header = {"gamma", "x_i", "unbiased", "x_i_minus_unbiased"};
        const double unb = static_cast<double>(k + 1 - idx) / (k + 1);
        for (std::size_t j = 0; j < gammas.size(); ++j)
            t.add_row({gammas[j], xs[j], unb, xs[j] - unb});
        params["k"] = k;
        params["i"] = idx;
        params["gamma"] = gammas;
        params["mode"] = "trace";
    }
    em.emit("overshoot", params, t);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal application portfolios under biased belief updating"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", SHORTLIST_VERSION);

    Emitter em;
    std::string config_path;
    Settings flags;  // receives explicit flag values; layered after parse
    app.add_option("--format", em.format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", em.out_path, "write output here plus <out>.manifest.json");
    app.add_option("--config", config_path, "key=value config file");
    auto* seed_opt = app.add_option("--seed", flags.seed, "RNG seed");
    auto* tol_opt = app.add_option("--boundary-tolerance", flags.solver.boundary_tolerance,
                                   "bisection tolerance on the virtual x_{k+1}");
    auto* bis_opt =
        app.add_option("--max-bisection-iters", flags.solver.max_bisection_iters);
    auto* multi_opt = app.add_option("--multistart-count", flags.solver.multistart_count);
    auto* clamp_opt = app.add_flag("--clamp-negative,!--no-clamp-negative",
                                   flags.solver.clamp_negative,
                                   "repair shots whose iterates go negative mid-run");

    // solve
    auto* c_solve = app.add_subcommand("solve", "solve one (k, bias) instance");
    BiasFlags solve_bias;
    solve_bias.attach(c_solve);
    int solve_k = 5;
    c_solve->add_option("--k", solve_k, "portfolio size")->required();

    // table
    auto* c_table = app.add_subcommand("table", "standard result tables");
    std::string table_which;
    std::vector<double> table_gammas;
    std::vector<int> table_ks;
    int table_kmax = 100;
    c_table->add_option("--which", table_which, "freezing or payoff")->required();
    c_table->add_option("--gamma", table_gammas, "gamma columns")->delimiter(',');
    auto* table_k_opt = c_table->add_option("--k", table_ks, "portfolio size per gamma (freezing)")
                            ->delimiter(',');
    c_table->add_option("--k-max", table_kmax, "largest k (payoff)");

    // figure
    auto* c_figure = app.add_subcommand("figure", "figure-ready curves");
    std::string figure_which;
    double figure_gamma = 0.1;
    int figure_k = 0;
    int figure_points = 0;
    double figure_gmin = 0.01, figure_gmax = 0.0;
    c_figure
        ->add_option("--which", figure_which,
                     "portfolio_line, deltas, h_curve, m_curve, or x1_vs_gamma")
        ->required();
    c_figure->add_option("--gamma", figure_gamma);
    auto* figure_k_opt = c_figure->add_option("--k", figure_k);
    auto* figure_pts_opt = c_figure->add_option("--points", figure_points);
    c_figure->add_option("--gamma-min", figure_gmin);
    auto* figure_gmax_opt = c_figure->add_option("--gamma-max", figure_gmax);

    // verify
    auto* c_verify = app.add_subcommand("verify", "re-derive the analytic properties");
    std::string verify_suite = "all";
    c_verify->add_option("--suite", verify_suite,
                         "foc, bounds, oracle, montecarlo, overshoot, or all");
    auto* verify_samples_opt = c_verify->add_option("--samples", flags.samples);

    // oracle
    auto* c_oracle = app.add_subcommand("oracle", "grid search cross-check (k <= 4)");
    BiasFlags oracle_bias;
    oracle_bias.attach(c_oracle);
    int oracle_k = 2;
    double oracle_res = 1e-3;
    c_oracle->add_option("--k", oracle_k, "portfolio size")->required();
    c_oracle->add_option("--resolution", oracle_res, "grid resolution")->capture_default_str();

    // mc
    auto* c_mc = app.add_subcommand("mc", "Monte Carlo admission simulation");
    BiasFlags mc_bias;
    mc_bias.attach(c_mc);
    int mc_k = 5;
    std::vector<double> mc_portfolio;
    auto* mc_k_opt = c_mc->add_option("--k", mc_k, "solve this k first");
    c_mc->add_option("--portfolio", mc_portfolio, "explicit thresholds x_1,...,x_k")
        ->delimiter(',');
    auto* mc_samples_opt = c_mc->add_option("--samples", flags.samples);
    auto* mc_streams_opt = c_mc->add_option("--streams", flags.stream_count);
    auto* mc_threads_opt = c_mc->add_option("--threads", flags.threads);

    // bounds
    auto* c_bounds = app.add_subcommand("bounds", "closed-form bound report");
    double bounds_gamma = 0.0;
    int bounds_k = 10;
    std::vector<double> bounds_cs;
    c_bounds->add_option("--gamma", bounds_gamma)->required();
    c_bounds->add_option("--k", bounds_k)->capture_default_str();
    c_bounds->add_option("--c", bounds_cs, "split points for m(gamma, c)")->delimiter(',');

    // overshoot
    auto* c_over = app.add_subcommand("overshoot", "overshoot geometry");
    double over_a = 0.0, over_b = 0.0, over_theta = 0.0;
    bool over_scan = false, over_trace = false, over_ext = false;
    std::vector<double> over_gammas;
    double over_gmax = 8.0 / 216.0;
    int over_points = 20, over_k = 5, over_i = 1;
    auto* over_a_opt = c_over->add_option("--a", over_a, "interval left endpoint");
    auto* over_b_opt = c_over->add_option("--b", over_b, "interval right endpoint");
    auto* over_theta_opt = c_over->add_option("--theta", over_theta, "position ratio");
    c_over->add_flag("--scan", over_scan, "solved-portfolio endpoint scan");
    c_over->add_flag("--trace", over_trace, "x_i along a decreasing gamma grid");
    c_over->add_flag("--extended", over_ext, "accept gamma up to 1/2 in local mode");
    c_over->add_option("--gamma", over_gammas)->delimiter(',');
    c_over->add_option("--gamma-max", over_gmax)->capture_default_str();
    c_over->add_option("--points", over_points)->capture_default_str();
    c_over->add_option("--k", over_k)->capture_default_str();
    c_over->add_option("--i", over_i)->capture_default_str();
    over_a_opt->needs(over_b_opt);
    over_b_opt->needs(over_a_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        // layering: builtins, then config file, then explicit flags
        Settings s;
        if (!config_path.empty()) apply_config(s, sl::parse_config_file(config_path));
        if (seed_opt->count() > 0) s.seed = flags.seed;
        if (tol_opt->count() > 0) s.solver.boundary_tolerance = flags.solver.boundary_tolerance;
        if (bis_opt->count() > 0) s.solver.max_bisection_iters = flags.solver.max_bisection_iters;
        if (multi_opt->count() > 0) s.solver.multistart_count = flags.solver.multistart_count;
        if (clamp_opt->count() > 0) s.solver.clamp_negative = flags.solver.clamp_negative;
        if (verify_samples_opt->count() > 0 || mc_samples_opt->count() > 0)
            s.samples = flags.samples;
        if (mc_streams_opt->count() > 0) s.stream_count = flags.stream_count;
        if (mc_threads_opt->count() > 0) s.threads = flags.threads;

        if (c_solve->parsed()) return run_solve(em, s, solve_bias, solve_k);
        if (c_table->parsed())
            return run_table(em, s, table_which, table_gammas, table_ks, table_kmax,
                             table_k_opt->count() > 0);
        if (c_figure->parsed()) {
            // per-curve defaults for anything not given explicitly
            int k = figure_k, pts = figure_points;
            double gmax = figure_gmax;
            if (figure_k_opt->count() == 0) k = figure_which == "deltas" ? 25 : (figure_which == "x1_vs_gamma" ? 5 : 100);
            if (figure_pts_opt->count() == 0)
                pts = figure_which == "h_curve" ? 121 : (figure_which == "m_curve" ? 60 : 40);
            if (figure_gmax_opt->count() == 0)
                gmax = figure_which == "x1_vs_gamma" ? 8.0 / 216.0 : 3.0;
            return run_figure(em, s, figure_which, figure_gamma, k, pts, figure_gmin, gmax);
        }
        if (c_verify->parsed()) return run_verify(em, s, verify_suite);
        if (c_oracle->parsed()) return run_oracle(em, s, oracle_bias, oracle_k, oracle_res);
        if (c_mc->parsed())
            return run_mc(em, s, mc_bias, mc_k, mc_portfolio, mc_k_opt->count() > 0);
        if (c_bounds->parsed()) return run_bounds(em, bounds_gamma, bounds_k, bounds_cs);
        if (c_over->parsed())
            return run_overshoot(em, s, over_a_opt->count() > 0, over_a, over_b,
                                 over_theta_opt->count() > 0, over_theta, over_scan, over_trace,
                                 over_gammas, over_gmax, over_points, over_k, over_i, over_ext);
        throw std::runtime_error("no subcommand given");
    } catch (const std::exception& e) {
        std::cerr << "shortlist: error: " << e.what() << "\n";
        return 2;
    }
}
