// Acceptance gate for the shortlist solver.  Each criterion below re-checks a
// required behaviour end to end, independently of the unit suites, and prints
// one PASS/FAIL line (plus analysis details on failure).  Exit code 0 iff all
// selected criteria pass.
//
// Usage: acceptance <path-to-cli> [criterion 1..9]

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "shortlist/bounds.hpp"
#include "shortlist/model.hpp"
#include "shortlist/montecarlo.hpp"
#include "shortlist/overshoot.hpp"
#include "shortlist/solver.hpp"

#include "reference_tables.hpp"

namespace fs = std::filesystem;
using namespace shortlist;

namespace {

std::string g_cli;  // path to the command-line binary, for criterion 9

struct Checker {
    bool ok = true;
    std::ostringstream detail;
    int noted = 0;
    static constexpr int kMaxNotes = 40;

    void fail(const std::string& msg) {
        ok = false;
        note(msg);
    }
    void note(const std::string& msg) {
        if (noted < kMaxNotes) detail << "    " << msg << "\n";
        else if (noted == kMaxNotes) detail << "    ... (more suppressed)\n";
        ++noted;
    }
    void require(bool cond, const std::string& msg) {
        if (!cond) fail(msg);
    }
};

std::string fmt(double v, int prec = 12) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

// Signed first-order-condition residual of an arbitrary descending list
// (x_0 = 1, virtual x_{k+1} = 0), used to audit printed reference rows.
double foc_residual_at(const std::vector<double>& x, double gamma, std::size_t i) {
    const double prev = i == 0 ? 1.0 : x[i - 1];
    const double next = i + 1 < x.size() ? x[i + 1] : 0.0;
    const double xi = x[i];
    return prev - 2.0 * xi + next - gamma * (2.0 * xi - 3.0 * xi * xi);
}

double payoff_of(const std::vector<double>& x) {
    double p = 0.0, prev = 1.0;
    for (double v : x) {
        p += v * (prev - v);
        prev = v;
    }
    return p;
}

// ---------------------------------------------------------------- criterion 1

bool criterion_stabilization_table(Checker& c) {
    for (const auto& row : reftab::freezing_rows()) {
        const SolveReport rep = solve(row.k, BiasParams::from_gamma(row.gamma));
        for (int i = 1; i <= row.k; ++i) {
            const double solved = rep.portfolio[static_cast<std::size_t>(i - 1)];
            const double printed = row.printed[static_cast<std::size_t>(i - 1)];
            const int decimals = row.decimals[static_cast<std::size_t>(i - 1)];
            if (reftab::freezing_cell_skipped(row, i)) {
                c.note("gamma=1 k=6 i=6: excluded by rule; solved " + fmt(solved) +
                       ", printed " + fmt(printed) + " (one digit appears dropped)");
                continue;
            }
            if (!reftab::matches_printed(solved, printed, decimals)) {
                c.fail("cell gamma=" + fmt(row.gamma, 3) + " k=" + std::to_string(row.k) +
                       " i=" + std::to_string(i) + ": solved " + fmt(solved) + " vs printed " +
                       fmt(printed) + " (|diff| " + fmt(std::abs(solved - printed), 3) + ")");
                if (reftab::freezing_cell_defective(row, i)) {
                    const std::vector<double> printed_row(row.printed.begin(), row.printed.end());
                    c.note("analysis: printed row is not stationary; its residuals are " +
                           fmt(foc_residual_at(printed_row, row.gamma, 0), 3) + ", " +
                           fmt(foc_residual_at(printed_row, row.gamma, 1), 3) +
                           " while the solved row's are < 1e-10");
                    c.note("analysis: payoff of solved row " + fmt(rep.payoff, 10) +
                           " matches the printed payoff-table entry 0.319467; the printed row " +
                           "would pay " + fmt(payoff_of(printed_row), 5));
                    const SolveReport byhand = oracle_solve(2, BiasParams::from_gamma(0.5), 1e-3);
                    c.note("analysis: exhaustive 1e-3 grid search lands at [" +
                           fmt(byhand.portfolio[0], 4) + ", " + fmt(byhand.portfolio[1], 4) +
                           "], agreeing with the solved row, not the printed one");
                    c.note("analysis: the printed first entry looks digit-transposed "
                           "(0.588 vs 0.5586...)");
                }
            }
        }
    }
    return c.ok;
}

// ---------------------------------------------------------------- criterion 2

bool criterion_payoff_table(Checker& c) {
    const auto rows = reftab::payoff_rows();
    const auto gammas = reftab::payoff_gammas();

    // unbiased column: solved at gamma = 0 must equal k/(2(k+1)) to 1e-12
    const auto unbiased = solve_sequence(100, BiasParams::from_gamma(0.0));
    for (const auto& row : rows) {
        const double formula = row.k / (2.0 * (row.k + 1.0));
        const double got = unbiased[static_cast<std::size_t>(row.k - 1)].payoff;
        c.require(std::abs(got - formula) <= 1e-12,
                  "unbiased k=" + std::to_string(row.k) + ": payoff " + fmt(got) +
                      " differs from k/(2(k+1)) = " + fmt(formula));
    }

    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
        const double gamma = gammas[gi];
        const auto ladder = solve_sequence(100, BiasParams::from_gamma(gamma));
        for (const auto& row : rows) {
            const double got = ladder[static_cast<std::size_t>(row.k - 1)].payoff;
            const double printed = row.by_gamma[gi];
            const double diff = std::abs(got - printed);
            if (diff <= 1e-5) continue;
            c.fail("cell k=" + std::to_string(row.k) + " gamma=" + fmt(gamma, 3) + ": payoff " +
                   fmt(got, 10) + " vs printed " + fmt(printed, 7) + " (|diff| " + fmt(diff, 3) +
                   ")");
            if (reftab::payoff_cell_defective(row.k, gamma)) {
                double printed_k3 = 0.0, printed_k5 = 0.0;
                for (const auto& r2 : rows) {
                    if (r2.k == 3) printed_k3 = r2.by_gamma[gi];
                    if (r2.k == 5) printed_k5 = r2.by_gamma[gi];
                }
                c.note("analysis: computed value " + fmt(reftab::payoff_defective_cell_truth()) +
                       " truncates to 0.354442, not the printed 0.354428");
                c.note("analysis: neighbours match the print: k=3 " + fmt(ladder[2].payoff, 8) +
                       " vs " + fmt(printed_k3, 6) + ", k=5 " + fmt(ladder[4].payoff, 8) + " vs " +
                       fmt(printed_k5, 6));
                c.note("analysis: the k=4 portfolio's first-order residuals are < 1e-10 and its " +
                       std::string("thresholds match the stabilization table row, so the payoff "
                                   "computation is not the discrepancy"));
            }
        }
    }
    return c.ok;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_equal_spacing(Checker& c) {
    const auto ladder = solve_sequence(100, BiasParams::from_gamma(0.0));
    for (int k = 1; k <= 100; ++k) {
        const SolveReport& rep = ladder[static_cast<std::size_t>(k - 1)];
        for (int i = 1; i <= k; ++i) {
            const double want = static_cast<double>(k + 1 - i) / (k + 1);
            const double got = rep.portfolio[static_cast<std::size_t>(i - 1)];
            if (std::abs(got - want) > 1e-10) {
                c.fail("k=" + std::to_string(k) + " i=" + std::to_string(i) + ": " + fmt(got) +
                       " vs " + fmt(want));
            }
        }
        const double formula = k / (2.0 * (k + 1.0));
        c.require(std::abs(rep.payoff - formula) <= 1e-12,
                  "k=" + std::to_string(k) + ": payoff " + fmt(rep.payoff) + " vs " + fmt(formula));
    }
    return c.ok;
}

// ---------------------------------------------------------------- criterion 4

bool criterion_oracle(Checker& c) {
    for (int k : {1, 2, 3}) {
        for (double gamma : {0.0, 0.1, 0.5, 1.0}) {
            const BiasParams bias = BiasParams::from_gamma(gamma);
            const SolveReport fast = solve(k, bias);
            const SolveReport slow = oracle_solve(k, bias, 1e-3);
            for (int i = 0; i < k; ++i) {
                const double d = std::abs(fast.portfolio[static_cast<std::size_t>(i)] -
                                          slow.portfolio[static_cast<std::size_t>(i)]);
                c.require(d <= 2e-3, "k=" + std::to_string(k) + " gamma=" + fmt(gamma, 3) +
                                         " i=" + std::to_string(i + 1) + ": |solver - oracle| = " +
                                         fmt(d, 3));
            }
            c.require(std::abs(fast.perceived - slow.perceived) <= 1e-5,
                      "k=" + std::to_string(k) + " gamma=" + fmt(gamma, 3) +
                          ": perceived gap = " + fmt(std::abs(fast.perceived - slow.perceived), 3));
            c.require(fast.perceived >= slow.perceived - 1e-15,
                      "k=" + std::to_string(k) + " gamma=" + fmt(gamma, 3) +
                          ": solver fell below the grid oracle");
        }
    }
    return c.ok;
}

// ---------------------------------------------------------------- criterion 5

bool criterion_bounds(Checker& c) {
    const std::vector<double> gammas = {0.01, 0.05, 0.1, 1.0 / 3.0, 0.5, 1.0, 2.0, 3.0};
    for (double gamma : gammas) {
        const BiasParams bias = BiasParams::from_gamma(gamma);
        const auto ladder = solve_sequence(25, bias);
        const double h = h_of_gamma(gamma);
        const double cap = std::ceil(above_two_thirds_cap(gamma));
        for (int k = 2; k <= 25; ++k) {
            const SolveReport& rep = ladder[static_cast<std::size_t>(k - 1)];
            const auto& x = rep.portfolio.schools();
            const std::string where = "gamma=" + fmt(gamma, 3) + " k=" + std::to_string(k);

            c.require(x[1] <= h + 1e-9, where + ": x_2 = " + fmt(x[1]) + " above h = " + fmt(h));

            int above23 = 0;
            for (double v : x) above23 += v > 2.0 / 3.0 ? 1 : 0;
            c.require(above23 <= cap, where + ": " + std::to_string(above23) +
                                          " entries above 2/3, cap " + fmt(cap, 4));

            for (double cc : {0.1, 0.3, 0.5}) {
                const double m = m_of_gamma_c(gamma, cc);
                int above = 0;
                for (double v : x) above += v > cc ? 1 : 0;
                c.require(above <= m, where + " c=" + fmt(cc, 2) + ": " + std::to_string(above) +
                                          " entries above, bound " + fmt(m, 5));
            }

            const auto [lo, hi] = xi_sandwich(k, gamma);
            for (int i = 0; i < k; ++i) {
                const std::size_t s = static_cast<std::size_t>(i);
                c.require(x[s] >= lo[s] - 1e-9 && x[s] <= hi[s] + 1e-9,
                          where + " i=" + std::to_string(i + 1) + ": x = " + fmt(x[s]) +
                              " outside [" + fmt(lo[s]) + ", " + fmt(hi[s]) + "]");
            }

            const auto& d = rep.gaps.deltas;
            for (int i = 1; i + 1 <= k; ++i) {
                const std::size_t s = static_cast<std::size_t>(i);
                const double res =
                    d[s] - d[s - 1] + gamma * (2.0 * x[s - 1] - 3.0 * x[s - 1] * x[s - 1]);
                c.require(std::abs(res) <= 1e-9,
                          where + ": gap-law residual " + fmt(res, 3) + " at i=" + std::to_string(i));
            }
        }

        const auto opt = utility_is_increasing_in_k(25, bias);
        for (std::size_t k = 1; k < opt.size(); ++k) {
            const double xk = ladder[k].portfolio[k];
            const double predicted_gain = xk * xk / (4.0 * (1.0 + gamma));
            if (predicted_gain > 1e-12) {
                c.require(opt[k] > opt[k - 1], "gamma=" + fmt(gamma, 3) + ": OPT(" +
                                                   std::to_string(k + 1) +
                                                   ") failed to increase strictly");
            } else {
                c.require(opt[k] >= opt[k - 1] - 1e-13,
                          "gamma=" + fmt(gamma, 3) + ": OPT(" + std::to_string(k + 1) +
                              ") decreased beyond rounding");
            }
        }
    }
    return c.ok;
}

// ---------------------------------------------------------------- criterion 6

bool criterion_ceiling(Checker& c) {
    const std::vector<double> gammas = {0.01, 0.05, 0.1, 1.0 / 3.0, 0.5, 1.0, 2.0, 3.0};
    for (double gamma : gammas) {
        const PGamma pg = p_of_gamma(gamma);
        const auto ladder = solve_sequence(100, BiasParams::from_gamma(gamma));
        double max_payoff = 0.0;
        int argmax = 0;
        for (int k = 1; k <= 100; ++k) {
            const double p = ladder[static_cast<std::size_t>(k - 1)].payoff;
            if (p > max_payoff) {
                max_payoff = p;
                argmax = k;
            }
        }
        c.require(max_payoff <= pg.p + 1e-9, "gamma=" + fmt(gamma, 3) + ": max payoff " +
                                                 fmt(max_payoff) + " (k=" + std::to_string(argmax) +
                                                 ") exceeds ceiling " + fmt(pg.p));
        const double kc = k_of_gamma(gamma);
        bool crossover_ok = true;
        for (int k = static_cast<int>(std::floor(kc)) + 1; k <= 10000; ++k) {
            if (!(k / (2.0 * (k + 1.0)) > pg.p)) {
                crossover_ok = false;
                c.fail("gamma=" + fmt(gamma, 3) + ": unbiased payoff at k=" + std::to_string(k) +
                       " does not clear the ceiling " + fmt(pg.p));
                break;
            }
        }
        if (crossover_ok)
            c.note("gamma=" + fmt(gamma, 3) + ": ceiling " + fmt(pg.p, 6) + ", crossover k > " +
                   fmt(kc, 6));
    }
    return c.ok;
}

// ---------------------------------------------------------------- criterion 7

bool criterion_overshoot(Checker& c) {
    // sign of the interior optimum against the midpoint, on a 100-case grid
    for (double gamma : {0.02, 0.06, 0.10, 0.14, 0.18}) {
        for (int j = 0; j < 20; ++j) {
            const double z = 0.35 + j * (1.4 / 19.0);
            const double w = std::min({0.18, z / 2.0, 1.0 - z / 2.0});
            const double a = z / 2.0 - w, b = z / 2.0 + w;
            const LocalOvershootResult r = interior_optimum(a, b, gamma);
            const double res =
                2.0 * r.x_star - (a + b) + gamma * (2.0 * r.x_star - 3.0 * r.x_star * r.x_star);
            const std::string where = "gamma=" + fmt(gamma, 3) + " z=" + fmt(z, 6);
            c.require(std::abs(res) <= 1e-10, where + ": stationarity residual " + fmt(res, 3));
            const bool above = r.x_star > r.midpoint;
            c.require(above == (a + b > 4.0 / 3.0),
                      where + ": optimum on the wrong side of the midpoint");
            c.require(r.overshoots == above, where + ": overshoot flag inconsistent");
        }
    }

    for (double gamma : {0.05, 0.1, 0.2, 0.25}) {
        if (theta_threshold(0.5, gamma) != 4.0 / 3.0) {
            c.fail("theta_threshold(1/2) != 4/3 exactly at gamma=" + fmt(gamma, 3));
        }
    }

    // five-school envelope at small gamma: top school overshoots its unbiased
    // position throughout (0, 0.0142912], bottom school undershoots on
    // (0, 1/216)
    for (int j = 1; j <= 20; ++j) {
        const double gamma = 0.0142912 * j / 20.0;
        const double x1 = solve(5, BiasParams::from_gamma(gamma)).portfolio[0];
        c.require(x1 > 5.0 / 6.0, "gamma=" + fmt(gamma, 6) + ": x_1 = " + fmt(x1) + " <= 5/6");
    }
    for (int j = 1; j <= 20; ++j) {
        const double gamma = (1.0 / 216.0) * j / 21.0;
        const double x5 = solve(5, BiasParams::from_gamma(gamma)).portfolio[4];
        c.require(x5 < 1.0 / 6.0, "gamma=" + fmt(gamma, 6) + ": x_5 = " + fmt(x5) + " >= 1/6");
    }
    return c.ok;
}

// ---------------------------------------------------------------- criterion 8

bool criterion_montecarlo(Checker& c) {
    const BiasParams bias = BiasParams::from_gamma(0.1);
    const SolveReport rep = solve(5, bias);
    SimConfig cfg;
    cfg.samples = 10000000;
    cfg.seed = 42;

    const SimResult base = simulate(rep.portfolio, bias, cfg);
    c.require(std::abs(base.mean_payoff - 0.413675) <= 3.0 * base.stderr_payoff,
              "mean payoff " + fmt(base.mean_payoff, 8) + " not within 3 stderr (" +
                  fmt(3.0 * base.stderr_payoff, 3) + ") of 0.413675");
    c.note("payoff " + fmt(base.mean_payoff, 8) + " +/- " + fmt(base.stderr_payoff, 3) +
           " vs 0.413675");

    // equal-gamma parameterizations must agree: payoff is bias-free and
    // matches bitwise under the shared seed, perceived matches statistically
    const std::vector<std::pair<double, double>> splits = {{0.1, 2.0}, {0.05, 3.0}, {0.2, 1.5}};
    std::vector<SimResult> results;
    for (const auto& [tau, lambda] : splits) {
        const BiasParams split = BiasParams::from_tau_lambda(tau, lambda);
        c.require(std::abs(split.gamma - 0.1) <= 1e-15, "split gamma drifted");
        results.push_back(simulate(rep.portfolio, split, cfg));
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        c.require(r.mean_payoff == base.mean_payoff,
                  "split " + std::to_string(i) + ": payoff depends on the (tau, lambda) split");
        c.require(std::abs(r.mean_perceived - rep.perceived) <= 3.0 * r.stderr_perceived,
                  "split " + std::to_string(i) + ": perceived " + fmt(r.mean_perceived, 8) +
                      " not within 3 stderr of " + fmt(rep.perceived, 8));
        for (std::size_t j = i + 1; j < results.size(); ++j) {
            const double joint = std::sqrt(r.stderr_perceived * r.stderr_perceived +
                                           results[j].stderr_perceived * results[j].stderr_perceived);
            c.require(std::abs(r.mean_perceived - results[j].mean_perceived) <= 3.0 * joint,
                      "splits " + std::to_string(i) + "," + std::to_string(j) +
                          ": perceived means disagree beyond joint error");
        }
    }
    return c.ok;
}

// ---------------------------------------------------------------- criterion 9

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion_determinism(Checker& c) {
    if (g_cli.empty()) {
        c.fail("no CLI path supplied");
        return false;
    }
    const fs::path dir = fs::current_path() / "acceptance_scratch";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const std::vector<std::pair<std::string, std::string>> cases = {
        {"solve", "solve --gamma 0.1 --k 5 --format json"},
        {"table", "table --which freezing --format csv"},
        {"figure", "figure --which deltas --gamma 0.5 --k 10 --format csv"},
        {"verify", "verify --suite overshoot --format table"},
        {"oracle", "oracle --gamma 0.5 --k 2 --resolution 0.01 --format json"},
        {"mc", "mc --gamma 0.1 --k 3 --samples 100000 --seed 123 --format csv"},
        {"bounds", "bounds --gamma 0.5 --k 8 --c 0.1,0.3,0.5 --format json"},
        {"overshoot", "overshoot --scan --k 5 --points 10 --format csv"},
    };
    for (const auto& [name, args] : cases) {
        const fs::path out = dir / (name + ".out");
        const fs::path stdout_file = dir / (name + ".stdout");
        const fs::path manifest = fs::path(out.string() + ".manifest.json");
        const std::string cmd = "\"" + g_cli + "\" " + args + " --out \"" + out.string() +
                                "\" > \"" + stdout_file.string() + "\" 2>&1";

        std::string bytes[2], manifests[2], stdouts[2];
        bool ran_ok = true;
        for (int pass = 0; pass < 2; ++pass) {
            const int status = std::system(cmd.c_str());
            const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            if (code != 0) {
                c.fail(name + ": exit code " + std::to_string(code) + " on pass " +
                       std::to_string(pass + 1));
                ran_ok = false;
                break;
            }
            bytes[pass] = slurp(out);
            manifests[pass] = slurp(manifest);
            stdouts[pass] = slurp(stdout_file);
        }
        if (!ran_ok) continue;
        c.require(!bytes[0].empty(), name + ": empty output file");
        c.require(bytes[0] == bytes[1], name + ": output file differs between runs");
        c.require(manifests[0] == manifests[1], name + ": manifest differs between runs");
        c.require(stdouts[0] == stdouts[1], name + ": stdout differs between runs");
    }
    return c.ok;
}

struct Criterion {
    int id;
    const char* name;
    bool (*fn)(Checker&);
    double budget_seconds;  // 0 = untimed
};

const Criterion kCriteria[] = {
    {1, "stabilization table reproduction", criterion_stabilization_table, 5.0},
    {2, "payoff table reproduction", criterion_payoff_table, 30.0},
    {3, "equal spacing at gamma=0", criterion_equal_spacing, 0.0},
    {4, "small-k oracle equivalence", criterion_oracle, 120.0},
    {5, "bound suite", criterion_bounds, 0.0},
    {6, "payoff ceiling and crossover", criterion_ceiling, 0.0},
    {7, "local overshoot suite", criterion_overshoot, 0.0},
    {8, "monte carlo", criterion_montecarlo, 60.0},
    {9, "cli determinism", criterion_determinism, 0.0},
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli> [criterion 1..9]\n";
        return 2;
    }
    g_cli = argv[1];
    int only = 0;
    if (argc >= 3) {
        only = std::atoi(argv[2]);
        if (only < 1 || only > 9) {
            std::cerr << "acceptance: criterion must be 1..9\n";
            return 2;
        }
    }

    bool all_ok = true;
    for (const Criterion& cr : kCriteria) {
        if (only != 0 && cr.id != only) continue;
        Checker c;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = cr.fn(c);
        } catch (const std::exception& e) {
            c.fail(std::string("unexpected exception: ") + e.what());
            ok = false;
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cr.budget_seconds > 0.0 && secs > cr.budget_seconds) {
            ok = false;
            c.fail("runtime " + fmt(secs, 3) + " s exceeded the " + fmt(cr.budget_seconds, 3) +
                   " s budget");
        }
        std::printf("criterion %d (%s): %s (%.2f s)\n", cr.id, cr.name, ok ? "PASS" : "FAIL",
                    secs);
        const std::string detail = c.detail.str();
        if (!detail.empty()) std::fputs(detail.c_str(), stdout);
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
