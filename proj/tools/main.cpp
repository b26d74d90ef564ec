// ringwalk command-line tool: enumerate the chain's state space, export
// transition matrices and stationary distributions, check model invariants,
// and run Monte Carlo simulations.
//
// Exit codes: 0 success, 1 domain error (bad arguments or inputs),
// 2 verification failure, 3 resource cap exceeded.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringwalk/digraph.hpp"
#include "ringwalk/errors.hpp"
#include "ringwalk/markov.hpp"
#include "ringwalk/params.hpp"
#include "ringwalk/rearrangement.hpp"
#include "ringwalk/serialize.hpp"
#include "ringwalk/simulator.hpp"
#include "ringwalk/state_space.hpp"

namespace {

using namespace ringwalk;

// Same fixed-order power helper used by the library, for bit-exact checks.
double ipow(double x, long long e) {
    double out = 1.0;
    for (long long i = 0; i < e; ++i)
        out *= x;
    return out;
}

std::string resolve_out(const std::string& path) {
    if (path.empty())
        return path;
    if (path.front() == '/')
        return path;
    if (const char* dir = std::getenv("RINGWALK_OUT_DIR"); dir && *dir)
        return std::string(dir) + "/" + path;
    return path;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_atomic(resolve_out(out_path), content);
}

struct VerifyTolerances {
    double exact = 1e-12;
    double eigen = 1e-10;
};

std::vector<CheckResult> run_verification(const Params& p, std::uint64_t cap,
                                          const VerifyTolerances& tol) {
    std::vector<CheckResult> checks;
    const auto add = [&checks](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back(CheckResult{name, pass, detail});
    };

    const std::vector<State> states = enumerate_states(p.k(), p.n(), cap);
    const std::uint64_t m = states.size();

    // Counting identities.
    {
        std::uint64_t by_blockage = 0;
        for (int b = 0; b < p.k(); ++b)
            by_blockage += count_states_with_blockages(b, p.k(), p.n());
        const std::uint64_t total = count_total_states(p.k(), p.n());
        add("state counts", m == total && by_blockage == total,
            "enumerated " + std::to_string(m) + ", counted " + std::to_string(total));
    }

    // Ranking is a bijection onto [0, M).
    {
        bool ok = true;
        for (std::uint64_t i = 0; i < m && ok; ++i) {
            const State st = unrank_state(i, p.k(), p.n());
            ok = st == states[i] && rank_state(st, p.k(), p.n()) == i;
        }
        add("rank round-trip", ok, "checked " + std::to_string(m) + " states");
    }

    const TransitionMatrix P = build_transition_matrix(p, cap);

    {
        double worst = 0.0;
        for (std::size_t i = 0; i < P.order(); ++i)
            worst = std::max(worst, std::fabs(P.row_sum(i) - 1.0));
        add("row sums", worst <= tol.exact, "max |sum - 1| = " + fmt_double(worst));
    }

    {
        double lowest = 1.0;
        for (std::size_t i = 0; i < P.order(); ++i)
            for (std::size_t j = 0; j < P.order(); ++j)
                lowest = std::min(lowest, P.at(i, j));
        add("positive entries", lowest > 0.0, "min entry = " + fmt_double(lowest));
    }

    const StationaryDistribution closed = closed_form_stationary(p, cap);

    {
        const std::vector<double> after = P.left_multiply(closed.nu);
        double worst = 0.0;
        for (std::size_t i = 0; i < after.size(); ++i)
            worst = std::max(worst, std::fabs(after[i] - closed.nu[i]));
        add("stationarity", worst <= tol.exact, "max |nuP - nu| = " + fmt_double(worst));
    }

    StationaryDistribution power;
    {
        power = power_iteration_stationary(P);
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            worst = std::max(worst, std::fabs(power.nu[i] - closed.nu[i]));
        // Two extra random starts guard against a lucky uniform start.
        std::mt19937_64 g(0x5eedull);
        for (int rep = 0; rep < 2; ++rep) {
            std::vector<double> start(m);
            for (double& v : start)
                v = RngStreams::uniform01(g) + 1e-3;
            const StationaryDistribution again = power_iteration_stationary(P, start);
            for (std::size_t i = 0; i < m; ++i)
                worst = std::max(worst, std::fabs(again.nu[i] - closed.nu[i]));
        }
        add("power iteration agreement", worst <= tol.eigen,
            "max |power - closed| = " + fmt_double(worst));
    }

    {
        const double closed_form = blockage_fraction_closed_form(p.k(), p.n(), p.r());
        const double from_closed = blockage_fraction_from_distribution(closed.nu, states);
        const double from_power = blockage_fraction_from_distribution(power.nu, states);
        const double worst = std::max(std::fabs(closed_form - from_closed),
                                      std::fabs(closed_form - from_power));
        add("blockage consistency",
            std::fabs(closed_form - from_closed) <= tol.exact &&
                std::fabs(closed_form - from_power) <= tol.eigen,
            "worst deviation = " + fmt_double(worst));
    }

    // Structural symmetries of the matrix.
    {
        bool ok = true;
        std::string what = "all unblocked pairs exact";
        for (std::size_t i = 0; i < m && ok; ++i) {
            if (states[i].blocked)
                continue;
            for (std::size_t j = 0; j < m && ok; ++j) {
                if (states[j].blocked)
                    continue;
                const std::size_t ri = rank_state(costate(states[i]), p.k(), p.n());
                const std::size_t rj = rank_state(costate(states[j]), p.k(), p.n());
                if (P.at(i, j) != P.at(rj, ri)) {
                    ok = false;
                    what = "mismatch at " + state_label(states[i]) + " -> " +
                           state_label(states[j]);
                }
            }
        }
        add("reversal symmetry", ok, what);
    }

    {
        bool ok = true;
        for (std::size_t i = 1; i < m && ok; ++i) {
            if (states[i].gaps != states[i - 1].gaps)
                continue;
            for (std::size_t col = 0; col < m && ok; ++col)
                ok = P.at(i, col) == P.at(i - 1, col);
        }
        add("blocked rows identical", ok, "rows grouped by gap vector");
    }

    {
        bool ok = true;
        for (std::size_t j = 0; j < m && ok; ++j) {
            if (!states[j].blocked)
                continue;
            const std::size_t base = rank_state(State{states[j].gaps, 0}, p.k(), p.n());
            const double scale = ipow(p.r(), blockage_count(states[j]));
            for (std::size_t i = 0; i < m && ok; ++i)
                ok = P.at(i, j) == scale * P.at(i, base);
        }
        add("column scaling", ok, "blocked columns are exact r-powers of unblocked ones");
    }

    {
        const RearrangementDigraph g = RearrangementDigraph::build(p.k(), p.n(), cap);
        const SelfConverseReport report = g.check_self_converse();
        add("self-converse graph", report.ok, report.ok ? "reversal maps edges onto converse"
                                                        : report.violation);

        bool ok = true;
        for (std::size_t u = 0; u < g.vertex_count() && ok; ++u) {
            const auto dist = g.bfs_distances(u);
            for (std::size_t v = 0; v < g.vertex_count() && ok; ++v)
                ok = dist[v] >= 0 &&
                     dist[v] == phi(displacement(g.config(u), g.config(v)));
        }
        add("distance equals path norm", ok,
            "all-pairs over " + std::to_string(g.vertex_count()) + " configurations");
    }

    {
        bool ok = true;
        for (int i = 1; i < p.k() && ok; ++i) {
            const auto lhs = delta_vector(i, p.k());
            const auto rhs = delta_vector(p.k() - i, p.k());
            for (int j = 0; j < p.k() && ok; ++j)
                ok = lhs[static_cast<std::size_t>(p.k() - 1 - j)] ==
                     -rhs[static_cast<std::size_t>(j)];
        }
        add("move reversal identity", ok, "checked moves 1.." + std::to_string(p.k() - 1));
    }

    return checks;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analysis and simulation of k no-passing workers on an n-bin ring"};
    app.require_subcommand(1);

    int k = 0;
    int n = 0;
    double s = 0.5;
    std::string format = "json";
    std::string out_path;
    std::uint64_t cap = kDefaultStateCap;

    const auto add_common = [&](CLI::App* sub, bool with_s) {
        sub->add_option("--k", k, "number of workers")->required();
        sub->add_option("--n", n, "number of bins")->required();
        if (with_s)
            sub->add_option("--s", s, "per-move success probability, in (0,1)")->required();
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", out_path,
                        "output file (atomic write; relative paths honor RINGWALK_OUT_DIR)");
        sub->add_option("--cap", cap, "state-space size cap");
    };

    CLI::App* cmd_states = app.add_subcommand("states", "enumerate the state space");
    add_common(cmd_states, false);

    CLI::App* cmd_matrix = app.add_subcommand("matrix", "export the transition matrix");
    add_common(cmd_matrix, true);

    CLI::App* cmd_stationary =
        app.add_subcommand("stationary", "compute the stationary distribution");
    add_common(cmd_stationary, true);
    std::string method = "closed";
    double power_tol = 1e-13;
    long long power_max_iter = 1'000'000;
    cmd_stationary->add_option("--method", method, "closed form, power iteration, or both")
        ->check(CLI::IsMember({"closed", "power", "both"}));
    cmd_stationary->add_option("--tol", power_tol, "power iteration tolerance");
    cmd_stationary->add_option("--max-iter", power_max_iter, "power iteration budget");

    CLI::App* cmd_blockage =
        app.add_subcommand("blockage", "closed-form long-run blocked fraction");
    add_common(cmd_blockage, true);

    CLI::App* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo run");
    add_common(cmd_simulate, true);
    long long steps = 100'000;
    std::uint64_t seed = 0;
    long long burnin = 10'000;
    long long f_cap_value = 0;
    int replicas = 1;
    std::string start_label;
    std::string trace_path;
    cmd_simulate->add_option("--steps", steps, "counted time steps");
    cmd_simulate->add_option("--seed", seed, "master seed");
    cmd_simulate->add_option("--burnin", burnin, "discarded warm-up steps per replica");
    cmd_simulate->add_option("--f-cap", f_cap_value,
                             "per-step failure cap; a worker hitting it stops exhausted");
    cmd_simulate->add_option("--replicas", replicas, "independent replicas to aggregate");
    cmd_simulate->add_option("--start", start_label,
                             "start from this state label instead of a random placement");
    cmd_simulate->add_option("--trace", trace_path, "write a per-step CSV trace here");

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the model invariant checks");
    add_common(cmd_verify, true);
    VerifyTolerances tol;
    cmd_verify->add_option("--tol-exact", tol.exact, "tolerance for analytic identities");
    cmd_verify->add_option("--tol-eigen", tol.eigen, "tolerance for iterative agreement");

    CLI::App* cmd_digraph = app.add_subcommand("digraph", "export the move graph");
    add_common(cmd_digraph, false);
    bool dot = false;
    cmd_digraph->add_flag("--dot", dot, "emit Graphviz DOT instead of JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*cmd_states) {
            Params p(k, n, 0.5); // validates k and n; s is unused here
            const auto states = enumerate_states(k, n, cap);
            emit(out_path, format == "csv" ? states_csv(states) : states_json(k, n, states));
            return 0;
        }
        if (*cmd_matrix) {
            Params p(k, n, s);
            const TransitionMatrix P = build_transition_matrix(p, cap);
            emit(out_path, format == "csv" ? matrix_csv(P) : matrix_json(P));
            return 0;
        }
        if (*cmd_stationary) {
            Params p(k, n, s);
            const auto states = enumerate_states(k, n, cap);
            std::vector<double> nu_closed;
            std::vector<double> nu_power;
            if (method != "power")
                nu_closed = closed_form_stationary(p, cap).nu;
            if (method != "closed") {
                const TransitionMatrix P = build_transition_matrix(p, cap);
                nu_power = power_iteration_stationary(P, power_tol, power_max_iter).nu;
            }
            emit(out_path, format == "csv"
                               ? stationary_csv(states, nu_closed, nu_power)
                               : stationary_json(k, n, s, method, states, nu_closed, nu_power));
            return 0;
        }
        if (*cmd_blockage) {
            Params p(k, n, s);
            const double b = blockage_fraction_closed_form(k, n, p.r());
            emit(out_path, format == "csv" ? blockage_csv(k, n, s, p.r(), b)
                                           : blockage_json(k, n, s, p.r(), b));
            return 0;
        }
        if (*cmd_simulate) {
            if (cmd_simulate->count("--format") && format != "json")
                throw std::domain_error("simulate emits JSON stats; --format csv is not valid "
                                        "(use --trace for a CSV step log)");
            Params p(k, n, s);
            RunOptions opt;
            opt.steps = steps;
            opt.seed = seed;
            opt.burnin = burnin;
            if (cmd_simulate->count("--f-cap"))
                opt.f_cap = f_cap_value;
            opt.replicas = replicas;
            opt.cap = cap;
            if (!start_label.empty())
                opt.start = parse_state_label(start_label);
            std::ofstream trace;
            if (!trace_path.empty()) {
                trace.open(resolve_out(trace_path), std::ios::binary | std::ios::trunc);
                if (!trace)
                    throw std::runtime_error("cannot open trace file '" + trace_path + "'");
                opt.trace = &trace;
            }
            const SimulationStats stats = run(p, opt);
            emit(out_path, stats_json(stats));
            return 0;
        }
        if (*cmd_verify) {
            Params p(k, n, s);
            const auto checks = run_verification(p, cap, tol);
            bool all = true;
            for (const CheckResult& c : checks)
                all = all && c.pass;
            if (format == "json") {
                emit(out_path, checks_json(k, n, s, checks));
            } else {
                std::string report;
                for (const CheckResult& c : checks)
                    report += std::string(c.pass ? "pass" : "FAIL") + "," +
                              csv_field(c.name) + "," + csv_field(c.detail) + "\n";
                emit(out_path, report);
            }
            if (!all) {
                std::cerr << "verification failed for k = " << k << ", n = " << n
                          << ", s = " << s << "\n";
                return 2;
            }
            return 0;
        }
        if (*cmd_digraph) {
            Params p(k, n, 0.5);
            const RearrangementDigraph g = RearrangementDigraph::build(k, n, cap);
            emit(out_path, dot ? g.to_dot() : digraph_json(g));
            return 0;
        }
    } catch (const ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
