#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "ringwalk/params.hpp"
#include "ringwalk/state.hpp"
#include "ringwalk/state_space.hpp"

namespace ringwalk {

// Monte Carlo counterpart of the analytic chain.  A time step runs in
// synchronous rounds: workers whose next bin is held by a stopped worker
// stop blocked (this propagates through a stalled train within the round);
// all workers still free then advance one bin together and each performs an
// independent Bernoulli(s) trial, stopping in place on success.  A worker
// that succeeds blocks followers only from the next round onward.  The step
// ends when every worker has stopped.

enum class WorkerStatus : std::uint8_t {
    Moving,
    StoppedSuccess,
    StoppedBlocked,
    StoppedExhausted,
};

// Workers on the ring in a fixed frame.  positions[i] is worker i+1's bin;
// worker i+2 is the next worker ahead of worker i+1 in the direction of
// motion (increasing bin index mod n).
struct WorldState {
    int n = 0;
    std::vector<int> positions;
    std::vector<WorkerStatus> status;
};

// Gap vector of a set of distinct bin positions (mask 0).  For a single
// worker the gap is the full loop, n.  Throws std::invalid_argument on
// duplicates or positions that are not in cyclic worker order.
State configuration_of_positions(const std::vector<int>& positions, int n);

// A world realizing the given state, worker 1 placed at bin 0.  The blocked
// mask carries no dynamics (steps have no memory) and is ignored.
WorldState world_from_state(const State& st, int n);

// Deterministic per-worker random streams.
//
// Stream w for worker w+1 (plus one extra stream used for initial
// placement, index k) is a std::mt19937_64 seeded with
//   mix(mix(mix(master) ^ (replica + 1)) ^ (w + 1))
// where mix is the splitmix64 finalizer.  Identical (master seed, replica,
// worker) triples therefore reproduce identical draws on every run, and
// workers consume randomness independently of scheduling order.
class RngStreams {
public:
    RngStreams(std::uint64_t master_seed, std::uint64_t replica, int k);

    std::mt19937_64& worker(int i) { return streams_.at(static_cast<std::size_t>(i)); }
    std::mt19937_64& placement() { return streams_.back(); }

    // Uniform double in [0, 1) using the top 53 bits of one draw.
    static double uniform01(std::mt19937_64& g);

    // Unbiased uniform integer in [0, m) by rejection sampling.
    static std::uint64_t bounded(std::mt19937_64& g, std::uint64_t m);

    static std::uint64_t mix(std::uint64_t z) noexcept;

private:
    std::vector<std::mt19937_64> streams_;
};

// Outcome of one time step.  The end state's blocked mask covers exactly
// the stopped-blocked workers; exhausted workers are reported separately.
struct StepRecord {
    std::uint64_t blocked_mask = 0;
    std::uint64_t exhausted_mask = 0;
    long long rounds = 0;
    int parts_collected = 0;
    State end_state;
};

// Advances the world by one full time step.  When `f_cap` is set, a worker
// reaching that many failures within the step stops exhausted in place (it
// occupies its bin and blocks followers but collects no part).  A step that
// exceeds 10^7 rounds throws std::runtime_error with a diagnostic.
StepRecord step(WorldState& world, const Params& p, std::optional<long long> f_cap,
                RngStreams& rng);

struct RunOptions {
    long long steps = 0;
    std::uint64_t seed = 0;
    long long burnin = 10'000;
    std::optional<long long> f_cap;
    int replicas = 1;
    std::optional<State> start;            // uniform random placement if unset
    std::uint64_t cap = kDefaultStateCap;  // the occupancy histogram is state-indexed
    std::ostream* trace = nullptr;         // CSV step trace; replicas == 1 only
};

struct SimulationStats {
    int k = 0;
    int n = 0;
    double s = 0.0;
    std::uint64_t seed = 0;
    long long steps = 0;
    long long burnin = 0;
    std::optional<long long> f_cap;
    int replicas = 1;
    std::vector<std::uint64_t> per_worker_blocked;    // steps worker i+1 ended blocked
    std::vector<std::uint64_t> per_worker_exhausted;
    std::vector<std::uint64_t> occupancy;             // end-state counts by state index
    double blocked_fraction = 0.0;                    // all workers pooled
    double exhausted_fraction = 0.0;
};

// Runs `steps` counted time steps (split as evenly as possible across
// replicas, each preceded by its own burn-in) and aggregates statistics.
// Replica streams are independent by construction, so the merged result is
// independent of execution order; identical options give identical stats.
SimulationStats run(const Params& p, const RunOptions& opt);

// Occupancy histogram normalized to a distribution over state indices.
// Throws std::invalid_argument when the stats cover zero steps.
std::vector<double> empirical_state_distribution(const SimulationStats& stats);

} // namespace ringwalk
