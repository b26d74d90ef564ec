#include "ringwalk/simulator.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "ringwalk/errors.hpp"

namespace ringwalk {

namespace {

constexpr long long kRoundCap = 10'000'000;

struct StateHash {
    std::size_t operator()(const State& st) const noexcept {
        std::uint64_t h = 1469598103934665603ull; // FNV-1a
        for (int g : st.gaps) {
            h ^= static_cast<std::uint64_t>(g);
            h *= 1099511628211ull;
        }
        h ^= st.blocked;
        h *= 1099511628211ull;
        return static_cast<std::size_t>(h);
    }
};

WorldState random_world(int n, int k, RngStreams& rng) {
    auto& g = rng.placement();
    // Floyd's sampling: a uniform k-subset of bins, then a uniform rotation
    // to pick which worker holds the first of them.
    std::vector<int> bins;
    bins.reserve(static_cast<std::size_t>(k));
    for (int j = n - k; j < n; ++j) {
        const int t = static_cast<int>(
            RngStreams::bounded(g, static_cast<std::uint64_t>(j) + 1));
        if (std::find(bins.begin(), bins.end(), t) != bins.end())
            bins.push_back(j);
        else
            bins.push_back(t);
    }
    std::sort(bins.begin(), bins.end());
    const int rot =
        static_cast<int>(RngStreams::bounded(g, static_cast<std::uint64_t>(k)));
    WorldState world;
    world.n = n;
    world.positions.resize(static_cast<std::size_t>(k));
    world.status.assign(static_cast<std::size_t>(k), WorkerStatus::Moving);
    for (int i = 0; i < k; ++i)
        world.positions[static_cast<std::size_t>(i)] =
            bins[static_cast<std::size_t>((rot + i) % k)];
    return world;
}

struct ReplicaResult {
    std::vector<std::uint64_t> per_worker_blocked;
    std::vector<std::uint64_t> per_worker_exhausted;
    std::vector<std::uint64_t> occupancy;
};

} // namespace

State configuration_of_positions(const std::vector<int>& positions, int n) {
    const int k = static_cast<int>(positions.size());
    if (k < 1)
        throw std::invalid_argument("need at least one position");
    if (n < k)
        throw std::invalid_argument("ring of " + std::to_string(n) + " bins cannot hold " +
                                    std::to_string(k) + " workers");
    for (int pos : positions)
        if (pos < 0 || pos >= n)
            throw std::invalid_argument("position " + std::to_string(pos) +
                                        " outside ring of " + std::to_string(n) + " bins");
    State st;
    if (k == 1) {
        st.gaps = {n}; // the gap wraps all the way around to the same worker
        return st;
    }
    st.gaps.resize(static_cast<std::size_t>(k));
    long long total = 0;
    for (int i = 0; i < k; ++i) {
        const int ahead = positions[static_cast<std::size_t>((i + 1) % k)];
        const int gap = ((ahead - positions[static_cast<std::size_t>(i)]) % n + n) % n;
        if (gap == 0)
            throw std::invalid_argument("two workers share bin " +
                                        std::to_string(positions[static_cast<std::size_t>(i)]));
        st.gaps[static_cast<std::size_t>(i)] = gap;
        total += gap;
    }
    if (total != n)
        throw std::invalid_argument("positions are not in cyclic worker order");
    return st;
}

WorldState world_from_state(const State& st, int n) {
    const int k = static_cast<int>(st.gaps.size());
    if (!validate_state(st, k, n))
        throw std::invalid_argument("invalid state '" + state_label(st) + "' for n = " +
                                    std::to_string(n));
    WorldState world;
    world.n = n;
    world.positions.resize(static_cast<std::size_t>(k));
    world.status.assign(static_cast<std::size_t>(k), WorkerStatus::Moving);
    int pos = 0;
    for (int i = 0; i < k; ++i) {
        world.positions[static_cast<std::size_t>(i)] = pos;
        pos = (pos + st.gaps[static_cast<std::size_t>(i)]) % n;
    }
    return world;
}

std::uint64_t RngStreams::mix(std::uint64_t z) noexcept {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

RngStreams::RngStreams(std::uint64_t master_seed, std::uint64_t replica, int k) {
    if (k < 1)
        throw std::invalid_argument("need at least one worker stream");
    const std::uint64_t replica_seed = mix(mix(master_seed) ^ (replica + 1));
    streams_.reserve(static_cast<std::size_t>(k) + 1);
    for (int w = 0; w <= k; ++w)
        streams_.emplace_back(mix(replica_seed ^ (static_cast<std::uint64_t>(w) + 1)));
}

double RngStreams::uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStreams::bounded(std::mt19937_64& g, std::uint64_t m) {
    if (m == 0)
        throw std::invalid_argument("bounded draw needs a positive modulus");
    if (m == 1)
        return 0;
    // Reject the partial block at the top of the range to stay unbiased.
    const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % m;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
    std::uint64_t x;
    do {
        x = g();
    } while (x >= limit);
    return x % m;
}

StepRecord step(WorldState& world, const Params& p, std::optional<long long> f_cap,
                RngStreams& rng) {
    const int k = p.k();
    const int n = p.n();
    if (world.n != n || world.positions.size() != static_cast<std::size_t>(k) ||
        world.status.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("world does not match parameters");
    if (f_cap && *f_cap < 1)
        throw std::invalid_argument("failure cap must be at least 1");

    // A fresh step: everyone starts moving again.
    std::fill(world.status.begin(), world.status.end(), WorkerStatus::Moving);
    std::vector<long long> failures(static_cast<std::size_t>(k), 0);
    std::vector<char> stays(static_cast<std::size_t>(k), 0);

    StepRecord rec;
    int moving = k;
    while (moving > 0) {
        if (++rec.rounds > kRoundCap)
            throw std::runtime_error("step exceeded " + std::to_string(kRoundCap) +
                                     " rounds without all workers stopping (s = " +
                                     std::to_string(p.s()) + ")");
        // Workers facing a bin that stays occupied this round stop blocked.
        // A freshly blocked worker jams the one behind it, so propagate
        // through the train until stable.
        for (int w = 0; w < k; ++w)
            stays[static_cast<std::size_t>(w)] =
                world.status[static_cast<std::size_t>(w)] != WorkerStatus::Moving;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int w = 0; w < k; ++w) {
                if (stays[static_cast<std::size_t>(w)])
                    continue;
                const int next = (world.positions[static_cast<std::size_t>(w)] + 1) % n;
                for (int v = 0; v < k; ++v) {
                    if (v != w && stays[static_cast<std::size_t>(v)] &&
                        world.positions[static_cast<std::size_t>(v)] == next) {
                        stays[static_cast<std::size_t>(w)] = 1;
                        world.status[static_cast<std::size_t>(w)] = WorkerStatus::StoppedBlocked;
                        --moving;
                        changed = true;
                        break;
                    }
                }
            }
        }
        // The rest advance together, then each tries to stop with its own
        // stream (so outcomes do not depend on iteration order).
        for (int w = 0; w < k; ++w) {
            if (world.status[static_cast<std::size_t>(w)] != WorkerStatus::Moving)
                continue;
            world.positions[static_cast<std::size_t>(w)] =
                (world.positions[static_cast<std::size_t>(w)] + 1) % n;
        }
        for (int w = 0; w < k; ++w) {
            if (world.status[static_cast<std::size_t>(w)] != WorkerStatus::Moving)
                continue;
            if (RngStreams::uniform01(rng.worker(w)) < p.s()) {
                world.status[static_cast<std::size_t>(w)] = WorkerStatus::StoppedSuccess;
                --moving;
            } else if (f_cap && ++failures[static_cast<std::size_t>(w)] >= *f_cap) {
                world.status[static_cast<std::size_t>(w)] = WorkerStatus::StoppedExhausted;
                --moving;
            }
        }
    }

    for (int w = 0; w < k; ++w) {
        if (world.status[static_cast<std::size_t>(w)] == WorkerStatus::StoppedBlocked)
            rec.blocked_mask |= std::uint64_t{1} << w;
        else if (world.status[static_cast<std::size_t>(w)] == WorkerStatus::StoppedExhausted)
            rec.exhausted_mask |= std::uint64_t{1} << w;
    }
    rec.parts_collected =
        k - std::popcount(rec.blocked_mask) - std::popcount(rec.exhausted_mask);
    rec.end_state = configuration_of_positions(world.positions, n);
    rec.end_state.blocked = rec.blocked_mask;
    return rec;
}

SimulationStats run(const Params& p, const RunOptions& opt) {
    const int k = p.k();
    const int n = p.n();
    if (opt.steps < 0)
        throw std::domain_error("steps must be non-negative");
    if (opt.burnin < 0)
        throw std::domain_error("burnin must be non-negative");
    if (opt.replicas < 1)
        throw std::domain_error("replicas must be at least 1");
    if (opt.f_cap && *opt.f_cap < 1)
        throw std::domain_error("failure cap must be at least 1");
    if (opt.trace && opt.replicas != 1)
        throw std::invalid_argument("step traces require a single replica");
    if (opt.start && !validate_state(*opt.start, k, n))
        throw std::invalid_argument("invalid start state '" + state_label(*opt.start) + "'");

    const std::vector<State> states = enumerate_states(k, n, opt.cap);
    std::unordered_map<State, std::size_t, StateHash> index;
    index.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        index.emplace(states[i], i);

    const auto run_replica = [&](int rep, long long rep_steps,
                                 std::ostream* trace) -> ReplicaResult {
        ReplicaResult result;
        result.per_worker_blocked.assign(static_cast<std::size_t>(k), 0);
        result.per_worker_exhausted.assign(static_cast<std::size_t>(k), 0);
        result.occupancy.assign(states.size(), 0);
        RngStreams rng(opt.seed, static_cast<std::uint64_t>(rep), k);
        WorldState world =
            opt.start ? world_from_state(*opt.start, n) : random_world(n, k, rng);
        for (long long t = 0; t < opt.burnin + rep_steps; ++t) {
            const StepRecord rec = step(world, p, opt.f_cap, rng);
            if (t < opt.burnin)
                continue;
            result.occupancy[index.at(rec.end_state)] += 1;
            for (int w = 0; w < k; ++w) {
                if ((rec.blocked_mask >> w) & 1u)
                    result.per_worker_blocked[static_cast<std::size_t>(w)] += 1;
                if ((rec.exhausted_mask >> w) & 1u)
                    result.per_worker_exhausted[static_cast<std::size_t>(w)] += 1;
            }
            if (trace)
                *trace << (t - opt.burnin) << ',' << index.at(rec.end_state) << ','
                       << rec.blocked_mask << '\n';
        }
        return result;
    };

    std::vector<ReplicaResult> parts(static_cast<std::size_t>(opt.replicas));
    const long long base = opt.steps / opt.replicas;
    const long long extra = opt.steps % opt.replicas;
    const auto steps_of = [&](int rep) { return base + (rep < extra ? 1 : 0); };
    if (opt.replicas == 1) {
        if (opt.trace)
            *opt.trace << "step,state_index,blocked_mask\n";
        parts[0] = run_replica(0, steps_of(0), opt.trace);
    } else {
        std::vector<std::future<ReplicaResult>> futures;
        futures.reserve(static_cast<std::size_t>(opt.replicas));
        for (int rep = 0; rep < opt.replicas; ++rep)
            futures.push_back(std::async(std::launch::async, run_replica, rep,
                                         steps_of(rep), nullptr));
        // Merging in replica order keeps the aggregate independent of
        // scheduling.
        for (int rep = 0; rep < opt.replicas; ++rep)
            parts[static_cast<std::size_t>(rep)] = futures[static_cast<std::size_t>(rep)].get();
    }

    SimulationStats stats;
    stats.k = k;
    stats.n = n;
    stats.s = p.s();
    stats.seed = opt.seed;
    stats.steps = opt.steps;
    stats.burnin = opt.burnin;
    stats.f_cap = opt.f_cap;
    stats.replicas = opt.replicas;
    stats.per_worker_blocked.assign(static_cast<std::size_t>(k), 0);
    stats.per_worker_exhausted.assign(static_cast<std::size_t>(k), 0);
    stats.occupancy.assign(states.size(), 0);
    for (const ReplicaResult& part : parts) {
        for (int w = 0; w < k; ++w) {
            stats.per_worker_blocked[static_cast<std::size_t>(w)] +=
                part.per_worker_blocked[static_cast<std::size_t>(w)];
            stats.per_worker_exhausted[static_cast<std::size_t>(w)] +=
                part.per_worker_exhausted[static_cast<std::size_t>(w)];
        }
        for (std::size_t i = 0; i < states.size(); ++i)
            stats.occupancy[i] += part.occupancy[i];
    }
    if (opt.steps > 0) {
        std::uint64_t blocked_total = 0;
        std::uint64_t exhausted_total = 0;
        for (int w = 0; w < k; ++w) {
            blocked_total += stats.per_worker_blocked[static_cast<std::size_t>(w)];
            exhausted_total += stats.per_worker_exhausted[static_cast<std::size_t>(w)];
        }
        const double worker_steps =
            static_cast<double>(opt.steps) * static_cast<double>(k);
        stats.blocked_fraction = static_cast<double>(blocked_total) / worker_steps;
        stats.exhausted_fraction = static_cast<double>(exhausted_total) / worker_steps;
    }
    return stats;
}

std::vector<double> empirical_state_distribution(const SimulationStats& stats) {
    if (stats.steps <= 0)
        throw std::invalid_argument("cannot normalize a histogram over zero steps");
    std::vector<double> dist(stats.occupancy.size());
    for (std::size_t i = 0; i < dist.size(); ++i)
        dist[i] = static_cast<double>(stats.occupancy[i]) / static_cast<double>(stats.steps);
    return dist;
}

} // namespace ringwalk
