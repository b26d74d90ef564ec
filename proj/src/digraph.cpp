#include "ringwalk/digraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ringwalk/rearrangement.hpp"

namespace ringwalk {

namespace {

std::string config_label(const std::vector<int>& gaps) {
    std::string out;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(gaps[i]);
    }
    return out;
}

} // namespace

RearrangementDigraph RearrangementDigraph::build(int k, int n, std::uint64_t cap) {
    RearrangementDigraph g;
    g.k_ = k;
    g.n_ = n;
    g.configs_ = enumerate_configurations(k, n, cap);
    g.adj_.resize(g.configs_.size());
    if (k == 1)
        return g; // the single move is the zero vector; no edges

    std::vector<int> target(static_cast<std::size_t>(k));
    for (std::size_t v = 0; v < g.configs_.size(); ++v) {
        const std::vector<int>& x = g.configs_[v];
        for (int i = 1; i <= k; ++i) {
            // Apply the elementary move directly: +1 at slot i, -1 after it.
            target = x;
            target[static_cast<std::size_t>(i - 1)] += 1;
            target[static_cast<std::size_t>(i % k)] -= 1;
            if (target[static_cast<std::size_t>(i % k)] < 1)
                continue;
            g.adj_[v].push_back(
                static_cast<std::uint32_t>(rank_configuration(target, k, n)));
        }
        std::sort(g.adj_[v].begin(), g.adj_[v].end());
    }
    return g;
}

std::size_t RearrangementDigraph::edge_count() const noexcept {
    std::size_t total = 0;
    for (const auto& row : adj_)
        total += row.size();
    return total;
}

std::size_t RearrangementDigraph::index_of(const std::vector<int>& gaps) const {
    const auto it = std::lower_bound(configs_.begin(), configs_.end(), gaps);
    if (it == configs_.end() || *it != gaps)
        throw std::invalid_argument("unknown vertex '" + config_label(gaps) + "'");
    return static_cast<std::size_t>(it - configs_.begin());
}

std::vector<long long> RearrangementDigraph::bfs_distances(std::size_t from) const {
    if (from >= configs_.size())
        throw std::out_of_range("vertex index out of range");
    std::vector<long long> dist(configs_.size(), -1);
    std::deque<std::uint32_t> queue;
    dist[from] = 0;
    queue.push_back(static_cast<std::uint32_t>(from));
    while (!queue.empty()) {
        const std::uint32_t u = queue.front();
        queue.pop_front();
        for (std::uint32_t w : adj_[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::optional<long long> RearrangementDigraph::bfs_distance(std::size_t from,
                                                            std::size_t to) const {
    if (to >= configs_.size())
        throw std::out_of_range("vertex index out of range");
    const long long d = bfs_distances(from)[to];
    if (d < 0)
        return std::nullopt;
    return d;
}

SelfConverseReport RearrangementDigraph::check_self_converse() const {
    SelfConverseReport report;
    report.mapping.resize(configs_.size());
    for (std::size_t v = 0; v < configs_.size(); ++v)
        report.mapping[v] = static_cast<std::uint32_t>(index_of(costate(configs_[v])));
    // Reversal is an involution on vertices; demand that it sends every edge
    // onto a reversed edge.  Edge counts match, so the induced map is onto.
    for (std::size_t v = 0; v < configs_.size(); ++v) {
        if (report.mapping[report.mapping[v]] != v) {
            report.violation = "reversal is not an involution at '" +
                               config_label(configs_[v]) + "'";
            return report;
        }
    }
    for (std::size_t u = 0; u < configs_.size(); ++u) {
        for (std::uint32_t v : adj_[u]) {
            const std::uint32_t ru = report.mapping[u];
            const std::uint32_t rv = report.mapping[v];
            const auto& row = adj_[rv];
            if (!std::binary_search(row.begin(), row.end(), ru)) {
                report.violation = "edge '" + config_label(configs_[u]) + "' -> '" +
                                   config_label(configs_[v]) +
                                   "' has no mirrored edge '" + config_label(configs_[rv]) +
                                   "' -> '" + config_label(configs_[ru]) + "'";
                return report;
            }
        }
    }
    report.ok = true;
    return report;
}

bool RearrangementDigraph::strongly_connected() const {
    if (configs_.size() <= 1)
        return true;
    const auto forward = bfs_distances(0);
    if (std::any_of(forward.begin(), forward.end(), [](long long d) { return d < 0; }))
        return false;
    // One reverse sweep from the same root settles the other direction.
    std::vector<std::vector<std::uint32_t>> rev(configs_.size());
    for (std::size_t u = 0; u < configs_.size(); ++u)
        for (std::uint32_t v : adj_[u])
            rev[v].push_back(static_cast<std::uint32_t>(u));
    std::vector<char> seen(configs_.size(), 0);
    std::deque<std::uint32_t> queue{0};
    seen[0] = 1;
    std::size_t found = 1;
    while (!queue.empty()) {
        const std::uint32_t u = queue.front();
        queue.pop_front();
        for (std::uint32_t w : rev[u]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++found;
                queue.push_back(w);
            }
        }
    }
    return found == configs_.size();
}

std::string RearrangementDigraph::to_dot() const {
    std::string out = "digraph rearrangement {\n";
    for (std::size_t v = 0; v < configs_.size(); ++v)
        out += "  \"" + config_label(configs_[v]) + "\";\n";
    for (std::size_t u = 0; u < configs_.size(); ++u)
        for (std::uint32_t v : adj_[u])
            out += "  \"" + config_label(configs_[u]) + "\" -> \"" +
                   config_label(configs_[v]) + "\";\n";
    out += "}\n";
    return out;
}

} // namespace ringwalk
