#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringwalk/state_space.hpp"

namespace ringwalk {

// Result of checking that reversing every configuration maps the move graph
// onto its own converse.  `mapping` is the vertex permutation induced by
// reversal; on failure `violation` names the first edge without a mirror.
struct SelfConverseReport {
    bool ok = false;
    std::vector<std::uint32_t> mapping;
    std::string violation;
};

// Directed graph on configurations: an edge X -> Y whenever Y = X + move_i
// for some elementary move and Y is a valid configuration.  Self-loops are
// excluded (they would only arise for k = 1, whose move is the zero vector).
class RearrangementDigraph {
public:
    // Builds the graph for k workers on n bins.  Throws ResourceCapError
    // when the vertex count exceeds `cap`.
    static RearrangementDigraph build(int k, int n, std::uint64_t cap = kDefaultStateCap);

    int k() const noexcept { return k_; }
    int n() const noexcept { return n_; }
    std::size_t vertex_count() const noexcept { return configs_.size(); }
    std::size_t edge_count() const noexcept;

    const std::vector<int>& config(std::size_t v) const { return configs_.at(v); }

    // Index of a configuration; throws std::invalid_argument when it is not
    // a vertex of this graph.
    std::size_t index_of(const std::vector<int>& gaps) const;

    // Out-neighbors, sorted by vertex index.
    const std::vector<std::uint32_t>& neighbors(std::size_t v) const { return adj_.at(v); }

    // Fewest elementary moves from one configuration to another; nullopt if
    // unreachable.  Throws std::out_of_range on bad indices.
    std::optional<long long> bfs_distance(std::size_t from, std::size_t to) const;

    // Distances from one source to every vertex; -1 marks unreachable.
    std::vector<long long> bfs_distances(std::size_t from) const;

    SelfConverseReport check_self_converse() const;

    bool strongly_connected() const;

    // Graphviz rendering with configuration labels.
    std::string to_dot() const;

private:
    int k_ = 0;
    int n_ = 0;
    std::vector<std::vector<int>> configs_;
    std::vector<std::vector<std::uint32_t>> adj_;
};

} // namespace ringwalk
