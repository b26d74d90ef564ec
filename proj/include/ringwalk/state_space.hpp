#pragma once

#include <cstdint>
#include <vector>

#include "ringwalk/state.hpp"

namespace ringwalk {

// Counting, enumeration and ranking of the chain's state space.
//
// A configuration is a composition of n into k positive parts (the gap
// vector).  A state is a configuration plus a blocked mask.  All counts are
// exact; enumeration is guarded by a size cap so callers fail fast before
// allocating something enormous.

inline constexpr std::uint64_t kDefaultStateCap = 1'000'000;

// Exact binomial coefficient.  Returns 0 outside the triangle (k < 0 or
// k > n); throws std::overflow_error if the value does not fit in 64 bits.
std::uint64_t binomial(long long n, long long k);

// Number of configurations: compositions of n into k positive parts.
std::uint64_t count_configurations(int k, int n);

// Number of states with exactly b blocked workers.
std::uint64_t count_states_with_blockages(int b, int k, int n);

// Total number of states, summed over b = 0 .. k-1.
std::uint64_t count_total_states(int k, int n);

// All configurations in lexicographic order.  Throws ResourceCapError when
// the count exceeds `cap`.
std::vector<std::vector<int>> enumerate_configurations(int k, int n,
                                                       std::uint64_t cap = kDefaultStateCap);

// Position of `gaps` in the lexicographic enumeration of configurations.
// Throws std::invalid_argument if `gaps` is not a configuration for (k, n).
std::uint64_t rank_configuration(const std::vector<int>& gaps, int k, int n);

// All states in canonical order (gaps lexicographic, then mask ascending).
// Throws ResourceCapError when the count exceeds `cap`.
std::vector<State> enumerate_states(int k, int n, std::uint64_t cap = kDefaultStateCap);

// Index of a state in canonical order, and its inverse.  rank_state throws
// std::invalid_argument on an invalid state; unrank_state throws
// std::range_error when the index is out of range.
std::uint64_t rank_state(const State& st, int k, int n);
State unrank_state(std::uint64_t index, int k, int n);

} // namespace ringwalk
