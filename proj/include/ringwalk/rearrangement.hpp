#pragma once

#include <vector>

#include "ringwalk/state.hpp"

namespace ringwalk {

// Displacement calculus between configurations.
//
// Moving from configuration X to configuration Y means applying a sequence
// of elementary moves: a single failed step by worker i+1 adds +1 to gap i
// and -1 to the following gap (cyclically).  Every displacement vector
// decomposes into a unique shortest non-negative combination of these
// moves; its length phi is the one-step travel cost exponent.

// Shortest non-negative decomposition of a displacement into elementary
// moves.  beta[i] counts applications of the move that increments gap i+1
// (1-based slot i+1); length is the 1-norm of beta.
struct PathDecomposition {
    std::vector<long long> beta;
    long long length = 0;
};

// Elementary move vector for slot i (1-based, 1 <= i <= k): +1 at slot i,
// -1 at slot (i mod k) + 1.  For k = 1 the two slots coincide and the move
// is the zero vector.  Throws std::out_of_range for i outside [1, k].
std::vector<long long> delta_vector(int i, int k);

// Component-wise gap difference Y - X.  Blocked markers carry magnitude 1,
// so masks play no role here.  Throws std::invalid_argument on mismatched
// lengths.
std::vector<long long> displacement(const std::vector<int>& x, const std::vector<int>& y);
std::vector<long long> displacement(const State& x, const State& y);

// Prefix sums of a displacement whose components sum to zero; the final
// entry is always 0.  Throws std::invalid_argument if the sum is nonzero.
std::vector<long long> gamma_vector(const std::vector<long long>& delta);

// The unique non-negative decomposition with at least one zero entry:
// beta = gamma - min(gamma).  Throws like gamma_vector.
PathDecomposition canonical_beta(const std::vector<long long>& delta);

// Shortest path length: the 1-norm of canonical_beta(delta).
long long phi(const std::vector<long long>& delta);

// Order-reversed twin of a configuration or state; reversing twice returns
// the original, and blockage counts are preserved.
std::vector<int> costate(const std::vector<int>& gaps);
State costate(const State& st);

} // namespace ringwalk
