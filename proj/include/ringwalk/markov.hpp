#pragma once

#include <cstdint>
#include <vector>

#include "ringwalk/params.hpp"
#include "ringwalk/state.hpp"
#include "ringwalk/state_space.hpp"

namespace ringwalk {

// Dense row-stochastic one-step transition matrix over the canonical state
// ranking.  Entries are strictly positive: every state reaches every other
// in a single step, just with geometrically small probability.
class TransitionMatrix {
public:
    TransitionMatrix(int k, int n, double s, std::vector<State> states,
                     std::vector<double> entries);

    int k() const noexcept { return k_; }
    int n() const noexcept { return n_; }
    double s() const noexcept { return s_; }
    std::size_t order() const noexcept { return states_.size(); }
    const std::vector<State>& states() const noexcept { return states_; }

    double at(std::size_t i, std::size_t j) const { return entries_[i * order() + j]; }
    double row_sum(std::size_t i) const;

    // Row-vector product x * P, the distribution after one step.
    std::vector<double> left_multiply(const std::vector<double>& x) const;

private:
    int k_;
    int n_;
    double s_;
    std::vector<State> states_;
    std::vector<double> entries_;
};

// Stationary distribution.  `nu` sums to 1; for the closed form, `omega`
// holds the unnormalized weights r^(blockage count) in state order (it is
// left empty by the iterative solver).
struct StationaryDistribution {
    std::vector<double> nu;
    std::vector<double> omega;
};

// Probability of moving from one state to another in a single step:
//   r^b(to) * s^k / (1 - q^k) * q^phi(displacement)
// The displacement is taken between the physical gap vectors, so blocked
// masks on the source never change the row.  Throws std::invalid_argument
// if either state is invalid for the parameters.
double transition_probability(const State& from, const State& to, const Params& p);

// Full matrix over the canonical ranking.  Throws ResourceCapError when the
// state count exceeds `cap` (or the dense matrix would not be allocatable).
TransitionMatrix build_transition_matrix(const Params& p, std::uint64_t cap = kDefaultStateCap);

// Exact stationary distribution: nu_i proportional to r^(blockage count of
// state i).
StationaryDistribution closed_form_stationary(const Params& p, std::uint64_t cap = kDefaultStateCap);

// Left fixed vector of P by power iteration, starting from the uniform
// distribution (or a caller-supplied start).  Convergence is declared when
// the max-norm change of an iterate drops to `tol`; ConvergenceError is
// thrown after `max_iter` sweeps.
StationaryDistribution power_iteration_stationary(const TransitionMatrix& P,
                                                  double tol = 1e-13,
                                                  long long max_iter = 1'000'000);
StationaryDistribution power_iteration_stationary(const TransitionMatrix& P,
                                                  const std::vector<double>& start,
                                                  double tol = 1e-13,
                                                  long long max_iter = 1'000'000);

// Long-run fraction of steps a given worker ends blocked, as a closed form
// in r (binomials are exact integers, converted to double only at the end).
double blockage_fraction_closed_form(int k, int n, double r);

// The same fraction read off a stationary distribution: total mass of
// states whose first worker is blocked.  Throws std::invalid_argument on a
// length mismatch.
double blockage_fraction_from_distribution(const std::vector<double>& nu,
                                           const std::vector<State>& states);

} // namespace ringwalk
