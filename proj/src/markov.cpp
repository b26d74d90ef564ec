#include "ringwalk/markov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ringwalk/errors.hpp"
#include "ringwalk/rearrangement.hpp"

namespace ringwalk {

namespace {

// Deterministic small-integer power by repeated multiplication.  Exponents
// here are bounded by state-space geometry, and the fixed evaluation order
// keeps scaling identities between matrix entries exact in floating point.
double ipow(double x, long long e) {
    double out = 1.0;
    for (long long i = 0; i < e; ++i)
        out *= x;
    return out;
}

void require_member_state(const State& st, const Params& p, const char* which) {
    if (!validate_state(st, p.k(), p.n()))
        throw std::invalid_argument(std::string(which) + " state '" + state_label(st) +
                                    "' is invalid for k = " + std::to_string(p.k()) +
                                    ", n = " + std::to_string(p.n()));
}

} // namespace

TransitionMatrix::TransitionMatrix(int k, int n, double s, std::vector<State> states,
                                   std::vector<double> entries)
    : k_(k), n_(n), s_(s), states_(std::move(states)), entries_(std::move(entries)) {
    if (entries_.size() != states_.size() * states_.size())
        throw std::invalid_argument("entry count does not match state count squared");
}

double TransitionMatrix::row_sum(std::size_t i) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < order(); ++j)
        acc += at(i, j);
    return acc;
}

std::vector<double> TransitionMatrix::left_multiply(const std::vector<double>& x) const {
    if (x.size() != order())
        throw std::invalid_argument("vector length does not match matrix order");
    std::vector<double> y(order(), 0.0);
    for (std::size_t i = 0; i < order(); ++i) {
        const double xi = x[i];
        if (xi == 0.0)
            continue;
        const double* row = entries_.data() + i * order();
        for (std::size_t j = 0; j < order(); ++j)
            y[j] += xi * row[j];
    }
    return y;
}

double transition_probability(const State& from, const State& to, const Params& p) {
    require_member_state(from, p, "source");
    require_member_state(to, p, "target");
    const long long l = phi(displacement(from, to));
    const int b = blockage_count(to);
    const double base = ipow(p.s(), p.k()) / (1.0 - ipow(p.q(), p.k()));
    // Keep the grouping fixed: entries for targets differing only in their
    // blocked mask then scale by exact powers of r.
    return ipow(p.r(), b) * (base * ipow(p.q(), l));
}

TransitionMatrix build_transition_matrix(const Params& p, std::uint64_t cap) {
    std::vector<State> states = enumerate_states(p.k(), p.n(), cap);
    const std::size_t m = states.size();
    // Dense storage: refuse anything past 2^31 entries (16 GiB) outright.
    if (m > 0 && m > (std::size_t{1} << 31) / m)
        throw ResourceCapError("dense transition matrix of order " + std::to_string(m) +
                               " is too large to allocate");
    std::vector<double> entries(m * m);
    const double base = ipow(p.s(), p.k()) / (1.0 - ipow(p.q(), p.k()));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const long long l = phi(displacement(states[i], states[j]));
            const int b = blockage_count(states[j]);
            entries[i * m + j] = ipow(p.r(), b) * (base * ipow(p.q(), l));
        }
    }
    return TransitionMatrix(p.k(), p.n(), p.s(), std::move(states), std::move(entries));
}

StationaryDistribution closed_form_stationary(const Params& p, std::uint64_t cap) {
    const std::vector<State> states = enumerate_states(p.k(), p.n(), cap);
    StationaryDistribution out;
    out.omega.reserve(states.size());
    for (const State& st : states)
        out.omega.push_back(ipow(p.r(), blockage_count(st)));
    // Normalize by the grouped weight sum rather than re-adding per state.
    double norm = 0.0;
    for (int b = 0; b < p.k(); ++b)
        norm += static_cast<double>(count_states_with_blockages(b, p.k(), p.n())) *
                ipow(p.r(), b);
    out.nu.reserve(states.size());
    for (double w : out.omega)
        out.nu.push_back(w / norm);
    return out;
}

StationaryDistribution power_iteration_stationary(const TransitionMatrix& P, double tol,
                                                  long long max_iter) {
    const std::vector<double> uniform(P.order(), 1.0 / static_cast<double>(P.order()));
    return power_iteration_stationary(P, uniform, tol, max_iter);
}

StationaryDistribution power_iteration_stationary(const TransitionMatrix& P,
                                                  const std::vector<double>& start,
                                                  double tol, long long max_iter) {
    if (start.size() != P.order())
        throw std::invalid_argument("start vector length does not match matrix order");
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 1)
        throw std::invalid_argument("max_iter must be at least 1");
    std::vector<double> x = start;
    double mass = 0.0;
    for (double v : x) {
        if (!(v >= 0.0))
            throw std::invalid_argument("start vector must be non-negative");
        mass += v;
    }
    if (!(mass > 0.0))
        throw std::invalid_argument("start vector must have positive mass");
    for (double& v : x)
        v /= mass;
    for (long long it = 0; it < max_iter; ++it) {
        std::vector<double> y = P.left_multiply(x);
        double sum = 0.0;
        for (double v : y)
            sum += v;
        for (double& v : y)
            v /= sum;
        double delta = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j)
            delta = std::max(delta, std::fabs(y[j] - x[j]));
        x.swap(y);
        if (delta <= tol) {
            StationaryDistribution out;
            out.nu = std::move(x);
            return out;
        }
    }
    throw ConvergenceError("power iteration did not reach tolerance " +
                           std::to_string(tol) + " within " + std::to_string(max_iter) +
                           " iterations");
}

double blockage_fraction_closed_form(int k, int n, double r) {
    if (k < 1 || n < k)
        throw std::domain_error("need 1 <= k <= n");
    if (!std::isfinite(r) || !(r > 0.0))
        throw std::domain_error("r must be positive and finite");
    double numerator = 0.0;
    for (int b = 0; b <= k - 2; ++b)
        numerator += static_cast<double>(binomial(k - 1, b)) *
                     static_cast<double>(binomial(n - b - 2, k - b - 2)) * ipow(r, b + 1);
    double denominator = 0.0;
    for (int b = 0; b <= k - 1; ++b)
        denominator += static_cast<double>(binomial(k, b)) *
                       static_cast<double>(binomial(n - b - 1, k - b - 1)) * ipow(r, b);
    return numerator / denominator;
}

double blockage_fraction_from_distribution(const std::vector<double>& nu,
                                           const std::vector<State>& states) {
    if (nu.size() != states.size())
        throw std::invalid_argument("distribution length does not match state count");
    double mass = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].blocked & 1u)
            mass += nu[i];
    return mass;
}

} // namespace ringwalk
