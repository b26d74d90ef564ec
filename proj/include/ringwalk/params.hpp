#pragma once

namespace ringwalk {

// Model parameters: k workers on a ring of n bins, each move succeeding
// independently with probability s.  The failure probability q = 1 - s and
// the odds ratio r = q / s recur throughout the transition and stationary
// formulas, so they are exposed here once.
class Params {
public:
    Params(int k, int n, double s);

    int k() const noexcept { return k_; }
    int n() const noexcept { return n_; }
    double s() const noexcept { return s_; }
    double q() const noexcept { return 1.0 - s_; }
    double r() const noexcept { return (1.0 - s_) / s_; }

private:
    int k_;
    int n_;
    double s_;
};

} // namespace ringwalk
