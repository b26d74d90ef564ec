#include "ringwalk/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ringwalk {

Params::Params(int k, int n, double s) : k_(k), n_(n), s_(s) {
    if (k < 1)
        throw std::domain_error("k must be at least 1, got " + std::to_string(k));
    if (n < k)
        throw std::domain_error("n must be at least k; got n = " + std::to_string(n) +
                                ", k = " + std::to_string(k));
    // Strict interior: s = 0 never stops, s = 1 degenerates q and r.
    if (!std::isfinite(s) || !(s > 0.0) || !(s < 1.0))
        throw std::domain_error("s must lie strictly between 0 and 1");
}

} // namespace ringwalk
