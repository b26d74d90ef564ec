#include "ringwalk/rearrangement.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ringwalk {

std::vector<long long> delta_vector(int i, int k) {
    if (k < 1)
        throw std::out_of_range("k must be at least 1, got " + std::to_string(k));
    if (i < 1 || i > k)
        throw std::out_of_range("move index " + std::to_string(i) + " outside [1, " +
                                std::to_string(k) + "]");
    std::vector<long long> d(static_cast<std::size_t>(k), 0);
    d[static_cast<std::size_t>(i - 1)] += 1;
    d[static_cast<std::size_t>(i % k)] -= 1; // cyclic successor slot
    return d;
}

std::vector<long long> displacement(const std::vector<int>& x, const std::vector<int>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("displacement requires equal-length gap vectors");
    std::vector<long long> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        d[i] = static_cast<long long>(y[i]) - static_cast<long long>(x[i]);
    return d;
}

std::vector<long long> displacement(const State& x, const State& y) {
    return displacement(x.gaps, y.gaps);
}

std::vector<long long> gamma_vector(const std::vector<long long>& delta) {
    if (delta.empty())
        throw std::invalid_argument("displacement must not be empty");
    std::vector<long long> g(delta.size());
    long long acc = 0;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        acc += delta[i];
        g[i] = acc;
    }
    if (acc != 0)
        throw std::invalid_argument("displacement components must sum to zero");
    return g;
}

PathDecomposition canonical_beta(const std::vector<long long>& delta) {
    PathDecomposition out;
    out.beta = gamma_vector(delta);
    const long long lowest = *std::min_element(out.beta.begin(), out.beta.end());
    for (long long& b : out.beta)
        b -= lowest;
    out.length = std::accumulate(out.beta.begin(), out.beta.end(), 0LL);
    return out;
}

long long phi(const std::vector<long long>& delta) {
    return canonical_beta(delta).length;
}

std::vector<int> costate(const std::vector<int>& gaps) {
    return {gaps.rbegin(), gaps.rend()};
}

State costate(const State& st) {
    State out;
    out.gaps.assign(st.gaps.rbegin(), st.gaps.rend());
    const int k = static_cast<int>(st.gaps.size());
    for (int i = 0; i < k; ++i)
        if ((st.blocked >> i) & 1u)
            out.blocked |= std::uint64_t{1} << (k - 1 - i);
    return out;
}

} // namespace ringwalk
