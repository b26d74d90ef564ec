#include "ringwalk/state_space.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

#include "ringwalk/errors.hpp"

namespace ringwalk {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

std::uint64_t checked_u64(u128 v, const char* what) {
    if (v > kU64Max)
        throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
    return static_cast<std::uint64_t>(v);
}

void require_kn(int k, int n) {
    if (k < 1)
        throw std::domain_error("k must be at least 1, got " + std::to_string(k));
    if (n < k)
        throw std::domain_error("n must be at least k; got n = " + std::to_string(n) +
                                ", k = " + std::to_string(k));
}

void require_mask_width(int k) {
    if (k > 64)
        throw std::domain_error("blocked masks support at most 64 workers, got k = " +
                                std::to_string(k));
}

// Gather the bits of `value` at the set positions of `mask` into the low
// bits of the result (software PEXT).
std::uint64_t compress_bits(std::uint64_t value, std::uint64_t mask) noexcept {
    std::uint64_t out = 0;
    int j = 0;
    while (mask) {
        const int i = std::countr_zero(mask);
        out |= ((value >> i) & std::uint64_t{1}) << j;
        ++j;
        mask &= mask - 1;
    }
    return out;
}

// Scatter the low bits of `value` onto the set positions of `mask`
// (software PDEP).
std::uint64_t expand_bits(std::uint64_t value, std::uint64_t mask) noexcept {
    std::uint64_t out = 0;
    int j = 0;
    while (mask) {
        const int i = std::countr_zero(mask);
        out |= ((value >> j) & std::uint64_t{1}) << i;
        ++j;
        mask &= mask - 1;
    }
    return out;
}

std::uint64_t ones_mask(const std::vector<int>& gaps) noexcept {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < gaps.size(); ++i)
        if (gaps[i] == 1)
            m |= std::uint64_t{1} << i;
    return m;
}

// wt[t][m] = number of (composition of m into t positive parts, subset of
// its 1-entries) pairs; each part equal to 1 doubles the subset count.
// This is the state count per gap-vector suffix, used to walk the canonical
// order without materializing it.
std::vector<std::vector<u128>> weighted_suffix_table(int k, int n) {
    std::vector<std::vector<u128>> wt(static_cast<std::size_t>(k) + 1,
                                      std::vector<u128>(static_cast<std::size_t>(n) + 1, 0));
    wt[0][0] = 1;
    for (int t = 1; t <= k; ++t) {
        for (int m = t; m <= n; ++m) {
            u128 acc = 0;
            for (int v = 1; v <= m - (t - 1); ++v)
                acc += (v == 1 ? 2u : 1u) * wt[static_cast<std::size_t>(t - 1)]
                                             [static_cast<std::size_t>(m - v)];
            wt[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)] = acc;
        }
    }
    return wt;
}

void append_compositions(std::vector<int>& prefix, int slots, int rest,
                         std::vector<std::vector<int>>& out) {
    if (slots == 1) {
        prefix.push_back(rest);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int v = 1; v <= rest - (slots - 1); ++v) {
        prefix.push_back(v);
        append_compositions(prefix, slots - 1, rest - v, out);
        prefix.pop_back();
    }
}

} // namespace

std::uint64_t binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    u128 result = 1;
    for (long long i = 1; i <= k; ++i) {
        // result stays the exact value of C(n - k + i, i) at every step,
        // so the division is always exact.
        result = result * static_cast<u128>(n - k + i) / static_cast<u128>(i);
        checked_u64(result, "binomial coefficient");
    }
    return static_cast<std::uint64_t>(result);
}

std::uint64_t count_configurations(int k, int n) {
    require_kn(k, n);
    return binomial(n - 1, k - 1);
}

std::uint64_t count_states_with_blockages(int b, int k, int n) {
    require_kn(k, n);
    if (b < 0 || b >= k)
        throw std::domain_error("blockage count must lie in [0, k), got " + std::to_string(b));
    const u128 ways = static_cast<u128>(binomial(k, b)) *
                      static_cast<u128>(binomial(n - b - 1, k - b - 1));
    return checked_u64(ways, "state count");
}

std::uint64_t count_total_states(int k, int n) {
    require_kn(k, n);
    u128 total = 0;
    for (int b = 0; b < k; ++b) {
        total += static_cast<u128>(binomial(k, b)) *
                 static_cast<u128>(binomial(n - b - 1, k - b - 1));
        checked_u64(total, "state count");
    }
    return static_cast<std::uint64_t>(total);
}

std::vector<std::vector<int>> enumerate_configurations(int k, int n, std::uint64_t cap) {
    require_kn(k, n);
    const std::uint64_t total = count_configurations(k, n);
    if (total > cap)
        throw ResourceCapError("configuration count " + std::to_string(total) +
                               " exceeds cap " + std::to_string(cap));
    std::vector<std::vector<int>> out;
    out.reserve(total);
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(k));
    append_compositions(prefix, k, n, out);
    return out;
}

std::uint64_t rank_configuration(const std::vector<int>& gaps, int k, int n) {
    require_kn(k, n);
    if (gaps.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("gap vector has wrong length");
    long long sum = 0;
    for (int g : gaps) {
        if (g < 1)
            throw std::invalid_argument("gap entries must be positive");
        sum += g;
    }
    if (sum != n)
        throw std::invalid_argument("gap entries must sum to n");
    u128 rank = 0;
    int rest = n;
    for (int i = 0; i < k - 1; ++i) {
        const int slots = k - i - 1;
        for (int v = 1; v < gaps[static_cast<std::size_t>(i)]; ++v)
            rank += binomial(rest - v - 1, slots - 1);
        rest -= gaps[static_cast<std::size_t>(i)];
    }
    return checked_u64(rank, "configuration rank");
}

std::vector<State> enumerate_states(int k, int n, std::uint64_t cap) {
    require_kn(k, n);
    require_mask_width(k);
    const std::uint64_t total = count_total_states(k, n);
    if (total > cap)
        throw ResourceCapError("state count " + std::to_string(total) + " exceeds cap " +
                               std::to_string(cap));
    std::vector<State> out;
    out.reserve(total);
    for (const auto& gaps : enumerate_configurations(k, n, cap)) {
        const std::uint64_t ones = ones_mask(gaps);
        const int t = std::popcount(ones);
        const std::uint64_t masks = std::uint64_t{1} << t;
        for (std::uint64_t c = 0; c < masks; ++c) {
            if (t == k && c == masks - 1)
                continue; // all workers blocked is impossible
            out.push_back(State{gaps, expand_bits(c, ones)});
        }
    }
    return out;
}

std::uint64_t rank_state(const State& st, int k, int n) {
    require_kn(k, n);
    require_mask_width(k);
    if (!validate_state(st, k, n))
        throw std::invalid_argument("invalid state '" + state_label(st) + "' for k = " +
                                    std::to_string(k) + ", n = " + std::to_string(n));
    const auto wt = weighted_suffix_table(k, n);
    u128 rank = 0;
    int rest = n;
    int ones_prefix = 0;
    for (int i = 0; i < k; ++i) {
        const int slots = k - i - 1;
        for (int v = 1; v < st.gaps[static_cast<std::size_t>(i)]; ++v) {
            if (rest - v < slots)
                break;
            rank += (u128{1} << ones_prefix) * (v == 1 ? 2u : 1u) *
                    wt[static_cast<std::size_t>(slots)][static_cast<std::size_t>(rest - v)];
        }
        if (st.gaps[static_cast<std::size_t>(i)] == 1)
            ++ones_prefix;
        rest -= st.gaps[static_cast<std::size_t>(i)];
    }
    rank += compress_bits(st.blocked, ones_mask(st.gaps));
    return checked_u64(rank, "state rank");
}

State unrank_state(std::uint64_t index, int k, int n) {
    require_kn(k, n);
    require_mask_width(k);
    const std::uint64_t total = count_total_states(k, n);
    if (index >= total)
        throw std::range_error("state index " + std::to_string(index) +
                               " out of range for " + std::to_string(total) + " states");
    const auto wt = weighted_suffix_table(k, n);
    State st;
    st.gaps.reserve(static_cast<std::size_t>(k));
    u128 rest_rank = index;
    int rest = n;
    int ones_prefix = 0;
    for (int i = 0; i < k; ++i) {
        const int slots = k - i - 1;
        for (int v = 1; v <= rest - slots; ++v) {
            const u128 block = (u128{1} << (ones_prefix + (v == 1 ? 1 : 0))) *
                               wt[static_cast<std::size_t>(slots)]
                                 [static_cast<std::size_t>(rest - v)];
            if (rest_rank < block) {
                st.gaps.push_back(v);
                if (v == 1)
                    ++ones_prefix;
                rest -= v;
                break;
            }
            rest_rank -= block;
        }
    }
    st.blocked = expand_bits(static_cast<std::uint64_t>(rest_rank), ones_mask(st.gaps));
    return st;
}

} // namespace ringwalk
