#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ringwalk {

// A chain state is the list of forward gap distances between consecutive
// workers (gaps[i] is the distance from worker i+1 to worker i+2, wrapping
// at the end), together with a bit mask of workers that ended the step
// blocked.  Bit i of `blocked` refers to gaps[i]; a blocked worker sits
// directly behind its leader, so the mask may only cover entries equal to 1,
// and at least one worker is always unblocked.
struct State {
    std::vector<int> gaps;
    std::uint64_t blocked = 0;

    bool operator==(const State&) const = default;
};

// True iff (gaps, blocked) is a valid state for k workers on n bins:
// k entries, each >= 1, summing to n, mask bits confined to [0, k) and to
// gap entries equal to 1, and fewer than k bits set.  Total: never throws.
bool validate_state(const std::vector<int>& gaps, std::uint64_t blocked, int k, int n) noexcept;

inline bool validate_state(const State& st, int k, int n) noexcept {
    return validate_state(st.gaps, st.blocked, k, n);
}

// Number of blocked workers in the state.
int blockage_count(const State& st) noexcept;

// Canonical ordering: gaps lexicographically ascending, ties broken by the
// blocked mask as an integer.  This is the order used for state indices.
bool state_less(const State& a, const State& b) noexcept;

// Compact text form: gap values joined by commas, blocked entries marked
// with a trailing '*', e.g. "1*,2,4".
std::string state_label(const State& st);

// Parse the text form back into a State.  Throws std::invalid_argument on
// malformed input (the result is not otherwise validated against k or n).
State parse_state_label(const std::string& text);

} // namespace ringwalk
