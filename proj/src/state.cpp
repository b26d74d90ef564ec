#include "ringwalk/state.hpp"

#include <bit>
#include <stdexcept>

namespace ringwalk {

bool validate_state(const std::vector<int>& gaps, std::uint64_t blocked, int k, int n) noexcept {
    if (k < 1 || k > 64 || n < k)
        return false;
    if (gaps.size() != static_cast<std::size_t>(k))
        return false;
    long long sum = 0;
    for (int g : gaps) {
        if (g < 1)
            return false;
        sum += g;
    }
    if (sum != n)
        return false;
    if (k < 64 && (blocked >> k) != 0)
        return false;
    // A blocked worker sits directly behind its leader: gap exactly 1.
    for (int i = 0; i < k; ++i) {
        if (((blocked >> i) & 1u) && gaps[static_cast<std::size_t>(i)] != 1)
            return false;
    }
    // Someone always finishes a step unblocked.
    if (std::popcount(blocked) >= k)
        return false;
    return true;
}

int blockage_count(const State& st) noexcept {
    return std::popcount(st.blocked);
}

bool state_less(const State& a, const State& b) noexcept {
    if (a.gaps != b.gaps)
        return a.gaps < b.gaps;
    return a.blocked < b.blocked;
}

std::string state_label(const State& st) {
    std::string out;
    for (std::size_t i = 0; i < st.gaps.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(st.gaps[i]);
        if ((st.blocked >> i) & 1u)
            out += '*';
    }
    return out;
}

State parse_state_label(const std::string& text) {
    State st;
    std::size_t pos = 0;
    int slot = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos)
            end = text.size();
        std::string part = text.substr(pos, end - pos);
        if (!part.empty() && part.back() == '*') {
            if (slot >= 64)
                throw std::invalid_argument("state label has too many entries: " + text);
            st.blocked |= std::uint64_t{1} << slot;
            part.pop_back();
        }
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(part, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad gap entry '" + part + "' in state label: " + text);
        }
        if (used != part.size() || value < 1)
            throw std::invalid_argument("bad gap entry '" + part + "' in state label: " + text);
        st.gaps.push_back(value);
        ++slot;
        if (end == text.size())
            break;
        pos = end + 1;
    }
    if (st.gaps.empty())
        throw std::invalid_argument("empty state label");
    return st;
}

} // namespace ringwalk
