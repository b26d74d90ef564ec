#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "oracle_helpers.hpp"
#include "ringwalk/errors.hpp"
#include "ringwalk/state_space.hpp"

using namespace ringwalk;

TEST_CASE("binomial coefficients are exact") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(15, 4) == 1365);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(-1, 0) == 0);
    CHECK(binomial(7, -2) == 0);
    // Pascal triangle cross-check.
    std::uint64_t pascal[40][40] = {};
    for (int i = 0; i < 40; ++i) {
        pascal[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            pascal[i][j] = pascal[i - 1][j - 1] + (j <= i - 1 ? pascal[i - 1][j] : 0);
    }
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j <= i; ++j)
            CHECK(binomial(i, j) == pascal[i][j]);
    CHECK_THROWS_AS((void)binomial(200, 100), std::overflow_error);
}

TEST_CASE("configuration counts match brute-force enumeration") {
    CHECK(count_configurations(1, 9) == 1);
    CHECK(count_configurations(3, 7) == 15);
    CHECK(count_configurations(5, 16) == 1365);
    for (int n = 1; n <= 12; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(count_configurations(k, n) == oracle::compositions(k, n).size());
    CHECK_THROWS_AS((void)count_configurations(0, 4), std::domain_error);
    CHECK_THROWS_AS((void)count_configurations(5, 4), std::domain_error);
}

TEST_CASE("per-blockage state counts") {
    CHECK(count_states_with_blockages(2, 5, 16) == 780);
    CHECK(count_states_with_blockages(2, 3, 7) == 3);
    for (int n = 2; n <= 11; ++n) {
        for (int k = 1; k <= n; ++k) {
            // compare against the brute-force census of valid states
            std::vector<std::uint64_t> census(static_cast<std::size_t>(k), 0);
            for (const State& st : oracle::states(k, n))
                census[static_cast<std::size_t>(blockage_count(st))] += 1;
            for (int b = 0; b < k; ++b)
                CHECK(count_states_with_blockages(b, k, n) ==
                      census[static_cast<std::size_t>(b)]);
            CHECK(count_states_with_blockages(0, k, n) == count_configurations(k, n));
            if (n > k)
                CHECK(count_states_with_blockages(k - 1, k, n) ==
                      static_cast<std::uint64_t>(k));
        }
    }
    CHECK_THROWS_AS((void)count_states_with_blockages(3, 3, 7), std::domain_error);
    CHECK_THROWS_AS((void)count_states_with_blockages(-1, 3, 7), std::domain_error);
}

TEST_CASE("total state counts") {
    CHECK(count_total_states(3, 7) == 33);
    CHECK(count_total_states(5, 12) == 1375);
    for (int n = 1; n <= 8; ++n)
        CHECK(count_total_states(1, n) == 1);
    for (int k = 1; k <= 10; ++k)
        CHECK(count_total_states(k, k) == (std::uint64_t{1} << k) - 1);
    for (int n = 1; n <= 11; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(count_total_states(k, n) == oracle::states(k, n).size());
}

TEST_CASE("canonical enumeration order") {
    const auto states = enumerate_states(2, 3);
    REQUIRE(states.size() == 4);
    CHECK((states[0] == State{{1, 2}, 0b00}));
    CHECK((states[1] == State{{1, 2}, 0b01}));
    CHECK((states[2] == State{{2, 1}, 0b00}));
    CHECK((states[3] == State{{2, 1}, 0b10}));

    const auto lone = enumerate_states(1, 5);
    REQUIRE(lone.size() == 1);
    CHECK((lone[0] == State{{5}, 0}));

    CHECK(enumerate_states(5, 12).size() == 1375);

    for (int n = 1; n <= 10; ++n) {
        for (int k = 1; k <= n; ++k) {
            const auto got = enumerate_states(k, n);
            const auto want = oracle::states(k, n);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i] == want[i]);
                CHECK(validate_state(got[i], k, n));
                if (i > 0)
                    CHECK(state_less(got[i - 1], got[i]));
            }
        }
    }
}

TEST_CASE("enumeration respects the size cap") {
    CHECK_THROWS_AS((void)enumerate_states(5, 16, 10), ResourceCapError);
    CHECK_THROWS_AS((void)enumerate_configurations(5, 16, 10), ResourceCapError);
    CHECK_NOTHROW((void)enumerate_states(3, 7, 33));
}

TEST_CASE("configuration ranking") {
    for (int n = 1; n <= 11; ++n) {
        for (int k = 1; k <= n; ++k) {
            const auto configs = enumerate_configurations(k, n);
            for (std::size_t i = 0; i < configs.size(); ++i)
                CHECK(rank_configuration(configs[i], k, n) == i);
        }
    }
    CHECK_THROWS_AS(((void)rank_configuration({1, 2, 3}, 3, 7)), std::invalid_argument);
    CHECK_THROWS_AS(((void)rank_configuration({1, 2}, 3, 7)), std::invalid_argument);
    CHECK_THROWS_AS(((void)rank_configuration({0, 3}, 2, 3)), std::invalid_argument);
}

TEST_CASE("state rank and unrank are mutually inverse") {
    CHECK((unrank_state(0, 2, 3) == State{{1, 2}, 0}));

    for (int n = 1; n <= 11; ++n) {
        for (int k = 1; k <= n; ++k) {
            const auto states = enumerate_states(k, n);
            for (std::size_t i = 0; i < states.size(); ++i) {
                CHECK(rank_state(states[i], k, n) == i);
                CHECK(unrank_state(i, k, n) == states[i]);
            }
        }
    }

    // one mid-sized instance, round-tripping the index direction too
    const std::uint64_t m = count_total_states(5, 12);
    for (std::uint64_t i = 0; i < m; ++i)
        CHECK(rank_state(unrank_state(i, 5, 12), 5, 12) == i);

    CHECK_THROWS_AS(((void)rank_state(State{{2, 2}, 0b01}, 2, 4)), std::invalid_argument);
    CHECK_THROWS_AS((void)unrank_state(33, 3, 7), std::range_error);
    CHECK_THROWS_AS((void)unrank_state(4, 2, 3), std::range_error);
}

TEST_CASE("state validation") {
    CHECK((validate_state({3, 6, 2, 5}, 0, 4, 16)));
    CHECK((validate_state({1, 2}, 0b01, 2, 3)));
    CHECK((validate_state({1, 1, 5}, 0b011, 3, 7)));

    CHECK_FALSE((validate_state({2, 2}, 0b01, 2, 4)));      // blocked gap must be 1
    CHECK_FALSE((validate_state({1, 1, 1}, 0b111, 3, 3)));  // someone stays unblocked
    CHECK_FALSE((validate_state({1, 2}, 0b10, 2, 3)));      // marker on a gap of 2
    CHECK_FALSE((validate_state({1, 2}, 0b100, 2, 3)));     // mask past the workers
    CHECK_FALSE((validate_state({2, 2}, 0, 2, 3)));         // wrong total
    CHECK_FALSE((validate_state({0, 3}, 0, 2, 3)));         // empty gap
    CHECK_FALSE((validate_state({3}, 0, 1, 4)));            // wrong total for one worker
    CHECK_FALSE((validate_state({1, 2, 3}, 0, 2, 6)));      // wrong length
}

TEST_CASE("state labels round-trip") {
    CHECK((state_label(State{{1, 2, 4}, 0b001}) == "1*,2,4"));
    CHECK((state_label(State{{5}, 0}) == "5"));
    CHECK((parse_state_label("1*,2,4") == State{{1, 2, 4}, 0b001}));
    CHECK((parse_state_label("3,6,2,5") == State{{3, 6, 2, 5}, 0}));
    CHECK_THROWS_AS((void)parse_state_label(""), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_state_label("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_state_label("a,b"), std::invalid_argument);
    for (int n = 1; n <= 8; ++n)
        for (int k = 1; k <= n; ++k)
            for (const State& st : enumerate_states(k, n))
                CHECK(parse_state_label(state_label(st)) == st);
}
