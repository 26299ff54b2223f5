#include <catch2/catch_amalgamated.hpp>

#include "rnca/flow.hpp"
#include "rnca/rule.hpp"

using namespace rnca;

TEST_CASE("state set normalization predicates") {
    StateSet q({3, 1, 4, 1, 0, 2});
    REQUIRE(q.size() == 5);
    REQUIRE(q.values() == std::vector<State>{0, 1, 2, 3, 4});
    REQUIRE(q.is_normalized());
    REQUIRE(StateSet({0, 2, 4}).difference_gcd() == 2);
    REQUIRE_FALSE(StateSet({0, 2, 4}).is_normalized());
    REQUIRE_FALSE(StateSet({1, 2}).is_normalized());
    REQUIRE(StateSet({0}).is_normalized());
    REQUIRE_THROWS_AS(StateSet({}), DegenerateAlphabet);
}

TEST_CASE("cyclic extension on the beta=1 flow") {
    FlowSpec flow = canonical_flow(1);

    SECTION("null on pairs") { REQUIRE(cyc_extension(flow, {0, 4}) == 0); }
    SECTION("base triple") { REQUIRE(cyc_extension(flow, {0, 4, 1}) == 1); }
    SECTION("anti-symmetric") { REQUIRE(cyc_extension(flow, {1, 4, 0}) == -1); }
    SECTION("repetition invariant") { REQUIRE(cyc_extension(flow, {0, 0, 4, 1}) == 1); }
    SECTION("word too short") {
        REQUIRE_THROWS_AS(cyc_extension(flow, std::initializer_list<State>{0}), WordTooShort);
    }
}

TEST_CASE("cyclic extension laws hold exhaustively on short words") {
    for (int beta : {-1, 0, 1}) {
        FlowSpec flow = canonical_flow(beta);
        std::vector<State> word;
        // All words of length 2..5 over Q.
        for (int len = 2; len <= 5; ++len) {
            std::vector<int> digits(static_cast<size_t>(len), 0);
            for (;;) {
                word.assign(digits.begin(), digits.end());
                int v = cyc_extension(flow, word);

                if (len == 2) REQUIRE(v == 0);

                std::vector<State> rotated(word.begin() + 1, word.end());
                rotated.push_back(word.front());
                REQUIRE(cyc_extension(flow, rotated) == v);

                std::vector<State> reversed(word.rbegin(), word.rend());
                REQUIRE(cyc_extension(flow, reversed) == -v);

                if (len < 5) {
                    std::vector<State> repeated(word);
                    repeated.insert(repeated.begin(), word.front());
                    REQUIRE(cyc_extension(flow, repeated) == v);
                }

                int i = len - 1;
                while (i >= 0 && digits[static_cast<size_t>(i)] == 4) {
                    digits[static_cast<size_t>(i)] = 0;
                    --i;
                }
                if (i < 0) break;
                ++digits[static_cast<size_t>(i)];
            }
        }
    }
}

TEST_CASE("flow invariant checks") {
    SECTION("repeated-state triple rejected") {
        FlowSpec flow(StateSet::range(5));
        REQUIRE_THROWS_AS(flow.set_triple(0, 0, 1, 1), FlowInvariantViolation);
    }
    SECTION("incoherent triple table detected") {
        FlowSpec flow(StateSet::range(5));
        flow.set_triple(0, 1, 2, 1);
        auto why = flow.invariant_violation();
        REQUIRE(why.has_value());
        REQUIRE(why->find("coherence") != std::string::npos);
    }
    SECTION("canonical flows are valid") {
        for (int beta : {-1, 0, 1})
            REQUIRE_FALSE(canonical_flow(beta).invariant_violation().has_value());
    }
}
