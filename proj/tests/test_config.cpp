#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rnca/config.hpp"

using namespace rnca;

namespace {

Configuration random_config(State quiescent, int width, int height, std::mt19937& rng) {
    std::uniform_int_distribution<int> state(0, 4);
    Configuration c(quiescent);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) c.set(x, y, state(rng));
    return c;
}

} // namespace

TEST_CASE("configuration stores no quiescent cells and tracks its bbox") {
    Configuration c(0);
    REQUIRE(c.bbox().empty);
    REQUIRE(c.bbox().width() == 0);

    c.set(2, 3, 4);
    c.set(-1, 0, 1);
    c.set(5, 5, 0); // dropped
    REQUIRE(c.support_size() == 2);
    REQUIRE(c.bbox() == Box{-1, 0, 2, 3, false});

    c.set(2, 3, 0); // erase a boundary cell
    REQUIRE(c.bbox() == Box{-1, 0, -1, 0, false});
    REQUIRE(c.at(2, 3) == 0);
}

TEST_CASE("single 4 spreads into its four neighbors and freezes") {
    Rule rule = canonical_rule(1);
    Configuration c(0);
    c.set(0, 0, 4);

    Configuration next = step(rule, c);
    REQUIRE(next.support_size() == 4);
    REQUIRE(next.at(0, 1) == 1);
    REQUIRE(next.at(1, 0) == 1);
    REQUIRE(next.at(0, -1) == 1);
    REQUIRE(next.at(-1, 0) == 1);
    REQUIRE(next.relative_sum() == 4);

    REQUIRE(step(rule, next) == next);
}

TEST_CASE("empty configuration is a fixed point") {
    for (int beta : {-1, 0, 1}) {
        Configuration empty(0);
        REQUIRE(step(canonical_rule(beta), empty) == empty);
    }
}

TEST_CASE("beta=0 leaves a lone middle state unchanged") {
    Rule rule = canonical_rule(0);
    Configuration c(0);
    c.set(0, 0, 2);
    REQUIRE(step(rule, c) == c);
}

TEST_CASE("quiescent mismatch is rejected") {
    REQUIRE_THROWS_AS(step(canonical_rule(1, 0), Configuration(2)), AlphabetMismatch);
}

TEST_CASE("stepping conserves the relative sum and confines growth") {
    std::mt19937 rng(20240811);
    for (int beta : {-1, 0, 1}) {
        for (State quiescent : {0, 2}) {
            Rule rule = canonical_rule(beta, quiescent);
            for (int trial = 0; trial < 20; ++trial) {
                Configuration c = random_config(quiescent, 5, 5, rng);
                long long sum = c.relative_sum();
                Box before = c.bbox();
                Configuration next = step(rule, c);
                REQUIRE(next.relative_sum() == sum);
                if (!next.bbox().empty) {
                    REQUIRE(next.bbox().width() <= before.width() + 2);
                    REQUIRE(next.bbox().height() <= before.height() + 2);
                }
                // Support stays within the one-cell dilation.
                for (const auto& [pos, s] : next.cells()) {
                    bool near = false;
                    for (auto [dx, dy] :
                         {std::pair{0, 0}, {0, 1}, {1, 0}, {0, -1}, {-1, 0}})
                        if (c.at(pos.x + dx, pos.y + dy) != quiescent) near = true;
                    REQUIRE(near);
                }
            }
        }
    }
}

TEST_CASE("mirrored rule steps the mirrored configuration") {
    std::mt19937 rng(7);
    Rule rule = canonical_rule(1);
    Rule mirrored = mirror_rule(rule);
    for (int trial = 0; trial < 25; ++trial) {
        Configuration c = random_config(0, 6, 4, rng);
        REQUIRE(step(mirrored, c.mirrored_x()) == step(rule, c).mirrored_x());
    }
}

TEST_CASE("beta=0 permanence of states 1, 2, 3 on random configurations") {
    std::mt19937 rng(99);
    Rule rule = canonical_rule(0);
    for (int trial = 0; trial < 25; ++trial) {
        Configuration c = random_config(0, 6, 6, rng);
        Configuration next = step(rule, c);
        for (const auto& [pos, s] : c.cells())
            if (s == 1 || s == 2 || s == 3) REQUIRE(next.at(pos) == s);
    }
}
