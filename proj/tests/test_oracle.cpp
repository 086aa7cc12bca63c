/*
 * Copyright 2026 The sabgame authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../src/oracle.hpp"
#include "helpers.hpp"

using namespace sabgame;
using namespace sabgame::testing;

TEST_CASE("one hop to the goal beats any budget") {
    for (int budget : {0, 1, 3, -1}) {
        Game g = make_game(2, {{0, 1}}, 0, {1}, {{0, budget, {}, true}});
        CHECK(reference_winner(g) == Side::Traveler);
    }
}

TEST_CASE("a pending mark on the only through vertex is fatal") {
    // Line a -> b -> goal with the saboteur starting on b: b may already
    // carry its mark, and the traveler finds out standing on it.
    for (ObsMode mode : {ObsMode::Full, ObsMode::None, ObsMode::Adjacent}) {
        Game g = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, 1, {}, true}}, mode);
        CHECK(reference_winner(g) == Side::Saboteur);
    }
    // With no budget the pending mark cannot exist.
    Game g0 = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, 0, {}, true}});
    CHECK(reference_winner(g0) == Side::Traveler);
    // Starting elsewhere, the saboteur is one move too slow on a line.
    Game ga = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{0, 1, {}, true}});
    CHECK(reference_winner(ga) == Side::Traveler);
}

TEST_CASE("what the traveler can see decides the split junction") {
    // a -> m -> {b, c} -> goal. The saboteur holds b and must step to c,
    // choosing secretly which endpoint of that move carries its one mark.
    // Seeing the mark (or both candidates at once from m) saves the
    // traveler; seeing nothing leaves both branch entries deadly.
    auto junction = [](ObsMode mode) {
        return make_game(5, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}}, 0, {4},
                         {{2, 1, {{2, 3}}, false}}, mode);
    };
    CHECK(reference_winner(junction(ObsMode::Full)) == Side::Traveler);
    CHECK(reference_winner(junction(ObsMode::Adjacent)) == Side::Traveler);
    CHECK(reference_winner(junction(ObsMode::None)) == Side::Saboteur);
}

TEST_CASE("the horizon converts slow wins into losses") {
    Game g = make_game(4, {{0, 1}, {1, 2}, {2, 3}}, 0, {3}, {{1, 0, {}, true}});
    CHECK(reference_winner(g) == Side::Traveler);     // default bound n^3
    CHECK(reference_winner(g, 3) == Side::Traveler);  // exactly enough
    CHECK(reference_winner(g, 2) == Side::Saboteur);  // one move short
}

TEST_CASE("repeated visits survive only while the loop is clean") {
    // a -> goal, goal -> b -> goal; the traveler must shuttle through b.
    Game cut = make_game(3, {{0, 1}, {1, 2}, {2, 1}}, 0, {1}, {{0, 1, {}, true}},
                         ObsMode::Full, Objective::Buchi);
    CHECK(reference_winner(cut) == Side::Saboteur);
    Game safe = make_game(3, {{0, 1}, {1, 2}, {2, 1}}, 0, {1}, {{0, 0, {}, true}},
                          ObsMode::Full, Objective::Buchi);
    CHECK(reference_winner(safe) == Side::Traveler);
}

TEST_CASE("initial marks enter the candidate worlds") {
    // a -> b -> goal with a possible initial mark on b: whoever placed it,
    // entering b is fatal in that world, and the saboteur can also have
    // skipped it, so the traveler has no safe route.
    Game g = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{0, 1, {}, true}},
                       ObsMode::Full, Objective::Reachability, {1});
    CHECK(reference_winner(g) == Side::Saboteur);
    // A detour body voids the threat: a -> d -> goal avoids b entirely.
    Game detour = make_game(4, {{0, 1}, {1, 2}, {0, 3}, {3, 2}}, 0, {2},
                            {{0, 1, {}, true}}, ObsMode::Full,
                            Objective::Reachability, {1});
    CHECK(reference_winner(detour) == Side::Traveler);
}

TEST_CASE("guards reject oversized inputs") {
    Game g = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, 1, {}, true}});
    CHECK_THROWS_AS(reference_winner(g, 0, 2), Error);

    Game big;
    big.n = 70;
    big.travel = complete_csr(70);
    big.t_start = 0;
    big.final_set = Bits(70);
    big.final_set.set(69);
    big.initial_marked = Bits(70);
    big.sabs.push_back({1, Budget{true, 1}, complete_csr(70)});
    finish_game(big, ObsMode::Full);
    validate_game(big);
    CHECK_THROWS_AS(reference_winner(big), Error);
}
