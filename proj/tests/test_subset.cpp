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

#include <random>

#include "../src/knowledge.hpp"
#include "../src/subset.hpp"
#include "helpers.hpp"

using namespace sabgame;
using namespace sabgame::testing;

namespace {

bool subset_winner(const Game &g, bool prune = true) {
    SubsetArena sa(g, 1u << 22, prune);
    return solve_subset(sa).root_traveler_wins;
}

bool knowledge_winner(const Game &g) {
    KnowledgeArena ka(g, 1u << 22);
    return solve_knowledge(ka).root_traveler_wins;
}

Game full_random(std::mt19937_64 &rng, uint32_t n_max, uint32_t k, uint32_t m_max) {
    return random_game(rng, n_max, k, m_max, ObsMode::Full);
}

} // namespace

TEST_CASE("the construction needs full observation and finite budgets") {
    Game none = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, 1, {}, true}}, ObsMode::None);
    CHECK_THROWS_AS(SubsetArena(none, 1000, true), Error);
    Game unl = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, -1, {}, true}});
    CHECK_THROWS_AS(SubsetArena(unl, 1000, true), Error);
}

TEST_CASE("explicit marks cut the only path") {
    Game g = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{0, 1, {}, true}});
    std::vector<VertexId> marks{1};
    SubsetArena sa(g, 10000, true, &marks);
    CHECK_FALSE(solve_subset(sa).root_traveler_wins);
    // Without the mark the traveler walks straight through.
    CHECK(subset_winner(g));
}

TEST_CASE("a pending start mark matches the knowledge construction") {
    Game g = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, 1, {}, true}});
    CHECK_FALSE(subset_winner(g)); // the start may already be marked
    CHECK_FALSE(knowledge_winner(g));
    // The adviser configuration plays the real rules: no pending mark,
    // so the traveler crosses before anything can be placed.
    SubsetArena real(g, 10000, true, nullptr, false);
    CHECK(solve_subset(real).root_traveler_wins);
}

TEST_CASE("zero budgets reduce to plain pursuit") {
    Game g = make_game(4, {{0, 1}, {1, 2}, {2, 3}}, 0, {3}, {{1, 0, {}, true}});
    SubsetArena sa(g, 10000, false);
    CHECK(solve_subset(sa).root_traveler_wins);
    for (uint32_t s = 0; s < sa.arena.n(); s++) {
        CHECK(sa.used_of(s, 1) == 0);
        for (uint32_t w = 0; w < sa.words; w++) CHECK(sa.marks(s)[w] == 0);
    }
}

TEST_CASE("pruning one-move wins preserves the winner") {
    std::mt19937_64 rng(31337);
    for (int t = 0; t < 60; t++) {
        Game g = full_random(rng, 5, 1, 2);
        CAPTURE(serialize_scenario(g));
        SubsetArena pruned(g, 1u << 22, true);
        SubsetArena plain(g, 1u << 22, false);
        REQUIRE(solve_subset(pruned).root_traveler_wins ==
                solve_subset(plain).root_traveler_wins);
        CHECK(pruned.arena.n() <= plain.arena.n());
    }
}

TEST_CASE("a complete network is won on the first move") {
    Game g = make_game(10, {}, 0, {9}, {{1, 2, {}, true}});
    std::vector<std::pair<VertexId, VertexId>> te;
    for (VertexId u = 0; u < 10; u++)
        for (VertexId v = 0; v < 10; v++)
            if (u != v) te.emplace_back(u, v);
    g.travel = build_csr(10, te);
    finish_game(g, ObsMode::Full);
    validate_game(g);
    SubsetArena sa(g, 1u << 22, true);
    CHECK(solve_subset(sa).root_traveler_wins);
    CHECK(sa.arena.n() == 1); // the root itself is a one-move win
}

TEST_CASE("random games agree with the knowledge construction") {
    std::mt19937_64 rng(20260815);
    for (int t = 0; t < 80; t++) {
        Game g = full_random(rng, 5, 1 + t % 2, 2);
        CAPTURE(serialize_scenario(g));
        REQUIRE(subset_winner(g) == knowledge_winner(g));
    }
}

TEST_CASE("repeated-visit games agree with the knowledge construction") {
    std::mt19937_64 rng(777);
    for (int t = 0; t < 40; t++) {
        Game g = full_random(rng, 4, 1, 1);
        g.objective = Objective::Buchi;
        CAPTURE(serialize_scenario(g));
        REQUIRE(subset_winner(g, false) == knowledge_winner(g));
    }
}

TEST_CASE("traveler strategies replay within the round bound") {
    std::mt19937_64 rng(4711);
    int wins = 0;
    for (int t = 0; t < 60; t++) {
        Game g = full_random(rng, 5, 1, 2);
        SubsetArena sa(g, 1u << 22, true);
        Solution sol = solve_subset(sa);
        CAPTURE(serialize_scenario(g));
        if (sol.root_traveler_wins) {
            wins++;
            REQUIRE(replay_traveler(sa.arena, false, sol.strat, g.round_bound()).ok);
        } else {
            REQUIRE(replay_saboteur(sa.arena, false, sol.strat).ok);
        }
    }
    CHECK(wins > 0);
}

TEST_CASE("referee positions map back to arena states") {
    // Adviser configuration: no folded start marks, no pruning.
    Game g = make_game(4, {{0, 1}, {1, 2}, {2, 3}, {1, 0}}, 0, {3},
                       {{1, 1, {}, true}});
    SubsetArena sa(g, 1u << 20, false, nullptr, false);
    uint32_t found = 0;
    for (uint32_t s = 0; s < sa.arena.n(); s++) {
        std::vector<VertexId> v;
        for (uint32_t i = 1; i <= g.k(); i++) v.push_back(sa.v_of(s, i));
        Bits m(g.n);
        for (uint32_t x = 0; x < g.n; x++)
            if ((sa.marks(s)[x >> 6] >> (x & 63)) & 1) m.set(x);
        std::vector<uint32_t> used;
        for (uint32_t j = 1; j <= g.k(); j++) used.push_back(sa.used_of(s, j));
        CHECK(subset_find(sa, sa.turn_of(s), sa.u_of(s), v, m, used) == s);
        found++;
    }
    CHECK(found == sa.arena.n());
    // A position that never occurs maps to no state.
    Bits none(g.n);
    CHECK(subset_find(sa, 0, 3, {0}, none, {1}) == NO_STATE);
}

TEST_CASE("the state count matches the unpruned arena") {
    std::mt19937_64 rng(2025);
    for (int t = 0; t < 20; t++) {
        Game g = full_random(rng, 5, 1, 2);
        SubsetArena plain(g, 1u << 22, false);
        CHECK(subset_state_count(g, 1u << 22) == plain.arena.n());
    }
}

TEST_CASE("strategy moves round-trip through their JSON form") {
    Game g = make_game(4, {{0, 1}, {1, 2}, {2, 3}, {1, 0}}, 0, {3},
                       {{1, 2, {}, true}});
    SubsetArena sa(g, 1u << 20, false);
    for (uint32_t s = 0; s < sa.arena.n(); s++) {
        auto [first, last] = sa.arena.succ(s);
        for (auto it = first; it != last; ++it)
            CHECK(sa.resolve_move(s, sa.move_json(s, *it)) == *it);
    }
}
