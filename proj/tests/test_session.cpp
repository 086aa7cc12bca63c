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

#include <algorithm>
#include <optional>

#include "../src/session.hpp"
#include "helpers.hpp"

using namespace sabgame;
using namespace sabgame::testing;

namespace {

template <typename F> std::optional<Code> code_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code;
    }
    return std::nullopt;
}

/** Line 0 -> 1 -> 2 -> 3 with goal 3 and one saboteur at 2. */
Game line4(int budget, ObsMode mode) {
    return make_game(4, {{0, 1}, {1, 2}, {2, 3}}, 0, {3}, {TestSab{2, budget}}, mode);
}

} // namespace

TEST_CASE("turns alternate, rounds count traveler moves, goal ends the play") {
    Game g = line4(1, ObsMode::Full);
    Session s(g);

    CHECK(s.state == Session::State::Ongoing);
    CHECK(s.turn == 0);
    CHECK(s.round == 0);
    CHECK(s.t_pos == 0);
    REQUIRE(s.b_pos.size() == 1);
    CHECK(s.b_pos[0] == 2);

    s.traveler_move(1);
    CHECK(s.turn == 1);
    CHECK(s.round == 1);
    CHECK(code_of([&] { s.traveler_move(2); }) == Code::IllegalMove);

    // Complete saboteur edges minus the goal: from 2 the moves are {0, 1}.
    auto dests = s.legal_moves();
    std::sort(dests.begin(), dests.end());
    CHECK(dests == std::vector<VertexId>{0, 1});
    s.saboteur_move(0, {});
    CHECK(s.turn == 0);
    CHECK(s.b_pos[0] == 0);

    s.traveler_move(2);
    s.saboteur_move(1, {});
    s.traveler_move(3);

    CHECK(s.state == Session::State::TravelerWon);
    CHECK(s.outcome.find("reached") != std::string::npos);
    CHECK(s.round == 3);
    CHECK(s.final_visits == 1);
    CHECK(s.legal_moves().empty());
    CHECK(code_of([&] { s.traveler_move(3); }) == Code::IllegalMove);
    CHECK(code_of([&] { s.saboteur_move(0, {}); }) == Code::IllegalMove);
}

TEST_CASE("traveler moves must follow traveler edges") {
    Game g = line4(1, ObsMode::Full);
    Session s(g);
    CHECK(code_of([&] { s.traveler_move(2); }) == Code::IllegalMove);  // no edge 0 -> 2
    CHECK(code_of([&] { s.traveler_move(99); }) == Code::IllegalMove); // out of range
    CHECK(code_of([&] { s.saboteur_move(0, {}); }) == Code::IllegalMove);
    CHECK(s.state == Session::State::Ongoing); // rejected calls change nothing
    CHECK(s.turn == 0);
    CHECK(s.t_pos == 0);
    CHECK(s.legal_moves() == std::vector<VertexId>{1});
}

TEST_CASE("saboteur marks obey the endpoint, occupancy and budget rules") {
    // The traveler idles on a self loop while the saboteur walks and marks.
    Game g = make_game(6, {{0, 0}}, 0, {5}, {TestSab{2, 3}});
    Session s(g);

    s.traveler_move(0);
    // Duplicate entries collapse before the budget is charged.
    s.saboteur_move(3, {2, 3, 2});
    CHECK(s.marks == [&] { Bits b(6); b.set(2); b.set(3); return b; }());
    CHECK(s.used[0] == 2);
    CHECK(s.placed_by[0].count() == 2);

    s.traveler_move(0);
    CHECK(code_of([&] { s.saboteur_move(2, {3}); }) == Code::IllegalMove); // marked already
    CHECK(code_of([&] { s.saboteur_move(2, {4}); }) == Code::IllegalMove); // not an endpoint
    CHECK(s.turn == 1);                                                    // rejections keep the turn
    s.saboteur_move(2, {});

    s.traveler_move(0);
    CHECK(code_of([&] { s.saboteur_move(4, {2, 4}); }) == Code::IllegalMove); // 2 marked already
    s.saboteur_move(4, {4});
    CHECK(s.used[0] == 3);

    s.traveler_move(0);
    CHECK(code_of([&] { s.saboteur_move(0, {0}); }) == Code::IllegalMove); // traveler's vertex
    CHECK(code_of([&] { s.saboteur_move(1, {1}); }) == Code::IllegalMove); // budget spent
    s.saboteur_move(1, {});

    CHECK(s.marks.count() == 3);
    CHECK(s.state == Session::State::Ongoing);
}

TEST_CASE("a stuck saboteur can only pass in place") {
    Game g = make_game(4, {{0, 1}, {1, 0}}, 0, {3}, {TestSab{2, 1, {}, false}});
    Session s(g);
    s.traveler_move(1);
    CHECK(s.legal_moves() == std::vector<VertexId>{2}); // forced pass
    CHECK(code_of([&] { s.saboteur_move(0, {}); }) == Code::IllegalMove);
    CHECK(code_of([&] { s.saboteur_move(2, {2}); }) == Code::IllegalMove);
    s.saboteur_move(2, {});
    CHECK(s.b_pos[0] == 2);
    CHECK(s.used[0] == 0);
    CHECK(s.turn == 0);
}

TEST_CASE("initial marks are placed up front and charged first-fit") {
    Game g = make_game(6, {{0, 0}}, 0, {3}, {TestSab{1, 1}, TestSab{2, 2}},
                       ObsMode::Full, Objective::Reachability, {4, 5});
    Session s(g);
    CHECK(s.marks.count() == 2);
    CHECK(s.marks.test(4));
    CHECK(s.marks.test(5));
    CHECK(s.used == std::vector<uint32_t>{1, 1});
    CHECK(s.placed_by[0] == [&] { Bits b(6); b.set(4); return b; }());
    CHECK(s.placed_by[1] == [&] { Bits b(6); b.set(5); return b; }());

    // Before any observation the marks could be anyone's, and each start
    // may carry a pending mark of its own saboteur.
    CHECK(s.suspects[0] == [&] { Bits b(6); b.set(1); b.set(4); b.set(5); return b; }());
    CHECK(s.suspects[1] == [&] { Bits b(6); b.set(2); b.set(4); b.set(5); return b; }());
    CHECK(s.known.empty());
    CHECK(s.observed() == s.marks); // full view sees the marks regardless

    Game g2 = make_game(6, {{0, 0}}, 0, {3}, {TestSab{1, 2}, TestSab{2, 1}},
                        ObsMode::Full, Objective::Reachability, {4, 5});
    Session s2(g2);
    CHECK(s2.used == std::vector<uint32_t>{2, 0});
    CHECK(s2.placed_by[0].count() == 2);
    CHECK(s2.placed_by[1].empty());
}

TEST_CASE("initial marks beyond every budget are rejected") {
    Game g;
    g.n = 3;
    g.travel = build_csr(3, {{0, 1}, {1, 2}});
    g.t_start = 0;
    g.objective = Objective::Reachability;
    g.final_set = Bits(3);
    g.final_set.set(2);
    g.initial_marked = Bits(3);
    g.initial_marked.set(1);
    SaboteurSpec sab;
    sab.start = 1;
    sab.budget = Budget{true, 0};
    sab.edges = complete_csr(3);
    g.sabs.push_back(std::move(sab));
    finish_game(g, ObsMode::Full);
    CHECK(code_of([&] { validate_game(g); }) == Code::Validation);
    CHECK(code_of([&] { Session s(g); }) == Code::Validation);
}

TEST_CASE("entering a marked vertex loses the play") {
    Game g = line4(1, ObsMode::Full);
    Session s(g);
    s.traveler_move(1);
    s.saboteur_move(0, {2}); // mark the vertex left behind
    CHECK(s.legal_moves() == std::vector<VertexId>{2});
    s.traveler_move(2);
    CHECK(s.state == Session::State::TravelerLost);
    CHECK(s.outcome.find("marked") != std::string::npos);
    CHECK(s.final_visits == 0);
}

TEST_CASE("a traveler without moves loses when its turn returns") {
    Game g = make_game(3, {{0, 1}}, 0, {2}, {TestSab{0, 0}});
    Session s(g);
    s.traveler_move(1);
    CHECK(s.state == Session::State::Ongoing); // loss waits for the turn
    s.saboteur_move(1, {});
    CHECK(s.state == Session::State::TravelerLost);
    CHECK(s.outcome.find("stuck") != std::string::npos);
}

TEST_CASE("starting on a goal wins immediately under reachability") {
    Game g = make_game(2, {}, 0, {0}, {TestSab{1, 0}});
    Session s(g);
    CHECK(s.state == Session::State::TravelerWon);
    CHECK(s.outcome.find("starts") != std::string::npos);
    CHECK(s.final_visits == 1);
    CHECK(s.legal_moves().empty());
}

TEST_CASE("the repeated objective counts visits and keeps playing") {
    Game g = make_game(2, {{0, 1}, {1, 0}}, 0, {0}, {TestSab{1, 0}},
                       ObsMode::Full, Objective::Buchi);
    Session s(g);
    CHECK(s.state == Session::State::Ongoing);
    CHECK(s.final_visits == 1);

    s.traveler_move(1);
    // The saboteur's only non-goal vertex is its own: it is stuck.
    s.saboteur_move(1, {});
    s.traveler_move(0);
    CHECK(s.final_visits == 2);
    CHECK(s.state == Session::State::Ongoing);
    s.saboteur_move(1, {});
    s.traveler_move(1);
    CHECK(s.final_visits == 2);
}

TEST_CASE("suspects accumulate out of view and carry the start seed") {
    Game g = line4(1, ObsMode::None);
    Session s(g);
    CHECK(s.suspects[0] == [&] { Bits b(4); b.set(2); return b; }());

    s.traveler_move(1);
    s.saboteur_move(0, {}); // touches 2 and 0, both outside the window {1}
    CHECK(s.suspects[0] == [&] { Bits b(4); b.set(0); b.set(2); return b; }());
    CHECK(s.known.empty());
    CHECK(s.observed().empty());

    s.traveler_move(2);
    s.saboteur_move(1, {0}); // a real mark lands at 0, still unseen
    // The window {2} clears vertex 2 as suspect without learning a mark.
    CHECK(s.suspects[0] == [&] { Bits b(4); b.set(0); b.set(1); return b; }());
    CHECK(s.known.empty());
    CHECK(s.observed().empty());
    CHECK(s.marks.test(0));
}

TEST_CASE("a full window resolves every suspect at once") {
    Game g = line4(1, ObsMode::Full);
    Session s(g);
    CHECK(s.suspects[0] == [&] { Bits b(4); b.set(2); return b; }());

    s.traveler_move(1);
    s.saboteur_move(0, {0});
    CHECK(s.suspects[0].empty());
    CHECK(s.known == [&] { Bits b(4); b.set(0); return b; }());
    CHECK(s.observed() == s.known);
}

TEST_CASE("a neighborhood window resolves the budget and wipes the suspects") {
    Game g = line4(1, ObsMode::Adjacent);
    Session s(g);
    s.traveler_move(1); // window {1, 2}
    s.saboteur_move(0, {2});
    // The revealed mark at 2 accounts for the whole budget, so the
    // untouched endpoint 0 stops being suspect as well.
    CHECK(s.known == [&] { Bits b(4); b.set(2); return b; }());
    CHECK(s.suspects[0].empty());
    CHECK(s.observed() == s.known);
}

TEST_CASE("saboteurs move in list order within a round") {
    Game g = make_game(5, {{0, 1}, {1, 2}}, 0, {4}, {TestSab{2, 1}, TestSab{3, 1}});
    Session s(g);
    s.traveler_move(1);
    CHECK(s.turn == 1);
    s.saboteur_move(3, {});
    CHECK(s.turn == 2);
    CHECK(s.b_pos[0] == 3);
    s.saboteur_move(0, {});
    CHECK(s.turn == 0);
    CHECK(s.b_pos == std::vector<VertexId>{3, 0});
    CHECK(s.round == 1);
}

TEST_CASE("random plays keep the referee invariants") {
    std::mt19937_64 rng(20260815);
    const ObsMode modes[] = {ObsMode::Full, ObsMode::None, ObsMode::Adjacent, ObsMode::Map};

    for (int iter = 0; iter < 200; iter++) {
        Game g = random_game(rng, 6, 1 + iter % 2, 2, modes[iter % 4], iter % 7 == 0);
        Session s(g);
        uint32_t moves_made = s.round;

        auto check_state = [&](bool after_saboteur) {
            CHECK((s.known - s.marks).empty());
            CHECK(s.observed() == (s.marks & g.obs[s.t_pos]));
            CHECK(!s.marks.intersects(g.final_set));
            Bits attributed(g.n);
            for (uint32_t j = 0; j < g.k(); j++) {
                CHECK(s.placed_by[j].count() == s.used[j]);
                CHECK(!attributed.intersects(s.placed_by[j]));
                attributed |= s.placed_by[j];
                CHECK(!s.suspects[j].intersects(s.known));
                if (g.sabs[j].budget.finite) CHECK(s.used[j] <= g.sabs[j].budget.m);
                if (after_saboteur) CHECK(!s.suspects[j].intersects(g.obs[s.t_pos]));
            }
            CHECK(attributed == s.marks);
            if (s.state == Session::State::Ongoing) CHECK(!s.marks.test(s.t_pos));
            CHECK(s.round == moves_made);
            CHECK(s.turn <= g.k());
        };
        check_state(false);

        for (int step = 0; step < 60 && s.state == Session::State::Ongoing; step++) {
            auto legal = s.legal_moves();
            REQUIRE(!legal.empty());
            VertexId to = legal[rng() % legal.size()];
            if (s.turn == 0) {
                s.traveler_move(to);
                moves_made++;
                check_state(false);
            } else {
                uint32_t i = s.turn - 1;
                VertexId from = s.b_pos[i];
                std::vector<VertexId> mk;
                if (to != from) { // a forced pass cannot mark
                    uint32_t room = g.sabs[i].budget.finite
                                        ? g.sabs[i].budget.m - s.used[i]
                                        : 2;
                    for (VertexId x : {from, to}) {
                        if (room == 0) break;
                        if (x == s.t_pos || s.marks.test(x) || g.final_set.test(x)) continue;
                        if (std::find(mk.begin(), mk.end(), x) != mk.end()) continue;
                        if (rng() % 2) {
                            mk.push_back(x);
                            room--;
                        }
                    }
                }
                s.saboteur_move(to, mk);
                check_state(true);
            }
        }
    }
}
