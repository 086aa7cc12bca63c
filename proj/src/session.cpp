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

#include "session.hpp"

#include <algorithm>

namespace sabgame {

Session::Session(const Game &game)
    : g(&game), t_pos(game.t_start), marks(game.n), used(game.k(), 0),
      suspects(game.k(), Bits(game.n)), known(game.n), placed_by(game.k(), Bits(game.n)) {
    for (const auto &s : game.sabs) b_pos.push_back(s.start);

    // Place the scenario's initial marks, first-fit against budgets.
    game.initial_marked.for_each([&](uint32_t v) {
        for (uint32_t i = 0; i < g->k(); i++) {
            if (!g->sabs[i].budget.finite || used[i] < g->sabs[i].budget.m) {
                marks.set(v);
                used[i]++;
                placed_by[i].set(v);
                return;
            }
        }
        fail(Code::Validation, "initial_marked exceeds the total saboteur budget");
    });

    // Until an observation says otherwise, any initial mark may be anyone's,
    // and each saboteur's start may already carry a mark of its own.
    for (uint32_t i = 0; i < g->k(); i++) {
        suspects[i] = game.initial_marked;
        if (g->seed_suspect(i)) suspects[i].set(b_pos[i]);
    }
    wipe_resolved();

    if (g->final_set.test(t_pos)) {
        final_visits = 1;
        if (g->objective == Objective::Reachability)
            finish(State::TravelerWon, "traveler starts on a final vertex");
    }
    if (state == State::Ongoing) enter_traveler_turn();
}

void Session::finish(State s, std::string why) {
    state = s;
    outcome = std::move(why);
}

void Session::enter_traveler_turn() {
    turn = 0;
    if (g->travel.succ(t_pos).empty())
        finish(State::TravelerLost, msg("traveler stuck at '", g->name(t_pos), "'"));
}

std::vector<VertexId> Session::legal_moves() const {
    std::vector<VertexId> out;
    if (state != State::Ongoing) return out;
    if (turn == 0) {
        auto s = g->travel.succ(t_pos);
        out.assign(s.begin(), s.end());
    } else {
        g->saboteur_dests(turn - 1, b_pos[turn - 1], out);
        if (out.empty()) out.push_back(b_pos[turn - 1]); // forced pass
    }
    return out;
}

void Session::traveler_move(VertexId to) {
    if (state != State::Ongoing) fail(Code::IllegalMove, "the play is over");
    if (turn != 0) fail(Code::IllegalMove, "it is not the traveler's turn");
    if (to >= g->n) fail(Code::IllegalMove, "destination out of range");
    if (!g->travel.has(t_pos, to))
        fail(Code::IllegalMove,
             msg("no traveler edge from '", g->name(t_pos), "' to '", g->name(to), "'"));

    t_pos = to;
    round++;
    if (marks.test(to)) {
        finish(State::TravelerLost, msg("traveler entered marked vertex '", g->name(to), "'"));
        return;
    }
    if (g->final_set.test(to)) {
        final_visits++;
        if (g->objective == Objective::Reachability) {
            finish(State::TravelerWon, msg("traveler reached '", g->name(to), "'"));
            return;
        }
    }
    turn = g->k() >= 1 ? 1 : 0;
}

void Session::saboteur_move(VertexId to, const std::vector<VertexId> &mark_list) {
    if (state != State::Ongoing) fail(Code::IllegalMove, "the play is over");
    if (turn == 0) fail(Code::IllegalMove, "it is the traveler's turn");
    const uint32_t i = turn - 1;
    const VertexId from = b_pos[i];

    std::vector<VertexId> dests;
    g->saboteur_dests(i, from, dests);
    if (dests.empty()) {
        if (to != from || !mark_list.empty())
            fail(Code::IllegalMove, msg("saboteur ", i + 1, " is stuck and can only pass"));
    } else if (std::find(dests.begin(), dests.end(), to) == dests.end()) {
        fail(Code::IllegalMove, msg("saboteur ", i + 1, " has no move from '", g->name(from),
                                    "' to '", to < g->n ? g->name(to) : "?", "'"));
    }

    // Marks: dedupe, then check each against the move and the budget.
    std::vector<VertexId> mk(mark_list);
    std::sort(mk.begin(), mk.end());
    mk.erase(std::unique(mk.begin(), mk.end()), mk.end());
    for (VertexId x : mk) {
        if (x != from && x != to)
            fail(Code::IllegalMove, "marks must be the move's source or destination");
        if (x == t_pos) fail(Code::IllegalMove, "cannot mark the traveler's vertex");
        if (g->final_set.test(x)) fail(Code::IllegalMove, "cannot mark a final vertex");
        if (marks.test(x)) fail(Code::IllegalMove, msg("'", g->name(x), "' is already marked"));
    }
    if (g->sabs[i].budget.finite && used[i] + mk.size() > g->sabs[i].budget.m)
        fail(Code::IllegalMove, msg("saboteur ", i + 1, " budget exceeded"));

    b_pos[i] = to;
    for (VertexId x : mk) {
        marks.set(x);
        placed_by[i].set(x);
    }
    used[i] += uint32_t(mk.size());

    // The traveler now suspects the endpoints this move touched out of view
    // and resolves every suspect its window covers.
    Bits fresh(g->n);
    if (!dests.empty()) {
        if (from != t_pos && !known.test(from)) fresh.set(from);
        if (to != t_pos && !known.test(to)) fresh.set(to);
    }
    reveal(i, fresh);

    if (turn == g->k())
        enter_traveler_turn();
    else
        turn++;
}

void Session::reveal(uint32_t mover, const Bits &fresh) {
    const Bits &view = g->obs[t_pos];
    Bits resolved = fresh;
    for (const Bits &s : suspects) resolved |= s;
    resolved &= view;
    known |= resolved & marks;
    for (uint32_t j = 0; j < g->k(); j++) {
        if (j == mover) suspects[j] |= fresh;
        suspects[j] -= view;
    }
    wipe_resolved();
}

void Session::wipe_resolved() {
    // Once every mark a saboteur owns is known, nothing is left to suspect.
    for (uint32_t j = 0; j < g->k(); j++) {
        const Budget &b = g->sabs[j].budget;
        if (b.finite && (placed_by[j] & known).count() == b.m) suspects[j].clear();
    }
}

} // namespace sabgame
