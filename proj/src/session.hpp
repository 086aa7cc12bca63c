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

#ifndef SABGAME_SESSION_HPP
#define SABGAME_SESSION_HPP

#include "game.hpp"

namespace sabgame {

/**
 * Referee for one concrete play. Tracks true positions and marks, enforces
 * move legality, and evaluates the losing/winning conditions. Initial marks
 * from the scenario are placed before the first move, charged greedily to
 * saboteurs with budget room.
 */
struct Session {
    enum class State { Ongoing, TravelerWon, TravelerLost };

    const Game *g;
    uint32_t turn = 0;  // 0 = traveler, 1..k = saboteur index to move
    uint32_t round = 0; // traveler moves completed
    VertexId t_pos;
    std::vector<VertexId> b_pos;
    Bits marks;
    std::vector<uint32_t> used; // marks spent per saboteur
    uint32_t final_visits = 0;
    State state = State::Ongoing;
    std::string outcome;

    /**
     * The traveler's mark knowledge along this play: suspects[j] holds the
     * vertices saboteur j+1 touched out of view whose status is unresolved,
     * known holds every mark an observation has already revealed. Each
     * saboteur move resolves the suspects inside the current window and is
     * wiped once all of that saboteur's marks are accounted for.
     */
    std::vector<Bits> suspects;
    Bits known;
    std::vector<Bits> placed_by; // referee-side attribution of marks

    explicit Session(const Game &game);

    /** Marked vertices inside the traveler's current observation window. */
    Bits observed() const { return marks & g->obs[t_pos]; }

    /** Legal destinations for the player whose turn it is. */
    std::vector<VertexId> legal_moves() const;

    /** Throws Error(IllegalMove) on violations. */
    void traveler_move(VertexId to);

    /**
     * Move of saboteur `turn`; mark_list vertices become marked (each must
     * be the move's source or destination, unmarked, not the traveler's
     * vertex, within budget). A stuck saboteur passes with to == its
     * position and no marks.
     */
    void saboteur_move(VertexId to, const std::vector<VertexId> &mark_list);

  private:
    void enter_traveler_turn();
    void finish(State s, std::string why);
    void reveal(uint32_t mover, const Bits &fresh);
    void wipe_resolved();
};

} // namespace sabgame

#endif
