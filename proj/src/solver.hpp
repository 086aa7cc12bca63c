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

#ifndef SABGAME_SOLVER_HPP
#define SABGAME_SOLVER_HPP

#include <string>
#include <vector>

#include "arena.hpp"

namespace sabgame {

/**
 * Winning regions and positional strategies of an explicit arena.
 * strat[s] is the chosen successor for the owner of s when that owner wins
 * s, NO_STATE otherwise. For reachability, rank[s] on traveler-won states
 * is the number of arena moves needed to reach a target.
 */
struct Solution {
    bool root_traveler_wins = false;
    std::vector<uint8_t> twin;
    std::vector<uint32_t> rank;
    std::vector<uint32_t> strat;
};

/**
 * Solves the arena. Reachability: traveler wins iff it can force a visit
 * to a target state; a stuck player loses. Repeated visits: traveler wins
 * iff it can force infinitely many target visits; the arena must not
 * contain stuck opponent states.
 */
Solution solve_reachability(const Arena &a);
Solution solve_repeated(const Arena &a);

/** Outcome of exhaustively replaying one side's positional strategy. */
struct ReplayReport {
    bool ok = false;
    std::string reason;
    uint64_t traveler_moves = 0; // longest traveler-move count (reachability)
};

/**
 * Replays a traveler strategy against every opponent behavior.
 * Reachability: every play must reach a target with at most move_bound
 * traveler moves. Repeated visits: every play must be infinite and every
 * cycle must pass through a target state.
 */
ReplayReport replay_traveler(const Arena &a, bool repeated,
                             const std::vector<uint32_t> &strat, uint64_t move_bound);

/**
 * Replays a saboteur strategy against every traveler behavior.
 * Reachability: no play may ever reach a target. Repeated visits: no
 * reachable cycle may pass through a target state.
 */
ReplayReport replay_saboteur(const Arena &a, bool repeated, const std::vector<uint32_t> &strat);

} // namespace sabgame

#endif
