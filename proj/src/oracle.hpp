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

#ifndef SABGAME_ORACLE_HPP
#define SABGAME_ORACLE_HPP

#include "game.hpp"

namespace sabgame {

/**
 * Reference winner computed directly from the model: a belief graph over
 * (turn, traveler vertex, saboteur positions, candidate mark placements),
 * where a saboteur move extends every candidate world with every legal
 * marking and the resulting beliefs split on what the traveler observes.
 * Entering a vertex marked in any candidate world is fatal.
 *
 * Deliberately independent of the arena constructions, built for
 * cross-checking them on small inputs (at most 64 vertices). Reachability
 * is decided with a horizon in traveler moves (0 picks the n^3-style
 * round bound); needing more moves counts as a saboteur win.
 */
Side reference_winner(const Game &g, uint64_t horizon = 0, uint64_t max_states = 4000000);

} // namespace sabgame

#endif
