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

#ifndef SABGAME_CLASSIC_HPP
#define SABGAME_CLASSIC_HPP

#include "game.hpp"

namespace sabgame {

/**
 * A classic edge-deletion game: the traveler walks an undirected graph one
 * edge per round, then the adversary deletes any one remaining edge. The
 * traveler wins on reaching a final vertex and loses when no edge leaves its
 * vertex. Perfect information, unlimited deletions.
 */
struct ClassicGame {
    std::vector<std::string> names;
    std::vector<std::pair<VertexId, VertexId>> edges; // unordered pairs, u < v
    VertexId start = NO_VERTEX;
    std::vector<VertexId> finals; // sorted, unique, nonempty
};

/**
 * Parse a classic game document: {"vertices": [..], "edges": [[a,b], ..],
 * "start": a, "final": [..]}. Duplicate edges collapse; self loops are
 * rejected. Throws Error (Parse/Validation).
 */
ClassicGame parse_classic(const std::string &json_text);

/**
 * Translate into a generalized scenario: every undirected edge becomes a
 * relay vertex the traveler crosses in two steps (u -> relay -> v and back),
 * and one unlimited-budget saboteur oscillates between a fresh hub and the
 * relays, marking a relay per visit to simulate edge deletion. Full
 * observation; winner is preserved.
 */
Game encode_classic(const ClassicGame &c);

/**
 * Winner under the classic rules themselves, by memoized minimax over
 * (traveler vertex, surviving edge set). Needs at most 32 edges.
 */
Side classic_winner(const ClassicGame &c);

} // namespace sabgame

#endif
