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

#ifndef SABGAME_QBF_HPP
#define SABGAME_QBF_HPP

#include <string>

#include "game.hpp"

namespace sabgame {

/**
 * Bounded-round formula regime for one saboteur with unlimited budget:
 * both pieces alternate single moves, every vertex the saboteur has
 * visited (including its start) is deadly for the traveler to stand on,
 * the saboteur may never enter the final vertex, and an illegally stuck
 * saboteur forfeits. The traveler wins iff it can stand on the final
 * vertex within the given number of rounds. Several final vertices are
 * funneled through one added super-final vertex (costing one extra round
 * in the default bound).
 */
struct QbfEncoding {
    std::string qdimacs;
    std::string metadata; // JSON description of every variable
    uint32_t vars = 0;
    uint64_t clauses = 0;
    uint32_t rounds = 0;
};

/** rounds == 0 picks the game's move bound (plus one with a super-final). */
QbfEncoding encode_qbf(const Game &g, uint32_t rounds);

/** Game-tree evaluation of the same regime, memoized; rounds as above. */
Side bounded_regime_winner(const Game &g, uint32_t rounds);

/** Decides an arbitrary closed QDIMACS instance by quantifier expansion. */
bool qbf_expansion_eval(const std::string &qdimacs);

} // namespace sabgame

#endif
