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

#ifndef SABGAME_KNOWLEDGE_HPP
#define SABGAME_KNOWLEDGE_HPP

#include <string>

#include "arena.hpp"
#include "game.hpp"
#include "solver.hpp"

namespace sabgame {

/**
 * Knowledge arena over states (turn, u, v[], S[], T[]): traveler vertex u,
 * true saboteur positions v, per-saboteur suspected mark sets S and claimed
 * (revealed) mark sets T. The traveler moves along unclaimed travel edges;
 * a saboteur move resolves every in-view suspect as either cleared or
 * claimed by an eligible saboteur with budget room, and vertices the
 * saboteur touched out of view become suspects. A claim on the traveler's
 * own vertex kills it; an exhausted budget wipes the suspicion set.
 *
 * Key layout per state, in 64-bit words:
 *   [0]          turn<<32 | u       turn 0 = traveler, i = saboteur i
 *   [1..k]       v_i
 *   then per i:  S_i (W words), T_i (W words)
 */
struct KnowledgeArena {
    const Game *g = nullptr;
    Arena arena;
    StatePool pool;
    uint32_t words = 0; // W, bitset words per vertex set

    KnowledgeArena(const Game &game, uint64_t max_states);

    uint32_t turn_of(uint32_t id) const { return uint32_t(pool.get(id)[0] >> 32); }
    VertexId u_of(uint32_t id) const { return VertexId(pool.get(id)[0]); }
    VertexId v_of(uint32_t id, uint32_t i) const { return VertexId(pool.get(id)[i]); }
    const uint64_t *suspects(uint32_t id, uint32_t i) const {
        return pool.get(id) + 1 + g->k() + size_t(i - 1) * 2 * words;
    }
    const uint64_t *claimed(uint32_t id, uint32_t i) const { return suspects(id, i) + words; }

    /** Canonical text key, e.g. "turn=T;at=a;sab=x;S1=b,c;K1=". */
    std::string state_key(uint32_t id) const;

    /** Move taken along edge s->succ, as strategy JSON (see state_key). */
    std::string move_json(uint32_t s, uint32_t succ) const;

    /**
     * Resolves a move produced by move_json back to a successor of s.
     * Returns NO_STATE when no successor matches.
     */
    uint32_t resolve_move(uint32_t s, const std::string &move) const;
};

/** Builds and solves in one step; picks the algorithm by objective. */
Solution solve_knowledge(const KnowledgeArena &ka);

/** Graphviz rendering with winning regions when sol is given. */
std::string knowledge_dot(const KnowledgeArena &ka, const Solution *sol);

} // namespace sabgame

#endif
