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

#ifndef SABGAME_SUBSET_HPP
#define SABGAME_SUBSET_HPP

#include <string>

#include "arena.hpp"
#include "game.hpp"
#include "solver.hpp"

namespace sabgame {

/**
 * Full-information arena over states (turn, u, v[], M, used[]): the set M
 * of placed marks is explicit and visible, so it requires full observation
 * and finite budgets. Possible start marks (initial marks plus each
 * saboteur's pending start mark) are folded into saboteur 1's first move
 * as a choice of which subset to place, attributed within budgets;
 * placing one under the traveler kills it retroactively.
 *
 * Key layout per state, in 64-bit words:
 *   [0]         setup<<40 | turn<<32 | u
 *   [1..k]      v_i
 *   [1+k..]     M (W words), then k packed 16-bit used counters
 */
struct SubsetArena {
    const Game *g = nullptr;
    Arena arena;
    StatePool pool;
    uint32_t words = 0;
    bool pruned = false;

    /**
     * prune_won: flag traveler-turn states with a one-move win as target
     * sinks without expanding them (reachability only).
     * start_marks: definite marks at the root instead of the possible-mark
     * fold; budget use is attributed first-fit.
     * fold_starts: grant each saboteur a pending mark on its start vertex.
     * The move adviser turns this off to reason about realizable play only.
     */
    SubsetArena(const Game &game, uint64_t max_states, bool prune_won,
                const std::vector<VertexId> *start_marks = nullptr,
                bool fold_starts = true);

    uint32_t turn_of(uint32_t id) const { return uint32_t(pool.get(id)[0] >> 32) & 0xff; }
    bool setup_of(uint32_t id) const { return (pool.get(id)[0] >> 40) & 1; }
    VertexId u_of(uint32_t id) const { return VertexId(uint32_t(pool.get(id)[0])); }
    VertexId v_of(uint32_t id, uint32_t i) const { return VertexId(pool.get(id)[i]); }
    const uint64_t *marks(uint32_t id) const { return pool.get(id) + 1 + g->k(); }
    uint32_t used_of(uint32_t id, uint32_t j) const {
        const uint64_t *w = marks(id) + words;
        return uint32_t(w[(j - 1) / 4] >> (16 * ((j - 1) % 4))) & 0xffff;
    }

    std::string state_key(uint32_t id) const;
    std::string move_json(uint32_t s, uint32_t succ) const;
    uint32_t resolve_move(uint32_t s, const std::string &move) const;
};

/**
 * Counts reachable states without storing edges, for scaling studies.
 * Uses the unpruned construction.
 */
uint64_t subset_state_count(const Game &g, uint64_t max_states);

/**
 * Arena state holding the given referee position (setup resolved), or
 * NO_STATE when the position was never built. v and used are 0-indexed.
 */
uint32_t subset_find(const SubsetArena &sa, uint32_t turn, VertexId u,
                     const std::vector<VertexId> &v, const Bits &marks,
                     const std::vector<uint32_t> &used);

Solution solve_subset(const SubsetArena &sa);

std::string subset_dot(const SubsetArena &sa, const Solution *sol);

} // namespace sabgame

#endif
