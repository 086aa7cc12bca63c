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

#ifndef SABGAME_GAME_HPP
#define SABGAME_GAME_HPP

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bitset.hpp"
#include "types.hpp"

namespace sabgame {

/** One edge relation in compressed sparse row form. */
struct Csr {
    std::vector<uint32_t> off; // n+1 offsets
    std::vector<VertexId> adj; // sorted targets per source

    std::span<const VertexId> succ(VertexId u) const {
        return {adj.data() + off[u], adj.data() + off[u + 1]};
    }
    bool has(VertexId u, VertexId v) const {
        for (VertexId w : succ(u))
            if (w == v) return true;
        return false;
    }
};

struct SaboteurSpec {
    VertexId start = NO_VERTEX;
    Budget budget;
    Csr edges;
};

/**
 * A sabotage game. Rounds alternate: the traveler moves along `travel`,
 * then saboteurs 1..k each move along their own relation and may mark the
 * vertices touched by the move (never a final vertex, never the traveler's
 * vertex, within budget). The traveler loses on a marked vertex or with no
 * move; it wins by reaching F (reachability) or revisiting F forever
 * (buchi). Saboteurs never move onto final vertices; one with no legal
 * destination skips its move. Marks listed in initial_marked may be placed
 * before the play starts, chargeable to any saboteur with budget room.
 */
struct Game {
    uint32_t n = 0;
    std::vector<std::string> names;
    std::unordered_map<std::string, VertexId> index;

    Csr travel;
    std::vector<SaboteurSpec> sabs;
    VertexId t_start = NO_VERTEX;

    ObsMode obs_mode = ObsMode::Full;
    std::vector<Bits> obs; // per-vertex observation window; always contains self

    Objective objective = Objective::Reachability;
    Bits final_set;
    Bits initial_marked;

    uint32_t k() const { return uint32_t(sabs.size()); }
    uint32_t words() const { return Bits::words_for(n); }

    const std::string &name(VertexId v) const { return names[v]; }
    VertexId vertex(const std::string &label) const;

    /** Legal saboteur destinations: successors outside the final set. */
    void saboteur_dests(uint32_t i, VertexId from, std::vector<VertexId> &out) const;

    /**
     * True when saboteur i's start vertex counts as an initial suspect: the
     * start is treated as already touched, so analysis grants a pending mark
     * there unless the traveler starts on it or it is final (where marks
     * cannot exist). All winner constructions share this convention.
     */
    bool seed_suspect(uint32_t i) const {
        VertexId s = sabs[i].start;
        return s != t_start && !final_set.test(s);
    }

    /** All budgets finite? Used by the explicit-marks construction. */
    bool budgets_finite() const;
    /** Sum of finite budgets; only meaningful when budgets_finite(). */
    uint64_t total_budget() const;
    /** True when some saboteur has an unlimited budget. */
    bool any_unbounded() const;

    /** Round bound for bounded-play semantics: n^3 if k==1 else n^(k+2). */
    uint64_t round_bound() const;

    /** Complexity regime tag for reports, e.g. "(B2) (T1) PTIME". */
    std::string regime_tag() const;
};

/** Parse + validate a scenario document. Throws Error. */
Game parse_scenario(const std::string &json_text);

/** Serialize back to the scenario document shape. */
std::string serialize_scenario(const Game &g);

/** Validation entry, also used on programmatically built games. */
void validate_game(const Game &g);

/** Build a CSR from an edge list (dedupes, sorts, checks range). */
Csr build_csr(uint32_t n, std::vector<std::pair<VertexId, VertexId>> edges);

/** Complete relation over all ordered pairs u != v. */
Csr complete_csr(uint32_t n);

} // namespace sabgame

#endif
