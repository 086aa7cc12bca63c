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

#include "oracle.hpp"

#include <algorithm>
#include <map>

#include "arena.hpp"
#include "solver.hpp"

namespace sabgame {

namespace {

// One candidate world: who placed which marks, one bit mask per saboteur.
using Config = std::vector<uint64_t>;

struct BeliefState {
    uint32_t turn;
    VertexId t;
    std::vector<VertexId> b;
    std::vector<Config> worlds; // sorted, unique
};

struct BeliefGraph {
    const Game &g;
    uint64_t max_states;
    ArenaBuilder ab;
    std::map<std::vector<uint64_t>, uint32_t> ids;
    std::vector<BeliefState> states;
    uint32_t lost = NO_STATE, won = NO_STATE;
    bool reach;

    explicit BeliefGraph(const Game &game, uint64_t cap)
        : g(game), max_states(cap), reach(game.objective == Objective::Reachability) {}

    static uint64_t union_marks(const Config &c) {
        uint64_t m = 0;
        for (uint64_t w : c) m |= w;
        return m;
    }

    std::vector<uint64_t> encode(const BeliefState &s) const {
        std::vector<uint64_t> key;
        key.reserve(1 + s.b.size() + s.worlds.size() * g.k());
        key.push_back((uint64_t(s.turn) << 32) | s.t);
        for (VertexId v : s.b) key.push_back(v);
        for (const Config &c : s.worlds) key.insert(key.end(), c.begin(), c.end());
        return key;
    }

    uint32_t sink(uint32_t &slot, uint64_t tag, uint8_t flags) {
        if (slot == NO_STATE) {
            if (states.size() >= max_states) fail(Code::ArenaTooLarge, "belief graph too large");
            ids.emplace(std::vector<uint64_t>{~0ull, tag}, uint32_t(states.size()));
            states.push_back({});
            slot = ab.add_state(flags);
        }
        return slot;
    }

    uint32_t intern(BeliefState &&s) {
        std::sort(s.worlds.begin(), s.worlds.end());
        s.worlds.erase(std::unique(s.worlds.begin(), s.worlds.end()), s.worlds.end());
        auto key = encode(s);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        if (states.size() >= max_states) fail(Code::ArenaTooLarge, "belief graph too large");
        uint8_t flags = s.turn ? F_OPPONENT : 0;
        if (g.final_set.test(s.t) && (reach || s.turn == 0)) flags |= F_TARGET;
        uint32_t id = ab.add_state(flags);
        ids.emplace(std::move(key), id);
        states.push_back(std::move(s));
        return id;
    }

    void build() {
        BeliefState root;
        root.turn = 0;
        root.t = g.t_start;
        for (uint32_t i = 0; i < g.k(); i++) root.b.push_back(g.sabs[i].start);
        std::vector<VertexId> im = g.initial_marked.to_vector();
        Config empty(g.k(), 0);
        std::vector<Config> worlds{empty};
        // Every attribution of every subset of the possible start marks.
        for (VertexId x : im) {
            std::vector<Config> grown;
            for (const Config &c : worlds) {
                grown.push_back(c); // never was marked
                for (uint32_t j = 0; j < g.k(); j++) {
                    const Budget &bud = g.sabs[j].budget;
                    if (bud.finite && std::popcount(c[j]) + 1 > int(bud.m)) continue;
                    Config c2 = c;
                    c2[j] |= 1ull << x;
                    grown.push_back(std::move(c2));
                }
            }
            worlds = std::move(grown);
        }
        // Each start is already touched: its owner may have marked it.
        for (uint32_t j = 0; j < g.k(); j++) {
            if (!g.seed_suspect(j)) continue;
            VertexId x = g.sabs[j].start;
            const Budget &bud = g.sabs[j].budget;
            std::vector<Config> grown;
            for (const Config &c : worlds) {
                grown.push_back(c);
                if (union_marks(c) >> x & 1) continue; // marked already
                if (bud.finite && std::popcount(c[j]) + 1 > int(bud.m)) continue;
                Config c2 = c;
                c2[j] |= 1ull << x;
                grown.push_back(std::move(c2));
            }
            worlds = std::move(grown);
        }
        root.worlds = std::move(worlds);
        intern(std::move(root));

        for (uint32_t id = 0; id < states.size(); id++) {
            BeliefState s = states[id]; // copy: vector may grow
            if (s.b.empty()) {
                // sink
            } else if (reach && g.final_set.test(s.t)) {
                // reached target, terminal
            } else if (s.turn == 0) {
                expand_traveler(s);
            } else {
                expand_saboteur(s);
            }
            ab.seal_state();
        }
    }

    void expand_traveler(const BeliefState &s) {
        for (VertexId to : g.travel.succ(s.t)) {
            bool deadly = false;
            for (const Config &c : s.worlds)
                if (union_marks(c) >> to & 1) {
                    deadly = true;
                    break;
                }
            if (deadly) {
                ab.add_edge(sink(lost, 0, 0));
            } else if (reach && g.final_set.test(to)) {
                ab.add_edge(sink(won, 1, F_TARGET));
            } else {
                BeliefState n{1, to, s.b, s.worlds};
                ab.add_edge(intern(std::move(n)));
            }
        }
    }

    void expand_saboteur(const BeliefState &s) {
        uint32_t i = s.turn;
        VertexId vi = s.b[i - 1];
        std::vector<VertexId> dests;
        g.saboteur_dests(i - 1, vi, dests);
        bool stuck = dests.empty();
        if (stuck) dests.push_back(vi);
        uint64_t view = g.obs[s.t].words()[0];
        const Budget &bud = g.sabs[i - 1].budget;

        for (VertexId to : dests) {
            // Group the extended worlds by what the traveler would see.
            std::map<uint64_t, std::vector<Config>> split;
            for (const Config &c : s.worlds) {
                uint64_t taken = union_marks(c);
                VertexId cand[2];
                uint32_t nc = 0;
                if (!stuck) {
                    if (vi != s.t && !(taken >> vi & 1)) cand[nc++] = vi;
                    if (to != vi && to != s.t && !(taken >> to & 1)) cand[nc++] = to;
                }
                for (uint32_t pick = 0; pick < (1u << nc); pick++) {
                    int extra = std::popcount(pick);
                    if (bud.finite && std::popcount(c[i - 1]) + extra > int(bud.m)) continue;
                    Config c2 = c;
                    for (uint32_t q = 0; q < 2; q++)
                        if (pick & (1u << q)) c2[i - 1] |= 1ull << cand[q];
                    split[union_marks(c2) & view].push_back(std::move(c2));
                }
            }
            uint32_t turn2 = i < g.k() ? i + 1 : 0;
            for (auto &[obs, worlds] : split) {
                BeliefState n{turn2, s.t, s.b, std::move(worlds)};
                n.b[i - 1] = to;
                ab.add_edge(intern(std::move(n)));
            }
        }
    }
};

/** Traveler-move-counted reachability value with a horizon cutoff. */
bool horizon_reachable(const Arena &a, uint64_t horizon) {
    Transpose tr(a);
    uint32_t n = a.n();
    std::vector<uint8_t> done(n, 0);
    std::vector<uint32_t> cnt(n, 0);
    std::vector<std::vector<uint32_t>> buckets(horizon + 1);
    for (uint32_t s = 0; s < n; s++) {
        uint32_t deg = a.off[s + 1] - a.off[s];
        if (a.target(s) || (a.opponent(s) && deg == 0))
            buckets[0].push_back(s);
        else if (a.opponent(s))
            cnt[s] = deg;
    }
    for (uint64_t v = 0; v <= horizon; v++) {
        for (size_t qi = 0; qi < buckets[v].size(); qi++) {
            uint32_t s = buckets[v][qi];
            if (done[s]) continue;
            done[s] = 1;
            auto [it, end] = tr.pred(s);
            for (; it != end; ++it) {
                uint32_t p = *it;
                if (done[p] || a.target(p)) continue;
                if (!a.opponent(p)) {
                    if (v + 1 <= horizon) buckets[v + 1].push_back(p);
                } else if (--cnt[p] == 0) {
                    buckets[v].push_back(p);
                }
            }
        }
    }
    return done[a.root] != 0;
}

} // namespace

Side reference_winner(const Game &g, uint64_t horizon, uint64_t max_states) {
    if (g.n > 64) fail(Code::InvalidArg, "reference winner supports at most 64 vertices");
    if (horizon == 0) horizon = g.round_bound();
    BeliefGraph bg(g, max_states);
    bg.build();
    Arena a = bg.ab.finish();
    if (g.objective == Objective::Reachability)
        return horizon_reachable(a, horizon) ? Side::Traveler : Side::Saboteur;
    return solve_repeated(a).root_traveler_wins ? Side::Traveler : Side::Saboteur;
}

} // namespace sabgame
