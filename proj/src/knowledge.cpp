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

#include "knowledge.hpp"

#include <bit>
#include <sstream>

#include <json.hpp>

namespace sabgame {

namespace {

using nlohmann::json;

inline bool wtest(const uint64_t *w, uint32_t x) { return (w[x >> 6] >> (x & 63)) & 1; }
inline void wset(uint64_t *w, uint32_t x) { w[x >> 6] |= 1ull << (x & 63); }
inline uint32_t wcount(const uint64_t *w, uint32_t n) {
    uint32_t c = 0;
    for (uint32_t i = 0; i < n; i++) c += uint32_t(std::popcount(w[i]));
    return c;
}

uint32_t key_width(const Game &g) { return 1 + g.k() + 2 * g.k() * g.words(); }

/** One-shot exploration context; writes pool and arena in lockstep. */
struct Builder {
    const Game &g;
    StatePool &pool;
    uint32_t W, k;
    bool reach;
    ArenaBuilder ab;

    std::vector<uint64_t> cur, nxt;         // current / successor key scratch
    std::vector<uint64_t> t_all, s_all, fresh;
    std::vector<std::vector<uint64_t>> claimed;
    std::vector<uint32_t> rooms, xs, dests;

    Builder(const Game &game, StatePool &p)
        : g(game), pool(p), W(game.words()), k(game.k()),
          reach(game.objective == Objective::Reachability), cur(key_width(game)),
          nxt(key_width(game)), t_all(W), s_all(W), fresh(W),
          claimed(k, std::vector<uint64_t>(W)), rooms(k) {}

    uint64_t *sus(std::vector<uint64_t> &key, uint32_t i) {
        return key.data() + 1 + k + size_t(i - 1) * 2 * W;
    }
    uint64_t *clm(std::vector<uint64_t> &key, uint32_t i) { return sus(key, i) + W; }

    uint8_t flags_of(uint32_t turn, VertexId u) const {
        uint8_t f = turn ? F_OPPONENT : 0;
        if (g.final_set.test(u) && (reach || turn == 0)) f |= F_TARGET;
        return f;
    }

    uint32_t intern(const std::vector<uint64_t> &key, uint8_t flags) {
        auto [id, is_new] = pool.intern(key.data());
        if (is_new) ab.add_state(flags);
        return id;
    }

    void wipe_exhausted(std::vector<uint64_t> &key) {
        for (uint32_t i = 1; i <= k; i++) {
            const Budget &b = g.sabs[i - 1].budget;
            if (b.finite && wcount(clm(key, i), W) == b.m)
                std::fill(sus(key, i), sus(key, i) + W, 0ull);
        }
    }

    void build() {
        std::fill(cur.begin(), cur.end(), 0ull);
        cur[0] = g.t_start;
        for (uint32_t i = 1; i <= k; i++) {
            cur[i] = g.sabs[i - 1].start;
            for (uint32_t w = 0; w < W; w++) sus(cur, i)[w] = g.initial_marked.words()[w];
            // The start is already touched: it may secretly carry a mark.
            if (g.seed_suspect(i - 1)) wset(sus(cur, i), VertexId(cur[i]));
        }
        wipe_exhausted(cur);
        intern(cur, flags_of(0, g.t_start));

        for (uint32_t id = 0; id < pool.size(); id++) {
            std::copy(pool.get(id), pool.get(id) + cur.size(), cur.begin());
            uint32_t turn = uint32_t(cur[0] >> 32);
            VertexId u = VertexId(cur[0]);
            for (uint32_t w = 0; w < W; w++) {
                uint64_t t = 0;
                for (uint32_t i = 1; i <= k; i++) t |= clm(cur, i)[w];
                t_all[w] = t;
            }
            // A reached target is terminal under reachability; standing on
            // a claimed mark is fatal. Both seal as sinks.
            if (reach && g.final_set.test(u)) {
            } else if (turn == 0) {
                if (!wtest(t_all.data(), u)) expand_traveler(u);
            } else {
                expand_saboteur(turn, u);
            }
            ab.seal_state();
        }
    }

    void expand_traveler(VertexId u) {
        for (VertexId to : g.travel.succ(u)) {
            if (wtest(t_all.data(), to)) continue; // claimed = known deleted
            nxt = cur;
            nxt[0] = (1ull << 32) | to;
            ab.add_edge(intern(nxt, flags_of(1, to)));
        }
    }

    void expand_saboteur(uint32_t i, VertexId u) {
        VertexId vi = VertexId(cur[i]);
        dests.clear();
        g.saboteur_dests(i - 1, vi, dests);
        bool stuck = dests.empty();
        if (stuck) dests.push_back(vi); // forced pass, reveal still fires

        for (uint32_t w = 0; w < W; w++) {
            uint64_t s = 0;
            for (uint32_t j = 1; j <= k; j++) s |= sus(cur, j)[w];
            s_all[w] = s;
        }
        const uint64_t *view = g.obs[u].words().data();

        for (VertexId to : dests) {
            std::fill(fresh.begin(), fresh.end(), 0ull);
            if (!stuck) {
                // Vertices the mover touched can now secretly carry a mark,
                // except under the traveler or where a claim already stands.
                if (vi != u && !wtest(t_all.data(), vi)) wset(fresh.data(), vi);
                if (to != u && !wtest(t_all.data(), to)) wset(fresh.data(), to);
            }
            xs.clear();
            for (uint32_t w = 0; w < W; w++) {
                uint64_t r = view[w] & (s_all[w] | fresh[w]);
                while (r) {
                    xs.push_back((w << 6) + uint32_t(std::countr_zero(r)));
                    r &= r - 1;
                }
            }
            for (uint32_t j = 1; j <= k; j++) {
                const Budget &b = g.sabs[j - 1].budget;
                rooms[j - 1] = b.finite ? b.m - wcount(clm(cur, j), W) : UINT32_MAX;
                std::fill(claimed[j - 1].begin(), claimed[j - 1].end(), 0ull);
            }
            assign(0, i, u, to);
        }
    }

    /** Resolves xs[level..] as cleared or claimed, emitting at the leaves. */
    void assign(size_t level, uint32_t i, VertexId u, VertexId to) {
        if (level == xs.size()) {
            emit(i, u, to);
            return;
        }
        uint32_t x = xs[level];
        assign(level + 1, i, u, to); // cleared
        for (uint32_t j = 1; j <= k; j++) {
            bool eligible = wtest(sus(cur, j), x) || (j == i && wtest(fresh.data(), x));
            if (!eligible || rooms[j - 1] == 0) continue;
            wset(claimed[j - 1].data(), x);
            rooms[j - 1]--;
            assign(level + 1, i, u, to);
            claimed[j - 1][x >> 6] &= ~(1ull << (x & 63));
            rooms[j - 1]++;
        }
    }

    void emit(uint32_t i, VertexId u, VertexId to) {
        bool death = false;
        for (uint32_t j = 0; j < k; j++) death |= wtest(claimed[j].data(), u);
        uint32_t turn2 = death ? 0 : (i < k ? i + 1 : 0);
        nxt = cur;
        nxt[0] = (uint64_t(turn2) << 32) | u;
        nxt[i] = to;
        const uint64_t *view = g.obs[u].words().data();
        for (uint32_t j = 1; j <= k; j++) {
            uint64_t *s2 = sus(nxt, j), *t2 = clm(nxt, j);
            for (uint32_t w = 0; w < W; w++) {
                uint64_t s = sus(cur, j)[w];
                if (j == i) s |= fresh[w];
                s2[w] = s & ~view[w]; // all in-view suspects got resolved
                t2[w] = clm(cur, j)[w] | claimed[j - 1][w];
            }
        }
        wipe_exhausted(nxt);
        ab.add_edge(intern(nxt, flags_of(turn2, u)));
    }
};

void append_names(std::ostringstream &out, const Game &g, const uint64_t *w, uint32_t W) {
    bool first = true;
    for (uint32_t i = 0; i < W; i++) {
        uint64_t word = w[i];
        while (word) {
            uint32_t x = (i << 6) + uint32_t(std::countr_zero(word));
            word &= word - 1;
            if (!first) out << ',';
            first = false;
            out << g.name(x);
        }
    }
}

} // namespace

KnowledgeArena::KnowledgeArena(const Game &game, uint64_t max_states)
    : g(&game), pool(key_width(game), max_states), words(game.words()) {
    Builder b(game, pool);
    b.build();
    arena = b.ab.finish();
}

std::string KnowledgeArena::state_key(uint32_t id) const {
    std::ostringstream out;
    uint32_t turn = turn_of(id);
    if (turn == 0)
        out << "turn=T";
    else
        out << "turn=" << turn;
    out << ";at=" << g->name(u_of(id)) << ";sab=";
    for (uint32_t i = 1; i <= g->k(); i++) {
        if (i > 1) out << ',';
        out << g->name(v_of(id, i));
    }
    for (uint32_t i = 1; i <= g->k(); i++) {
        out << ";S" << i << '=';
        append_names(out, *g, suspects(id, i), words);
        out << ";K" << i << '=';
        append_names(out, *g, claimed(id, i), words);
    }
    return out.str();
}

std::string KnowledgeArena::move_json(uint32_t s, uint32_t succ) const {
    uint32_t turn = turn_of(s);
    if (turn == 0) return nlohmann::json(g->name(u_of(succ))).dump();
    nlohmann::json move;
    move["to"] = g->name(v_of(succ, turn));
    nlohmann::json claims = nlohmann::json::object();
    for (uint32_t j = 1; j <= g->k(); j++) {
        const uint64_t *before = claimed(s, j), *after = claimed(succ, j);
        nlohmann::json names = nlohmann::json::array();
        for (uint32_t w = 0; w < words; w++) {
            uint64_t d = after[w] & ~before[w];
            while (d) {
                names.push_back(g->name((w << 6) + uint32_t(std::countr_zero(d))));
                d &= d - 1;
            }
        }
        if (!names.empty()) claims[std::to_string(j)] = std::move(names);
    }
    if (!claims.empty()) move["claims"] = std::move(claims);
    return move.dump();
}

uint32_t KnowledgeArena::resolve_move(uint32_t s, const std::string &move) const {
    nlohmann::json mv = nlohmann::json::parse(move, nullptr, false);
    if (mv.is_discarded()) return NO_STATE;
    uint32_t turn = turn_of(s);
    auto [it, end] = arena.succ(s);
    if (turn == 0) {
        if (!mv.is_string()) return NO_STATE;
        VertexId to = g->vertex(mv.get<std::string>());
        for (; it != end; ++it)
            if (u_of(*it) == to) return *it;
        return NO_STATE;
    }
    if (!mv.is_object() || !mv.contains("to")) return NO_STATE;
    VertexId to = g->vertex(mv["to"].get<std::string>());
    std::vector<uint64_t> want(size_t(g->k()) * words, 0ull);
    if (mv.contains("claims")) {
        for (auto &[js, names] : mv["claims"].items()) {
            uint32_t j = uint32_t(strtoul(js.c_str(), nullptr, 10));
            if (j < 1 || j > g->k()) return NO_STATE;
            for (auto &nm : names) wset(want.data() + size_t(j - 1) * words, g->vertex(nm));
        }
    }
    for (; it != end; ++it) {
        uint32_t t = *it;
        if (v_of(t, turn) != to) continue;
        bool match = true;
        for (uint32_t j = 1; j <= g->k() && match; j++) {
            const uint64_t *before = claimed(s, j), *after = claimed(t, j);
            for (uint32_t w = 0; w < words; w++) {
                if ((after[w] & ~before[w]) != want[size_t(j - 1) * words + w]) {
                    match = false;
                    break;
                }
            }
        }
        if (match) return t;
    }
    return NO_STATE;
}

Solution solve_knowledge(const KnowledgeArena &ka) {
    return ka.g->objective == Objective::Reachability ? solve_reachability(ka.arena)
                                                      : solve_repeated(ka.arena);
}

std::string knowledge_dot(const KnowledgeArena &ka, const Solution *sol) {
    std::ostringstream out;
    out << "digraph knowledge {\n  rankdir=LR;\n";
    for (uint32_t s = 0; s < ka.arena.n(); s++) {
        out << "  s" << s << " [label=\"" << ka.state_key(s) << "\" shape="
            << (ka.arena.opponent(s) ? "box" : "ellipse");
        if (ka.arena.target(s)) out << " peripheries=2";
        if (sol) out << " color=" << (sol->twin[s] ? "blue" : "red");
        out << "];\n";
    }
    for (uint32_t s = 0; s < ka.arena.n(); s++) {
        auto [it, end] = ka.arena.succ(s);
        for (; it != end; ++it) {
            out << "  s" << s << " -> s" << *it;
            if (sol && sol->strat[s] == *it) out << " [penwidth=2]";
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace sabgame
