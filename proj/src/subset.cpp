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

#include "subset.hpp"

#include <bit>
#include <sstream>

#include <json.hpp>

namespace sabgame {

namespace {

inline bool wtest(const uint64_t *w, uint32_t x) { return (w[x >> 6] >> (x & 63)) & 1; }
inline void wset(uint64_t *w, uint32_t x) { w[x >> 6] |= 1ull << (x & 63); }
inline void wclear(uint64_t *w, uint32_t x) { w[x >> 6] &= ~(1ull << (x & 63)); }

uint32_t used_words(uint32_t k) { return (k + 3) / 4; }
uint32_t key_width(const Game &g) { return 1 + g.k() + g.words() + used_words(g.k()); }

struct Builder {
    const Game &g;
    StatePool &pool;
    uint32_t W, k;
    bool reach, prune, record;
    uint64_t edge_count = 0;
    ArenaBuilder ab;

    std::vector<uint64_t> cur, nxt;
    std::vector<uint64_t> setup_marks;      // fold scratch: chosen start marks
    std::vector<uint32_t> setup_used, rooms, dests;
    std::vector<VertexId> im;
    std::vector<std::pair<VertexId, uint32_t>> seeds; // pending start marks, owner

    Builder(const Game &game, StatePool &p, bool prune_won, bool record_edges,
            bool fold_starts)
        : g(game), pool(p), W(game.words()), k(game.k()),
          reach(game.objective == Objective::Reachability),
          prune(prune_won && reach), record(record_edges), cur(key_width(game)),
          nxt(key_width(game)), setup_marks(W), setup_used(k), rooms(k),
          im(game.initial_marked.to_vector()) {
        if (fold_starts) {
            // Each start is already touched: its owner may mark it lazily.
            for (uint32_t j = 1; j <= k; j++)
                if (g.seed_suspect(j - 1) && g.sabs[j - 1].budget.m >= 1)
                    seeds.emplace_back(g.sabs[j - 1].start, j);
        }
    }

    uint64_t *mk(std::vector<uint64_t> &key) { return key.data() + 1 + k; }
    uint64_t *us(std::vector<uint64_t> &key) { return mk(key) + W; }
    uint32_t get_used(std::vector<uint64_t> &key, uint32_t j) {
        return uint32_t(us(key)[(j - 1) / 4] >> (16 * ((j - 1) % 4))) & 0xffff;
    }
    void add_used(std::vector<uint64_t> &key, uint32_t j, uint32_t d) {
        us(key)[(j - 1) / 4] += uint64_t(d) << (16 * ((j - 1) % 4));
    }

    uint8_t make_flags(uint32_t turn2, VertexId u, const uint64_t *m) const {
        uint8_t f = turn2 ? F_OPPONENT : 0;
        if (reach) {
            if (g.final_set.test(u)) return f | F_TARGET;
            if (prune && turn2 == 0 && !wtest(m, u)) {
                for (VertexId to : g.travel.succ(u))
                    if (g.final_set.test(to) && !wtest(m, to)) return f | F_TARGET;
            }
        } else if (turn2 == 0 && g.final_set.test(u)) {
            f |= F_TARGET;
        }
        return f;
    }

    uint32_t intern(const std::vector<uint64_t> &key, uint8_t flags) {
        auto [id, is_new] = pool.intern(key.data());
        if (is_new && record) ab.add_state(flags);
        return id;
    }
    void edge(uint32_t to) {
        edge_count++;
        if (record) ab.add_edge(to);
    }

    void build(const std::vector<VertexId> *start_marks) {
        std::fill(cur.begin(), cur.end(), 0ull);
        VertexId u0 = g.t_start;
        cur[0] = u0;
        for (uint32_t i = 1; i <= k; i++) cur[i] = g.sabs[i - 1].start;
        if (start_marks) {
            for (VertexId x : start_marks[0]) {
                if (x == u0) fail(Code::Validation, "start mark on the traveler vertex");
                if (g.final_set.test(x)) fail(Code::Validation, "start mark on a final vertex");
                if (wtest(mk(cur), x)) fail(Code::Validation, "duplicate start mark");
                wset(mk(cur), x);
                uint32_t j = 1;
                while (j <= k && get_used(cur, j) >= g.sabs[j - 1].budget.m) j++;
                if (j > k) fail(Code::Validation, "start marks exceed the total budget");
                add_used(cur, j, 1);
            }
        } else if (!im.empty() || !seeds.empty()) {
            cur[0] |= 1ull << 40; // possible start marks pending
        }
        intern(cur, make_flags(0, u0, mk(cur)));

        for (uint32_t id = 0; id < pool.size(); id++) {
            std::copy(pool.get(id), pool.get(id) + cur.size(), cur.begin());
            uint32_t turn = uint32_t(cur[0] >> 32) & 0xff;
            VertexId u = VertexId(uint32_t(cur[0]));
            bool setup = (cur[0] >> 40) & 1;
            bool won = reach && record && (ab.a.flags[id] & F_TARGET);
            if (!record) // flags not stored; recompute terminal status
                won = reach && (make_flags(turn, u, mk(cur)) & F_TARGET);
            if (!won) {
                if (turn == 0) {
                    if (!wtest(mk(cur), u)) expand_traveler(u, setup);
                } else {
                    expand_saboteur(turn, u, setup);
                }
            }
            if (record) ab.seal_state();
        }
    }

    void expand_traveler(VertexId u, bool setup) {
        for (VertexId to : g.travel.succ(u)) {
            if (wtest(mk(cur), to)) continue;
            nxt = cur;
            nxt[0] = (setup ? 1ull << 40 : 0ull) | (1ull << 32) | to;
            edge(intern(nxt, make_flags(1, to, mk(nxt))));
        }
    }

    void expand_saboteur(uint32_t i, VertexId u, bool setup) {
        VertexId vi = VertexId(cur[i]);
        dests.clear();
        g.saboteur_dests(i - 1, vi, dests);
        bool stuck = dests.empty();
        if (stuck) dests.push_back(vi);
        for (uint32_t j = 1; j <= k; j++) rooms[j - 1] = g.sabs[j - 1].budget.m - get_used(cur, j);

        for (VertexId to : dests) {
            std::fill(setup_marks.begin(), setup_marks.end(), 0ull);
            std::fill(setup_used.begin(), setup_used.end(), 0u);
            if (setup && i == 1)
                fold(0, i, u, to, stuck);
            else
                place(i, u, to, stuck);
        }
    }

    /** Chooses which possible start marks exist and who placed them. */
    void fold(size_t level, uint32_t i, VertexId u, VertexId to, bool stuck) {
        if (level == im.size() + seeds.size()) {
            place(i, u, to, stuck);
            return;
        }
        fold(level + 1, i, u, to, stuck); // never was marked
        if (level >= im.size()) {
            // A pending start mark is chargeable to its owner only.
            auto [x, j] = seeds[level - im.size()];
            if (wtest(setup_marks.data(), x) || rooms[j - 1] == 0) return;
            wset(setup_marks.data(), x);
            setup_used[j - 1]++;
            rooms[j - 1]--;
            fold(level + 1, i, u, to, stuck);
            wclear(setup_marks.data(), x);
            setup_used[j - 1]--;
            rooms[j - 1]++;
            return;
        }
        VertexId x = im[level];
        for (uint32_t j = 1; j <= k; j++) {
            if (rooms[j - 1] == 0) continue;
            wset(setup_marks.data(), x);
            setup_used[j - 1]++;
            rooms[j - 1]--;
            fold(level + 1, i, u, to, stuck);
            wclear(setup_marks.data(), x);
            setup_used[j - 1]--;
            rooms[j - 1]++;
        }
    }

    /** Enumerates the mover's own marks among the endpoints it touched. */
    void place(uint32_t i, VertexId u, VertexId to, bool stuck) {
        VertexId vi = VertexId(cur[i]);
        VertexId cand[2];
        uint32_t nc = 0;
        if (!stuck) {
            if (vi != u && !wtest(mk(cur), vi) && !wtest(setup_marks.data(), vi)) cand[nc++] = vi;
            if (to != vi && to != u && !wtest(mk(cur), to) && !wtest(setup_marks.data(), to))
                cand[nc++] = to;
        }
        for (uint32_t pick = 0; pick < (1u << nc); pick++) {
            uint32_t na = uint32_t(std::popcount(pick));
            if (na > rooms[i - 1]) continue;
            emit(i, u, to, cand, pick);
        }
    }

    void emit(uint32_t i, VertexId u, VertexId to, const VertexId *cand, uint32_t pick) {
        bool death = wtest(setup_marks.data(), u);
        uint32_t turn2 = death ? 0 : (i < k ? i + 1 : 0);
        nxt = cur;
        nxt[0] = (uint64_t(turn2) << 32) | u; // setup resolved from here on
        nxt[i] = to;
        for (uint32_t w = 0; w < W; w++) mk(nxt)[w] |= setup_marks[w];
        uint32_t na = 0;
        for (uint32_t c = 0; c < 2; c++) {
            if (pick & (1u << c)) {
                wset(mk(nxt), cand[c]);
                na++;
            }
        }
        for (uint32_t j = 1; j <= k; j++)
            add_used(nxt, j, setup_used[j - 1] + (j == i ? na : 0));
        edge(intern(nxt, make_flags(turn2, u, mk(nxt))));
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

void check_supported(const Game &g) {
    if (g.any_unbounded())
        fail(Code::UnboundedBudget, "explicit-marks construction requires finite budgets");
    if (g.obs_mode != ObsMode::Full)
        fail(Code::Unsupported, "explicit-marks construction requires full observation");
}

} // namespace

SubsetArena::SubsetArena(const Game &game, uint64_t max_states, bool prune_won,
                         const std::vector<VertexId> *start_marks, bool fold_starts)
    : g(&game), pool(key_width(game), max_states), words(game.words()) {
    check_supported(game);
    Builder b(game, pool, prune_won, true, fold_starts && !start_marks);
    b.build(start_marks);
    arena = b.ab.finish();
    pruned = prune_won && game.objective == Objective::Reachability;
}

uint64_t subset_state_count(const Game &g, uint64_t max_states) {
    check_supported(g);
    StatePool pool(key_width(g), max_states);
    Builder b(g, pool, false, false, true);
    b.build(nullptr);
    return pool.size();
}

uint32_t subset_find(const SubsetArena &sa, uint32_t turn, VertexId u,
                     const std::vector<VertexId> &v, const Bits &marks,
                     const std::vector<uint32_t> &used) {
    const Game &g = *sa.g;
    std::vector<uint64_t> key(key_width(g), 0ull);
    key[0] = (uint64_t(turn) << 32) | u;
    for (uint32_t i = 1; i <= g.k(); i++) key[i] = v[i - 1];
    std::copy(marks.words().begin(), marks.words().end(), key.begin() + 1 + g.k());
    uint64_t *us = key.data() + 1 + g.k() + g.words();
    for (uint32_t j = 1; j <= g.k(); j++)
        us[(j - 1) / 4] |= uint64_t(used[j - 1]) << (16 * ((j - 1) % 4));
    return sa.pool.find(key.data());
}

std::string SubsetArena::state_key(uint32_t id) const {
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
    out << ";M=";
    append_names(out, *g, marks(id), words);
    out << ";used=";
    for (uint32_t j = 1; j <= g->k(); j++) {
        if (j > 1) out << ',';
        out << used_of(id, j);
    }
    if (setup_of(id)) out << ";setup=1";
    return out.str();
}

std::string SubsetArena::move_json(uint32_t s, uint32_t succ) const {
    uint32_t turn = turn_of(s);
    if (turn == 0) return nlohmann::json(g->name(u_of(succ))).dump();
    nlohmann::json move;
    move["to"] = g->name(v_of(succ, turn));
    nlohmann::json names = nlohmann::json::array();
    const uint64_t *before = marks(s), *after = marks(succ);
    for (uint32_t w = 0; w < words; w++) {
        uint64_t d = after[w] & ~before[w];
        while (d) {
            names.push_back(g->name((w << 6) + uint32_t(std::countr_zero(d))));
            d &= d - 1;
        }
    }
    move["marks"] = std::move(names);
    nlohmann::json by = nlohmann::json::object();
    for (uint32_t j = 1; j <= g->k(); j++) {
        uint32_t d = used_of(succ, j) - used_of(s, j);
        if (d) by[std::to_string(j)] = d;
    }
    if (!by.empty()) move["by"] = std::move(by);
    return move.dump();
}

uint32_t SubsetArena::resolve_move(uint32_t s, const std::string &move) const {
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
    std::vector<uint64_t> want(marks(s), marks(s) + words);
    if (mv.contains("marks"))
        for (auto &nm : mv["marks"]) wset(want.data(), g->vertex(nm));
    std::vector<uint32_t> used2(g->k());
    for (uint32_t j = 1; j <= g->k(); j++) used2[j - 1] = used_of(s, j);
    if (mv.contains("by")) {
        for (auto &[js, d] : mv["by"].items()) {
            uint32_t j = uint32_t(strtoul(js.c_str(), nullptr, 10));
            if (j < 1 || j > g->k()) return NO_STATE;
            used2[j - 1] += d.get<uint32_t>();
        }
    }
    for (; it != end; ++it) {
        uint32_t t = *it;
        if (v_of(t, turn) != to) continue;
        bool match = std::equal(want.begin(), want.end(), marks(t));
        for (uint32_t j = 1; j <= g->k() && match; j++)
            match = used_of(t, j) == used2[j - 1];
        if (match) return t;
    }
    return NO_STATE;
}

Solution solve_subset(const SubsetArena &sa) {
    return sa.g->objective == Objective::Reachability ? solve_reachability(sa.arena)
                                                      : solve_repeated(sa.arena);
}

std::string subset_dot(const SubsetArena &sa, const Solution *sol) {
    std::ostringstream out;
    out << "digraph subset {\n  rankdir=LR;\n";
    for (uint32_t s = 0; s < sa.arena.n(); s++) {
        out << "  s" << s << " [label=\"" << sa.state_key(s) << "\" shape="
            << (sa.arena.opponent(s) ? "box" : "ellipse");
        if (sa.arena.target(s)) out << " peripheries=2";
        if (sol) out << " color=" << (sol->twin[s] ? "blue" : "red");
        out << "];\n";
    }
    for (uint32_t s = 0; s < sa.arena.n(); s++) {
        auto [it, end] = sa.arena.succ(s);
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
