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

#include "sabgame.h"

#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "atm.hpp"
#include "classic.hpp"
#include "game.hpp"
#include "knowledge.hpp"
#include "oracle.hpp"
#include "qbf.hpp"
#include "session.hpp"
#include "solver.hpp"
#include "subset.hpp"
#include "types.hpp"

using nlohmann::json;
using namespace sabgame;

namespace {

constexpr uint64_t kDefaultMaxStates = 12'000'000;

thread_local std::string t_last_error;

/** Code values mirror sab_status minus SAB_OK; keep the enums in lockstep. */
sab_status to_status(Code c) { return sab_status(int(c) + 1); }

template <typename F>
sab_status guarded(F &&f) {
    try {
        f();
        return SAB_OK;
    } catch (const Error &e) {
        t_last_error = e.msg;
        return to_status(e.code);
    } catch (const std::bad_alloc &) {
        t_last_error = "out of memory";
        return SAB_ERR_ARENA_TOO_LARGE;
    } catch (const std::exception &e) {
        t_last_error = msg("internal error: ", e.what());
        return SAB_ERR_VALIDATION;
    }
}

sab_status arg_error(const char *what) {
    t_last_error = what;
    return SAB_ERR_INVALID_ARG;
}

/** Heap copy released by sab_string_free. */
char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string read_file(const char *path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Code::Io, msg("cannot open ", path));
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) fail(Code::Io, msg("cannot read ", path));
    return os.str();
}

sab_side to_side(Side s) { return s == Side::Traveler ? SAB_SIDE_TRAVELER : SAB_SIDE_SABOTEUR; }

/** Copies up to cap ids from src into buf; *out_n is the full count. */
sab_status fill_ids(const std::vector<VertexId> &src, uint32_t *buf, size_t cap, size_t *out_n) {
    if (!out_n || (cap && !buf)) return arg_error("null output buffer");
    *out_n = src.size();
    size_t take = std::min(cap, src.size());
    for (size_t i = 0; i < take; i++) buf[i] = src[i];
    return SAB_OK;
}

} // namespace

struct sab_game {
    Game g;
    std::string regime;
    explicit sab_game(Game &&game) : g(std::move(game)), regime(g.regime_tag()) {}
};

struct sab_atm {
    AtmSpec m;
};

struct sab_session {
    Game game;
    Session sess;
    explicit sab_session(const Game &g) : game(g), sess(game) {}
};

/**
 * Solve results own a private copy of the game so they stay valid after the
 * input handle is freed; the arena is kept for lazy strategy serialization.
 */
struct sab_solve_result {
    Game game;
    std::optional<KnowledgeArena> ka;
    std::optional<SubsetArena> sa;
    Solution sol;
    sab_side winner = SAB_SIDE_TRAVELER;
    uint64_t states = 0;
    uint64_t edges = 0;
    std::string dot;
    bool has_dot = false;
    std::string strategy;
    bool strategy_built = false;

    const Arena &arena() const { return ka ? ka->arena : sa->arena; }
    std::string key(uint32_t s) const { return ka ? ka->state_key(s) : sa->state_key(s); }
    std::string move(uint32_t s, uint32_t t) const {
        return ka ? ka->move_json(s, t) : sa->move_json(s, t);
    }
};

namespace {

/**
 * Serializes the winner's positional strategy restricted to the states a
 * play can reach while the winner follows it: winner states follow the
 * stored choice, the other side's states follow every edge.
 */
std::string build_strategy(const sab_solve_result &r) {
    const Arena &a = r.arena();
    bool winner_traveler = r.winner == SAB_SIDE_TRAVELER;
    json moves = json::object();
    std::vector<uint8_t> seen(a.n(), 0);
    std::vector<uint32_t> queue{a.root};
    seen[a.root] = 1;
    while (!queue.empty()) {
        uint32_t s = queue.back();
        queue.pop_back();
        if (r.game.objective == Objective::Reachability && a.target(s))
            continue; // play over
        if (a.opponent(s) != winner_traveler) { // the winner owns this state
            uint32_t t = r.sol.strat[s];
            if (t == NO_STATE) continue; // a winning region is closed under replies
            moves[r.key(s)] = json::parse(r.move(s, t));
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
        } else {
            auto [first, last] = a.succ(s);
            for (const uint32_t *it = first; it != last; ++it)
                if (!seen[*it]) {
                    seen[*it] = 1;
                    queue.push_back(*it);
                }
        }
    }
    json doc = {
        {"format", "sabgame-strategy-1"},
        {"side", winner_traveler ? "traveler" : "saboteur"},
        {"construction", r.ka ? "knowledge" : "subset"},
        {"objective", r.game.objective == Objective::Buchi ? "buchi" : "reachability"},
        {"moves", std::move(moves)},
    };
    return doc.dump(2);
}

} // namespace

/* ------------------------------ status codes ------------------------------ */

const char *sab_status_name(sab_status s) {
    switch (s) {
    case SAB_OK: return "OK";
    case SAB_ERR_PARSE: return "PARSE_ERROR";
    case SAB_ERR_VALIDATION: return "VALIDATION_ERROR";
    case SAB_ERR_ILLEGAL_MOVE: return "ILLEGAL_MOVE";
    case SAB_ERR_ARENA_TOO_LARGE: return "ARENA_TOO_LARGE";
    case SAB_ERR_UNBOUNDED_BUDGET: return "UNBOUNDED_BUDGET";
    case SAB_ERR_UNSUPPORTED: return "UNSUPPORTED";
    case SAB_ERR_STRATEGY: return "STRATEGY_ERROR";
    case SAB_ERR_SPACE_BOUND: return "SPACE_BOUND";
    case SAB_ERR_HORIZON: return "HORIZON";
    case SAB_ERR_IO: return "IO_ERROR";
    case SAB_ERR_INVALID_ARG: return "INVALID_ARG";
    }
    return "UNKNOWN";
}

const char *sab_last_error(void) { return t_last_error.c_str(); }

const char *sab_version(void) { return "1.0.0"; }

void sab_string_free(char *s) { std::free(s); }

/* ------------------------------- game model ------------------------------- */

sab_status sab_game_parse(const char *json_text, sab_game **out) {
    if (!json_text || !out) return arg_error("null argument to sab_game_parse");
    *out = nullptr;
    return guarded([&] { *out = new sab_game(parse_scenario(json_text)); });
}

sab_status sab_game_parse_file(const char *path, sab_game **out) {
    if (!path || !out) return arg_error("null argument to sab_game_parse_file");
    *out = nullptr;
    return guarded([&] { *out = new sab_game(parse_scenario(read_file(path))); });
}

sab_status sab_game_serialize(const sab_game *g, char **out_json) {
    if (!g || !out_json) return arg_error("null argument to sab_game_serialize");
    *out_json = nullptr;
    return guarded([&] { *out_json = dup_string(serialize_scenario(g->g)); });
}

void sab_game_free(sab_game *g) { delete g; }

uint32_t sab_game_vertex_count(const sab_game *g) { return g ? g->g.n : 0; }

uint32_t sab_game_saboteur_count(const sab_game *g) { return g ? g->g.k() : 0; }

sab_objective sab_game_objective(const sab_game *g) {
    return g && g->g.objective == Objective::Buchi ? SAB_OBJECTIVE_BUCHI
                                                   : SAB_OBJECTIVE_REACHABILITY;
}

sab_observation sab_game_observation(const sab_game *g) {
    if (!g) return SAB_OBS_FULL;
    switch (g->g.obs_mode) {
    case ObsMode::Full: return SAB_OBS_FULL;
    case ObsMode::None: return SAB_OBS_NONE;
    case ObsMode::Adjacent: return SAB_OBS_ADJACENT;
    case ObsMode::Map: return SAB_OBS_MAP;
    }
    return SAB_OBS_FULL;
}

uint32_t sab_game_traveler_start(const sab_game *g) { return g ? g->g.t_start : NO_VERTEX; }

uint32_t sab_game_saboteur_start(const sab_game *g, uint32_t saboteur) {
    if (!g || saboteur < 1 || saboteur > g->g.k()) return NO_VERTEX;
    return g->g.sabs[saboteur - 1].start;
}

const char *sab_game_vertex_name(const sab_game *g, uint32_t v) {
    if (!g || v >= g->g.n) return nullptr;
    return g->g.names[v].c_str();
}

sab_status sab_game_vertex_index(const sab_game *g, const char *name, uint32_t *out) {
    if (!g || !name || !out) return arg_error("null argument to sab_game_vertex_index");
    return guarded([&] { *out = g->g.vertex(name); });
}

sab_status sab_game_budget(const sab_game *g, uint32_t saboteur, int *out_finite,
                           uint32_t *out_budget) {
    if (!g || !out_finite || !out_budget) return arg_error("null argument to sab_game_budget");
    if (saboteur < 1 || saboteur > g->g.k())
        return arg_error("saboteur index out of range (indices are 1..k)");
    const Budget &b = g->g.sabs[saboteur - 1].budget;
    *out_finite = b.finite ? 1 : 0;
    *out_budget = b.finite ? b.m : 0;
    return SAB_OK;
}

const char *sab_game_regime(const sab_game *g) { return g ? g->regime.c_str() : nullptr; }

/* -------------------------------- solving --------------------------------- */

sab_status sab_solve(const sab_game *g, sab_side side, const sab_solve_options *opts,
                     sab_solve_result **out) {
    if (!g || !out) return arg_error("null argument to sab_solve");
    if (side != SAB_SIDE_TRAVELER && side != SAB_SIDE_SABOTEUR)
        return arg_error("side must be SAB_SIDE_TRAVELER or SAB_SIDE_SABOTEUR");
    *out = nullptr;
    return guarded([&] {
        uint64_t max_states = opts && opts->max_states ? opts->max_states : kDefaultMaxStates;
        auto r = std::make_unique<sab_solve_result>();
        r->game = g->g;
        if (side == SAB_SIDE_TRAVELER) {
            r->ka.emplace(r->game, max_states);
            r->sol = solve_knowledge(*r->ka);
            if (opts && opts->want_dot) {
                r->dot = knowledge_dot(*r->ka, &r->sol);
                r->has_dot = true;
            }
        } else {
            bool prune = !(opts && opts->no_win_sink);
            r->sa.emplace(r->game, max_states, prune);
            r->sol = solve_subset(*r->sa);
            if (opts && opts->want_dot) {
                r->dot = subset_dot(*r->sa, &r->sol);
                r->has_dot = true;
            }
        }
        r->winner = r->sol.root_traveler_wins ? SAB_SIDE_TRAVELER : SAB_SIDE_SABOTEUR;
        r->states = r->arena().n();
        r->edges = r->arena().edges();
        *out = r.release();
    });
}

sab_status sab_winner_with_marks(const sab_game *g, const uint32_t *marked, size_t n_marked,
                                 sab_side *out_winner) {
    if (!g || !out_winner || (n_marked && !marked))
        return arg_error("null argument to sab_winner_with_marks");
    return guarded([&] {
        std::vector<VertexId> marks;
        marks.reserve(n_marked);
        for (size_t i = 0; i < n_marked; i++) {
            if (marked[i] >= g->g.n) fail(Code::InvalidArg, msg("mark ", marked[i], " out of range"));
            marks.push_back(marked[i]);
        }
        SubsetArena sa(g->g, kDefaultMaxStates, true, &marks);
        Solution sol = solve_subset(sa);
        *out_winner = sol.root_traveler_wins ? SAB_SIDE_TRAVELER : SAB_SIDE_SABOTEUR;
    });
}

void sab_result_free(sab_solve_result *r) { delete r; }

sab_side sab_result_winner(const sab_solve_result *r) {
    return r ? r->winner : SAB_SIDE_TRAVELER;
}

uint64_t sab_result_state_count(const sab_solve_result *r) { return r ? r->states : 0; }

uint64_t sab_result_edge_count(const sab_solve_result *r) { return r ? r->edges : 0; }

const char *sab_result_strategy_json(const sab_solve_result *r) {
    if (!r) return nullptr;
    auto *mut = const_cast<sab_solve_result *>(r);
    if (!mut->strategy_built) {
        try {
            mut->strategy = build_strategy(*mut);
        } catch (const std::exception &) {
            return nullptr;
        }
        mut->strategy_built = true;
    }
    return mut->strategy.c_str();
}

const char *sab_result_dot(const sab_solve_result *r) {
    return r && r->has_dot ? r->dot.c_str() : nullptr;
}

sab_status sab_validate_strategy(const sab_game *g, const char *strategy_json) {
    if (!g || !strategy_json) return arg_error("null argument to sab_validate_strategy");
    return guarded([&] {
        json doc = json::parse(strategy_json, nullptr, false);
        if (doc.is_discarded()) fail(Code::Parse, "strategy document is not valid JSON");
        if (doc.value("format", "") != "sabgame-strategy-1")
            fail(Code::Validation, "unknown strategy document format");
        std::string side = doc.value("side", "");
        if (side != "traveler" && side != "saboteur")
            fail(Code::Validation, "strategy side must be traveler or saboteur");
        std::string construction = doc.value("construction", "");
        if (construction != "knowledge" && construction != "subset")
            fail(Code::Validation, "strategy construction must be knowledge or subset");
        std::string want_obj = g->g.objective == Objective::Buchi ? "buchi" : "reachability";
        if (doc.contains("objective") && doc["objective"] != want_obj)
            fail(Code::Validation, "strategy objective does not match the scenario");
        if (!doc.contains("moves") || !doc["moves"].is_object())
            fail(Code::Validation, "strategy document has no moves object");
        const json &moves = doc["moves"];

        std::optional<KnowledgeArena> ka;
        std::optional<SubsetArena> sa;
        if (construction == "knowledge")
            ka.emplace(g->g, kDefaultMaxStates);
        else
            sa.emplace(g->g, kDefaultMaxStates, true);
        const Arena &a = ka ? ka->arena : sa->arena;
        bool traveler_doc = side == "traveler";

        // Fill the positional strategy for every covered decision state;
        // replay reports the first reachable gap or losing play.
        std::vector<uint32_t> strat(a.n(), NO_STATE);
        for (uint32_t s = 0; s < a.n(); s++) {
            if (a.opponent(s) == traveler_doc) continue;
            auto [first, last] = a.succ(s);
            if (first == last) continue; // terminal; nothing to choose
            std::string key = ka ? ka->state_key(s) : sa->state_key(s);
            auto it = moves.find(key);
            if (it == moves.end()) continue;
            std::string mv = it->dump();
            uint32_t t = ka ? ka->resolve_move(s, mv) : sa->resolve_move(s, mv);
            if (t == NO_STATE)
                fail(Code::Strategy, msg("state \"", key, "\": move ", mv,
                                         " matches no legal successor"));
            strat[s] = t;
        }

        bool repeated = g->g.objective == Objective::Buchi;
        ReplayReport rep = traveler_doc
                               ? replay_traveler(a, repeated, strat, UINT64_MAX)
                               : replay_saboteur(a, repeated, strat);
        if (!rep.ok) fail(Code::Strategy, rep.reason);
    });
}

/* ----------------------- reference winner computation ---------------------- */

sab_status sab_reference_winner(const sab_game *g, uint64_t horizon, sab_side *out_winner) {
    if (!g || !out_winner) return arg_error("null argument to sab_reference_winner");
    return guarded([&] { *out_winner = to_side(reference_winner(g->g, horizon)); });
}

/* ------------------------------ bounded rounds ----------------------------- */

uint64_t sab_round_bound(const sab_game *g) { return g ? g->g.round_bound() : 0; }

sab_status sab_encode_qbf(const sab_game *g, uint64_t rounds, char **out_qdimacs,
                          char **out_metadata) {
    if (!g || !out_qdimacs || !out_metadata) return arg_error("null argument to sab_encode_qbf");
    *out_qdimacs = nullptr;
    *out_metadata = nullptr;
    return guarded([&] {
        uint64_t r = rounds ? rounds : g->g.round_bound();
        if (r > UINT32_MAX) fail(Code::InvalidArg, msg("round count ", r, " too large"));
        QbfEncoding enc = encode_qbf(g->g, uint32_t(r));
        *out_qdimacs = dup_string(enc.qdimacs);
        try {
            *out_metadata = dup_string(enc.metadata);
        } catch (...) {
            std::free(*out_qdimacs);
            *out_qdimacs = nullptr;
            throw;
        }
    });
}

sab_status sab_bounded_winner(const sab_game *g, uint64_t rounds, sab_side *out_winner) {
    if (!g || !out_winner) return arg_error("null argument to sab_bounded_winner");
    return guarded([&] {
        uint64_t r = rounds ? rounds : g->g.round_bound();
        if (r > UINT32_MAX) fail(Code::InvalidArg, msg("round count ", r, " too large"));
        *out_winner = to_side(bounded_regime_winner(g->g, uint32_t(r)));
    });
}

/* ------------------------- classic game translation ------------------------ */

sab_status sab_encode_classic(const char *classic_json, char **out_scenario) {
    if (!classic_json || !out_scenario) return arg_error("null argument to sab_encode_classic");
    *out_scenario = nullptr;
    return guarded([&] {
        ClassicGame c = parse_classic(classic_json);
        *out_scenario = dup_string(serialize_scenario(encode_classic(c)));
    });
}

/* ------------------------------ machine games ------------------------------ */

sab_status sab_atm_parse(const char *json_text, sab_atm **out) {
    if (!json_text || !out) return arg_error("null argument to sab_atm_parse");
    *out = nullptr;
    return guarded([&] { *out = new sab_atm{parse_atm(json_text)}; });
}

sab_status sab_atm_parse_file(const char *path, sab_atm **out) {
    if (!path || !out) return arg_error("null argument to sab_atm_parse_file");
    *out = nullptr;
    return guarded([&] { *out = new sab_atm{parse_atm(read_file(path))}; });
}

void sab_atm_free(sab_atm *m) { delete m; }

sab_status sab_atm_accepts(const sab_atm *m, const char *word, int *out) {
    if (!m || !word || !out) return arg_error("null argument to sab_atm_accepts");
    return guarded([&] { *out = atm_accepts(m->m, parse_word(word)) ? 1 : 0; });
}

sab_status sab_atm_compile(const sab_atm *m, const char *word, sab_game **out) {
    if (!m || !word || !out) return arg_error("null argument to sab_atm_compile");
    *out = nullptr;
    return guarded([&] {
        GadgetGraph gg = compile_atm(m->m, parse_word(word));
        *out = new sab_game(std::move(gg.game));
    });
}

/* ----------------------------- interactive play ---------------------------- */

sab_status sab_session_new(const sab_game *g, sab_session **out) {
    if (!g || !out) return arg_error("null argument to sab_session_new");
    *out = nullptr;
    return guarded([&] { *out = new sab_session(g->g); });
}

void sab_session_free(sab_session *s) { delete s; }

sab_play_state sab_session_state(const sab_session *s) {
    if (!s) return SAB_PLAY_ONGOING;
    switch (s->sess.state) {
    case Session::State::Ongoing: return SAB_PLAY_ONGOING;
    case Session::State::TravelerWon: return SAB_PLAY_TRAVELER_WON;
    case Session::State::TravelerLost: return SAB_PLAY_TRAVELER_LOST;
    }
    return SAB_PLAY_ONGOING;
}

const char *sab_session_outcome(const sab_session *s) { return s ? s->sess.outcome.c_str() : ""; }

uint32_t sab_session_turn(const sab_session *s) { return s ? s->sess.turn : 0; }

uint32_t sab_session_round(const sab_session *s) { return s ? s->sess.round : 0; }

uint32_t sab_session_traveler_pos(const sab_session *s) {
    return s ? s->sess.t_pos : NO_VERTEX;
}

uint32_t sab_session_saboteur_pos(const sab_session *s, uint32_t saboteur) {
    if (!s || saboteur < 1 || saboteur > s->game.k()) return NO_VERTEX;
    return s->sess.b_pos[saboteur - 1];
}

uint32_t sab_session_final_visits(const sab_session *s) { return s ? s->sess.final_visits : 0; }

sab_status sab_session_observed_marks(const sab_session *s, uint32_t *buf, size_t cap,
                                      size_t *out_n) {
    if (!s) return arg_error("null session");
    return fill_ids(s->sess.observed().to_vector(), buf, cap, out_n);
}

sab_status sab_session_marks(const sab_session *s, uint32_t *buf, size_t cap, size_t *out_n) {
    if (!s) return arg_error("null session");
    return fill_ids(s->sess.marks.to_vector(), buf, cap, out_n);
}

sab_status sab_session_legal_moves(const sab_session *s, uint32_t *buf, size_t cap,
                                   size_t *out_n) {
    if (!s) return arg_error("null session");
    return fill_ids(s->sess.legal_moves(), buf, cap, out_n);
}

sab_status sab_session_traveler_move(sab_session *s, uint32_t to) {
    if (!s) return arg_error("null session");
    return guarded([&] { s->sess.traveler_move(to); });
}

sab_status sab_session_saboteur_move(sab_session *s, uint32_t to, const uint32_t *marks,
                                     size_t n_marks) {
    if (!s || (n_marks && !marks)) return arg_error("null argument to sab_session_saboteur_move");
    return guarded([&] {
        std::vector<VertexId> list(marks, marks + n_marks);
        s->sess.saboteur_move(to, list);
    });
}

uint32_t sab_session_budget_used(const sab_session *s, uint32_t saboteur) {
    if (!s || saboteur < 1 || saboteur > s->game.k()) return 0;
    return s->sess.used[saboteur - 1];
}

sab_status sab_session_suspects(const sab_session *s, uint32_t saboteur, uint32_t *buf,
                                size_t cap, size_t *out_n) {
    if (!s) return arg_error("null session");
    if (saboteur < 1 || saboteur > s->game.k())
        return arg_error("saboteur index out of range (indices are 1..k)");
    return fill_ids(s->sess.suspects[saboteur - 1].to_vector(), buf, cap, out_n);
}

/* ------------------------------ move adviser ------------------------------- */

struct sab_pilot {
    Game game;
    sab_side side = SAB_SIDE_TRAVELER;
    std::optional<SubsetArena> sa;
    Solution sol;                                       // fresh solve
    std::unordered_map<std::string, std::string> moves; // stored document
    bool from_doc = false;
};

sab_status sab_pilot_new(const sab_game *g, sab_side side, const char *strategy_json,
                         sab_pilot **out) {
    if (!g || !out) return arg_error("null argument to sab_pilot_new");
    if (side != SAB_SIDE_TRAVELER && side != SAB_SIDE_SABOTEUR)
        return arg_error("side must be SAB_SIDE_TRAVELER or SAB_SIDE_SABOTEUR");
    *out = nullptr;
    return guarded([&] {
        if (!g->g.initial_marked.empty())
            fail(Code::Unsupported, "the move adviser does not support initial marks");
        auto p = std::make_unique<sab_pilot>();
        p->game = g->g;
        p->side = side;
        // Unpruned: the adviser must know every reachable referee position,
        // including ones a human reaches by playing badly. Start marks are
        // not folded: advised moves must be realizable under the real rules.
        p->sa.emplace(p->game, kDefaultMaxStates, false, nullptr, false);
        if (strategy_json) {
            json doc = json::parse(strategy_json, nullptr, false);
            if (doc.is_discarded()) fail(Code::Parse, "strategy document is not valid JSON");
            if (doc.value("format", "") != "sabgame-strategy-1")
                fail(Code::Validation, "unknown strategy document format");
            if (doc.value("construction", "") != "subset")
                fail(Code::Validation,
                     "the move adviser needs a strategy for the subset construction "
                     "(solve from the saboteur perspective to produce one)");
            std::string want = side == SAB_SIDE_TRAVELER ? "traveler" : "saboteur";
            if (doc.value("side", "") != want)
                fail(Code::Validation, msg("strategy document is for the ", doc.value("side", "?"),
                                           ", the adviser plays the ", want));
            for (auto &[key, mv] : doc.value("moves", json::object()).items())
                p->moves.emplace(key, mv.dump());
            p->from_doc = true;
        } else {
            p->sol = solve_subset(*p->sa);
        }
        *out = p.release();
    });
}

void sab_pilot_free(sab_pilot *p) { delete p; }

sab_status sab_pilot_move(const sab_pilot *p, const sab_session *s, uint32_t *out_to,
                          uint32_t *marks_buf, size_t cap, size_t *out_n) {
    if (!p || !s || !out_to || !out_n || (cap && !marks_buf))
        return arg_error("null argument to sab_pilot_move");
    return guarded([&] {
        const Session &sess = s->sess;
        if (sess.state != Session::State::Ongoing) fail(Code::IllegalMove, "the play is over");
        bool traveler_turn = sess.turn == 0;
        if (traveler_turn != (p->side == SAB_SIDE_TRAVELER))
            fail(Code::IllegalMove, "it is not the adviser's side's turn");
        uint32_t id = subset_find(*p->sa, sess.turn, sess.t_pos, sess.b_pos, sess.marks,
                                  sess.used);
        if (id == NO_STATE)
            fail(Code::Strategy, "the position is outside the adviser's construction");

        uint32_t succ = NO_STATE;
        if (p->from_doc) {
            auto it = p->moves.find(p->sa->state_key(id));
            if (it != p->moves.end()) {
                succ = p->sa->resolve_move(id, it->second);
                if (succ == NO_STATE)
                    fail(Code::Strategy,
                         msg("stored move ", it->second, " matches no legal successor"));
            }
        } else {
            succ = p->sol.strat[id];
        }
        if (succ == NO_STATE) { // uncovered or losing: any legal move keeps play alive
            auto [first, last] = p->sa->arena.succ(id);
            if (first == last) fail(Code::IllegalMove, "no legal move in this position");
            succ = *first;
        }

        if (traveler_turn) {
            *out_to = p->sa->u_of(succ);
            *out_n = 0;
            return;
        }
        *out_to = p->sa->v_of(succ, sess.turn);
        std::vector<VertexId> delta;
        const uint64_t *before = p->sa->marks(id), *after = p->sa->marks(succ);
        for (uint32_t w = 0; w < p->sa->words; w++) {
            uint64_t d = after[w] & ~before[w];
            while (d) {
                delta.push_back((w << 6) + uint32_t(std::countr_zero(d)));
                d &= d - 1;
            }
        }
        *out_n = delta.size();
        for (size_t i = 0; i < std::min(cap, delta.size()); i++) marks_buf[i] = delta[i];
    });
}
