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

/**
 * sabgame.h -- C interface to the sabotage game solver.
 *
 * A sabotage game is played on a directed graph between one traveler and a
 * list of saboteurs. Each round the traveler moves first along a traveler
 * edge, then every saboteur in list order moves along its own edge relation
 * and may mark (disable) vertices it touches, within its budget. The
 * traveler loses by standing on or entering a marked vertex and wins by
 * reaching (or, for the repeated objective, revisiting forever) a final
 * vertex. What the traveler learns about marks each round is controlled by
 * a per-vertex observation window.
 *
 * All functions return sab_status; SAB_OK is zero. On failure,
 * sab_last_error() returns a human readable message for the calling thread.
 * Objects are created behind opaque handles and released with the matching
 * _free function. Strings returned through char** are heap allocated and
 * must be released with sab_string_free. Saboteurs are numbered 1..k
 * everywhere an index is taken, matching the turn order.
 */

#ifndef SABGAME_H
#define SABGAME_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* ------------------------------ status codes ------------------------------ */

typedef enum sab_status {
    SAB_OK = 0,
    SAB_ERR_PARSE = 1,          /* malformed input file                        */
    SAB_ERR_VALIDATION = 2,     /* well formed but violates game constraints   */
    SAB_ERR_ILLEGAL_MOVE = 3,   /* move not permitted in the current position  */
    SAB_ERR_ARENA_TOO_LARGE = 4,/* state guard tripped during construction     */
    SAB_ERR_UNBOUNDED_BUDGET = 5,/* finite budget required for this operation  */
    SAB_ERR_UNSUPPORTED = 6,    /* semantics outside this operation's regime   */
    SAB_ERR_STRATEGY = 7,       /* strategy file incomplete or not winning     */
    SAB_ERR_SPACE_BOUND = 8,    /* machine input exceeds its space bound       */
    SAB_ERR_HORIZON = 9,        /* bounded play ran past the round horizon     */
    SAB_ERR_IO = 10,            /* file system failure                         */
    SAB_ERR_INVALID_ARG = 11    /* null handle or out of range argument        */
} sab_status;

/** Stable identifier string for a status code, e.g. "VALIDATION_ERROR". */
const char *sab_status_name(sab_status s);

/** Message describing the most recent failure on this thread. Never NULL. */
const char *sab_last_error(void);

/** Library version as "major.minor.patch". */
const char *sab_version(void);

/** Release a string allocated by this library. NULL is ignored. */
void sab_string_free(char *s);

/* ------------------------------- game model ------------------------------- */

typedef struct sab_game sab_game;

typedef enum sab_side {
    SAB_SIDE_TRAVELER = 0,
    SAB_SIDE_SABOTEUR = 1
} sab_side;

typedef enum sab_objective {
    SAB_OBJECTIVE_REACHABILITY = 0,
    SAB_OBJECTIVE_BUCHI = 1
} sab_objective;

typedef enum sab_observation {
    SAB_OBS_FULL = 0,     /* marks on all vertices are visible            */
    SAB_OBS_NONE = 1,     /* only the occupied vertex is visible          */
    SAB_OBS_ADJACENT = 2, /* occupied vertex plus traveler out-neighbors  */
    SAB_OBS_MAP = 3       /* explicit per-vertex windows from the file    */
} sab_observation;

/**
 * Parse and validate a scenario document (JSON text). On success *out owns
 * the game. Fails with SAB_ERR_PARSE or SAB_ERR_VALIDATION.
 */
sab_status sab_game_parse(const char *json_text, sab_game **out);

/** Like sab_game_parse, reading the document from a file. */
sab_status sab_game_parse_file(const char *path, sab_game **out);

/** Serialize the game back to a scenario document. */
sab_status sab_game_serialize(const sab_game *g, char **out_json);

void sab_game_free(sab_game *g);

uint32_t sab_game_vertex_count(const sab_game *g);
uint32_t sab_game_saboteur_count(const sab_game *g);
sab_objective sab_game_objective(const sab_game *g);
sab_observation sab_game_observation(const sab_game *g);
uint32_t sab_game_traveler_start(const sab_game *g);
uint32_t sab_game_saboteur_start(const sab_game *g, uint32_t saboteur);

/** Vertex label; pointer owned by the game. NULL if out of range. */
const char *sab_game_vertex_name(const sab_game *g, uint32_t v);

/** Find a vertex by label. */
sab_status sab_game_vertex_index(const sab_game *g, const char *name,
                                 uint32_t *out);

/**
 * Budget of one saboteur. *out_finite is 1 for a finite budget with the
 * count in *out_budget, otherwise 0 (unlimited) and *out_budget is 0.
 */
sab_status sab_game_budget(const sab_game *g, uint32_t saboteur,
                           int *out_finite, uint32_t *out_budget);

/**
 * Complexity regime tag for reports, e.g. "(B2) (T1) PTIME". Owned by the
 * game.
 */
const char *sab_game_regime(const sab_game *g);

/* -------------------------------- solving --------------------------------- */

typedef struct sab_solve_result sab_solve_result;

typedef struct sab_solve_options {
    /** Abort with SAB_ERR_ARENA_TOO_LARGE past this many states. 0 = default. */
    uint64_t max_states;
    /**
     * Saboteur side only: keep expanding positions that are already decided
     * by a one step traveler win. Slower; used to measure the construction.
     */
    int no_win_sink;
    /** Also produce a DOT rendering of the solved arena (memory heavy). */
    int want_dot;
} sab_solve_options;

/**
 * Solve the game from one side's perspective.
 *
 * SAB_SIDE_TRAVELER builds the traveler's knowledge arena for the scenario's
 * observation mode and objective. SAB_SIDE_SABOTEUR builds the full
 * information construction with explicit mark sets; it requires every budget
 * to be finite (SAB_ERR_UNBOUNDED_BUDGET otherwise) and full observation
 * (SAB_ERR_UNSUPPORTED otherwise).
 *
 * opts may be NULL for defaults.
 */
sab_status sab_solve(const sab_game *g, sab_side side,
                     const sab_solve_options *opts, sab_solve_result **out);

/**
 * Winner of the saboteur side construction when the given vertices are
 * already marked at the start (they must avoid the traveler start and the
 * final set). Budgets must be finite.
 */
sab_status sab_winner_with_marks(const sab_game *g, const uint32_t *marked,
                                 size_t n_marked, sab_side *out_winner);

void sab_result_free(sab_solve_result *r);

sab_side sab_result_winner(const sab_solve_result *r);
uint64_t sab_result_state_count(const sab_solve_result *r);
uint64_t sab_result_edge_count(const sab_solve_result *r);

/** Strategy for the winning side, serialized; owned by the result. */
const char *sab_result_strategy_json(const sab_solve_result *r);

/** DOT text if requested in options, else NULL. Owned by the result. */
const char *sab_result_dot(const sab_solve_result *r);

/**
 * Check a strategy document against the game: every state the strategy can
 * reach while following it must be covered, and every followed play must
 * achieve the objective. Fails with SAB_ERR_STRATEGY (see sab_last_error
 * for the counterexample) or SAB_ERR_VALIDATION on side/scenario mismatch.
 */
sab_status sab_validate_strategy(const sab_game *g, const char *strategy_json);

/* ----------------------- reference winner computation ---------------------- */

/**
 * Winner by exhaustive search over the traveler's information sets, without
 * the knowledge arena construction. Exponential; intended for small games
 * and for cross checking. horizon limits the number of traveler moves for
 * the reachability objective (0 = n^3); a reachability game that cannot be
 * won within the horizon counts as a saboteur win.
 */
sab_status sab_reference_winner(const sab_game *g, uint64_t horizon,
                                sab_side *out_winner);

/* ------------------------------ bounded rounds ----------------------------- */

/**
 * Default round bound for the bounded play encoding: n^3 for one saboteur,
 * n^(k+2) for k saboteurs.
 */
uint64_t sab_round_bound(const sab_game *g);

/**
 * Encode the bounded play condition as a quantified boolean formula in
 * QDIMACS. Supported regime: a single saboteur with unlimited budget and a
 * reachability objective (SAB_ERR_UNSUPPORTED otherwise). rounds = 0 uses
 * sab_round_bound. out_metadata receives a JSON document mapping formula
 * variables to (round, bit) positions or auxiliary roles.
 */
sab_status sab_encode_qbf(const sab_game *g, uint64_t rounds,
                          char **out_qdimacs, char **out_metadata);

/**
 * Winner of the bounded play semantics the formula encodes (the traveler
 * must reach the final vertex within the given rounds; a saboteur arriving
 * on the traveler's vertex counts as a capture). Same regime restrictions
 * as sab_encode_qbf.
 */
sab_status sab_bounded_winner(const sab_game *g, uint64_t rounds,
                              sab_side *out_winner);

/* ------------------------- classic game translation ------------------------ */

/**
 * Translate a classic edge-deletion game (undirected graph, one deletion per
 * round, perfect information) into a scenario document for this engine. The
 * input document has fields: vertices, edges (undirected label pairs),
 * start, final (list). Each undirected edge becomes a relay vertex the
 * traveler crosses in two steps; a single unlimited saboteur oscillates
 * through a hub vertex and disables relays.
 */
sab_status sab_encode_classic(const char *classic_json, char **out_scenario);

/* ------------------------------ machine games ------------------------------ */

typedef struct sab_atm sab_atm;

/**
 * Parse an alternating machine document: states, existential (list),
 * transitions ({from, read, to, write, move}), initial, accept, reject,
 * space_bound (polynomial coefficients, constant term first).
 * Tape alphabet is binary; letters are written T and B.
 */
sab_status sab_atm_parse(const char *json_text, sab_atm **out);
sab_status sab_atm_parse_file(const char *path, sab_atm **out);
void sab_atm_free(sab_atm *m);

/**
 * Bounded-space acceptance of word (letters T/B). Head moves outside the
 * tape reject that branch. Fails with SAB_ERR_SPACE_BOUND if the word is
 * longer than its space bound allows.
 */
sab_status sab_atm_accepts(const sab_atm *m, const char *word, int *out);

/**
 * Compile the machine and input word into a sabotage game whose traveler
 * wins exactly when the machine accepts the word. The compiled game uses
 * one saboteur with budget 1 and the adjacent observation window.
 */
sab_status sab_atm_compile(const sab_atm *m, const char *word, sab_game **out);

/* ----------------------------- interactive play ---------------------------- */

typedef struct sab_session sab_session;

typedef enum sab_play_state {
    SAB_PLAY_ONGOING = 0,
    SAB_PLAY_TRAVELER_WON = 1,
    SAB_PLAY_TRAVELER_LOST = 2
} sab_play_state;

/** Start a play of the game. Marks from the scenario's initial set apply. */
sab_status sab_session_new(const sab_game *g, sab_session **out);
void sab_session_free(sab_session *s);

sab_play_state sab_session_state(const sab_session *s);

/** Explanation of how the play ended; empty string while ongoing. */
const char *sab_session_outcome(const sab_session *s);

/** 0 = traveler to move, 1..k = saboteur index to move next. */
uint32_t sab_session_turn(const sab_session *s);
uint32_t sab_session_round(const sab_session *s);
uint32_t sab_session_traveler_pos(const sab_session *s);
uint32_t sab_session_saboteur_pos(const sab_session *s, uint32_t saboteur);

/** Number of final-set visits so far (repeated objective progress). */
uint32_t sab_session_final_visits(const sab_session *s);

/**
 * Marked vertices currently visible to the traveler (its observation window
 * applied to the true mark set). Writes up to cap vertices.
 */
sab_status sab_session_observed_marks(const sab_session *s, uint32_t *buf,
                                      size_t cap, size_t *out_n);

/** All marked vertices (referee view). */
sab_status sab_session_marks(const sab_session *s, uint32_t *buf, size_t cap,
                             size_t *out_n);

/** Legal destinations for the player to move. */
sab_status sab_session_legal_moves(const sab_session *s, uint32_t *buf,
                                   size_t cap, size_t *out_n);

/** Traveler move. Entering a marked vertex is legal and loses. */
sab_status sab_session_traveler_move(sab_session *s, uint32_t to);

/**
 * Move of the saboteur whose turn it is; marks lists vertices to disable
 * during this move (each must be the source or destination vertex, not the
 * traveler's vertex, not final, within budget). A saboteur with no legal
 * destination passes by giving to = its current vertex only when stuck.
 */
sab_status sab_session_saboteur_move(sab_session *s, uint32_t to,
                                     const uint32_t *marks, size_t n_marks);

/** Marks this saboteur has spent so far (including initial marks). */
uint32_t sab_session_budget_used(const sab_session *s, uint32_t saboteur);

/**
 * Vertices the traveler must suspect this saboteur may have marked: touched
 * out of the observation window and not yet resolved. Empty once all of the
 * saboteur's marks are accounted for.
 */
sab_status sab_session_suspects(const sab_session *s, uint32_t saboteur,
                                uint32_t *buf, size_t cap, size_t *out_n);

/* ------------------------------ move adviser ------------------------------- */

typedef struct sab_pilot sab_pilot;

/**
 * Machine player for one side of an interactive play. Positions are looked
 * up in the full information construction by referee state, so the scenario
 * needs full observation, finite budgets, and no initial marks. When
 * strategy_json is NULL the game is solved on creation; otherwise the
 * document must be a "subset" construction strategy for the same side.
 * Positions the strategy leaves open fall back to the first legal move.
 */
sab_status sab_pilot_new(const sab_game *g, sab_side side,
                         const char *strategy_json, sab_pilot **out);
void sab_pilot_free(sab_pilot *p);

/**
 * Move for the pilot's side in the session's current position (it must be
 * that side's turn). Traveler turns fill *out_to only (*out_n = 0); saboteur
 * turns also write up to cap vertices to disable into marks_buf.
 */
sab_status sab_pilot_move(const sab_pilot *p, const sab_session *s,
                          uint32_t *out_to, uint32_t *marks_buf, size_t cap,
                          size_t *out_n);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SABGAME_H */
