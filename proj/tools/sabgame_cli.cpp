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
 * sabgame -- command line front end.
 *
 * Thin shell over the C library: every game decision is made behind
 * sabgame.h, the tool only moves bytes and renders text.
 *
 * Exit codes: 0 solved/ok, 2 validation or rule failure, 3 state guard or
 * timeout, 4 unusable input.
 */

#include "sabgame.h"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;

int exit_code(sab_status st) {
    switch (st) {
    case SAB_OK: return 0;
    case SAB_ERR_VALIDATION:
    case SAB_ERR_ILLEGAL_MOVE:
    case SAB_ERR_UNBOUNDED_BUDGET:
    case SAB_ERR_UNSUPPORTED:
    case SAB_ERR_STRATEGY: return 2;
    case SAB_ERR_ARENA_TOO_LARGE:
    case SAB_ERR_HORIZON: return 3;
    default: return 4;
    }
}

int die(sab_status st) {
    std::cerr << "error (" << sab_status_name(st) << "): " << sab_last_error() << "\n";
    return exit_code(st);
}

struct GameDel {
    void operator()(sab_game *g) const { sab_game_free(g); }
};
struct ResultDel {
    void operator()(sab_solve_result *r) const { sab_result_free(r); }
};
struct AtmDel {
    void operator()(sab_atm *m) const { sab_atm_free(m); }
};
struct SessionDel {
    void operator()(sab_session *s) const { sab_session_free(s); }
};
struct PilotDel {
    void operator()(sab_pilot *p) const { sab_pilot_free(p); }
};
using GamePtr = std::unique_ptr<sab_game, GameDel>;
using ResultPtr = std::unique_ptr<sab_solve_result, ResultDel>;
using AtmPtr = std::unique_ptr<sab_atm, AtmDel>;
using SessionPtr = std::unique_ptr<sab_session, SessionDel>;
using PilotPtr = std::unique_ptr<sab_pilot, PilotDel>;

bool write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return bool(out);
}

std::string read_file_or_die(const std::string &path, int &rc) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error (IO_ERROR): cannot open " << path << "\n";
        rc = 4;
        return {};
    }
    std::ostringstream os;
    os << in.rdbuf();
    rc = 0;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char *side_name(sab_side s) { return s == SAB_SIDE_TRAVELER ? "traveler" : "saboteur"; }

std::string join_names(const sab_game *g, const std::vector<uint32_t> &ids) {
    std::string out;
    for (size_t i = 0; i < ids.size(); i++) {
        if (i) out += ", ";
        const char *nm = sab_game_vertex_name(g, ids[i]);
        out += nm ? nm : "?";
    }
    return out.empty() ? "-" : out;
}

std::vector<uint32_t> fetch_ids(sab_status (*getter)(const sab_session *, uint32_t *, size_t,
                                                     size_t *),
                                const sab_session *s, uint32_t n) {
    std::vector<uint32_t> buf(n);
    size_t have = 0;
    if (getter(s, buf.data(), buf.size(), &have) != SAB_OK) have = 0;
    buf.resize(have);
    return buf;
}

/* --------------------------------- solve ---------------------------------- */

struct SolveArgs {
    std::string scenario, out, dot;
    std::string side;
    uint64_t max_vertices = 0;
    bool no_win_sink = false;
};

int run_solve(const SolveArgs &a) {
    GamePtr game;
    {
        sab_game *raw = nullptr;
        if (sab_status st = sab_game_parse_file(a.scenario.c_str(), &raw); st != SAB_OK)
            return die(st);
        game.reset(raw);
    }
    sab_side side = a.side == "traveler" ? SAB_SIDE_TRAVELER : SAB_SIDE_SABOTEUR;
    sab_solve_options opts{a.max_vertices, a.no_win_sink ? 1 : 0, a.dot.empty() ? 0 : 1};

    auto t0 = std::chrono::steady_clock::now();
    ResultPtr res;
    {
        sab_solve_result *raw = nullptr;
        if (sab_status st = sab_solve(game.get(), side, &opts, &raw); st != SAB_OK)
            return die(st);
        res.reset(raw);
    }
    double secs = seconds_since(t0);

    std::cout << "winner: " << side_name(sab_result_winner(res.get())) << "\n"
              << "arena:  " << sab_result_state_count(res.get()) << " states, "
              << sab_result_edge_count(res.get()) << " edges\n"
              << "time:   " << secs << " s\n"
              << "regime: " << sab_game_regime(game.get()) << "\n";

    if (!a.out.empty()) {
        const char *doc = sab_result_strategy_json(res.get());
        if (!doc || !write_file(a.out, doc)) {
            std::cerr << "error (IO_ERROR): cannot write " << a.out << "\n";
            return 4;
        }
        std::cout << "strategy written to " << a.out << "\n";
    }
    if (!a.dot.empty()) {
        const char *dot = sab_result_dot(res.get());
        if (!dot || !write_file(a.dot, dot)) {
            std::cerr << "error (IO_ERROR): cannot write " << a.dot << "\n";
            return 4;
        }
        std::cout << "arena rendering written to " << a.dot << "\n";
    }
    return 0;
}

/* --------------------------------- bench ---------------------------------- */

struct BenchArgs {
    std::string side;
    uint32_t min = 10, max = 80, step = 10, trials = 10, budget = 2;
    double timeout = 600.0;
    uint64_t seed = 1;
    std::string out;
};

/**
 * Random instance in the benchmark family: complete digraph for both
 * relations, uniform starts, one uniform final vertex (the saboteur start
 * avoids it, a saboteur may never sit on a final vertex).
 */
std::string random_scenario(uint32_t n, uint32_t budget, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint32_t> pick(0, n - 1);
    uint32_t t_start = pick(rng);
    uint32_t fin = pick(rng);
    uint32_t b_start = pick(rng);
    while (b_start == fin) b_start = pick(rng);

    json doc;
    auto name = [](uint32_t v) { return "v" + std::to_string(v); };
    json verts = json::array();
    for (uint32_t v = 0; v < n; v++) verts.push_back(name(v));
    doc["vertices"] = std::move(verts);
    json edges = json::array();
    for (uint32_t u = 0; u < n; u++)
        for (uint32_t v = 0; v < n; v++)
            if (u != v) edges.push_back({name(u), name(v)});
    doc["traveler_edges"] = std::move(edges);
    // Omitted saboteur edges mean the complete relation.
    doc["saboteurs"] = json::array({json{{"start", name(b_start)}, {"budget", budget}}});
    doc["traveler_start"] = name(t_start);
    doc["observation"] = "full";
    doc["objective"] = {{"type", "reachability"}, {"final", {name(fin)}}};
    return doc.dump();
}

int run_bench(const BenchArgs &a) {
    std::ostream *out = &std::cout;
    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out, std::ios::binary);
        if (!file) {
            std::cerr << "error (IO_ERROR): cannot write " << a.out << "\n";
            return 4;
        }
        out = &file;
    }
    sab_side side = a.side == "traveler" ? SAB_SIDE_TRAVELER : SAB_SIDE_SABOTEUR;

    *out << "n,trial,seed,side,budget,states,edges,millis,winner,timeout\n";
    for (uint32_t n = a.min; n <= a.max; n += a.step) {
        for (uint32_t trial = 0; trial < a.trials; trial++) {
            uint64_t seed = (a.seed * 1000003ull + n) * 1000003ull + trial;
            std::string doc = random_scenario(n, a.budget, seed);
            sab_game *graw = nullptr;
            if (sab_status st = sab_game_parse(doc.c_str(), &graw); st != SAB_OK)
                return die(st);
            GamePtr game(graw);

            auto t0 = std::chrono::steady_clock::now();
            sab_solve_result *rraw = nullptr;
            sab_status st = sab_solve(game.get(), side, nullptr, &rraw);
            double ms = seconds_since(t0) * 1000.0;
            ResultPtr res(rraw);

            uint64_t states = 0, edgecount = 0;
            std::string winner = "-";
            bool guard = st == SAB_ERR_ARENA_TOO_LARGE;
            if (st == SAB_OK) {
                states = sab_result_state_count(res.get());
                edgecount = sab_result_edge_count(res.get());
                winner = side_name(sab_result_winner(res.get()));
            } else if (!guard) {
                return die(st);
            }
            bool timeout = guard || ms > a.timeout * 1000.0;
            *out << n << ',' << trial << ',' << seed << ',' << a.side << ',' << a.budget << ','
                 << states << ',' << edgecount << ',' << uint64_t(ms) << ',' << winner << ','
                 << (timeout ? 1 : 0) << "\n";
            out->flush();
        }
    }
    return 0;
}

/* ---------------------------------- play ----------------------------------- */

struct PlayArgs {
    std::string scenario, strategy;
    std::string as;
};

void render_traveler_view(const sab_game *g, const sab_session *s) {
    uint32_t n = sab_game_vertex_count(g);
    std::cout << "\nround " << sab_session_round(s) + 1 << " - you are at "
              << sab_game_vertex_name(g, sab_session_traveler_pos(s)) << "\n";
    std::vector<uint32_t> sabs;
    for (uint32_t j = 1; j <= sab_game_saboteur_count(g); j++)
        sabs.push_back(sab_session_saboteur_pos(s, j));
    std::cout << "  saboteurs at:  " << join_names(g, sabs) << "\n";
    std::cout << "  marks in view: "
              << join_names(g, fetch_ids(sab_session_observed_marks, s, n)) << "\n";
    for (uint32_t j = 1; j <= sab_game_saboteur_count(g); j++) {
        std::vector<uint32_t> buf(n);
        size_t have = 0;
        sab_session_suspects(s, j, buf.data(), buf.size(), &have);
        buf.resize(have);
        if (!buf.empty())
            std::cout << "  suspect marks of saboteur " << j << ": " << join_names(g, buf)
                      << "\n";
    }
    std::cout << "  moves: " << join_names(g, fetch_ids(sab_session_legal_moves, s, n)) << "\n";
}

void render_saboteur_view(const sab_game *g, const sab_session *s) {
    uint32_t n = sab_game_vertex_count(g);
    uint32_t j = sab_session_turn(s);
    std::cout << "\nround " << sab_session_round(s) << " - saboteur " << j << " at "
              << sab_game_vertex_name(g, sab_session_saboteur_pos(s, j)) << "\n";
    std::cout << "  traveler at: "
              << sab_game_vertex_name(g, sab_session_traveler_pos(s)) << "\n";
    std::cout << "  marks:       " << join_names(g, fetch_ids(sab_session_marks, s, n)) << "\n";
    int finite = 0;
    uint32_t m = 0;
    sab_game_budget(g, j, &finite, &m);
    std::cout << "  budget:      " << sab_session_budget_used(s, j) << "/"
              << (finite ? std::to_string(m) : std::string("inf")) << " used\n";
    std::cout << "  moves: " << join_names(g, fetch_ids(sab_session_legal_moves, s, n)) << "\n";
}

/** Splits on spaces and commas, dropping empties. */
std::vector<std::string> tokens_of(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int run_play(const PlayArgs &a) {
    GamePtr game;
    {
        sab_game *raw = nullptr;
        if (sab_status st = sab_game_parse_file(a.scenario.c_str(), &raw); st != SAB_OK)
            return die(st);
        game.reset(raw);
    }
    bool human_traveler = a.as == "traveler";
    sab_side machine = human_traveler ? SAB_SIDE_SABOTEUR : SAB_SIDE_TRAVELER;

    std::string doc;
    if (!a.strategy.empty()) {
        int rc = 0;
        doc = read_file_or_die(a.strategy, rc);
        if (rc) return rc;
    }
    PilotPtr pilot;
    {
        sab_pilot *raw = nullptr;
        sab_status st =
            sab_pilot_new(game.get(), machine, doc.empty() ? nullptr : doc.c_str(), &raw);
        if (st != SAB_OK) return die(st);
        pilot.reset(raw);
    }
    SessionPtr sess;
    {
        sab_session *raw = nullptr;
        if (sab_status st = sab_session_new(game.get(), &raw); st != SAB_OK) return die(st);
        sess.reset(raw);
    }

    std::cout << "you play the " << a.as << "; the machine plays the "
              << side_name(machine) << ". type 'quit' to stop.\n";

    uint32_t n = sab_game_vertex_count(game.get());
    std::string line;
    while (sab_session_state(sess.get()) == SAB_PLAY_ONGOING) {
        uint32_t turn = sab_session_turn(sess.get());
        bool human_turn = (turn == 0) == human_traveler;

        if (!human_turn) {
            uint32_t to = 0;
            std::vector<uint32_t> marks(n);
            size_t nm = 0;
            sab_status st =
                sab_pilot_move(pilot.get(), sess.get(), &to, marks.data(), marks.size(), &nm);
            if (st != SAB_OK) return die(st);
            marks.resize(nm);
            if (turn == 0) {
                if (sab_status mv = sab_session_traveler_move(sess.get(), to); mv != SAB_OK)
                    return die(mv);
                std::cout << "traveler moves to " << sab_game_vertex_name(game.get(), to)
                          << "\n";
            } else {
                sab_status mv =
                    sab_session_saboteur_move(sess.get(), to, marks.data(), marks.size());
                if (mv != SAB_OK) return die(mv);
                std::cout << "saboteur " << turn << " moves to "
                          << sab_game_vertex_name(game.get(), to);
                // Mark effects are public knowledge only for a saboteur user.
                if (!human_traveler && !marks.empty())
                    std::cout << " and marks " << join_names(game.get(), marks);
                std::cout << "\n";
            }
            continue;
        }

        if (turn == 0)
            render_traveler_view(game.get(), sess.get());
        else
            render_saboteur_view(game.get(), sess.get());
        std::cout << (turn == 0 ? "move to" : "move to [marks...]") << "> " << std::flush;
        if (!std::getline(std::cin, line)) {
            std::cerr << "input ended\n";
            return 4;
        }
        std::vector<std::string> toks = tokens_of(line);
        if (toks.empty()) continue;
        if (toks[0] == "quit") return 0;

        uint32_t to = 0;
        if (sab_game_vertex_index(game.get(), toks[0].c_str(), &to) != SAB_OK) {
            std::cout << "unknown vertex '" << toks[0] << "', try again\n";
            continue;
        }
        sab_status st;
        if (turn == 0) {
            st = sab_session_traveler_move(sess.get(), to);
        } else {
            std::vector<uint32_t> marks;
            bool ok = true;
            for (size_t i = 1; i < toks.size(); i++) {
                uint32_t x = 0;
                if (sab_game_vertex_index(game.get(), toks[i].c_str(), &x) != SAB_OK) {
                    std::cout << "unknown vertex '" << toks[i] << "', try again\n";
                    ok = false;
                    break;
                }
                marks.push_back(x);
            }
            if (!ok) continue;
            st = sab_session_saboteur_move(sess.get(), to, marks.data(), marks.size());
        }
        if (st != SAB_OK) {
            std::cout << "illegal move: " << sab_last_error() << "\n";
            continue;
        }
    }

    bool won = sab_session_state(sess.get()) == SAB_PLAY_TRAVELER_WON;
    std::cout << "\n" << sab_session_outcome(sess.get()) << "\n"
              << "winner: " << (won ? "traveler" : "saboteur") << "\n";
    return 0;
}

/* -------------------------------- encode-qbf ------------------------------- */

struct QbfArgs {
    std::string scenario, out, meta;
    uint64_t bound = 0;
};

int run_encode_qbf(const QbfArgs &a) {
    GamePtr game;
    {
        sab_game *raw = nullptr;
        if (sab_status st = sab_game_parse_file(a.scenario.c_str(), &raw); st != SAB_OK)
            return die(st);
        game.reset(raw);
    }
    std::string stem = std::filesystem::path(a.scenario).stem().string();
    std::string out = a.out.empty() ? stem + ".qdimacs" : a.out;
    std::string meta = a.meta.empty() ? stem + ".meta.json" : a.meta;

    char *qdimacs = nullptr, *metadata = nullptr;
    if (sab_status st = sab_encode_qbf(game.get(), a.bound, &qdimacs, &metadata); st != SAB_OK)
        return die(st);
    std::unique_ptr<char, void (*)(char *)> q(qdimacs, sab_string_free);
    std::unique_ptr<char, void (*)(char *)> m(metadata, sab_string_free);

    if (!write_file(out, q.get()) || !write_file(meta, m.get())) {
        std::cerr << "error (IO_ERROR): cannot write outputs\n";
        return 4;
    }
    // Header "p cnf <vars> <clauses>" sits on the first line.
    std::istringstream head(q.get());
    std::string p, cnf;
    uint64_t vars = 0, clauses = 0;
    head >> p >> cnf >> vars >> clauses;
    uint64_t bound = a.bound ? a.bound : sab_round_bound(game.get());
    std::cout << "wrote " << out << " (" << vars << " variables, " << clauses
              << " clauses, bound " << bound << ")\n"
              << "wrote " << meta << "\n";
    return 0;
}

/* -------------------------------- compile-atm ------------------------------ */

struct AtmArgs {
    std::string machine, input, out;
    bool solve = false, oracle = false;
    uint64_t max_vertices = 0;
};

int run_compile_atm(const AtmArgs &a) {
    AtmPtr atm;
    {
        sab_atm *raw = nullptr;
        if (sab_status st = sab_atm_parse_file(a.machine.c_str(), &raw); st != SAB_OK)
            return die(st);
        atm.reset(raw);
    }
    if (a.oracle) {
        int acc = 0;
        if (sab_status st = sab_atm_accepts(atm.get(), a.input.c_str(), &acc); st != SAB_OK)
            return die(st);
        std::cout << "machine verdict: " << (acc ? "ACCEPT" : "REJECT") << "\n";
    }
    GamePtr game;
    {
        sab_game *raw = nullptr;
        if (sab_status st = sab_atm_compile(atm.get(), a.input.c_str(), &raw); st != SAB_OK)
            return die(st);
        game.reset(raw);
    }
    std::cout << "compiled game: " << sab_game_vertex_count(game.get()) << " vertices\n";
    if (!a.out.empty()) {
        char *doc = nullptr;
        if (sab_status st = sab_game_serialize(game.get(), &doc); st != SAB_OK) return die(st);
        std::unique_ptr<char, void (*)(char *)> d(doc, sab_string_free);
        if (!write_file(a.out, d.get())) {
            std::cerr << "error (IO_ERROR): cannot write " << a.out << "\n";
            return 4;
        }
        std::cout << "scenario written to " << a.out << "\n";
    }
    if (a.solve) {
        sab_solve_options opts{a.max_vertices, 0, 0};
        auto t0 = std::chrono::steady_clock::now();
        sab_solve_result *raw = nullptr;
        if (sab_status st = sab_solve(game.get(), SAB_SIDE_TRAVELER, &opts, &raw);
            st != SAB_OK)
            return die(st);
        ResultPtr res(raw);
        double secs = seconds_since(t0);
        bool accept = sab_result_winner(res.get()) == SAB_SIDE_TRAVELER;
        std::cout << (accept ? "ACCEPT (traveler wins)" : "REJECT (saboteur wins)") << "\n"
                  << "arena:  " << sab_result_state_count(res.get()) << " states, "
                  << sab_result_edge_count(res.get()) << " edges\n"
                  << "time:   " << secs << " s\n";
    }
    return 0;
}

/* --------------------------------- validate -------------------------------- */

struct ValidateArgs {
    std::string scenario, strategy;
};

int run_validate(const ValidateArgs &a) {
    GamePtr game;
    {
        sab_game *raw = nullptr;
        if (sab_status st = sab_game_parse_file(a.scenario.c_str(), &raw); st != SAB_OK)
            return die(st);
        game.reset(raw);
    }
    int rc = 0;
    std::string doc = read_file_or_die(a.strategy, rc);
    if (rc) return rc;
    if (sab_status st = sab_validate_strategy(game.get(), doc.c_str()); st != SAB_OK)
        return die(st);
    std::cout << "strategy valid\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"sabotage game solver"};
    app.set_version_flag("--version", sab_version());
    app.require_subcommand(1);

    SolveArgs sargs;
    CLI::App *solve = app.add_subcommand("solve", "solve a scenario from one side");
    solve->add_option("--scenario", sargs.scenario, "scenario document")
        ->required()
        ->check(CLI::ExistingFile);
    solve->add_option("--side", sargs.side, "perspective to solve")
        ->required()
        ->check(CLI::IsMember({"traveler", "saboteur"}));
    solve->add_option("--out", sargs.out, "write the winner's strategy here");
    solve->add_option("--dot", sargs.dot, "write a DOT rendering of the arena");
    solve->add_option("--max-vertices", sargs.max_vertices,
                      "abort past this many arena states (0 = default guard)");
    solve->add_flag("--no-win-sink", sargs.no_win_sink,
                    "saboteur side: expand positions already decided by a one step win");

    BenchArgs bargs;
    CLI::App *bench = app.add_subcommand("bench", "timing table over random complete games");
    bench->add_option("--side", bargs.side, "perspective to solve")
        ->required()
        ->check(CLI::IsMember({"traveler", "saboteur"}));
    bench->add_option("--min", bargs.min, "smallest vertex count")->capture_default_str();
    bench->add_option("--max", bargs.max, "largest vertex count")->capture_default_str();
    bench->add_option("--step", bargs.step, "vertex count increment")->capture_default_str();
    bench->add_option("--trials", bargs.trials, "instances per size")->capture_default_str();
    bench->add_option("--budget", bargs.budget, "saboteur budget")->capture_default_str();
    bench->add_option("--timeout", bargs.timeout, "per instance seconds before the timeout flag")
        ->capture_default_str();
    bench->add_option("--seed", bargs.seed, "base seed; rows record derived seeds")
        ->capture_default_str();
    bench->add_option("--out", bargs.out, "CSV path (default stdout)");

    PlayArgs pargs;
    CLI::App *play = app.add_subcommand("play", "play one side against the machine");
    play->add_option("--scenario", pargs.scenario, "scenario document")
        ->required()
        ->check(CLI::ExistingFile);
    play->add_option("--as", pargs.as, "side you play")
        ->required()
        ->check(CLI::IsMember({"traveler", "saboteur"}));
    play->add_option("--strategy", pargs.strategy, "stored strategy for the machine side")
        ->check(CLI::ExistingFile);

    QbfArgs qargs;
    CLI::App *qbf = app.add_subcommand("encode-qbf", "bounded play condition as QDIMACS");
    qbf->add_option("--scenario", qargs.scenario, "scenario document")
        ->required()
        ->check(CLI::ExistingFile);
    qbf->add_option("--bound", qargs.bound, "round bound (0 = n^3 family default)");
    qbf->add_option("--out", qargs.out, "QDIMACS path (default <scenario>.qdimacs)");
    qbf->add_option("--meta", qargs.meta, "variable map path (default <scenario>.meta.json)");

    AtmArgs aargs;
    CLI::App *atm = app.add_subcommand("compile-atm", "alternating machine to sabotage game");
    atm->add_option("--machine", aargs.machine, "machine document")
        ->required()
        ->check(CLI::ExistingFile);
    atm->add_option("--input", aargs.input, "input word over letters T and B")->required();
    atm->add_option("--out", aargs.out, "write the compiled scenario here");
    atm->add_flag("--solve", aargs.solve, "solve the compiled game and print the verdict");
    atm->add_flag("--oracle", aargs.oracle, "also print the machine's own verdict");
    atm->add_option("--max-vertices", aargs.max_vertices,
                    "abort past this many arena states (0 = default guard)");

    ValidateArgs vargs;
    CLI::App *validate = app.add_subcommand("validate", "check a strategy document");
    validate->add_option("--scenario", vargs.scenario, "scenario document")
        ->required()
        ->check(CLI::ExistingFile);
    validate->add_option("--strategy", vargs.strategy, "strategy document")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 4;
    }

    if (solve->parsed()) return run_solve(sargs);
    if (bench->parsed()) return run_bench(bargs);
    if (play->parsed()) return run_play(pargs);
    if (qbf->parsed()) return run_encode_qbf(qargs);
    if (atm->parsed()) return run_compile_atm(aargs);
    if (validate->parsed()) return run_validate(vargs);
    return 4;
}
