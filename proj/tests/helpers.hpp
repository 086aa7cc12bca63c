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

#ifndef SABGAME_TESTS_HELPERS_HPP
#define SABGAME_TESTS_HELPERS_HPP

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../src/game.hpp"

namespace sabgame::testing {

inline std::string scenario_path(const std::string &name) {
    return std::string(SABGAME_SCENARIO_DIR) + "/" + name;
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Code::Io, msg("cannot open '", path, "'"));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline double now_ms() {
    using namespace std::chrono;
    return double(duration_cast<microseconds>(steady_clock::now().time_since_epoch()).count()) /
           1000.0;
}

/** Fills names v0..v{n-1}, the index, and the observation table. */
inline void finish_game(Game &g, ObsMode mode) {
    if (g.names.empty()) {
        for (uint32_t v = 0; v < g.n; v++) g.names.push_back("v" + std::to_string(v));
    }
    g.index.clear();
    for (uint32_t v = 0; v < g.n; v++) g.index[g.names[v]] = v;
    g.obs_mode = mode;
    g.obs.assign(g.n, Bits(g.n));
    for (uint32_t v = 0; v < g.n; v++) {
        switch (mode) {
            case ObsMode::Full:
                for (uint32_t w = 0; w < g.n; w++) g.obs[v].set(w);
                break;
            case ObsMode::None:
                g.obs[v].set(v);
                break;
            case ObsMode::Adjacent:
                g.obs[v].set(v);
                for (VertexId w : g.travel.succ(v)) g.obs[v].set(w);
                break;
            case ObsMode::Map:
                g.obs[v].set(v); // caller widens the windows afterwards
                break;
        }
    }
}

struct TestSab {
    VertexId start = 0;
    int budget = 0; // -1 = unlimited
    // Empty = complete over all ordered pairs.
    std::vector<std::pair<VertexId, VertexId>> edges;
    bool complete = true;
};

/** Builds and validates a game from explicit parts. */
inline Game make_game(uint32_t n, std::vector<std::pair<VertexId, VertexId>> t_edges,
                      VertexId t_start, std::vector<VertexId> finals,
                      std::vector<TestSab> sabs, ObsMode mode = ObsMode::Full,
                      Objective objective = Objective::Reachability,
                      std::vector<VertexId> initial_marked = {}) {
    Game g;
    g.n = n;
    g.travel = build_csr(n, std::move(t_edges));
    g.t_start = t_start;
    g.objective = objective;
    g.final_set = Bits(n);
    for (VertexId f : finals) g.final_set.set(f);
    g.initial_marked = Bits(n);
    for (VertexId x : initial_marked) g.initial_marked.set(x);
    for (const TestSab &ts : sabs) {
        SaboteurSpec s;
        s.start = ts.start;
        s.budget = ts.budget < 0 ? Budget{false, 0} : Budget{true, uint32_t(ts.budget)};
        s.edges = ts.complete && ts.edges.empty() ? complete_csr(n) : build_csr(n, ts.edges);
        g.sabs.push_back(std::move(s));
    }
    finish_game(g, mode);
    validate_game(g);
    return g;
}

/**
 * Random instance over at most n_max vertices: random digraphs for both
 * sides, uniform starts and a single final vertex, budgets up to m_max,
 * an occasional possible initial mark. Map windows get random extras.
 */
inline Game random_game(std::mt19937_64 &rng, uint32_t n_max, uint32_t k, uint32_t m_max,
                        ObsMode mode, bool unbounded = false) {
    auto pick = [&](uint32_t lo, uint32_t hi) {
        return lo + uint32_t(rng() % (hi - lo + 1));
    };
    auto coin = [&](double p) { return double(rng() % 1024) / 1024.0 < p; };

    uint32_t n = pick(2, n_max);
    Game g;
    g.n = n;

    std::vector<std::pair<VertexId, VertexId>> te, be;
    for (VertexId u = 0; u < n; u++)
        for (VertexId v = 0; v < n; v++)
            if (u != v && coin(0.35)) te.emplace_back(u, v);
    g.travel = build_csr(n, std::move(te));

    VertexId fin = pick(0, n - 1);
    g.final_set = Bits(n);
    g.final_set.set(fin);
    g.t_start = pick(0, n - 1);
    g.objective = Objective::Reachability;

    for (uint32_t j = 0; j < k; j++) {
        SaboteurSpec s;
        do s.start = pick(0, n - 1);
        while (s.start == fin);
        s.budget = unbounded ? Budget{false, 0} : Budget{true, pick(0, m_max)};
        if (coin(0.5)) {
            s.edges = complete_csr(n);
        } else {
            be.clear();
            for (VertexId u = 0; u < n; u++)
                for (VertexId v = 0; v < n; v++)
                    if (u != v && coin(0.4)) be.emplace_back(u, v);
            s.edges = build_csr(n, be);
        }
        g.sabs.push_back(std::move(s));
    }

    g.initial_marked = Bits(n);
    uint64_t room = 0;
    for (const auto &s : g.sabs) room += s.budget.finite ? s.budget.m : n;
    if (room > 0 && coin(0.25)) {
        VertexId x = pick(0, n - 1);
        if (x != g.t_start && x != fin) g.initial_marked.set(x);
    }

    finish_game(g, mode);
    if (mode == ObsMode::Map) {
        for (uint32_t v = 0; v < n; v++)
            for (uint32_t w = 0; w < n; w++)
                if (w != v && coin(0.3)) g.obs[v].set(w);
    }
    validate_game(g);
    return g;
}

} // namespace sabgame::testing

#endif
