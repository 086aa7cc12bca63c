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

#include "game.hpp"

#include <algorithm>

namespace sabgame {

VertexId Game::vertex(const std::string &label) const {
    auto it = index.find(label);
    if (it == index.end()) fail(Code::Validation, msg("unknown vertex label '", label, "'"));
    return it->second;
}

void Game::saboteur_dests(uint32_t i, VertexId from, std::vector<VertexId> &out) const {
    out.clear();
    for (VertexId v : sabs[i].edges.succ(from))
        if (!final_set.test(v)) out.push_back(v);
}

bool Game::budgets_finite() const {
    for (const auto &s : sabs)
        if (!s.budget.finite) return false;
    return true;
}

uint64_t Game::total_budget() const {
    uint64_t t = 0;
    for (const auto &s : sabs) t += s.budget.m;
    return t;
}

bool Game::any_unbounded() const { return !budgets_finite(); }

uint64_t Game::round_bound() const {
    uint64_t b = uint64_t(n) * n * n;
    for (uint32_t i = 1; i < k(); i++) b *= n;
    return b;
}

std::string Game::regime_tag() const {
    if (any_unbounded()) return "(B1) PSPACE-complete";
    switch (obs_mode) {
        case ObsMode::Full: return "(B2) (T1) PTIME";
        case ObsMode::None: return "(B2) (T2) PSPACE-complete";
        default: return "(B2) (T3) EXPTIME-complete";
    }
}

Csr build_csr(uint32_t n, std::vector<std::pair<VertexId, VertexId>> edges) {
    for (auto [u, v] : edges)
        if (u >= n || v >= n) fail(Code::Validation, "edge endpoint out of range");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Csr c;
    c.off.assign(n + 1, 0);
    for (auto [u, v] : edges) c.off[u + 1]++;
    for (uint32_t u = 0; u < n; u++) c.off[u + 1] += c.off[u];
    c.adj.resize(edges.size());
    for (size_t i = 0; i < edges.size(); i++) c.adj[i] = edges[i].second;
    return c;
}

Csr complete_csr(uint32_t n) {
    Csr c;
    c.off.assign(n + 1, 0);
    c.adj.reserve(size_t(n) * (n - 1));
    for (uint32_t u = 0; u < n; u++) {
        c.off[u] = uint32_t(c.adj.size());
        for (uint32_t v = 0; v < n; v++)
            if (v != u) c.adj.push_back(v);
    }
    c.off[n] = uint32_t(c.adj.size());
    return c;
}

void validate_game(const Game &g) {
    if (g.n == 0) fail(Code::Validation, "scenario has no vertices");
    if (g.t_start >= g.n) fail(Code::Validation, "traveler_start out of range");
    if (g.sabs.empty()) fail(Code::Validation, "at least one saboteur is required");
    if (g.final_set.empty()) fail(Code::Validation, "objective.final must be nonempty");

    for (uint32_t i = 0; i < g.k(); i++) {
        const auto &s = g.sabs[i];
        if (s.start >= g.n) fail(Code::Validation, msg("saboteur ", i + 1, " start out of range"));
        if (g.final_set.test(s.start))
            fail(Code::Validation, msg("saboteur ", i + 1, " starts on a final vertex"));
    }

    if (g.initial_marked.test(g.t_start))
        fail(Code::Validation, "initial_marked contains the traveler start");
    if (g.initial_marked.intersects(g.final_set))
        fail(Code::Validation, "initial_marked contains a final vertex");
    if (g.budgets_finite() && g.initial_marked.count() > g.total_budget())
        fail(Code::Validation, "initial_marked exceeds the total saboteur budget");

    if (g.obs.size() != g.n) fail(Code::Validation, "observation table size mismatch");
    for (uint32_t v = 0; v < g.n; v++)
        if (!g.obs[v].test(v))
            fail(Code::Validation,
                 msg("observation window of '", g.names[v], "' must contain the vertex itself"));
}

} // namespace sabgame
