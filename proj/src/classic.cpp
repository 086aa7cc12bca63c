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

#include "classic.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace sabgame {

namespace {

using nlohmann::json;

VertexId lookup(const std::unordered_map<std::string, VertexId> &ix, const json &j,
                const char *where) {
    if (!j.is_string()) fail(Code::Parse, msg(where, ": expected a vertex label"));
    auto it = ix.find(j.get<std::string>());
    if (it == ix.end())
        fail(Code::Validation, msg(where, ": unknown vertex label '", j.get<std::string>(), "'"));
    return it->second;
}

} // namespace

ClassicGame parse_classic(const std::string &json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        fail(Code::Parse, msg("classic document: ", e.what()));
    }
    if (!j.is_object()) fail(Code::Parse, "classic document: expected an object");
    for (const char *key : {"vertices", "edges", "start", "final"})
        if (!j.contains(key)) fail(Code::Parse, msg("classic document: missing '", key, "'"));

    ClassicGame c;
    std::unordered_map<std::string, VertexId> ix;
    if (!j["vertices"].is_array() || j["vertices"].empty())
        fail(Code::Parse, "vertices: expected a nonempty label list");
    for (const auto &v : j["vertices"]) {
        if (!v.is_string() || v.get<std::string>().empty())
            fail(Code::Parse, "vertices: labels must be nonempty strings");
        if (!ix.emplace(v.get<std::string>(), VertexId(c.names.size())).second)
            fail(Code::Validation, msg("vertices: duplicate label '", v.get<std::string>(), "'"));
        c.names.push_back(v.get<std::string>());
    }

    if (!j["edges"].is_array()) fail(Code::Parse, "edges: expected a list of label pairs");
    for (const auto &e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) fail(Code::Parse, "edges: each entry is [a, b]");
        VertexId a = lookup(ix, e[0], "edges");
        VertexId b = lookup(ix, e[1], "edges");
        if (a == b) fail(Code::Validation, "edges: an edge must join two distinct vertices");
        c.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(c.edges.begin(), c.edges.end());
    c.edges.erase(std::unique(c.edges.begin(), c.edges.end()), c.edges.end());

    c.start = lookup(ix, j["start"], "start");
    if (!j["final"].is_array() || j["final"].empty())
        fail(Code::Parse, "final: expected a nonempty label list");
    for (const auto &f : j["final"]) c.finals.push_back(lookup(ix, f, "final"));
    std::sort(c.finals.begin(), c.finals.end());
    c.finals.erase(std::unique(c.finals.begin(), c.finals.end()), c.finals.end());
    return c;
}

Game encode_classic(const ClassicGame &c) {
    uint32_t base = uint32_t(c.names.size());
    uint32_t ne = uint32_t(c.edges.size());
    Game g;
    g.n = base + ne + 1;
    g.names = c.names;
    std::unordered_set<std::string> used(c.names.begin(), c.names.end());
    auto fresh = [&](std::string s) {
        while (used.count(s)) s += "+";
        used.insert(s);
        g.names.push_back(s);
    };
    for (auto [u, v] : c.edges) fresh(c.names[u] + "--" + c.names[v]);
    fresh("z");
    VertexId hub = g.n - 1;
    for (VertexId v = 0; v < g.n; v++) g.index.emplace(g.names[v], v);

    std::vector<std::pair<VertexId, VertexId>> tr, sb;
    for (uint32_t i = 0; i < ne; i++) {
        auto [u, v] = c.edges[i];
        VertexId relay = base + i;
        tr.emplace_back(u, relay);
        tr.emplace_back(relay, v);
        tr.emplace_back(v, relay);
        tr.emplace_back(relay, u);
        sb.emplace_back(relay, hub);
        sb.emplace_back(hub, relay);
    }
    g.travel = build_csr(g.n, std::move(tr));
    SaboteurSpec s;
    s.start = hub;
    s.budget = Budget{false, 0};
    s.edges = build_csr(g.n, std::move(sb));
    g.sabs.push_back(std::move(s));
    g.t_start = c.start;

    g.obs_mode = ObsMode::Full;
    g.obs.assign(g.n, Bits(g.n));
    for (auto &w : g.obs)
        for (VertexId v = 0; v < g.n; v++) w.set(v);

    g.objective = Objective::Reachability;
    g.final_set = Bits(g.n);
    for (VertexId f : c.finals) g.final_set.set(f);
    g.initial_marked = Bits(g.n);
    validate_game(g);
    return g;
}

Side classic_winner(const ClassicGame &c) {
    if (c.edges.size() > 32) fail(Code::InvalidArg, "classic oracle supports at most 32 edges");
    uint64_t fin = 0;
    for (VertexId f : c.finals) fin |= 1ull << f;
    if (c.names.size() > 64) fail(Code::InvalidArg, "classic oracle supports at most 64 vertices");

    std::vector<std::vector<std::pair<uint32_t, VertexId>>> inc(c.names.size());
    for (uint32_t i = 0; i < c.edges.size(); i++) {
        inc[c.edges[i].first].emplace_back(i, c.edges[i].second);
        inc[c.edges[i].second].emplace_back(i, c.edges[i].first);
    }

    std::unordered_map<uint64_t, bool> memo;
    // Traveler to move at t with the edges in `alive` surviving. Recursion
    // terminates because the adversary deletes on every visited branch.
    auto win = [&](auto &&self, VertexId t, uint32_t alive) -> bool {
        if (fin >> t & 1) return true;
        uint64_t key = alive | (uint64_t(t) << 32);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool w = false;
        for (auto [e, to] : inc[t]) {
            if (!(alive >> e & 1)) continue;
            if (fin >> to & 1) {
                w = true;
                break;
            }
            bool all = true;
            for (uint32_t d = 0; d < c.edges.size() && all; d++)
                if (alive >> d & 1) all = self(self, to, alive & ~(1u << d));
            if (all) {
                w = true;
                break;
            }
        }
        memo.emplace(key, w);
        return w;
    };
    uint32_t full = c.edges.size() == 32 ? ~0u : (1u << c.edges.size()) - 1;
    return win(win, c.start, full) ? Side::Traveler : Side::Saboteur;
}

} // namespace sabgame
