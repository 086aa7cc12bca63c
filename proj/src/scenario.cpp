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

#include <json.hpp>

#include "game.hpp"

namespace sabgame {

using nlohmann::json;

namespace {

VertexId lookup(const Game &g, const json &j, const char *what) {
    if (!j.is_string()) fail(Code::Parse, msg(what, ": expected a vertex label string"));
    auto it = g.index.find(j.get<std::string>());
    if (it == g.index.end())
        fail(Code::Validation, msg(what, ": unknown vertex label '", j.get<std::string>(), "'"));
    return it->second;
}

std::vector<std::pair<VertexId, VertexId>> parse_edges(const Game &g, const json &j,
                                                       const char *what) {
    if (!j.is_array()) fail(Code::Parse, msg(what, ": expected a list of label pairs"));
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(j.size());
    for (const auto &e : j) {
        if (!e.is_array() || e.size() != 2)
            fail(Code::Parse, msg(what, ": each edge is a [from, to] pair"));
        out.emplace_back(lookup(g, e[0], what), lookup(g, e[1], what));
    }
    return out;
}

Budget parse_budget(const json &j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return Budget{false, 0};
        fail(Code::Parse, msg("budget: expected a natural number or \"inf\", got '",
                              j.get<std::string>(), "'"));
    }
    if (j.is_number_unsigned()) return Budget{true, j.get<uint32_t>()};
    if (j.is_number_integer() && j.get<int64_t>() >= 0)
        return Budget{true, uint32_t(j.get<int64_t>())};
    fail(Code::Parse, "budget: expected a natural number or \"inf\"");
}

Bits full_window(uint32_t n) {
    Bits b(n);
    for (uint32_t v = 0; v < n; v++) b.set(v);
    return b;
}

void build_observation(Game &g, const json &j) {
    g.obs.assign(g.n, Bits(g.n));
    if (j.is_string()) {
        const std::string mode = j.get<std::string>();
        if (mode == "full") {
            g.obs_mode = ObsMode::Full;
            for (uint32_t v = 0; v < g.n; v++) g.obs[v] = full_window(g.n);
        } else if (mode == "none") {
            g.obs_mode = ObsMode::None;
            for (uint32_t v = 0; v < g.n; v++) g.obs[v].set(v);
        } else if (mode == "adjacent") {
            g.obs_mode = ObsMode::Adjacent;
            for (uint32_t v = 0; v < g.n; v++) {
                g.obs[v].set(v);
                for (VertexId w : g.travel.succ(v)) g.obs[v].set(w);
            }
        } else {
            fail(Code::Parse, msg("observation: unknown mode '", mode, "'"));
        }
        return;
    }
    if (!j.is_object())
        fail(Code::Parse, "observation: expected \"full\", \"none\", \"adjacent\" or a map");
    g.obs_mode = ObsMode::Map;
    // Vertices absent from the map observe only themselves.
    for (uint32_t v = 0; v < g.n; v++) g.obs[v].set(v);
    for (const auto &[label, lst] : j.items()) {
        auto it = g.index.find(label);
        if (it == g.index.end())
            fail(Code::Validation, msg("observation: unknown vertex label '", label, "'"));
        if (!lst.is_array()) fail(Code::Parse, "observation: map values are label lists");
        bool self = false;
        for (const auto &e : lst) {
            VertexId w = lookup(g, e, "observation");
            g.obs[it->second].set(w);
            self |= (w == it->second);
        }
        if (!self)
            fail(Code::Validation,
                 msg("observation window of '", label, "' must contain the vertex itself"));
    }
}

} // namespace

Game parse_scenario(const std::string &json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        fail(Code::Parse, msg("scenario: ", e.what()));
    }
    try {
        if (!j.is_object()) fail(Code::Parse, "scenario: expected a JSON object");
        Game g;

        const auto &verts = j.at("vertices");
        if (!verts.is_array() || verts.empty())
            fail(Code::Parse, "vertices: expected a nonempty list of labels");
        for (const auto &v : verts) {
            if (!v.is_string()) fail(Code::Parse, "vertices: labels must be strings");
            std::string label = v.get<std::string>();
            if (!g.index.emplace(label, VertexId(g.names.size())).second)
                fail(Code::Validation, msg("vertices: duplicate label '", label, "'"));
            g.names.push_back(std::move(label));
        }
        g.n = uint32_t(g.names.size());

        g.travel = build_csr(g.n, parse_edges(g, j.at("traveler_edges"), "traveler_edges"));

        const auto &sabs = j.at("saboteurs");
        if (!sabs.is_array()) fail(Code::Parse, "saboteurs: expected a list");
        for (const auto &s : sabs) {
            if (!s.is_object()) fail(Code::Parse, "saboteurs: entries are objects");
            SaboteurSpec spec;
            spec.start = lookup(g, s.at("start"), "saboteur start");
            spec.budget = parse_budget(s.at("budget"));
            if (s.contains("edges"))
                spec.edges = build_csr(g.n, parse_edges(g, s["edges"], "saboteur edges"));
            else
                spec.edges = complete_csr(g.n);
            g.sabs.push_back(std::move(spec));
        }

        g.t_start = lookup(g, j.at("traveler_start"), "traveler_start");

        const auto &obj = j.at("objective");
        if (!obj.is_object()) fail(Code::Parse, "objective: expected an object");
        const std::string type = obj.at("type").get<std::string>();
        if (type == "reachability")
            g.objective = Objective::Reachability;
        else if (type == "buchi")
            g.objective = Objective::Buchi;
        else
            fail(Code::Parse, msg("objective.type: unknown type '", type, "'"));
        g.final_set = Bits(g.n);
        const auto &fin = obj.at("final");
        if (!fin.is_array()) fail(Code::Parse, "objective.final: expected a label list");
        for (const auto &f : fin) g.final_set.set(lookup(g, f, "objective.final"));

        g.initial_marked = Bits(g.n);
        if (j.contains("initial_marked"))
            for (const auto &f : j["initial_marked"])
                g.initial_marked.set(lookup(g, f, "initial_marked"));

        build_observation(g, j.contains("observation") ? j["observation"] : json("full"));

        validate_game(g);
        return g;
    } catch (const json::exception &e) {
        fail(Code::Parse, msg("scenario: ", e.what()));
    }
}

std::string serialize_scenario(const Game &g) {
    json j;
    j["vertices"] = g.names;

    auto edges_json = [&](const Csr &c) {
        json arr = json::array();
        for (uint32_t u = 0; u < g.n; u++)
            for (VertexId v : c.succ(u)) arr.push_back({g.names[u], g.names[v]});
        return arr;
    };
    j["traveler_edges"] = edges_json(g.travel);

    j["saboteurs"] = json::array();
    for (const auto &s : g.sabs) {
        json sj;
        sj["start"] = g.names[s.start];
        if (s.budget.finite)
            sj["budget"] = s.budget.m;
        else
            sj["budget"] = "inf";
        sj["edges"] = edges_json(s.edges);
        j["saboteurs"].push_back(std::move(sj));
    }

    j["traveler_start"] = g.names[g.t_start];

    switch (g.obs_mode) {
        case ObsMode::Full: j["observation"] = "full"; break;
        case ObsMode::None: j["observation"] = "none"; break;
        case ObsMode::Adjacent: j["observation"] = "adjacent"; break;
        case ObsMode::Map: {
            json m = json::object();
            for (uint32_t v = 0; v < g.n; v++) {
                json lst = json::array();
                g.obs[v].for_each([&](uint32_t w) { lst.push_back(g.names[w]); });
                m[g.names[v]] = std::move(lst);
            }
            j["observation"] = std::move(m);
            break;
        }
    }

    j["objective"]["type"] =
        g.objective == Objective::Reachability ? "reachability" : "buchi";
    json fin = json::array();
    g.final_set.for_each([&](uint32_t v) { fin.push_back(g.names[v]); });
    j["objective"]["final"] = std::move(fin);

    json im = json::array();
    g.initial_marked.for_each([&](uint32_t v) { im.push_back(g.names[v]); });
    j["initial_marked"] = std::move(im);

    return j.dump(2);
}

} // namespace sabgame
