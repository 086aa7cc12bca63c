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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <optional>

#include "../src/game.hpp"
#include "helpers.hpp"

using namespace sabgame;
using namespace sabgame::testing;

namespace {

template <typename F>
std::optional<Code> code_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code;
    }
    return std::nullopt;
}

const char *kMinimal = R"({
    "vertices": ["a", "b", "goal"],
    "traveler_edges": [["a", "b"], ["b", "goal"]],
    "saboteurs": [{"start": "b", "budget": 1}],
    "traveler_start": "a",
    "objective": {"type": "reachability", "final": ["goal"]}
})";

} // namespace

TEST_CASE("minimal scenario parses with defaults") {
    Game g = parse_scenario(kMinimal);
    CHECK(g.n == 3);
    CHECK(g.name(g.t_start) == "a");
    CHECK(g.k() == 1);
    CHECK(g.sabs[0].budget == Budget{true, 1});
    CHECK(g.obs_mode == ObsMode::Full); // default when omitted
    CHECK(g.objective == Objective::Reachability);
    CHECK(g.final_set.test(g.vertex("goal")));
    CHECK(g.initial_marked.empty());

    // Omitted saboteur edges mean the complete relation.
    auto dst = g.sabs[0].edges.succ(g.vertex("b"));
    CHECK(dst.size() == 2);

    // A saboteur never moves onto a final vertex.
    std::vector<VertexId> out;
    g.saboteur_dests(0, g.vertex("b"), out);
    REQUIRE(out.size() == 1);
    CHECK(g.name(out[0]) == "a");
}

TEST_CASE("scenario round-trips through serialization") {
    Game g = parse_scenario(kMinimal);
    Game h = parse_scenario(serialize_scenario(g));
    CHECK(h.n == g.n);
    CHECK(h.names == g.names);
    CHECK(h.t_start == g.t_start);
    CHECK(h.obs_mode == g.obs_mode);
    CHECK(h.objective == g.objective);
    CHECK(h.final_set == g.final_set);
    CHECK(h.initial_marked == g.initial_marked);
    REQUIRE(h.k() == g.k());
    for (uint32_t i = 0; i < g.k(); i++) {
        CHECK(h.sabs[i].start == g.sabs[i].start);
        CHECK(h.sabs[i].budget == g.sabs[i].budget);
        CHECK(h.sabs[i].edges.adj == g.sabs[i].edges.adj);
    }
    CHECK(h.travel.adj == g.travel.adj);
    CHECK(h.travel.off == g.travel.off);
    for (uint32_t v = 0; v < g.n; v++) CHECK(h.obs[v] == g.obs[v]);
}

TEST_CASE("bundled office scenario has the documented shape") {
    Game g = parse_scenario(read_file(scenario_path("scenario1.json")));
    CHECK(g.n == 14);
    CHECK(g.k() == 2);
    CHECK(g.name(g.t_start) == "LR");
    CHECK(g.obs_mode == ObsMode::Full);
    CHECK(g.sabs[0].budget == Budget{true, 1});
    CHECK(g.sabs[1].budget == Budget{true, 1});
    CHECK(g.final_set.count() == 4);

    auto lr = g.travel.succ(g.vertex("LR"));
    std::vector<std::string> names;
    for (VertexId v : lr) names.push_back(g.name(v));
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"R1", "R2"});

    // The second intruder is confined to company space plus its start row.
    std::vector<VertexId> out;
    g.saboteur_dests(1, g.vertex("I2"), out);
    REQUIRE(out.size() == 1);
    CHECK(g.name(out[0]) == "CR3");
}

TEST_CASE("unlimited budgets parse from the string form") {
    std::string doc = R"({
        "vertices": ["a", "b"],
        "traveler_edges": [["a", "b"]],
        "saboteurs": [{"start": "a", "budget": "inf"}],
        "traveler_start": "a",
        "objective": {"type": "reachability", "final": ["b"]}
    })";
    Game g = parse_scenario(doc);
    CHECK_FALSE(g.sabs[0].budget.finite);
    CHECK(g.any_unbounded());
    CHECK_FALSE(g.budgets_finite());
}

TEST_CASE("parse and validation failures carry the right code") {
    auto parse = [](std::string text) {
        return [text] { parse_scenario(text); };
    };
    CHECK(code_of(parse("not json")) == Code::Parse);
    CHECK(code_of(parse("[1,2]")) == Code::Parse);
    CHECK(code_of(parse(R"({"vertices": []})")) == Code::Parse);

    std::string dup = kMinimal;
    // Duplicate vertex label.
    dup.replace(dup.find("\"b\","), 4, "\"a\",");
    CHECK(code_of(parse(dup)) == Code::Validation);

    std::string nofinal = kMinimal;
    nofinal.replace(nofinal.find("[\"goal\"]"), 8, "[]");
    CHECK(code_of(parse(nofinal)) == Code::Validation);

    std::string badstart = kMinimal;
    badstart.replace(badstart.find("\"start\": \"b\""), 12, "\"start\": \"zz\"");
    CHECK(code_of(parse(badstart)) == Code::Validation);

    std::string onfinal = kMinimal;
    onfinal.replace(onfinal.find("\"start\": \"b\""), 12, "\"start\": \"goal\"");
    CHECK(code_of(parse(onfinal)) == Code::Validation);

    std::string badobj = kMinimal;
    badobj.replace(badobj.find("reachability"), 12, "parity");
    CHECK(code_of(parse(badobj)) == Code::Parse);
}

TEST_CASE("initial marks obey placement rules") {
    auto with_marks = [](const char *marks) {
        std::string doc = kMinimal;
        doc.insert(doc.rfind('}'), std::string(", \"initial_marked\": ") + marks);
        return doc;
    };
    Game g = parse_scenario(with_marks("[\"b\"]"));
    CHECK(g.initial_marked.test(g.vertex("b")));

    auto parse = [&](const char *m) {
        return [doc = with_marks(m)] { parse_scenario(doc); };
    };
    CHECK(code_of(parse("[\"a\"]")) == Code::Validation);    // traveler start
    CHECK(code_of(parse("[\"goal\"]")) == Code::Validation); // final vertex
}

TEST_CASE("initial marks must fit in the total budget") {
    Game g = make_game(4, {{0, 1}, {1, 2}, {2, 3}}, 0, {3}, {{1, 1, {}, true}});
    g.initial_marked.set(1);
    validate_game(g); // one mark, budget one: fine
    g.initial_marked.set(2);
    CHECK(code_of([&] { validate_game(g); }) == Code::Validation);
}

TEST_CASE("observation windows follow the mode") {
    std::string doc = kMinimal;
    doc.insert(doc.rfind('}'), ", \"observation\": \"adjacent\"");
    Game g = parse_scenario(doc);
    CHECK(g.obs_mode == ObsMode::Adjacent);
    VertexId a = g.vertex("a");
    CHECK(g.obs[a].test(a));
    CHECK(g.obs[a].test(g.vertex("b")));      // travel successor
    CHECK_FALSE(g.obs[a].test(g.vertex("goal")));
    VertexId goal = g.vertex("goal");
    CHECK(g.obs[goal].count() == 1); // no outgoing edges: self only

    std::string none = kMinimal;
    none.insert(none.rfind('}'), ", \"observation\": \"none\"");
    Game h = parse_scenario(none);
    CHECK(h.obs_mode == ObsMode::None);
    for (uint32_t v = 0; v < h.n; v++) {
        CHECK(h.obs[v].count() == 1);
        CHECK(h.obs[v].test(v));
    }

    std::string map = kMinimal;
    map.insert(map.rfind('}'),
               R"(, "observation": {"a": ["a", "goal"], "b": ["b"]})");
    Game m = parse_scenario(map);
    CHECK(m.obs_mode == ObsMode::Map);
    CHECK(m.obs[m.vertex("a")].test(m.vertex("goal")));
    CHECK(m.obs[m.vertex("goal")].count() == 1); // absent: self only

    std::string noself = kMinimal;
    noself.insert(noself.rfind('}'), R"(, "observation": {"a": ["b"]})");
    auto thrown = code_of([&] { parse_scenario(noself); });
    CHECK(thrown == Code::Validation);
}

TEST_CASE("round bound is cubic for one saboteur and gains a factor per extra") {
    Game g1 = make_game(4, {{0, 1}}, 0, {1}, {{2, 1, {}, true}});
    CHECK(g1.round_bound() == 64);
    Game g2 = make_game(4, {{0, 1}}, 0, {1}, {{2, 1, {}, true}, {3, 1, {}, true}});
    CHECK(g2.round_bound() == 256);
    Game g3 = make_game(1, {}, 0, {0}, {{0, 0, {}, true}});
    CHECK(g3.round_bound() == 1);
}

TEST_CASE("regime tags name the deciding rule set") {
    Game unl = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, -1, {}, true}});
    CHECK(unl.regime_tag() == "(B1) PSPACE-complete");
    Game full = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, 1, {}, true}});
    CHECK(full.regime_tag() == "(B2) (T1) PTIME");
    Game none = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, 1, {}, true}}, ObsMode::None);
    CHECK(none.regime_tag() == "(B2) (T2) PSPACE-complete");
    Game adj = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, 1, {}, true}}, ObsMode::Adjacent);
    CHECK(adj.regime_tag() == "(B2) (T3) EXPTIME-complete");
}

TEST_CASE("edge list helpers normalize their input") {
    Csr c = build_csr(3, {{2, 0}, {0, 1}, {0, 1}, {0, 2}});
    CHECK(c.adj.size() == 3); // duplicate dropped
    auto s0 = c.succ(0);
    CHECK(std::is_sorted(s0.begin(), s0.end()));
    CHECK(c.has(2, 0));
    CHECK_FALSE(c.has(1, 0));
    CHECK(code_of([] { build_csr(2, {{0, 5}}); }) == Code::Validation);

    Csr k = complete_csr(4);
    CHECK(k.adj.size() == 12);
    for (VertexId u = 0; u < 4; u++) CHECK_FALSE(k.has(u, u));
}

TEST_CASE("a start counts as touched unless the traveler sits on it") {
    Game g = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{1, 1, {}, true}});
    CHECK(g.seed_suspect(0));
    Game co = make_game(3, {{0, 1}, {1, 2}}, 0, {2}, {{0, 1, {}, true}});
    CHECK_FALSE(co.seed_suspect(0));
}
