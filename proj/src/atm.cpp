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

#include "atm.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace sabgame {

namespace {

using nlohmann::json;

char letter_char(uint8_t v) { return v == LETTER_T ? 'T' : 'B'; }

uint8_t parse_letter(const json &j, const char *where) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "T") return LETTER_T;
        if (s == "B") return LETTER_B;
    }
    fail(Code::Parse, msg(where, ": expected letter \"T\" or \"B\""));
}

/** Word padded with blanks to the space bound; checks the bound. */
std::vector<uint8_t> padded_word(const AtmSpec &m, const std::vector<uint8_t> &word, uint32_t &P) {
    uint64_t p64 = m.space(word.size());
    if (word.size() > p64)
        fail(Code::SpaceBound,
             msg("word of length ", word.size(), " exceeds the space bound ", p64));
    if (p64 == 0) fail(Code::Validation, "space bound must allow at least one tape cell");
    if (p64 > 4096) fail(Code::InvalidArg, "space bound too large to compile");
    P = uint32_t(p64);
    std::vector<uint8_t> w = word;
    w.resize(P, LETTER_B);
    return w;
}

/**
 * Branches of the choice block (q, p, letter). A move off the tape is kept
 * as a losing branch when the adversary owns the choice and dropped when
 * the machine does; a branch is terminal when it ends in a final state or
 * off the tape.
 */
struct BranchSpec {
    AtmStep step;
    uint32_t p2 = 0;       // head cell after the move; 0 or P+1 is off the tape
    bool off = false;
    bool terminal = false;
};

std::vector<BranchSpec> emitted_branches(const AtmSpec &m, uint32_t q, uint32_t p, uint8_t v,
                                         uint32_t P) {
    std::vector<BranchSpec> out;
    for (const AtmStep &s : m.delta[q][v]) {
        BranchSpec b;
        b.step = s;
        b.p2 = s.right ? p + 1 : p - 1;
        b.off = b.p2 < 1 || b.p2 > P;
        if (b.off && m.existential[q]) continue;
        b.terminal = b.off || m.is_final(s.to);
        out.push_back(b);
    }
    return out;
}

// Block layouts, shared between the compiler and the play script.
// Eraser: value-indexed slots take the letter as an offset.
enum : uint32_t {
    ER_ASK = 0,
    ER_ACK = 1,
    ER_DIS = 3,
    ER_ERASE = 5,
    ER_TCONCL = 7,
    ER_SS = 9,
    ER_CLAIM = 10,
    ER_YCE = 12,
    ER_SCONCL = 14,
    ER_SIZE = 16,
};
// Adversary choice block: header, then five slots per branch.
enum : uint32_t {
    FA_TASK = 0,
    FA_ESC = 1,
    FA_ESCMID = 2,
    FA_SS = 3,
    FA_HDR = 4,
    FA_ACK = 0,
    FA_WAIT = 1,
    FA_EXIT = 2,
    FA_SCH = 3,
    FA_SRET = 4,
    FA_PER = 5,
};
// Machine choice block: header, then eight slots per branch.
enum : uint32_t {
    EX_SS = 0,
    EX_HDR = 1,
    EX_CH = 0,
    EX_WAIT = 1,
    EX_HOLD = 2,
    EX_EXIT = 3,
    EX_ESC = 4,
    EX_ESCMID = 5,
    EX_SFOL = 6,
    EX_SRET = 7,
    EX_PER = 8,
};

std::string eraser_key(const AtmSpec &m, uint32_t q, uint32_t p) {
    return msg("E(", m.states[q], ",", p, ")");
}

std::string choice_key(const AtmSpec &m, uint32_t q, uint32_t p, uint8_t v) {
    return msg(m.existential[q] ? "any(" : "all(", m.states[q], ",", p, ",", letter_char(v), ")");
}

struct Compiler {
    const AtmSpec &m;
    std::vector<uint8_t> w; // padded input
    uint32_t P = 0;
    GadgetGraph gg;
    Game &g = gg.game;
    std::vector<std::pair<VertexId, VertexId>> tr, sb;
    std::unordered_set<std::string> used;
    std::vector<VertexId> *block = nullptr;

    VertexId goal = NO_VERTEX;
    std::map<uint32_t, VertexId> acc_at, rej_at;

    Compiler(const AtmSpec &machine, const std::vector<uint8_t> &word) : m(machine) {
        w = padded_word(m, word, P);
    }

    VertexId add(std::string name) {
        while (used.count(name)) name += "+";
        used.insert(name);
        g.names.push_back(std::move(name));
        VertexId v = VertexId(g.names.size() - 1);
        if (block) block->push_back(v);
        return v;
    }

    void t_edge(VertexId a, VertexId b) { tr.emplace_back(a, b); }
    void s_edge(VertexId a, VertexId b) { sb.emplace_back(a, b); }

    /** Accept entries reach the goal in one move; nothing can mark them. */
    VertexId accept_at(uint32_t p) {
        auto it = acc_at.find(p);
        if (it != acc_at.end()) return it->second;
        std::vector<VertexId> *prev = block;
        block = &gg.blocks[msg("A(", p, ")")];
        VertexId v = add(msg("acc(", p, ")"));
        block = prev;
        return acc_at.emplace(p, v).first->second;
    }

    /** Reject entries are dead ends; a traveler inside is stuck. */
    VertexId reject_at(uint32_t p) {
        auto it = rej_at.find(p);
        if (it != rej_at.end()) return it->second;
        std::vector<VertexId> *prev = block;
        block = &gg.blocks[msg("R(", p, ")")];
        VertexId v = add(msg("rej(", p, ")"));
        block = prev;
        return rej_at.emplace(p, v).first->second;
    }

    /** Where the traveler exits a branch: next eraser, accept, or reject. */
    VertexId exit_travel(const BranchSpec &b) {
        if (b.off || b.step.to == m.reject) return reject_at(b.p2);
        if (b.step.to == m.accept) return accept_at(b.p2);
        return gg.blocks.at(eraser_key(m, b.step.to, b.p2))[ER_ASK];
    }

    void build() {
        // Vertex blocks first, in a fixed order, so edges can refer ahead.
        block = &gg.blocks["I"];
        add("in:start");
        for (uint32_t p = 1; p <= P; p++) add(msg("in:w", p));
        add("in:end");
        add("in:esc");
        add("in:mid");
        add("in:ss");

        block = &gg.blocks["tape"];
        gg.tape.resize(P);
        gg.post.resize(P);
        for (uint32_t p = 1; p <= P; p++)
            for (uint8_t v : {LETTER_T, LETTER_B}) {
                gg.tape[p - 1][v] = add(msg("tape(", p, ",", letter_char(v), ")"));
                gg.post[p - 1][v] = add(msg("post(", p, ",", letter_char(v), ")"));
            }

        for (uint32_t q = 0; q < m.nstates(); q++) {
            if (m.is_final(q)) continue;
            for (uint32_t p = 1; p <= P; p++) {
                block = &gg.blocks[eraser_key(m, q, p)];
                const std::string pre = eraser_key(m, q, p);
                add(pre + ":ask");
                for (uint8_t v : {LETTER_T, LETTER_B}) add(msg(pre, ":ack", letter_char(v)));
                for (uint8_t v : {LETTER_T, LETTER_B}) add(msg(pre, ":dis", letter_char(v)));
                for (uint8_t v : {LETTER_T, LETTER_B}) add(msg(pre, ":erase", letter_char(v)));
                for (uint8_t v : {LETTER_T, LETTER_B}) add(msg(pre, ":tconcl", letter_char(v)));
                add(pre + ":ss");
                for (uint8_t v : {LETTER_T, LETTER_B}) add(msg(pre, ":claim", letter_char(v)));
                for (uint8_t v : {LETTER_T, LETTER_B}) add(msg(pre, ":yce", letter_char(v)));
                for (uint8_t v : {LETTER_T, LETTER_B}) add(msg(pre, ":sconcl", letter_char(v)));
            }
        }

        for (uint32_t q = 0; q < m.nstates(); q++) {
            if (m.is_final(q)) continue;
            for (uint32_t p = 1; p <= P; p++)
                for (uint8_t v : {LETTER_T, LETTER_B}) {
                    const std::string pre = choice_key(m, q, p, v);
                    block = &gg.blocks[pre];
                    auto branches = emitted_branches(m, q, p, v, P);
                    if (m.existential[q]) {
                        add(pre + ":ss");
                        for (size_t i = 1; i <= branches.size(); i++) {
                            add(msg(pre, ":ch", i));
                            add(msg(pre, ":wait", i));
                            add(msg(pre, ":hold", i));
                            add(msg(pre, ":exit", i));
                            add(msg(pre, ":esc", i));
                            add(msg(pre, ":escMid", i));
                            add(msg(pre, ":sfol", i));
                            add(msg(pre, ":sret", i));
                        }
                    } else {
                        add(pre + ":tAsk");
                        add(pre + ":esc");
                        add(pre + ":escMid");
                        add(pre + ":ss");
                        for (size_t i = 1; i <= branches.size(); i++) {
                            add(msg(pre, ":ack", i));
                            add(msg(pre, ":wait", i));
                            add(msg(pre, ":exit", i));
                            add(msg(pre, ":sch", i));
                            add(msg(pre, ":sret", i));
                        }
                    }
                }
        }

        block = nullptr;
        // Terminal entries referenced by branch exits and by a final initial
        // state; created on demand before the goal closes the name space.
        if (m.is_final(m.initial)) {
            if (m.initial == m.accept)
                accept_at(1);
            else
                reject_at(1);
        }
        for (uint32_t q = 0; q < m.nstates(); q++) {
            if (m.is_final(q)) continue;
            for (uint32_t p = 1; p <= P; p++)
                for (uint8_t v : {LETTER_T, LETTER_B})
                    for (const BranchSpec &b : emitted_branches(m, q, p, v, P))
                        if (b.terminal) exit_travel(b);
        }
        goal = add("goal");

        wire_input();
        wire_tape();
        for (uint32_t q = 0; q < m.nstates(); q++) {
            if (m.is_final(q)) continue;
            for (uint32_t p = 1; p <= P; p++) {
                wire_eraser(q, p);
                for (uint8_t v : {LETTER_T, LETTER_B}) wire_choice(q, p, v);
            }
        }
        for (auto &[p, v] : acc_at) t_edge(v, goal);

        finish();
    }

    void wire_input() {
        const auto &in = gg.blocks.at("I");
        VertexId start = in[0], end = in[P + 1], esc = in[P + 2], mid = in[P + 3],
                 ss = in[P + 4];
        t_edge(start, in[1]);
        for (uint32_t p = 1; p <= P; p++) {
            t_edge(in[p], p < P ? in[p + 1] : end);
            t_edge(in[p], esc);
        }
        t_edge(esc, mid);
        t_edge(mid, goal);

        if (m.is_final(m.initial))
            t_edge(end, m.initial == m.accept ? accept_at(1) : reject_at(1));
        else
            t_edge(end, gg.blocks.at(eraser_key(m, m.initial, 1))[ER_ASK]);

        s_edge(ss, gg.tape[0][LETTER_T]);
        s_edge(ss, gg.tape[0][LETTER_B]);
        // Leaving the walk lane is caught from the vertex the honest
        // saboteur occupies, which carries the cell's true letter.
        for (uint32_t p = 1; p <= P; p++) s_edge(gg.tape[p - 1][w[p - 1]], mid);
        if (!m.is_final(m.initial)) {
            VertexId e0 = gg.blocks.at(eraser_key(m, m.initial, 1))[ER_SS];
            s_edge(gg.tape[P - 1][LETTER_T], e0);
            s_edge(gg.tape[P - 1][LETTER_B], e0);
        }
    }

    void wire_tape() {
        for (uint32_t p = 1; p <= P; p++)
            for (uint8_t v : {LETTER_T, LETTER_B}) {
                t_edge(gg.tape[p - 1][v], gg.post[p - 1][v]);
                t_edge(gg.post[p - 1][v], goal);
                if (p < P)
                    for (uint8_t v2 : {LETTER_T, LETTER_B})
                        s_edge(gg.tape[p - 1][v], gg.tape[p][v2]);
            }
    }

    void wire_eraser(uint32_t q, uint32_t p) {
        const auto &er = gg.blocks.at(eraser_key(m, q, p));
        for (uint8_t v : {LETTER_T, LETTER_B}) {
            t_edge(er[ER_ASK], er[ER_ACK + v]);
            t_edge(er[ER_ASK], er[ER_DIS + v]);
            t_edge(er[ER_ACK + v], er[ER_ERASE + v]);
            // Auditing a claim walks the claimed tape vertex, clean exactly
            // when the claim lied.
            t_edge(er[ER_DIS + v], gg.tape[p - 1][v]);
            // The chamber: both cell vertices enter the view, so the next
            // saboteur move settles the cell; walking in is also allowed.
            t_edge(er[ER_ERASE + v], gg.tape[p - 1][LETTER_T]);
            t_edge(er[ER_ERASE + v], gg.tape[p - 1][LETTER_B]);
            t_edge(er[ER_ERASE + v], er[ER_TCONCL + v]);

            const auto &cb = gg.blocks.at(choice_key(m, q, p, v));
            if (m.existential[q]) {
                size_t nb = (cb.size() - EX_HDR) / EX_PER;
                for (size_t i = 0; i < nb; i++)
                    t_edge(er[ER_TCONCL + v], cb[EX_HDR + i * EX_PER + EX_CH]);
            } else {
                t_edge(er[ER_TCONCL + v], cb[FA_TASK]);
            }

            s_edge(er[ER_SS], er[ER_CLAIM + v]);
            s_edge(er[ER_CLAIM + v], er[ER_YCE + v]);
            s_edge(er[ER_YCE + v], er[ER_SCONCL + v]);
            s_edge(er[ER_SCONCL + v], cb[m.existential[q] ? size_t(EX_SS) : size_t(FA_SS)]);
            uint8_t o = v ^ 1;
            // Acknowledging or auditing a letter other than the claimed one
            // is cut off one move ahead.
            s_edge(er[ER_CLAIM + v], er[ER_ERASE + o]);
            s_edge(er[ER_CLAIM + v], gg.tape[p - 1][o]);
            // Walking from the chamber onto the tape trails the honest
            // audit by one round; the continuation is sealed in time.
            s_edge(er[ER_SCONCL + v], gg.post[p - 1][LETTER_T]);
            s_edge(er[ER_SCONCL + v], gg.post[p - 1][LETTER_B]);
        }
    }

    void wire_choice(uint32_t q, uint32_t p, uint8_t v) {
        const auto &cb = gg.blocks.at(choice_key(m, q, p, v));
        auto branches = emitted_branches(m, q, p, v, P);
        if (m.existential[q]) {
            for (size_t i = 0; i < branches.size(); i++) {
                const BranchSpec &b = branches[i];
                const VertexId *br = cb.data() + EX_HDR + i * EX_PER;
                t_edge(br[EX_CH], br[EX_WAIT]);
                t_edge(br[EX_WAIT], br[EX_HOLD]);
                t_edge(br[EX_HOLD], br[EX_EXIT]);
                t_edge(br[EX_HOLD], br[EX_ESC]);
                t_edge(br[EX_ESC], br[EX_ESCMID]);
                t_edge(br[EX_ESCMID], goal);
                t_edge(br[EX_EXIT], exit_travel(b));

                s_edge(cb[EX_SS], br[EX_SFOL]);
                s_edge(br[EX_SFOL], gg.tape[p - 1][b.step.write]);
                s_edge(gg.tape[p - 1][b.step.write], br[EX_SRET]);
                if (!b.terminal)
                    s_edge(br[EX_SRET], gg.blocks.at(eraser_key(m, b.step.to, b.p2))[ER_SS]);
                // The branch escape stays fenced only while the follower
                // holds this branch's lane.
                s_edge(br[EX_SRET], br[EX_ESCMID]);
                s_edge(gg.tape[p - 1][b.step.write], br[EX_ESCMID]);
            }
        } else {
            t_edge(cb[FA_ESC], cb[FA_ESCMID]);
            t_edge(cb[FA_ESCMID], goal);
            for (size_t i = 0; i < branches.size(); i++) {
                const BranchSpec &b = branches[i];
                const VertexId *br = cb.data() + FA_HDR + i * FA_PER;
                t_edge(cb[FA_TASK], br[FA_ACK]);
                t_edge(br[FA_ACK], br[FA_WAIT]);
                t_edge(br[FA_WAIT], br[FA_EXIT]);
                t_edge(br[FA_WAIT], cb[FA_ESC]);
                t_edge(br[FA_EXIT], exit_travel(b));

                s_edge(cb[FA_SS], br[FA_SCH]);
                s_edge(br[FA_SCH], gg.tape[p - 1][b.step.write]);
                s_edge(gg.tape[p - 1][b.step.write], br[FA_SRET]);
                if (!b.terminal)
                    s_edge(br[FA_SRET], gg.blocks.at(eraser_key(m, b.step.to, b.p2))[ER_SS]);
                // Every lane fences the shared escape: the chooser's pick
                // is binding on the traveler.
                s_edge(br[FA_SRET], cb[FA_ESCMID]);
                // Acknowledging a branch the chooser did not pick is cut
                // off one move ahead.
                for (size_t j = 0; j < branches.size(); j++)
                    if (j != i)
                        s_edge(br[FA_SCH], cb[FA_HDR + uint32_t(j) * FA_PER + FA_WAIT]);
            }
        }
    }

    void finish() {
        g.n = uint32_t(g.names.size());
        if (g.n > 2000000) fail(Code::InvalidArg, "compiled game too large");
        for (VertexId v = 0; v < g.n; v++) g.index.emplace(g.names[v], v);
        g.travel = build_csr(g.n, std::move(tr));

        SaboteurSpec s;
        s.start = gg.blocks.at("I")[P + 4];
        s.budget = Budget{true, 1};
        s.edges = build_csr(g.n, std::move(sb));
        g.sabs.push_back(std::move(s));

        g.t_start = gg.blocks.at("I")[0];
        g.obs_mode = ObsMode::Adjacent;
        g.obs.assign(g.n, Bits(g.n));
        for (VertexId u = 0; u < g.n; u++) {
            g.obs[u].set(u);
            for (VertexId x : g.travel.succ(u)) g.obs[u].set(x);
        }

        g.objective = Objective::Reachability;
        g.final_set = Bits(g.n);
        g.final_set.set(goal);
        g.initial_marked = Bits(g.n);
        validate_game(g);
    }
};

} // namespace

uint64_t AtmSpec::space(uint64_t n) const {
    uint64_t r = 0;
    for (size_t i = space_coeff.size(); i-- > 0;) {
        uint64_t c = space_coeff[i];
        if (n != 0 && r > (UINT64_MAX - c) / n) return UINT64_MAX;
        r = r * n + c;
    }
    return r;
}

AtmSpec parse_atm(const std::string &json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        fail(Code::Parse, msg("machine document: ", e.what()));
    }
    if (!j.is_object()) fail(Code::Parse, "machine document: expected an object");
    for (const char *key :
         {"states", "existential", "transitions", "initial", "accept", "reject", "space_bound"})
        if (!j.contains(key)) fail(Code::Parse, msg("machine document: missing '", key, "'"));

    AtmSpec m;
    std::unordered_map<std::string, uint32_t> ix;
    if (!j["states"].is_array() || j["states"].empty())
        fail(Code::Parse, "states: expected a nonempty name list");
    for (const auto &s : j["states"]) {
        if (!s.is_string() || s.get<std::string>().empty())
            fail(Code::Parse, "states: names must be nonempty strings");
        if (!ix.emplace(s.get<std::string>(), uint32_t(m.states.size())).second)
            fail(Code::Validation, msg("states: duplicate name '", s.get<std::string>(), "'"));
        m.states.push_back(s.get<std::string>());
    }
    auto state_of = [&](const json &s, const char *where) -> uint32_t {
        if (!s.is_string()) fail(Code::Parse, msg(where, ": expected a state name"));
        auto it = ix.find(s.get<std::string>());
        if (it == ix.end())
            fail(Code::Validation, msg(where, ": unknown state '", s.get<std::string>(), "'"));
        return it->second;
    };

    m.existential.assign(m.states.size(), false);
    if (!j["existential"].is_array()) fail(Code::Parse, "existential: expected a state list");
    for (const auto &s : j["existential"]) m.existential[state_of(s, "existential")] = true;

    m.initial = state_of(j["initial"], "initial");
    m.accept = state_of(j["accept"], "accept");
    m.reject = state_of(j["reject"], "reject");
    if (m.accept == m.reject) fail(Code::Validation, "accept and reject must be distinct states");
    // Final states never branch, so their split side does not matter; they
    // are normalized to existential.
    m.existential[m.accept] = m.existential[m.reject] = true;

    m.delta.assign(m.states.size(), {});
    if (!j["transitions"].is_array()) fail(Code::Parse, "transitions: expected a list");
    for (const auto &t : j["transitions"]) {
        if (!t.is_object()) fail(Code::Parse, "transitions: each entry is an object");
        for (const char *key : {"from", "read", "to", "write", "move"})
            if (!t.contains(key)) fail(Code::Parse, msg("transitions: missing '", key, "'"));
        uint32_t from = state_of(t["from"], "transitions.from");
        if (m.is_final(from))
            fail(Code::Validation, "transitions: the accept and reject states take none");
        uint8_t read = parse_letter(t["read"], "transitions.read");
        AtmStep step;
        step.to = state_of(t["to"], "transitions.to");
        step.write = parse_letter(t["write"], "transitions.write");
        if (!t["move"].is_string() ||
            (t["move"].get<std::string>() != "L" && t["move"].get<std::string>() != "R"))
            fail(Code::Parse, "transitions.move: expected \"L\" or \"R\"");
        step.right = t["move"].get<std::string>() == "R";
        m.delta[from][read].push_back(step);
    }
    auto key = [](const AtmStep &s) { return std::tuple(s.to, s.write, s.right); };
    for (auto &per : m.delta)
        for (auto &list : per) {
            std::sort(list.begin(), list.end(),
                      [&](const AtmStep &a, const AtmStep &b) { return key(a) < key(b); });
            list.erase(std::unique(list.begin(), list.end(),
                                   [&](const AtmStep &a, const AtmStep &b) {
                                       return key(a) == key(b);
                                   }),
                       list.end());
        }
    for (uint32_t q = 0; q < m.nstates(); q++) {
        if (m.is_final(q)) continue;
        for (uint8_t v : {LETTER_T, LETTER_B})
            if (m.delta[q][v].empty())
                fail(Code::Validation, msg("transitions: state '", m.states[q],
                                           "' has none on letter ", letter_char(v)));
    }

    if (!j["space_bound"].is_array() || j["space_bound"].empty())
        fail(Code::Parse, "space_bound: expected a nonempty coefficient list");
    for (const auto &c : j["space_bound"]) {
        if (!c.is_number_unsigned())
            fail(Code::Parse, "space_bound: coefficients are nonnegative integers");
        m.space_coeff.push_back(c.get<uint64_t>());
    }
    return m;
}

std::vector<uint8_t> parse_word(const std::string &word) {
    std::vector<uint8_t> w;
    for (char c : word) {
        if (c == 'T')
            w.push_back(LETTER_T);
        else if (c == 'B')
            w.push_back(LETTER_B);
        else
            fail(Code::Parse, msg("word: unexpected character '", std::string(1, c),
                                  "', letters are T and B"));
    }
    return w;
}

bool atm_accepts(const AtmSpec &m, const std::vector<uint8_t> &word) {
    uint64_t p64 = m.space(word.size());
    if (word.size() > p64)
        fail(Code::SpaceBound,
             msg("word of length ", word.size(), " exceeds the space bound ", p64));
    if (p64 == 0) fail(Code::Validation, "space bound must allow at least one tape cell");
    if (p64 > 20 || uint64_t(m.nstates()) * p64 * (1ull << p64) > (1ull << 20))
        fail(Code::InvalidArg, "configuration space too large to evaluate");
    uint32_t P = uint32_t(p64);

    // Tape as a bitmask, bit p-1 set = letter B; blanks are B.
    uint32_t masks = 1u << P;
    auto id = [&](uint32_t q, uint32_t p, uint32_t tape) {
        return (size_t(q) * P + (p - 1)) * masks + tape;
    };
    std::vector<uint8_t> acc(size_t(m.nstates()) * P * masks, 0);
    for (uint32_t p = 1; p <= P; p++)
        for (uint32_t t = 0; t < masks; t++) acc[id(m.accept, p, t)] = 1;

    // Monotone sweeps to the least fixpoint; loops stay non-accepting.
    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t q = 0; q < m.nstates(); q++) {
            if (m.is_final(q)) continue;
            bool ex = m.existential[q];
            for (uint32_t p = 1; p <= P; p++)
                for (uint32_t t = 0; t < masks; t++) {
                    size_t c = id(q, p, t);
                    if (acc[c]) continue;
                    uint8_t v = uint8_t((t >> (p - 1)) & 1);
                    bool val = !ex;
                    for (const AtmStep &s : m.delta[q][v]) {
                        uint32_t t2 =
                            (t & ~(1u << (p - 1))) | (uint32_t(s.write) << (p - 1));
                        uint32_t p2 = s.right ? p + 1 : p - 1;
                        bool ok = p2 >= 1 && p2 <= P && acc[id(s.to, p2, t2)] != 0;
                        val = ex ? (val || ok) : (val && ok);
                    }
                    if (val) {
                        acc[c] = 1;
                        changed = true;
                    }
                }
        }
    }

    uint32_t w0 = 0;
    for (size_t i = 0; i < word.size(); i++)
        if (word[i] == LETTER_B) w0 |= 1u << i;
    for (uint32_t p = uint32_t(word.size()); p < P; p++) w0 |= 1u << p;
    return acc[id(m.initial, 1, w0)] != 0;
}

GadgetGraph compile_atm(const AtmSpec &m, const std::vector<uint8_t> &word) {
    Compiler c(m, word);
    c.build();
    return std::move(c.gg);
}

HonestPlay honest_play(const GadgetGraph &gg, const AtmSpec &m, const std::vector<uint8_t> &word,
                       const std::vector<uint32_t> &choices) {
    if (m.is_final(m.initial)) fail(Code::InvalidArg, "play script needs a non-final start");
    uint32_t P = 0;
    std::vector<uint8_t> tape = padded_word(m, word, P);
    HonestPlay hp;
    auto &T = hp.traveler;
    auto &S = hp.saboteur;

    auto tape_now = [&]() {
        std::vector<VertexId> v;
        for (uint32_t p = 1; p <= P; p++) v.push_back(gg.tape[p - 1][tape[p - 1]]);
        return v;
    };
    auto checkpoint = [&]() { hp.checkpoints.push_back({T.size(), tape_now()}); };

    const auto &in = gg.blocks.at("I");
    for (uint32_t p = 1; p <= P; p++) {
        T.push_back(in[p]);
        S.push_back(gg.tape[p - 1][tape[p - 1]]);
    }
    uint32_t q = m.initial, head = 1;
    T.push_back(in[P + 1]); // in:end
    S.push_back(gg.blocks.at(eraser_key(m, q, head))[ER_SS]);
    checkpoint();

    VertexId goal = gg.game.vertex("goal");
    size_t action = 0;
    while (true) {
        uint8_t v = tape[head - 1];
        const auto &er = gg.blocks.at(eraser_key(m, q, head));
        const auto &cb = gg.blocks.at(choice_key(m, q, head, v));
        auto branches = emitted_branches(m, q, head, v, P);
        if (action >= choices.size() || branches.empty()) break;
        uint32_t i = choices[action++];
        if (i >= branches.size()) fail(Code::InvalidArg, "play script choice out of range");
        const BranchSpec &b = branches[i];

        T.push_back(er[ER_ASK]);
        S.push_back(er[ER_CLAIM + v]);
        T.push_back(er[ER_ACK + v]);
        S.push_back(er[ER_YCE + v]);
        T.push_back(er[ER_ERASE + v]);
        S.push_back(er[ER_SCONCL + v]);
        T.push_back(er[ER_TCONCL + v]);
        S.push_back(cb[m.existential[q] ? size_t(EX_SS) : size_t(FA_SS)]);

        VertexId escmid;
        if (m.existential[q]) {
            const VertexId *br = cb.data() + EX_HDR + i * EX_PER;
            escmid = br[EX_ESCMID];
            T.push_back(br[EX_CH]);
            S.push_back(br[EX_SFOL]);
            T.push_back(br[EX_WAIT]);
            S.push_back(gg.tape[head - 1][b.step.write]);
            T.push_back(br[EX_HOLD]);
            S.push_back(br[EX_SRET]);
            T.push_back(br[EX_EXIT]);
        } else {
            const VertexId *br = cb.data() + FA_HDR + i * FA_PER;
            escmid = cb[FA_ESCMID];
            T.push_back(cb[FA_TASK]);
            S.push_back(br[FA_SCH]);
            T.push_back(br[FA_ACK]);
            S.push_back(gg.tape[head - 1][b.step.write]);
            T.push_back(br[FA_WAIT]);
            S.push_back(br[FA_SRET]);
            T.push_back(br[FA_EXIT]);
        }
        tape[head - 1] = b.step.write;
        if (b.terminal) {
            // The follower's lane ends on its fence and strands there.
            S.push_back(escmid);
            checkpoint();
            if (!b.off && b.step.to == m.accept) {
                T.push_back(gg.blocks.at(msg("A(", b.p2, ")"))[0]);
                S.push_back(escmid);
                T.push_back(goal);
                S.push_back(escmid);
                hp.accepts = true;
            } else {
                T.push_back(gg.blocks.at(msg("R(", b.p2, ")"))[0]);
                S.push_back(escmid);
            }
            break;
        }
        q = b.step.to;
        head = b.p2;
        S.push_back(gg.blocks.at(eraser_key(m, q, head))[ER_SS]);
        checkpoint();
    }
    return hp;
}

} // namespace sabgame
