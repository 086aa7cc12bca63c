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

#include "qbf.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace sabgame {

namespace {

using nlohmann::json;

/** Single-final graph for the formula regime (see qbf.hpp). */
struct RegimeGraph {
    uint32_t n = 0;
    VertexId t0 = 0, b0 = 0, vf = 0;
    std::vector<std::vector<VertexId>> tsucc, bsucc;
    std::vector<std::string> names;
    uint32_t default_rounds = 0;
};

RegimeGraph make_regime(const Game &g) {
    if (g.objective != Objective::Reachability)
        fail(Code::Unsupported, "formula regime requires a reachability objective");
    if (g.k() != 1) fail(Code::Unsupported, "formula regime requires exactly one saboteur");
    if (g.sabs[0].budget.finite)
        fail(Code::Unsupported, "formula regime requires an unlimited budget");
    if (!g.initial_marked.empty())
        fail(Code::Unsupported, "formula regime does not support start marks");

    RegimeGraph r;
    r.n = g.n;
    r.t0 = g.t_start;
    r.b0 = g.sabs[0].start;
    r.names = g.names;
    r.tsucc.resize(g.n);
    r.bsucc.resize(g.n);
    for (VertexId u = 0; u < g.n; u++) {
        for (VertexId v : g.travel.succ(u)) r.tsucc[u].push_back(v);
        for (VertexId v : g.sabs[0].edges.succ(u)) r.bsucc[u].push_back(v);
    }
    std::vector<VertexId> finals = g.final_set.to_vector();
    uint64_t bound = g.round_bound();
    if (finals.size() == 1) {
        r.vf = finals[0];
    } else {
        r.vf = r.n++;
        r.names.push_back("__final__");
        r.tsucc.emplace_back();
        r.bsucc.emplace_back();
        for (VertexId f : finals) r.tsucc[f].push_back(r.vf);
        bound += 1; // one extra hop onto the super-final
    }
    if (bound > UINT32_MAX) fail(Code::InvalidArg, "round bound too large to encode");
    r.default_rounds = uint32_t(bound);
    return r;
}

} // namespace

QbfEncoding encode_qbf(const Game &g, uint32_t rounds) {
    RegimeGraph r = make_regime(g);
    uint32_t gam = rounds ? rounds : r.default_rounds;
    if (gam == 0) fail(Code::InvalidArg, "round count must be positive");
    uint32_t bits = 1;
    while ((1u << bits) < r.n) bits++;

    // Variables in prefix order: alternating move blocks, aux at the end.
    uint32_t next = 1;
    auto block = [&](uint32_t count) {
        uint32_t first = next;
        next += count;
        return first;
    };
    std::vector<uint32_t> rvar(gam + 1), cvar(gam), indr(gam + 1), indc(gam), vis(gam),
        edgeok(gam), alive(gam);
    for (uint32_t i = 1; i <= gam; i++) {
        rvar[i] = block(bits);
        if (i < gam) cvar[i] = block(bits);
    }
    for (uint32_t i = 1; i <= gam; i++) indr[i] = block(r.n);
    for (uint32_t i = 1; i < gam; i++) {
        indc[i] = block(r.n);
        vis[i] = block(r.n);
        edgeok[i] = block(1);
        alive[i] = block(1);
    }
    uint32_t nvars = next - 1;

    std::vector<std::vector<int>> cls;
    auto add = [&](std::vector<int> c) { cls.push_back(std::move(c)); };

    // Position indicators: ind <-> bits spell the vertex index.
    auto emit_ind = [&](uint32_t pos0, uint32_t ind0) {
        for (uint32_t u = 0; u < r.n; u++) {
            int ind = int(ind0 + u);
            std::vector<int> back{ind};
            for (uint32_t b = 0; b < bits; b++) {
                int v = int(pos0 + b);
                int match = (u >> b & 1) ? v : -v;
                back.push_back(-match);
                add({-ind, match});
            }
            add(std::move(back));
        }
    };
    for (uint32_t i = 1; i <= gam; i++) {
        emit_ind(rvar[i], indr[i]);
        if (i < gam) emit_ind(cvar[i], indc[i]);
    }

    // Traveler movement. Round 1 leaves the fixed start; later rounds are
    // required only while the play is still alive.
    {
        std::vector<int> first;
        for (VertexId v : r.tsucc[r.t0]) first.push_back(int(indr[1] + v));
        add(std::move(first));
    }
    for (uint32_t i = 2; i <= gam; i++) {
        for (uint32_t u = 0; u < r.n; u++) {
            std::vector<int> c{-int(alive[i - 1]), -int(indr[i - 1] + u)};
            for (VertexId v : r.tsucc[u]) c.push_back(int(indr[i] + v));
            add(std::move(c));
        }
    }
    // Block unused traveler codewords, otherwise they would make every
    // position indicator false and skip the chain of movement clauses.
    // Saboteur blocks keep unused codewords: they fail the legal-move check
    // below, which forfeits the play exactly like any other illegal move.
    for (uint32_t w = r.n; w < (1u << bits); w++) {
        for (uint32_t i = 1; i <= gam; i++) {
            std::vector<int> c;
            for (uint32_t b = 0; b < bits; b++) {
                int v = int(rvar[i] + b);
                c.push_back((w >> b & 1) ? -v : v);
            }
            add(std::move(c));
        }
    }

    for (uint32_t i = 1; i < gam; i++) {
        // Saboteur trail accumulation.
        for (uint32_t u = 0; u < r.n; u++) {
            int vi = int(vis[i] + u), ci = int(indc[i] + u);
            if (i == 1) {
                if (u == r.b0) {
                    add({vi});
                } else {
                    add({-vi, ci});
                    add({vi, -ci});
                }
            } else {
                int vp = int(vis[i - 1] + u);
                add({-vi, vp, ci});
                add({vi, -vp});
                add({vi, -ci});
            }
        }
        // Saboteur move legality (entering the final vertex is illegal and
        // handled by the alive chain below).
        if (i == 1) {
            std::vector<int> fwd{-int(edgeok[1])};
            for (VertexId v : r.bsucc[r.b0]) {
                fwd.push_back(int(indc[1] + v));
                add({int(edgeok[1]), -int(indc[1] + v)});
            }
            add(std::move(fwd));
        } else {
            for (uint32_t u = 0; u < r.n; u++) {
                std::vector<int> fwd{-int(indc[i - 1] + u), -int(edgeok[i])};
                for (VertexId v : r.bsucc[u]) {
                    fwd.push_back(int(indc[i] + v));
                    add({-int(indc[i - 1] + u), -int(indc[i] + v), int(edgeok[i])});
                }
                add(std::move(fwd));
            }
        }
        // alive_i  <->  alive_{i-1} & legal move & not at final on each side
        int al = int(alive[i]), cf = int(indc[i] + r.vf), re = int(indr[i] + r.vf);
        std::vector<int> back{al, -int(edgeok[i]), cf, re};
        add({-al, int(edgeok[i])});
        add({-al, -cf});
        add({-al, -re});
        if (i > 1) {
            add({-al, int(alive[i - 1])});
            back.push_back(-int(alive[i - 1]));
        }
        add(std::move(back));
        // The trail is deadly while the play is alive.
        for (uint32_t u = 0; u < r.n; u++)
            add({-al, -int(indr[i] + u), -int(vis[i] + u)});
    }

    if (gam == 1)
        add({int(indr[1] + r.vf)});
    else
        add({-int(alive[gam - 1]), int(indr[gam] + r.vf)});

    // Render QDIMACS with aux merged into the last existential block.
    std::ostringstream out;
    out << "p cnf " << nvars << ' ' << cls.size() << '\n';
    for (uint32_t i = 1; i <= gam; i++) {
        out << 'e';
        for (uint32_t b = 0; b < bits; b++) out << ' ' << rvar[i] + b;
        if (i == gam) {
            for (uint32_t v = indr[1]; v <= nvars; v++) out << ' ' << v;
            out << " 0\n";
            break;
        }
        out << " 0\na";
        for (uint32_t b = 0; b < bits; b++) out << ' ' << cvar[i] + b;
        out << " 0\n";
    }
    for (const auto &c : cls) {
        for (int lit : c) out << lit << ' ';
        out << "0\n";
    }

    json meta;
    meta["format"] = "sabgame-qbf-1";
    meta["rounds"] = gam;
    meta["bits"] = bits;
    meta["vertices"] = r.names;
    meta["final"] = r.names[r.vf];
    json vars = json::object();
    auto tag = [&](uint32_t id, json j) { vars[std::to_string(id)] = std::move(j); };
    for (uint32_t i = 1; i <= gam; i++) {
        for (uint32_t b = 0; b < bits; b++) {
            tag(rvar[i] + b, {{"role", "move"}, {"side", "traveler"}, {"round", i}, {"bit", b}});
            if (i < gam)
                tag(cvar[i] + b,
                    {{"role", "move"}, {"side", "saboteur"}, {"round", i}, {"bit", b}});
        }
        for (uint32_t u = 0; u < r.n; u++) {
            tag(indr[i] + u,
                {{"role", "at"}, {"side", "traveler"}, {"round", i}, {"vertex", r.names[u]}});
            if (i < gam) {
                tag(indc[i] + u,
                    {{"role", "at"}, {"side", "saboteur"}, {"round", i}, {"vertex", r.names[u]}});
                tag(vis[i] + u, {{"role", "visited"}, {"round", i}, {"vertex", r.names[u]}});
            }
        }
        if (i < gam) {
            tag(edgeok[i], {{"role", "move_legal"}, {"round", i}});
            tag(alive[i], {{"role", "alive"}, {"round", i}});
        }
    }
    meta["vars"] = std::move(vars);

    QbfEncoding enc;
    enc.qdimacs = out.str();
    enc.metadata = meta.dump(2);
    enc.vars = nvars;
    enc.clauses = cls.size();
    enc.rounds = gam;
    return enc;
}

Side bounded_regime_winner(const Game &g, uint32_t rounds) {
    RegimeGraph r = make_regime(g);
    uint32_t gam = rounds ? rounds : r.default_rounds;
    if (gam == 0) fail(Code::InvalidArg, "round count must be positive");
    if (r.n > 25) fail(Code::InvalidArg, "bounded winner supports at most 25 vertices");

    std::unordered_map<uint64_t, bool> memo;
    // Decides round i given previous positions and the saboteur trail.
    auto rec = [&](auto &&self, uint32_t i, VertexId rv, VertexId cv, uint32_t visited) -> bool {
        if (i == gam) {
            for (VertexId to : r.tsucc[rv])
                if (to == r.vf) return true;
            return false;
        }
        uint64_t key = visited | (uint64_t(rv) << 26) | (uint64_t(cv) << 32) |
                       (uint64_t(i) << 38);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool win = false;
        for (VertexId rn : r.tsucc[rv]) {
            if (rn == r.vf) {
                win = true;
                break;
            }
            bool all = true;
            for (VertexId cn : r.bsucc[cv]) {
                if (cn == r.vf) continue; // illegal, branch forfeited
                uint32_t v2 = visited | (1u << cn);
                if ((v2 >> rn & 1) || !self(self, i + 1, rn, cn, v2)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                win = true;
                break;
            }
        }
        memo.emplace(key, win);
        return win;
    };
    bool win = rec(rec, 1, r.t0, r.b0, 1u << r.b0);
    return win ? Side::Traveler : Side::Saboteur;
}

namespace {

/** Prefix-ordered DPLL with expansion over universal blocks. */
struct Expansion {
    uint32_t nvars = 0;
    std::vector<char> quant;       // per var, 'e' or 'a'
    std::vector<uint32_t> order;   // prefix order
    std::vector<std::vector<int>> clauses;
    std::vector<std::vector<uint32_t>> pos_occ, neg_occ;
    std::vector<int8_t> val;
    std::vector<uint32_t> ntrue, nfree;
    size_t nsat = 0;
    std::vector<int> trail;
    std::vector<uint32_t> dirty; // clauses to revisit; stale entries are rechecked

    void parse(const std::string &text) {
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            if (tok == "c") {
                std::string line;
                std::getline(in, line);
            } else if (tok == "p") {
                std::string cnf;
                uint64_t nc;
                in >> cnf >> nvars >> nc;
                quant.assign(nvars + 1, 'e');
                val.assign(nvars + 1, -1);
                pos_occ.assign(nvars + 1, {});
                neg_occ.assign(nvars + 1, {});
            } else if (tok == "e" || tok == "a") {
                int v;
                while (in >> v && v != 0) {
                    quant[uint32_t(v)] = tok[0];
                    order.push_back(uint32_t(v));
                }
            } else {
                std::vector<int> c;
                int lit = std::stoi(tok);
                while (lit != 0) {
                    c.push_back(lit);
                    in >> lit;
                }
                clauses.push_back(std::move(c));
            }
        }
        for (uint32_t v = 1; v <= nvars; v++)
            if (quant[v] == 'e' && std::find(order.begin(), order.end(), v) == order.end())
                order.push_back(v);
        ntrue.assign(clauses.size(), 0);
        nfree.assign(clauses.size(), 0);
        for (uint32_t ci = 0; ci < clauses.size(); ci++) {
            nfree[ci] = uint32_t(clauses[ci].size());
            for (int lit : clauses[ci])
                (lit > 0 ? pos_occ[lit] : neg_occ[-lit]).push_back(ci);
        }
    }

    bool assign(uint32_t v, int8_t b) {
        val[v] = b;
        trail.push_back(b ? int(v) : -int(v));
        bool ok = true;
        for (uint32_t ci : (b ? pos_occ[v] : neg_occ[v])) {
            if (ntrue[ci]++ == 0) nsat++;
            nfree[ci]--;
        }
        for (uint32_t ci : (b ? neg_occ[v] : pos_occ[v])) {
            if (--nfree[ci] == 0 && ntrue[ci] == 0) ok = false;
            if (ntrue[ci] == 0) dirty.push_back(ci);
        }
        return ok;
    }

    void undo(size_t mark) {
        while (trail.size() > mark) {
            int lit = trail.back();
            trail.pop_back();
            uint32_t v = uint32_t(lit > 0 ? lit : -lit);
            int8_t b = lit > 0;
            for (uint32_t ci : (b ? pos_occ[v] : neg_occ[v])) {
                if (--ntrue[ci] == 0) nsat--;
                nfree[ci]++;
            }
            for (uint32_t ci : (b ? neg_occ[v] : pos_occ[v])) nfree[ci]++;
            val[v] = -1;
        }
    }

    /** Forces unit literals; false on conflict. A clause forcing a universal
     *  literal is a conflict too: the opposite branch falsifies it outright. */
    bool propagate() {
        while (!dirty.empty()) {
            uint32_t ci = dirty.back();
            dirty.pop_back();
            if (ntrue[ci] > 0) continue;
            if (nfree[ci] == 0) {
                dirty.clear();
                return false;
            }
            if (nfree[ci] != 1) continue;
            for (int lit : clauses[ci]) {
                uint32_t v = uint32_t(lit > 0 ? lit : -lit);
                if (val[v] != -1) continue;
                if (quant[v] == 'a' || !assign(v, lit > 0)) {
                    dirty.clear();
                    return false;
                }
                break;
            }
        }
        return true;
    }

    bool solve(size_t oi) {
        size_t mark = trail.size();
        if (!propagate()) {
            undo(mark);
            return false;
        }
        if (nsat == clauses.size()) {
            undo(mark);
            return true;
        }
        while (oi < order.size() && val[order[oi]] != -1) oi++;
        if (oi == order.size()) {
            undo(mark);
            return true; // everything assigned, no conflict, no open clause
        }
        uint32_t v = order[oi];
        size_t m2 = trail.size();
        bool first = assign(v, 1) && solve(oi + 1);
        undo(m2);
        if (quant[v] == 'e' && first) {
            undo(mark);
            return true;
        }
        if (quant[v] == 'a' && !first) {
            undo(mark);
            return false;
        }
        bool second = assign(v, 0) && solve(oi + 1);
        undo(m2);
        undo(mark);
        return second;
    }
};

} // namespace

bool qbf_expansion_eval(const std::string &qdimacs) {
    Expansion e;
    e.parse(qdimacs);
    if (e.clauses.empty()) return true;
    for (uint32_t ci = 0; ci < e.clauses.size(); ci++) e.dirty.push_back(ci);
    return e.solve(0);
}

} // namespace sabgame
