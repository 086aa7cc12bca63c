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

#include "solver.hpp"

#include <algorithm>

namespace sabgame {

Solution solve_reachability(const Arena &a) {
    uint32_t n = a.n();
    Solution sol;
    sol.twin.assign(n, 0);
    sol.rank.assign(n, NO_STATE);
    sol.strat.assign(n, NO_STATE);
    Transpose tr(a);

    std::vector<uint32_t> cnt(n, 0);
    std::vector<uint32_t> queue;
    queue.reserve(n / 4 + 1);
    for (uint32_t s = 0; s < n; s++) {
        uint32_t deg = a.off[s + 1] - a.off[s];
        if (a.target(s) || (a.opponent(s) && deg == 0)) {
            // Target reached, or the opponent is stuck and forfeits.
            sol.twin[s] = 1;
            sol.rank[s] = 0;
            queue.push_back(s);
        } else if (a.opponent(s)) {
            cnt[s] = deg;
        }
    }
    for (size_t qi = 0; qi < queue.size(); qi++) {
        uint32_t s = queue[qi];
        auto [it, end] = tr.pred(s);
        for (; it != end; ++it) {
            uint32_t p = *it;
            if (sol.twin[p]) continue;
            if (!a.opponent(p) || --cnt[p] == 0) {
                sol.twin[p] = 1;
                sol.rank[p] = sol.rank[s] + 1;
                queue.push_back(p);
            }
        }
    }

    for (uint32_t s = 0; s < n; s++) {
        if (a.target(s)) continue;
        auto [it, end] = a.succ(s);
        uint32_t best = NO_STATE;
        if (!a.opponent(s) && sol.twin[s]) {
            // Winning traveler: closest-to-target successor, lowest id tie.
            for (; it != end; ++it) {
                uint32_t t = *it;
                if (!sol.twin[t]) continue;
                if (best == NO_STATE || sol.rank[t] < sol.rank[best] ||
                    (sol.rank[t] == sol.rank[best] && t < best))
                    best = t;
            }
        } else if (a.opponent(s) && !sol.twin[s]) {
            // Winning opponent: stay inside the trap, lowest id.
            for (; it != end; ++it) {
                uint32_t t = *it;
                if (!sol.twin[t] && t < best) best = t;
            }
        }
        sol.strat[s] = best;
    }
    sol.root_traveler_wins = sol.twin[a.root] != 0;
    return sol;
}

Solution solve_repeated(const Arena &a) {
    uint32_t n = a.n();
    for (uint32_t s = 0; s < n; s++)
        if (a.opponent(s) && a.off[s + 1] == a.off[s])
            fail(Code::InvalidArg, "repeated-visit arena has a stuck opponent state");

    Transpose tr(a);
    std::vector<uint8_t> alive(n, 1), in_a(n, 0);
    std::vector<uint32_t> stage(n, NO_STATE), urank(n, NO_STATE), arank(n, NO_STATE);
    std::vector<uint32_t> cnt(n, 0), queue, dqueue;

    // Peel opponent-won states stagewise until the traveler can keep
    // returning to accepting states inside everything that remains.
    for (uint32_t stage_idx = 0;; stage_idx++) {
        std::fill(in_a.begin(), in_a.end(), 0);
        std::fill(arank.begin(), arank.end(), NO_STATE);
        queue.clear();
        for (uint32_t s = 0; s < n; s++) {
            if (!alive[s]) continue;
            if (a.opponent(s)) cnt[s] = a.off[s + 1] - a.off[s];
            if (a.target(s) && a.off[s + 1] > a.off[s]) {
                in_a[s] = 1;
                arank[s] = 0;
                queue.push_back(s);
            }
        }
        for (size_t qi = 0; qi < queue.size(); qi++) {
            uint32_t s = queue[qi];
            auto [it, end] = tr.pred(s);
            for (; it != end; ++it) {
                uint32_t p = *it;
                if (!alive[p] || in_a[p]) continue;
                // Removed successors never count toward opponent forcing.
                if (!a.opponent(p) || --cnt[p] == 0) {
                    in_a[p] = 1;
                    arank[p] = arank[s] + 1;
                    queue.push_back(p);
                }
            }
        }

        dqueue.clear();
        for (uint32_t s = 0; s < n; s++) {
            if (alive[s] && !in_a[s]) {
                stage[s] = stage_idx;
                urank[s] = 0;
                dqueue.push_back(s);
            }
        }
        if (dqueue.empty()) break;

        // Opponent attractor of the escaped set; traveler escapes only
        // through successors that are still alive and unattracted.
        for (uint32_t s = 0; s < n; s++) {
            if (!alive[s] || a.opponent(s) || !in_a[s]) continue;
            uint32_t c = 0;
            auto [it, end] = a.succ(s);
            for (; it != end; ++it)
                if (alive[*it]) c++;
            cnt[s] = c;
        }
        for (size_t qi = 0; qi < dqueue.size(); qi++) {
            uint32_t s = dqueue[qi];
            auto [it, end] = tr.pred(s);
            for (; it != end; ++it) {
                uint32_t p = *it;
                if (!alive[p] || stage[p] == stage_idx) continue;
                if (a.opponent(p) || --cnt[p] == 0) {
                    stage[p] = stage_idx;
                    urank[p] = urank[s] + 1;
                    dqueue.push_back(p);
                }
            }
        }
        for (uint32_t s : dqueue) alive[s] = 0;
    }

    Solution sol;
    sol.twin = alive;
    sol.rank.assign(n, NO_STATE);
    sol.strat.assign(n, NO_STATE);
    for (uint32_t s = 0; s < n; s++) {
        sol.rank[s] = alive[s] ? arank[s] : urank[s];
        auto [it, end] = a.succ(s);
        uint32_t best = NO_STATE;
        if (!a.opponent(s) && alive[s]) {
            // Head for the nearest accepting state, restarting after each.
            for (; it != end; ++it) {
                uint32_t t = *it;
                if (!alive[t]) continue;
                if (best == NO_STATE || arank[t] < arank[best] ||
                    (arank[t] == arank[best] && t < best))
                    best = t;
            }
        } else if (a.opponent(s) && !alive[s]) {
            // Descend stages, then ranks, until trapped accepting-free.
            for (; it != end; ++it) {
                uint32_t t = *it;
                if (alive[t]) continue;
                if (best == NO_STATE || stage[t] < stage[best] ||
                    (stage[t] == stage[best] &&
                     (urank[t] < urank[best] || (urank[t] == urank[best] && t < best))))
                    best = t;
            }
        }
        sol.strat[s] = best;
    }
    sol.root_traveler_wins = alive[a.root] != 0;
    return sol;
}

namespace {

/** Strategy-restricted reachable subgraph, adjacency per reachable state. */
struct Restricted {
    std::vector<uint8_t> reach;
    std::vector<std::vector<uint32_t>> succ;
    std::vector<uint32_t> order; // BFS discovery order
};

bool edge_exists(const Arena &a, uint32_t s, uint32_t t) {
    auto [it, end] = a.succ(s);
    for (; it != end; ++it)
        if (*it == t) return true;
    return false;
}

/** follower = the side bound to strat; targets are cut when sink_targets. */
bool restrict_arena(const Arena &a, const std::vector<uint32_t> &strat, bool opponent_follows,
                    bool sink_targets, Restricted &r, std::string &err) {
    uint32_t n = a.n();
    r.reach.assign(n, 0);
    r.succ.assign(n, {});
    r.order.clear();
    r.reach[a.root] = 1;
    r.order.push_back(a.root);
    for (size_t qi = 0; qi < r.order.size(); qi++) {
        uint32_t s = r.order[qi];
        if (sink_targets && a.target(s)) continue;
        bool follows = a.opponent(s) == opponent_follows;
        if (follows && a.off[s + 1] > a.off[s]) {
            uint32_t t = strat[s];
            if (t == NO_STATE) {
                err = msg("no strategy move at reachable state ", s);
                return false;
            }
            if (!edge_exists(a, s, t)) {
                err = msg("strategy move at state ", s, " is not an arena edge");
                return false;
            }
            r.succ[s].push_back(t);
            if (!r.reach[t]) {
                r.reach[t] = 1;
                r.order.push_back(t);
            }
        } else if (!follows) {
            auto [it, end] = a.succ(s);
            for (; it != end; ++it) {
                uint32_t t = *it;
                r.succ[s].push_back(t);
                if (!r.reach[t]) {
                    r.reach[t] = 1;
                    r.order.push_back(t);
                }
            }
        }
    }
    return true;
}

/** Kahn peel over the reachable subgraph, skipping excluded vertices. */
bool acyclic(const Restricted &r, const std::vector<uint8_t> &excluded,
             std::vector<uint32_t> *topo) {
    std::vector<uint32_t> indeg(r.reach.size(), 0);
    uint32_t total = 0;
    for (uint32_t s : r.order) {
        if (excluded[s]) continue;
        total++;
        for (uint32_t t : r.succ[s])
            if (!excluded[t]) indeg[t]++;
    }
    std::vector<uint32_t> queue;
    for (uint32_t s : r.order)
        if (!excluded[s] && indeg[s] == 0) queue.push_back(s);
    size_t done = 0;
    while (done < queue.size()) {
        uint32_t s = queue[done++];
        for (uint32_t t : r.succ[s])
            if (!excluded[t] && --indeg[t] == 0) queue.push_back(t);
    }
    if (done != total) return false;
    if (topo) *topo = std::move(queue);
    return true;
}

/** True when some target state lies on a cycle of the restricted graph. */
bool target_on_cycle(const Arena &a, const Restricted &r) {
    // Iterative Kosaraju over the reachable subgraph.
    uint32_t n = a.n();
    std::vector<uint32_t> post;
    post.reserve(r.order.size());
    std::vector<uint8_t> seen(n, 0);
    std::vector<std::pair<uint32_t, size_t>> stack;
    for (uint32_t root : r.order) {
        if (seen[root]) continue;
        seen[root] = 1;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto &[s, i] = stack.back();
            if (i < r.succ[s].size()) {
                uint32_t t = r.succ[s][i++];
                if (!seen[t]) {
                    seen[t] = 1;
                    stack.emplace_back(t, 0);
                }
            } else {
                post.push_back(s);
                stack.pop_back();
            }
        }
    }
    std::vector<std::vector<uint32_t>> pred(n);
    for (uint32_t s : r.order)
        for (uint32_t t : r.succ[s]) pred[t].push_back(s);
    std::vector<uint32_t> comp(n, NO_STATE);
    uint32_t ncomp = 0;
    std::vector<uint32_t> walk;
    for (auto it = post.rbegin(); it != post.rend(); ++it) {
        if (comp[*it] != NO_STATE) continue;
        uint32_t c = ncomp++;
        comp[*it] = c;
        walk.assign(1, *it);
        size_t wi = 0;
        uint32_t size = 0;
        bool has_target = false, self_loop = false;
        while (wi < walk.size()) {
            uint32_t s = walk[wi++];
            size++;
            if (a.target(s)) has_target = true;
            for (uint32_t t : r.succ[s])
                if (t == s) self_loop = true;
            for (uint32_t p : pred[s]) {
                if (comp[p] == NO_STATE) {
                    comp[p] = c;
                    walk.push_back(p);
                }
            }
        }
        if (has_target && (size > 1 || self_loop)) return true;
    }
    return false;
}

} // namespace

ReplayReport replay_traveler(const Arena &a, bool repeated, const std::vector<uint32_t> &strat,
                             uint64_t move_bound) {
    ReplayReport rep;
    Restricted r;
    if (!restrict_arena(a, strat, false, !repeated, r, rep.reason)) return rep;

    for (uint32_t s : r.order) {
        if (!r.succ[s].empty()) continue;
        if (!repeated && a.target(s)) continue; // play already won
        rep.reason = a.opponent(s) ? msg("play reaches a stuck opponent state ", s)
                                   : msg("strategy reaches a dead end at state ", s);
        return rep;
    }

    std::vector<uint8_t> excluded(a.n(), 0);
    if (repeated) {
        // Every cycle must pass a target: graph minus targets is acyclic.
        for (uint32_t s : r.order)
            if (a.target(s)) excluded[s] = 1;
        if (!acyclic(r, excluded, nullptr)) {
            rep.reason = "strategy allows a cycle that avoids every accepting state";
            return rep;
        }
        rep.ok = true;
        return rep;
    }

    std::vector<uint32_t> topo;
    if (!acyclic(r, excluded, &topo)) {
        rep.reason = "strategy allows an unbounded play that never reaches a target";
        return rep;
    }
    // Longest traveler-move count over all plays, leaves first.
    std::vector<uint64_t> moves(a.n(), 0);
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        uint32_t s = *it;
        uint64_t best = 0;
        for (uint32_t t : r.succ[s]) best = std::max(best, moves[t]);
        moves[s] = best + (!a.opponent(s) && !r.succ[s].empty() ? 1 : 0);
    }
    rep.traveler_moves = moves[a.root];
    if (rep.traveler_moves > move_bound) {
        rep.reason = msg("strategy needs ", rep.traveler_moves, " traveler moves, bound is ",
                         move_bound);
        return rep;
    }
    rep.ok = true;
    return rep;
}

ReplayReport replay_saboteur(const Arena &a, bool repeated, const std::vector<uint32_t> &strat) {
    ReplayReport rep;
    Restricted r;
    if (!restrict_arena(a, strat, true, !repeated, r, rep.reason)) return rep;

    if (!repeated) {
        for (uint32_t s : r.order) {
            if (a.target(s)) {
                rep.reason = msg("play reaches target state ", s);
                return rep;
            }
        }
        rep.ok = true;
        return rep;
    }
    if (target_on_cycle(a, r)) {
        rep.reason = "traveler can revisit an accepting state forever";
        return rep;
    }
    rep.ok = true;
    return rep;
}

} // namespace sabgame
