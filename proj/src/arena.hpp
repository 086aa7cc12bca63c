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

#ifndef SABGAME_ARENA_HPP
#define SABGAME_ARENA_HPP

#include <cstdint>
#include <vector>

#include "types.hpp"

namespace sabgame {

inline constexpr uint32_t NO_STATE = UINT32_MAX;

/** Per-state flags of a two-player arena. */
enum : uint8_t {
    F_OPPONENT = 1, // saboteur side to move (otherwise traveler)
    F_TARGET = 2,   // reachability goal / repeated-visit accepting state
};

/**
 * Explicit two-player game arena in discovery order. A state with no
 * successors is lost for its owner unless flagged as a target sink.
 */
struct Arena {
    uint32_t root = 0;
    std::vector<uint8_t> flags;
    std::vector<uint32_t> off; // n+1 after sealing
    std::vector<uint32_t> adj;

    uint32_t n() const { return uint32_t(flags.size()); }
    uint64_t edges() const { return adj.size(); }

    bool opponent(uint32_t s) const { return flags[s] & F_OPPONENT; }
    bool target(uint32_t s) const { return flags[s] & F_TARGET; }

    std::pair<const uint32_t *, const uint32_t *> succ(uint32_t s) const {
        return {adj.data() + off[s], adj.data() + off[s + 1]};
    }
};

/**
 * Interning store for fixed-width state descriptors (width 64-bit words
 * each). Ids are dense and discovery ordered.
 */
class StatePool {
  public:
    StatePool(uint32_t width, uint64_t max_states)
        : width_(width), max_states_(max_states), table_(1 << 12, NO_STATE) {}

    /** Returns (id, true) for a fresh state, (id, false) when known. */
    std::pair<uint32_t, bool> intern(const uint64_t *key);

    /** Id of an already interned key, NO_STATE when absent. */
    uint32_t find(const uint64_t *key) const;

    const uint64_t *get(uint32_t id) const { return data_.data() + size_t(id) * width_; }
    uint32_t size() const { return uint32_t(count_); }
    uint32_t width() const { return width_; }

  private:
    void grow();
    static uint64_t hash(const uint64_t *key, uint32_t width);

    uint32_t width_;
    uint64_t max_states_;
    uint64_t count_ = 0;
    std::vector<uint64_t> data_;
    std::vector<uint32_t> table_; // open addressing, power-of-two size
};

/**
 * Builder that accumulates successor lists in discovery order. Expansion
 * must call seal_state exactly once per state id, in id order.
 */
struct ArenaBuilder {
    Arena a;

    uint32_t add_state(uint8_t flags) {
        a.flags.push_back(flags);
        return uint32_t(a.flags.size() - 1);
    }
    void add_edge(uint32_t to) { a.adj.push_back(to); }
    void seal_state() { a.off.push_back(uint32_t(a.adj.size())); }

    Arena finish() {
        a.off.insert(a.off.begin(), 0u);
        // seal_state pushed end offsets; off now has n+1 entries.
        return std::move(a);
    }
};

/** Transposed adjacency (predecessors), two-pass counting construction. */
struct Transpose {
    std::vector<uint32_t> off;
    std::vector<uint32_t> adj;
    explicit Transpose(const Arena &a);

    std::pair<const uint32_t *, const uint32_t *> pred(uint32_t s) const {
        return {adj.data() + off[s], adj.data() + off[s + 1]};
    }
};

} // namespace sabgame

#endif
