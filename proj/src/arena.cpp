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

#include "arena.hpp"

#include <cstring>

namespace sabgame {

uint64_t StatePool::hash(const uint64_t *key, uint32_t width) {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (uint32_t i = 0; i < width; i++) {
        uint64_t x = key[i] + h;
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        h = x;
    }
    return h;
}

std::pair<uint32_t, bool> StatePool::intern(const uint64_t *key) {
    uint64_t mask = table_.size() - 1;
    uint64_t idx = hash(key, width_) & mask;
    while (table_[idx] != NO_STATE) {
        uint32_t id = table_[idx];
        if (std::memcmp(get(id), key, width_ * sizeof(uint64_t)) == 0) return {id, false};
        idx = (idx + 1) & mask;
    }
    if (count_ >= max_states_)
        fail(Code::ArenaTooLarge, "state space exceeds ", max_states_, " states");
    uint32_t id = uint32_t(count_++);
    data_.insert(data_.end(), key, key + width_);
    table_[idx] = id;
    if (count_ * 10 >= table_.size() * 7) grow();
    return {id, true};
}

uint32_t StatePool::find(const uint64_t *key) const {
    uint64_t mask = table_.size() - 1;
    uint64_t idx = hash(key, width_) & mask;
    while (table_[idx] != NO_STATE) {
        uint32_t id = table_[idx];
        if (std::memcmp(get(id), key, width_ * sizeof(uint64_t)) == 0) return id;
        idx = (idx + 1) & mask;
    }
    return NO_STATE;
}

void StatePool::grow() {
    std::vector<uint32_t> bigger(table_.size() * 2, NO_STATE);
    uint64_t mask = bigger.size() - 1;
    for (uint32_t id = 0; id < count_; id++) {
        uint64_t idx = hash(get(id), width_) & mask;
        while (bigger[idx] != NO_STATE) idx = (idx + 1) & mask;
        bigger[idx] = id;
    }
    table_ = std::move(bigger);
}

Transpose::Transpose(const Arena &a) {
    off.assign(size_t(a.n()) + 2, 0);
    // Count in-degrees shifted by one, prefix-sum, then fill.
    for (uint32_t t : a.adj) off[size_t(t) + 2]++;
    for (size_t i = 2; i < off.size(); i++) off[i] += off[i - 1];
    adj.resize(a.adj.size());
    for (uint32_t s = 0; s < a.n(); s++) {
        auto [it, end] = a.succ(s);
        for (; it != end; ++it) adj[off[size_t(*it) + 1]++] = s;
    }
    off.pop_back();
}

} // namespace sabgame
