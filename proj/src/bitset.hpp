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

#ifndef SABGAME_BITSET_HPP
#define SABGAME_BITSET_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "types.hpp"

namespace sabgame {

/**
 * Fixed-universe bit set over 64-bit words. The universe size is chosen at
 * construction; all binary operations assume equal universes.
 */
class Bits {
  public:
    Bits() = default;
    explicit Bits(uint32_t universe) : w_((universe + 63) / 64, 0) {}

    static uint32_t words_for(uint32_t universe) { return (universe + 63) / 64; }

    void set(uint32_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(uint32_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    bool test(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void clear() { w_.assign(w_.size(), 0); }

    bool empty() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    uint32_t count() const {
        uint32_t c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    Bits &operator|=(const Bits &o) {
        for (size_t i = 0; i < w_.size(); i++) w_[i] |= o.w_[i];
        return *this;
    }
    Bits &operator&=(const Bits &o) {
        for (size_t i = 0; i < w_.size(); i++) w_[i] &= o.w_[i];
        return *this;
    }
    /** Remove o's members. */
    Bits &operator-=(const Bits &o) {
        for (size_t i = 0; i < w_.size(); i++) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bits operator|(Bits a, const Bits &b) { return a |= b; }
    friend Bits operator&(Bits a, const Bits &b) { return a &= b; }
    friend Bits operator-(Bits a, const Bits &b) { return a -= b; }

    bool operator==(const Bits &) const = default;

    bool intersects(const Bits &o) const {
        for (size_t i = 0; i < w_.size(); i++)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool subset_of(const Bits &o) const {
        for (size_t i = 0; i < w_.size(); i++)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    template <typename F>
    void for_each(F &&f) const {
        for (size_t i = 0; i < w_.size(); i++) {
            uint64_t w = w_[i];
            while (w) {
                uint32_t b = std::countr_zero(w);
                f(uint32_t(i * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<VertexId> to_vector() const {
        std::vector<VertexId> out;
        for_each([&](uint32_t v) { out.push_back(v); });
        return out;
    }

    const std::vector<uint64_t> &words() const { return w_; }
    std::vector<uint64_t> &words() { return w_; }

  private:
    std::vector<uint64_t> w_;
};

} // namespace sabgame

#endif
