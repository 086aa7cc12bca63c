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

#ifndef SABGAME_TYPES_HPP
#define SABGAME_TYPES_HPP

#include <cstdint>
#include <exception>
#include <limits>
#include <sstream>
#include <string>

namespace sabgame {

using VertexId = uint32_t;
inline constexpr VertexId NO_VERTEX = std::numeric_limits<VertexId>::max();

enum class Side { Traveler, Saboteur };
enum class Objective { Reachability, Buchi };
enum class ObsMode { Full, None, Adjacent, Map };

/** Error codes mirroring the public C enum; thrown internally as Error. */
enum class Code {
    Parse,
    Validation,
    IllegalMove,
    ArenaTooLarge,
    UnboundedBudget,
    Unsupported,
    Strategy,
    SpaceBound,
    Horizon,
    Io,
    InvalidArg,
};

struct Error : std::exception {
    Code code;
    std::string msg;
    Error(Code c, std::string m) : code(c), msg(std::move(m)) {}
    const char *what() const noexcept override { return msg.c_str(); }
};

[[noreturn]] inline void fail(Code c, const std::string &msg) { throw Error(c, msg); }

/** Saboteur budget: number of vertices it may mark over the whole play. */
struct Budget {
    bool finite = true;
    uint32_t m = 0;

    bool operator==(const Budget &) const = default;
};

/** Printf-free message building: msg("x=", x, " y=", y). */
template <typename... Args>
std::string msg(Args &&...args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

template <typename A, typename B, typename... Rest>
[[noreturn]] void fail(Code c, A &&a, B &&b, Rest &&...rest) {
    throw Error(c, msg(std::forward<A>(a), std::forward<B>(b), std::forward<Rest>(rest)...));
}

} // namespace sabgame

#endif
