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

#ifndef SABGAME_ATM_HPP
#define SABGAME_ATM_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "game.hpp"

namespace sabgame {

/** Tape letters. T is letter 0, B is letter 1 and doubles as the blank. */
constexpr uint8_t LETTER_T = 0;
constexpr uint8_t LETTER_B = 1;

/** One transition: next state, letter written, head direction. */
struct AtmStep {
    uint32_t to = 0;
    uint8_t write = LETTER_T;
    bool right = true;
};

/**
 * Alternating machine over the binary tape alphabet with an existential /
 * universal state split and an explicit polynomial space bound. The accept
 * and reject states are existential and carry no transitions; every other
 * (state, letter) pair has at least one transition. delta[q][letter] lists
 * the choices open to the mover (existential: the machine, universal: the
 * adversary).
 */
struct AtmSpec {
    std::vector<std::string> states;
    std::vector<bool> existential;
    uint32_t initial = 0, accept = 0, reject = 0;
    std::vector<std::array<std::vector<AtmStep>, 2>> delta;
    std::vector<uint64_t> space_coeff; // polynomial coefficients, constant first

    uint32_t nstates() const { return uint32_t(states.size()); }
    bool is_final(uint32_t q) const { return q == accept || q == reject; }

    /** P(n): usable tape cells for an input of length n (saturating). */
    uint64_t space(uint64_t n) const;
};

/** Parses and validates a machine document (see sab_atm_parse). */
AtmSpec parse_atm(const std::string &json_text);

/** Parses a word over the letters T and B. */
std::vector<uint8_t> parse_word(const std::string &word);

/**
 * Bounded-space acceptance. Configurations are (state, head, tape) with the
 * tape padded to P(|w|) blanks; accepting configurations are the least
 * fixpoint of: the accept state accepts, an existential configuration
 * accepts when some transition leads to an accepting configuration, a
 * universal one when all transitions do. A head move outside 1..P(|w|)
 * makes that branch non-accepting, and unproductive loops reject.
 *
 * pre: |w| <= P(|w|) (SpaceBound otherwise); the configuration space
 *      |Q| * P * 2^P stays within the evaluation guard (InvalidArg).
 */
bool atm_accepts(const AtmSpec &m, const std::vector<uint8_t> &word);

/**
 * Compiled hardness game plus its gadget directory: `blocks` maps a gadget
 * identity ("I", "E(q,p)", "all(q,p,V)", "any(q,p,V)", "A(p)", "R(p)") to
 * its vertex block, and tape/post hold the shared per-cell vertex pairs
 * indexed [p-1][letter].
 */
struct GadgetGraph {
    Game game;
    std::map<std::string, std::vector<VertexId>> blocks;
    std::vector<std::array<VertexId, 2>> tape;
    std::vector<std::array<VertexId, 2>> post;
};

/**
 * Compiles machine and word into a sabotage game won by the traveler
 * exactly when the machine accepts the word: one saboteur with budget 1,
 * adjacent observation, a single final vertex.
 *
 * The game strings together one input block that walks the padded word
 * onto the shared tape vertices, one eraser block per non-final state and
 * cell that forces the saboteur to claim the cell's letter and lets the
 * traveler audit the claim, and one choice block per (state, cell, letter)
 * whose branches realize the transitions: acknowledgement lanes for the
 * chooser's pick, a tape visit that writes the new letter, and exits into
 * the next eraser or into one-move accept / dead-end reject blocks. Escape
 * lanes reaching the final vertex are fenced by saboteur catch edges that
 * fire exactly when the fenced deviation is dishonest.
 *
 * pre: |w| <= P(|w|) (SpaceBound otherwise).
 */
GadgetGraph compile_atm(const AtmSpec &m, const std::vector<uint8_t> &word);

/**
 * Cooperative play script for the run selected by `choices` (one transition
 * index per machine action, existential and universal alike; indices count
 * the surviving in-tape branches of the choice block). Positions are listed
 * per round; a checkpoint marks the round after which a machine action is
 * complete and carries the tape vertices that must then be exactly the
 * suspected ones. The script ends at the final vertex (accepts) or in the
 * reject dead end; a short `choices` list truncates it after the last
 * selected action.
 */
struct HonestPlay {
    std::vector<VertexId> traveler;
    std::vector<VertexId> saboteur;
    struct Checkpoint {
        size_t round; // 1-based round index into traveler/saboteur
        std::vector<VertexId> tape;
    };
    std::vector<Checkpoint> checkpoints;
    bool accepts = false;
};

HonestPlay honest_play(const GadgetGraph &gg, const AtmSpec &m, const std::vector<uint8_t> &word,
                       const std::vector<uint32_t> &choices);

} // namespace sabgame

#endif
