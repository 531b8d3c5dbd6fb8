// Copyright 2026 The qfac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFAC_DFA_H
#define QFAC_DFA_H

#include <cstddef>
#include <string>
#include <vector>

#include "qfac/word.h"

namespace qfac {

using State = std::size_t;

/// Complete deterministic finite automaton (S, Sigma, delta, s0, F).
///
/// States carry names so that documents round-trip; all algorithms work on
/// indices. The constructor validates totality of delta and throws
/// ValidationError naming the offending field.
class Dfa {
   public:
    Dfa(std::vector<std::string> state_names, Alphabet alphabet, State initial, std::vector<bool> accepting,
        std::vector<std::vector<State>> delta);

    /// Same as the main constructor with states named q0, q1, ...
    Dfa(Alphabet alphabet, State initial, std::vector<bool> accepting, std::vector<std::vector<State>> delta);

    std::size_t num_states() const { return delta_.size(); }
    const std::vector<std::string> &state_names() const { return state_names_; }
    const Alphabet &alphabet() const { return alphabet_; }
    State initial() const { return initial_; }
    bool is_accepting(State s) const { return accepting_[s]; }
    const std::vector<bool> &accepting() const { return accepting_; }
    State next(State s, Symbol a) const { return delta_[s][a]; }
    const std::vector<std::vector<State>> &delta() const { return delta_; }

    /// Extended transition function delta*(s, w). Throws std::invalid_argument
    /// on symbols outside the alphabet.
    State run(State s, const Word &w) const;

    bool operator==(const Dfa &other) const = default;

   private:
    std::vector<std::string> state_names_;
    Alphabet alphabet_;
    State initial_;
    std::vector<bool> accepting_;
    std::vector<std::vector<State>> delta_;
};

/// q0, q1, ..., q{n-1}
std::vector<std::string> default_state_names(std::size_t n);

/// True iff delta*(s0, w) is accepting.
bool dfa_accepts(const Dfa &d, const Word &w);

}  // namespace qfac

#endif  // QFAC_DFA_H
