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

#include "qfac/dfa.h"

namespace qfac {

std::vector<std::string> default_state_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; i++) {
        names.push_back("q" + std::to_string(i));
    }
    return names;
}

Dfa::Dfa(std::vector<std::string> state_names, Alphabet alphabet, State initial, std::vector<bool> accepting,
         std::vector<std::vector<State>> delta)
    : state_names_(std::move(state_names)),
      alphabet_(std::move(alphabet)),
      initial_(initial),
      accepting_(std::move(accepting)),
      delta_(std::move(delta)) {
    const std::size_t n = state_names_.size();
    if (n == 0) {
        throw ValidationError("states", "a DFA needs at least one state");
    }
    check_names(state_names_, "states");
    if (alphabet_.empty()) {
        throw ValidationError("alphabet", "alphabet is empty");
    }
    check_names(alphabet_, "alphabet");
    if (initial_ >= n) {
        throw ValidationError("initial", "initial state out of range");
    }
    if (accepting_.size() != n) {
        throw ValidationError("accepting", "accepting flags do not match the state count");
    }
    if (delta_.size() != n) {
        throw ValidationError("delta", "transition table does not match the state count");
    }
    for (State s = 0; s < n; s++) {
        for (Symbol a = 0; a < alphabet_.size(); a++) {
            if (delta_[s].size() != alphabet_.size()) {
                throw ValidationError("delta." + state_names_[s], "row does not cover the alphabet");
            }
            if (delta_[s][a] >= n) {
                throw ValidationError("delta." + state_names_[s] + "," + alphabet_[a], "target state out of range");
            }
        }
    }
}

Dfa::Dfa(Alphabet alphabet, State initial, std::vector<bool> accepting, std::vector<std::vector<State>> delta)
    : Dfa(default_state_names(delta.size()), std::move(alphabet), initial, std::move(accepting), delta) {}

State Dfa::run(State s, const Word &w) const {
    check_word(w, alphabet_.size());
    for (Symbol a : w) {
        s = delta_[s][a];
    }
    return s;
}

bool dfa_accepts(const Dfa &d, const Word &w) { return d.is_accepting(d.run(d.initial(), w)); }

}  // namespace qfac
