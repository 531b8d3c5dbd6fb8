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

#ifndef QFAC_CONSTRUCTIONS_H
#define QFAC_CONSTRUCTIONS_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfac/dfa.h"
#include "qfac/machines.h"

namespace qfac {

/// Which language a DFA x MO-1QFA product accepts, with L1 = L(dfa) and
/// L2 the language of the MO-1QFA.
enum class SetOp {
    kIntersection,  // L1 & L2
    kUnion,         // L1 | L2
    kDfaMinusQfa,   // L1 \ L2
    kQfaMinusDfa,   // L2 \ L1
};

std::string_view set_op_name(SetOp op);
std::optional<SetOp> parse_set_op(std::string_view name);

/// Zero-error embedding of a DFA: same classical part, one quantum basis
/// state, identity unitaries, and P_{s,a} = |0><0| exactly on accepting s.
Qfac dfa_to_qfac(const Dfa &d);

/// An MO-1QFA viewed as a Qfac with a single classical state and outcomes
/// {a, r}.
Qfac mo_to_qfac(const MoQfa &q);

/// Product of a DFA (classical part) and an MO-1QFA (quantum part). The
/// unitary U_{s,sigma} = U(sigma) ignores s; only the per-state measurement
/// depends on op. Throws std::invalid_argument when the alphabets differ.
Qfac combine(const Dfa &d, const MoQfa &q, SetOp op);

/// Two-dimensional MO-1QFA rotating by pi/m on every symbol, starting in |0>
/// and accepting on |0>: prob(w) = cos^2(|w| pi / m).
MoQfa build_rotation_mo1qfa(int m, Alphabet alphabet = {"0", "1"});

/// Two-state DFA over {0,1} for words ending in 0.
Dfa build_l0_dfa();

/// (m+1)-state ring DFA over {0,1} for { w0 : |w0| = km, k >= 1 }.
Dfa build_l0m_dfa(int m);

struct LanguageFamilyParams {
    int m = 2;
    std::vector<std::string> z;  // symbol names of the pattern word
    Alphabet alphabet;           // empty: the distinct symbols of z
};

/// DFA with states S_{i,j} (i = 0..|z|, j = 1..m) for words containing z as a
/// scattered subword and with length divisible by m.
Dfa build_lzm_dfa(const LanguageFamilyParams &params);

/// combine(build_l0_dfa(), build_rotation_mo1qfa(m), intersection).
Qfac build_l0m_qfac(int m);

}  // namespace qfac

#endif  // QFAC_CONSTRUCTIONS_H
