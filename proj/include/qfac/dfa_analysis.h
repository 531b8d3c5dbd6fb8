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

#ifndef QFAC_DFA_ANALYSIS_H
#define QFAC_DFA_ANALYSIS_H

#include <optional>

#include "qfac/dfa.h"

namespace qfac {

/// Minimal DFA for L(d): unreachable states are dropped, the rest merged by
/// Hopcroft partition refinement. States of the result are numbered in
/// breadth-first discovery order from the initial state (alphabet order breaks
/// ties) and named q0, q1, ..., so equal languages give identical DFAs.
Dfa minimize_dfa(const Dfa &d);

/// True iff d is already minimal (no unreachable or equivalent states).
bool is_minimal(const Dfa &d);

struct DfaEquivalence {
    bool equivalent;
    std::optional<Word> witness;  // shortest, length-lexicographically first
};

/// Product-automaton search. Throws std::invalid_argument on alphabet mismatch.
DfaEquivalence dfa_equivalent(const Dfa &d1, const Dfa &d2);

/// States q1 != q2 and nonempty words t, z with
/// delta*(q1, z) = delta*(q2, z) = q2, delta*(q1, t) = q1, delta*(q2, t) = q2.
struct FConstructionWitness {
    State q1;
    State q2;
    Word t;
    Word z;
};

/// States p != q and nonempty words x, y with delta*(p, x) = delta*(q, x) = q
/// and delta*(q, y) = p, plus a word d accepted from exactly one of p, q.
struct MmBlockerWitness {
    State p;
    State q;
    Word x;
    Word y;
    Word d;
};

/// Searches the synchronized pair graph on Q x Q: (q1, q2) qualifies iff it
/// lies on a nonempty cycle (t) and reaches (q2, q2) by a nonempty path (z).
/// Pairs are tried in (q1, q2) index order; words are the shortest,
/// length-lexicographically first. A minimal DFA has an F-construction iff
/// its language is not accepted by any multi-letter 1QFA with bounded error.
///
/// Throws std::invalid_argument when d is not minimal.
std::optional<FConstructionWitness> find_f_construction(const Dfa &d);

/// Searches for the two-state pattern that rules out acceptance by any
/// MM-1QFA. Absence of the pattern does not imply MM-1QFA acceptability.
///
/// Throws std::invalid_argument when d is not minimal.
std::optional<MmBlockerWitness> find_mm_blocker(const Dfa &d);

/// Direct delta* re-check of a witness against its defining equations.
bool verify(const Dfa &d, const FConstructionWitness &w);
bool verify(const Dfa &d, const MmBlockerWitness &w);

}  // namespace qfac

#endif  // QFAC_DFA_ANALYSIS_H
