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

#ifndef QFAC_MACHINES_H
#define QFAC_MACHINES_H

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qfac/dfa.h"
#include "qfac/linalg.h"
#include "qfac/word.h"

namespace qfac {

// Every machine validates its invariants once, in the constructor, and throws
// ValidationError with the serialized field path of the first violation.
// Evaluation functions assume a valid machine and only check the input word.

/// Measure-once 1QFA (Q, Sigma, psi0, {U(sigma)}, Q_acc); Q_acc is given as
/// the projector P_a.
class MoQfa {
   public:
    struct Parts {
        Alphabet alphabet;
        ComplexVector initial_state;
        std::vector<ComplexMatrix> unitaries;  // indexed by symbol
        ComplexMatrix accepting_proj;
    };

    explicit MoQfa(Parts parts, double tol = kStructTol);

    std::size_t qdim() const { return p_.initial_state.dim(); }
    const Alphabet &alphabet() const { return p_.alphabet; }
    const ComplexVector &initial_state() const { return p_.initial_state; }
    const ComplexMatrix &unitary(Symbol a) const { return p_.unitaries[a]; }
    const ComplexMatrix &accepting_proj() const { return p_.accepting_proj; }
    const Parts &parts() const { return p_; }

   private:
    Parts p_;
};

/// Measure-many 1QFA. The end-marker '$' is not part of the input alphabet;
/// its unitary is `end_unitary`.
class MmQfa {
   public:
    struct Parts {
        Alphabet alphabet;
        ComplexVector initial_state;
        std::vector<ComplexMatrix> unitaries;
        ComplexMatrix end_unitary;
        ComplexMatrix accepting_proj;
        ComplexMatrix reject_proj;
        ComplexMatrix nonhalt_proj;
    };

    explicit MmQfa(Parts parts, double tol = kStructTol);

    std::size_t qdim() const { return p_.initial_state.dim(); }
    const Alphabet &alphabet() const { return p_.alphabet; }
    const Parts &parts() const { return p_; }

   private:
    Parts p_;
};

/// k-letter 1QFA. The unitary applied at each step is selected by the window
/// of the last k symbols of (pad^{k-1} . prefix).
class KLetterQfa {
   public:
    /// Window entries are symbol indices or kPad (the left padding letter).
    using Window = std::vector<Symbol>;
    static constexpr Symbol kPad = std::numeric_limits<Symbol>::max();
    /// Serialized name of the padding letter.
    static constexpr std::string_view kPadName = "_";

    struct Parts {
        std::size_t k;
        Alphabet alphabet;
        ComplexVector initial_state;
        std::map<Window, ComplexMatrix> nu;
        ComplexMatrix accepting_proj;
    };

    explicit KLetterQfa(Parts parts, double tol = kStructTol);

    std::size_t k() const { return p_.k; }
    std::size_t qdim() const { return p_.initial_state.dim(); }
    const Alphabet &alphabet() const { return p_.alphabet; }
    const Parts &parts() const { return p_; }

    /// Every window that can occur on some input: pad^j u with u in Sigma^{k-j},
    /// 0 <= j <= k-1.
    std::vector<Window> reachable_windows() const;

   private:
    Parts p_;
};

/// Comma-joined window key, padding written as "_".
std::string window_key(const Alphabet &alphabet, const KLetterQfa::Window &w);

/// 1QFA with control language (Q, psi0, {U(sigma)}_{sigma in Sigma+$}, O, L).
class QfaCl {
   public:
    struct Parts {
        Alphabet alphabet;
        ComplexVector initial_state;
        std::vector<ComplexMatrix> unitaries;  // |alphabet| + 1 entries, last one for '$'
        Alphabet outcome_labels;
        std::vector<ComplexMatrix> outcome_projectors;  // aligned with outcome_labels
        Dfa control;                                    // over outcome_labels
    };

    explicit QfaCl(Parts parts, double tol = kStructTol);

    std::size_t qdim() const { return p_.initial_state.dim(); }
    const Alphabet &alphabet() const { return p_.alphabet; }
    Symbol end_marker() const { return p_.alphabet.size(); }
    const Parts &parts() const { return p_; }

   private:
    Parts p_;
};

/// One-way QFA together with classical states: a DFA skeleton whose current
/// classical state selects the unitary for each symbol, and whose final
/// classical state selects the projective measurement.
class Qfac {
   public:
    struct Parts {
        std::vector<std::string> classical_states;
        Alphabet alphabet;
        Alphabet outcomes;
        State initial_classical;
        ComplexVector initial_quantum;
        std::vector<std::vector<State>> delta;              // [state][symbol]
        std::vector<std::vector<ComplexMatrix>> unitaries;  // [state][symbol]
        std::vector<std::vector<ComplexMatrix>> measurements;  // [state][outcome]
    };

    explicit Qfac(Parts parts, double tol = kStructTol);

    std::size_t num_classical() const { return p_.classical_states.size(); }
    std::size_t qdim() const { return p_.initial_quantum.dim(); }
    const std::vector<std::string> &classical_states() const { return p_.classical_states; }
    const Alphabet &alphabet() const { return p_.alphabet; }
    const Alphabet &outcomes() const { return p_.outcomes; }
    State initial_classical() const { return p_.initial_classical; }
    const ComplexVector &initial_quantum() const { return p_.initial_quantum; }
    State next(State s, Symbol a) const { return p_.delta[s][a]; }
    const ComplexMatrix &unitary(State s, Symbol a) const { return p_.unitaries[s][a]; }
    const ComplexMatrix &projector(State s, std::size_t outcome) const { return p_.measurements[s][outcome]; }
    const Parts &parts() const { return p_; }

    /// Index of an outcome label; throws std::invalid_argument when absent.
    std::size_t outcome_index(std::string_view label) const;

   private:
    Parts p_;
};

/// Label of the accepting outcome when a Qfac is used as an acceptor.
inline constexpr std::string_view kAcceptOutcome = "a";
inline constexpr std::string_view kRejectOutcome = "r";

double mo_accept_prob(const MoQfa &a, const Word &w);

struct MmProbs {
    double accept;
    double reject;
};

/// Accept/reject probabilities summed over every halting step, '$' included.
/// The pair is returned as computed; it need not sum to 1.
MmProbs mm_probs(const MmQfa &a, const Word &w);

double kletter_accept_prob(const KLetterQfa &a, const Word &w);

/// Exact acceptance probability of a control-language machine on w$.
///
/// Instead of summing over all |C|^{|w|+1} outcome sequences, carries for
/// each control-DFA state e the unnormalized density
///   rho_e = sum over outcome prefixes y reaching e of |phi_y><phi_y|
/// and updates rho'_{e'} = sum_{c : delta_L(e, c) = e'} P(c) U rho_e U^dag P(c).
/// The result is the total trace over accepting control states.
double qfacl_accept_prob(const QfaCl &a, const Word &w);

/// Probability of each outcome (indexed like a.outcomes()) after reading w.
std::vector<double> qfac_outcome_probs(const Qfac &a, const Word &w);

/// Probability of `outcome`; throws std::invalid_argument if it is not in
/// a.outcomes().
double qfac_accept_prob(const Qfac &a, const Word &w, std::string_view outcome = kAcceptOutcome);

struct RunTrace {
    std::vector<State> classical_path;           // mu(prefix), |w|+1 entries
    std::vector<ComplexVector> quantum_path;     // v(prefix)|psi0>, |w|+1 entries
    std::vector<double> outcome_distribution;    // indexed like outcomes()
};

RunTrace qfac_run_trace(const Qfac &a, const Word &w);

}  // namespace qfac

#endif  // QFAC_MACHINES_H
