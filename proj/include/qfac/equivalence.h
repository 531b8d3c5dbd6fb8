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

#ifndef QFAC_EQUIVALENCE_H
#define QFAC_EQUIVALENCE_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfac/linalg.h"
#include "qfac/machines.h"
#include "qfac/word.h"

namespace qfac {

/// Default threshold for span residuals and probability gaps.
inline constexpr double kEquivTol = 1e-8;

/// A Qfac with k classical and n quantum basis states rewritten as a single
/// linear system on C^{kn}: block i of a configuration holds the quantum state
/// when the classical state is s_i (all other blocks zero).
struct BlockEmbedding {
    std::size_t k;
    std::size_t n;
    ComplexVector c0;                                // psi0 in block s0
    std::vector<ComplexMatrix> step_matrices;        // per symbol; block (delta(s_i, a), s_i) = U_{s_i a}
    std::vector<ComplexMatrix> outcome_projectors;   // per outcome; block-diagonal P_{s_i, gamma}
};

BlockEmbedding embed_qfac(const Qfac &a);

/// <c|P_gamma|c> with c = X_{w_m} ... X_{w_1} c0.
double embedding_prob(const BlockEmbedding &e, const Word &w, std::size_t outcome);

/// Bilinear machine (pi, {M(sigma)}, eta) with word function
/// f(w) = pi M(w_1) ... M(w_m) eta.
class Blm {
   public:
    struct Parts {
        Alphabet alphabet;
        ComplexVector pi;  // row vector
        std::vector<ComplexMatrix> step;
        ComplexVector eta;  // column vector
    };

    explicit Blm(Parts parts);

    std::size_t dim() const { return p_.pi.dim(); }
    const Alphabet &alphabet() const { return p_.alphabet; }
    const ComplexVector &pi() const { return p_.pi; }
    const ComplexMatrix &step(Symbol a) const { return p_.step[a]; }
    const ComplexVector &eta() const { return p_.eta; }
    const Parts &parts() const { return p_; }

   private:
    Parts p_;
};

Complex blm_word_fn(const Blm &b, const Word &w);

/// End vector sum_{i,j} |psi_{s_i,j}> (x) |psi_{s_i,j}>^* built from an
/// orthonormal range basis of each block of the outcome projector.
ComplexVector range_basis_end_vector(const BlockEmbedding &e, std::size_t outcome);

/// Row-major vectorization of the block-diagonal outcome projector. Equal to
/// range_basis_end_vector in exact arithmetic; this is the one bilinearize uses.
ComplexVector projector_end_vector(const BlockEmbedding &e, std::size_t outcome);

/// BLM of dimension (kn)^2 whose word function is Prob_{A,gamma}(w):
///   pi = (c0 (x) c0^*)^dag, M(sigma) = (X_sigma (x) X_sigma^*)^dag, eta = vec(P).
/// Throws std::invalid_argument when outcome is not in a.outcomes().
Blm bilinearize(const Qfac &a, std::string_view outcome);

struct EquivalenceVerdict {
    bool equivalent = true;
    std::optional<Word> witness;          // first inequivalence witness in breadth-first order
    std::size_t length_bound = 0;         // no witness can be longer than this
    std::size_t basis_size = 0;           // vectors in the closed span
    double max_abs_diff_at_witness = 0;   // |f1(w) - f2(w)| at the witness
    std::string outcome;                  // outcome checked (or the failing one)
};

/// Decides f_{b1} = f_{b2} by breadth-first closure of the joint row space
/// spanned by [pi1 M1(w), pi2 M2(w)] over all words w. A word's vector is kept
/// (and extended by every symbol) only if its normalized residual against the
/// current orthonormal basis exceeds tol, so at most dim1 + dim2 vectors are
/// kept and every witness has length below that. Throws std::invalid_argument
/// on alphabet mismatch.
EquivalenceVerdict blm_equivalent(const Blm &b1, const Blm &b2, double tol = kEquivTol);

/// Equivalence of two Qfac on one outcome via their bilinearizations; the
/// reported length bound is (k1 n1)^2 + (k2 n2)^2 - 1 and the witness gap is
/// re-evaluated on the machines directly.
EquivalenceVerdict qfac_equivalent(const Qfac &a1, const Qfac &a2, std::string_view outcome,
                                   double tol = kEquivTol);

/// Full equivalence: every outcome must agree. Stops at the first outcome
/// (in a1's order) that differs. Throws std::invalid_argument when the two
/// output alphabets differ as sets.
EquivalenceVerdict qfac_equivalent_all(const Qfac &a1, const Qfac &a2, double tol = kEquivTol);

/// Enumerates every word of length <= max_len in length-then-lexicographic
/// order and returns the first whose outcome probabilities differ by more
/// than tol.
std::optional<Word> brute_force_k_equiv(const Qfac &a1, const Qfac &a2, std::string_view outcome,
                                        std::size_t max_len, double tol = kEquivTol);

/// As brute_force_k_equiv, comparing all outcomes at every word.
std::optional<Word> brute_force_k_equiv_all(const Qfac &a1, const Qfac &a2, std::size_t max_len,
                                            double tol = kEquivTol);

}  // namespace qfac

#endif  // QFAC_EQUIVALENCE_H
