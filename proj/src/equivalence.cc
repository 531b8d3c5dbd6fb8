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

#include "qfac/equivalence.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace qfac {

BlockEmbedding embed_qfac(const Qfac &a) {
    const std::size_t k = a.num_classical();
    const std::size_t n = a.qdim();
    BlockEmbedding e{.k = k, .n = n, .c0 = ComplexVector(k * n), .step_matrices = {}, .outcome_projectors = {}};
    for (std::size_t r = 0; r < n; r++) {
        e.c0[a.initial_classical() * n + r] = a.initial_quantum()[r];
    }
    for (Symbol sym = 0; sym < a.alphabet().size(); sym++) {
        ComplexMatrix x(k * n, k * n);
        for (State i = 0; i < k; i++) {
            const State j = a.next(i, sym);
            const ComplexMatrix &u = a.unitary(i, sym);
            for (std::size_t r = 0; r < n; r++) {
                for (std::size_t c = 0; c < n; c++) {
                    x(j * n + r, i * n + c) = u(r, c);
                }
            }
        }
        e.step_matrices.push_back(std::move(x));
    }
    for (std::size_t g = 0; g < a.outcomes().size(); g++) {
        ComplexMatrix p(k * n, k * n);
        for (State i = 0; i < k; i++) {
            const ComplexMatrix &blk = a.projector(i, g);
            for (std::size_t r = 0; r < n; r++) {
                for (std::size_t c = 0; c < n; c++) {
                    p(i * n + r, i * n + c) = blk(r, c);
                }
            }
        }
        e.outcome_projectors.push_back(std::move(p));
    }
    return e;
}

double embedding_prob(const BlockEmbedding &e, const Word &w, std::size_t outcome) {
    check_word(w, e.step_matrices.size());
    ComplexVector c = e.c0;
    for (Symbol sym : w) {
        c = mat_vec(e.step_matrices[sym], c);
    }
    return inner(c, mat_vec(e.outcome_projectors.at(outcome), c)).real();
}

Blm::Blm(Parts parts) : p_(std::move(parts)) {
    if (p_.alphabet.empty()) {
        throw ValidationError("alphabet", "alphabet is empty");
    }
    check_names(p_.alphabet, "alphabet");
    const std::size_t n = p_.pi.dim();
    if (!all_finite(p_.pi)) {
        throw ValidationError("pi", "non-finite entry");
    }
    if (p_.eta.dim() != n) {
        throw ValidationError("eta", "dimension differs from pi");
    }
    if (!all_finite(p_.eta)) {
        throw ValidationError("eta", "non-finite entry");
    }
    if (p_.step.size() != p_.alphabet.size()) {
        throw ValidationError("step", "expected one matrix per symbol");
    }
    for (Symbol a = 0; a < p_.alphabet.size(); a++) {
        const ComplexMatrix &m = p_.step[a];
        if (m.rows() != n || m.cols() != n) {
            throw ValidationError("step." + p_.alphabet[a], "expected a " + std::to_string(n) + "x" +
                                                                std::to_string(n) + " matrix");
        }
        if (!all_finite(m)) {
            throw ValidationError("step." + p_.alphabet[a], "non-finite entry");
        }
    }
}

Complex blm_word_fn(const Blm &b, const Word &w) {
    check_word(w, b.alphabet().size());
    ComplexVector row = b.pi();
    for (Symbol a : w) {
        row = vec_mat(row, b.step(a));
    }
    return dot(row, b.eta());
}

ComplexVector range_basis_end_vector(const BlockEmbedding &e, std::size_t outcome) {
    const std::size_t kn = e.k * e.n;
    ComplexVector eta(kn * kn);
    const ComplexMatrix &p = e.outcome_projectors.at(outcome);
    for (std::size_t i = 0; i < e.k; i++) {
        ComplexMatrix block(e.n, e.n);
        for (std::size_t r = 0; r < e.n; r++) {
            for (std::size_t c = 0; c < e.n; c++) {
                block(r, c) = p(i * e.n + r, i * e.n + c);
            }
        }
        for (const ComplexVector &b : range_basis(block)) {
            ComplexVector lifted(kn);
            for (std::size_t r = 0; r < e.n; r++) {
                lifted[i * e.n + r] = b[r];
            }
            const ComplexVector term = kron(lifted, conj(lifted));
            for (std::size_t t = 0; t < eta.dim(); t++) {
                eta[t] += term[t];
            }
        }
    }
    return eta;
}

ComplexVector projector_end_vector(const BlockEmbedding &e, std::size_t outcome) {
    return vectorize(e.outcome_projectors.at(outcome));
}

Blm bilinearize(const Qfac &a, std::string_view outcome) {
    const std::size_t g = a.outcome_index(outcome);
    const BlockEmbedding e = embed_qfac(a);
    // Column configurations evolve as c -> X c, while the BLM multiplies a row
    // vector from the left, so every factor enters conjugate-transposed:
    // f(w) = (c (x) c^*)^dag vec(P) = <c|P|c>.
    Blm::Parts p{
        .alphabet = a.alphabet(),
        .pi = conj(kron(e.c0, conj(e.c0))),
        .step = {},
        .eta = projector_end_vector(e, g),
    };
    for (const ComplexMatrix &x : e.step_matrices) {
        p.step.push_back(dagger(kron(x, conj(x))));
    }
    return Blm(std::move(p));
}

namespace {

double vec_norm(const ComplexVector &v) { return std::sqrt(norm_sq(v)); }

/// Residual of unit-normalized v against an orthonormal basis; two passes of
/// modified Gram-Schmidt.
ComplexVector residual(const ComplexVector &v, const std::vector<ComplexVector> &basis) {
    ComplexVector r = v;
    for (int pass = 0; pass < 2; pass++) {
        for (const ComplexVector &q : basis) {
            const Complex proj = inner(q, r);
            for (std::size_t i = 0; i < r.dim(); i++) {
                r[i] -= proj * q[i];
            }
        }
    }
    return r;
}

}  // namespace

EquivalenceVerdict blm_equivalent(const Blm &b1, const Blm &b2, double tol) {
    if (b1.alphabet() != b2.alphabet()) {
        throw std::invalid_argument("blm_equivalent: alphabets differ");
    }
    const std::size_t n1 = b1.dim();
    const std::size_t n2 = b2.dim();
    const std::size_t n = n1 + n2;
    const std::size_t sigma = b1.alphabet().size();

    ComplexVector eta(n);
    for (std::size_t i = 0; i < n1; i++) {
        eta[i] = b1.eta()[i];
    }
    for (std::size_t i = 0; i < n2; i++) {
        eta[n1 + i] = -b2.eta()[i];
    }
    auto joint_step = [&](const ComplexVector &v, Symbol a) {
        ComplexVector left(n1), right(n2);
        for (std::size_t i = 0; i < n1; i++) {
            left[i] = v[i];
        }
        for (std::size_t i = 0; i < n2; i++) {
            right[i] = v[n1 + i];
        }
        left = vec_mat(left, b1.step(a));
        right = vec_mat(right, b2.step(a));
        ComplexVector out(n);
        for (std::size_t i = 0; i < n1; i++) {
            out[i] = left[i];
        }
        for (std::size_t i = 0; i < n2; i++) {
            out[n1 + i] = right[i];
        }
        return out;
    };

    EquivalenceVerdict verdict;
    verdict.length_bound = n - 1;

    struct Item {
        Word word;
        ComplexVector v;
    };
    std::deque<Item> queue;
    {
        ComplexVector start(n);
        for (std::size_t i = 0; i < n1; i++) {
            start[i] = b1.pi()[i];
        }
        for (std::size_t i = 0; i < n2; i++) {
            start[n1 + i] = b2.pi()[i];
        }
        queue.push_back(Item{Word{}, std::move(start)});
    }
    std::vector<ComplexVector> basis;
    while (!queue.empty()) {
        Item item = std::move(queue.front());
        queue.pop_front();
        const double gap = std::abs(dot(item.v, eta));
        if (gap > tol && !verdict.witness) {
            verdict.witness = item.word;
            verdict.max_abs_diff_at_witness = gap;
        }
        const double nrm = vec_norm(item.v);
        if (nrm == 0 || basis.size() == n) {
            continue;
        }
        ComplexVector r = residual(Complex(1.0 / nrm) * item.v, basis);
        const double rn = vec_norm(r);
        if (rn <= tol) {
            continue;
        }
        basis.push_back(Complex(1.0 / rn) * r);
        for (Symbol a = 0; a < sigma; a++) {
            Word next = item.word;
            next.push_back(a);
            queue.push_back(Item{std::move(next), joint_step(item.v, a)});
        }
    }
    verdict.basis_size = basis.size();
    verdict.equivalent = !verdict.witness.has_value();
    return verdict;
}

EquivalenceVerdict qfac_equivalent(const Qfac &a1, const Qfac &a2, std::string_view outcome, double tol) {
    if (a1.alphabet() != a2.alphabet()) {
        throw std::invalid_argument("qfac_equivalent: input alphabets differ");
    }
    EquivalenceVerdict verdict = blm_equivalent(bilinearize(a1, outcome), bilinearize(a2, outcome), tol);
    const std::size_t d1 = a1.num_classical() * a1.qdim();
    const std::size_t d2 = a2.num_classical() * a2.qdim();
    verdict.length_bound = d1 * d1 + d2 * d2 - 1;
    verdict.outcome = std::string(outcome);
    if (verdict.witness) {
        verdict.max_abs_diff_at_witness =
            std::abs(qfac_accept_prob(a1, *verdict.witness, outcome) - qfac_accept_prob(a2, *verdict.witness, outcome));
    }
    return verdict;
}

EquivalenceVerdict qfac_equivalent_all(const Qfac &a1, const Qfac &a2, double tol) {
    const std::set<std::string> o1(a1.outcomes().begin(), a1.outcomes().end());
    const std::set<std::string> o2(a2.outcomes().begin(), a2.outcomes().end());
    if (o1 != o2) {
        throw std::invalid_argument("qfac_equivalent: output alphabets differ");
    }
    EquivalenceVerdict all;
    for (const std::string &g : a1.outcomes()) {
        EquivalenceVerdict v = qfac_equivalent(a1, a2, g, tol);
        if (!v.equivalent) {
            return v;
        }
        all.length_bound = v.length_bound;
        all.basis_size = std::max(all.basis_size, v.basis_size);
    }
    all.equivalent = true;
    return all;
}

namespace {

/// Iterative deepening over words of exactly each length, sharing prefix
/// computation along the depth-first path.
std::optional<Word> enumerate_gap(const Qfac &a1, const Qfac &a2, std::size_t max_len,
                                  const std::vector<std::pair<std::size_t, std::size_t>> &outcomes, double tol) {
    if (a1.alphabet() != a2.alphabet()) {
        throw std::invalid_argument("brute_force_k_equiv: input alphabets differ");
    }
    const std::size_t sigma = a1.alphabet().size();
    auto differs = [&](State s1, const ComplexVector &v1, State s2, const ComplexVector &v2) {
        for (const auto &[g1, g2] : outcomes) {
            const double p1 = norm_sq(mat_vec(a1.projector(s1, g1), v1));
            const double p2 = norm_sq(mat_vec(a2.projector(s2, g2), v2));
            if (std::abs(p1 - p2) > tol) {
                return true;
            }
        }
        return false;
    };
    Word word;
    std::function<bool(std::size_t, State, const ComplexVector &, State, const ComplexVector &)> dfs =
        [&](std::size_t remaining, State s1, const ComplexVector &v1, State s2, const ComplexVector &v2) {
            if (remaining == 0) {
                return differs(s1, v1, s2, v2);
            }
            for (Symbol a = 0; a < sigma; a++) {
                word.push_back(a);
                if (dfs(remaining - 1, a1.next(s1, a), mat_vec(a1.unitary(s1, a), v1), a2.next(s2, a),
                        mat_vec(a2.unitary(s2, a), v2))) {
                    return true;
                }
                word.pop_back();
            }
            return false;
        };
    for (std::size_t len = 0; len <= max_len; len++) {
        word.clear();
        if (dfs(len, a1.initial_classical(), a1.initial_quantum(), a2.initial_classical(), a2.initial_quantum())) {
            return word;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Word> brute_force_k_equiv(const Qfac &a1, const Qfac &a2, std::string_view outcome,
                                        std::size_t max_len, double tol) {
    return enumerate_gap(a1, a2, max_len, {{a1.outcome_index(outcome), a2.outcome_index(outcome)}}, tol);
}

std::optional<Word> brute_force_k_equiv_all(const Qfac &a1, const Qfac &a2, std::size_t max_len, double tol) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t g = 0; g < a1.outcomes().size(); g++) {
        pairs.emplace_back(g, a2.outcome_index(a1.outcomes()[g]));
    }
    if (a1.outcomes().size() != a2.outcomes().size()) {
        throw std::invalid_argument("brute_force_k_equiv: output alphabets differ");
    }
    return enumerate_gap(a1, a2, max_len, pairs, tol);
}

}  // namespace qfac
