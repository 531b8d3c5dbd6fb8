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

// Random machines and independent reference computations for the tests.
// The oracles here use plain index loops over raw entries and never call the
// evaluation routines they are compared against.

#ifndef QFAC_TESTS_SUPPORT_H
#define QFAC_TESTS_SUPPORT_H

#include <algorithm>
#include <cmath>
#include <numeric>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qfac/dfa.h"
#include "qfac/linalg.h"
#include "qfac/machines.h"

namespace qfac::testkit {

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Random structures.

inline Complex gaussian_complex(Rng &rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    return {g(rng), g(rng)};
}

inline ComplexVector random_state(Rng &rng, std::size_t n) {
    ComplexVector v(n);
    double total = 0;
    for (std::size_t i = 0; i < n; i++) {
        v[i] = gaussian_complex(rng);
        total += std::norm(v[i]);
    }
    for (std::size_t i = 0; i < n; i++) {
        v[i] /= std::sqrt(total);
    }
    return v;
}

/// Haar-distributed unitary: Gram-Schmidt on the columns of a Ginibre matrix.
inline ComplexMatrix haar_unitary(Rng &rng, std::size_t n) {
    std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
    for (auto &c : cols) {
        for (auto &x : c) {
            x = gaussian_complex(rng);
        }
    }
    for (std::size_t j = 0; j < n; j++) {
        for (std::size_t pass = 0; pass < 2; pass++) {
            for (std::size_t i = 0; i < j; i++) {
                Complex ip = 0;
                for (std::size_t r = 0; r < n; r++) {
                    ip += std::conj(cols[i][r]) * cols[j][r];
                }
                for (std::size_t r = 0; r < n; r++) {
                    cols[j][r] -= ip * cols[i][r];
                }
            }
        }
        double nn = 0;
        for (auto &x : cols[j]) {
            nn += std::norm(x);
        }
        for (auto &x : cols[j]) {
            x /= std::sqrt(nn);
        }
    }
    ComplexMatrix u(n, n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            u(r, c) = cols[c][r];
        }
    }
    return u;
}

/// A complete family of orthogonal projectors: a random orthonormal basis is
/// split among `count` outcomes. The first min(n, count) basis vectors go to
/// distinct outcomes in random order, the rest to uniformly random outcomes.
inline std::vector<ComplexMatrix> random_measurement(Rng &rng, std::size_t n, std::size_t count) {
    const ComplexMatrix basis = haar_unitary(rng, n);
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<ComplexMatrix> out(count, ComplexMatrix(n, n));
    for (std::size_t c = 0; c < n; c++) {
        const std::size_t g = c < count ? order[c] : pick(rng);
        auto &p = out[g];
        for (std::size_t r = 0; r < n; r++) {
            for (std::size_t s = 0; s < n; s++) {
                p(r, s) += basis(r, c) * std::conj(basis(s, c));
            }
        }
    }
    return out;
}

inline Alphabet binary() { return {"0", "1"}; }

inline Dfa random_dfa(Rng &rng, std::size_t n, const Alphabet &alphabet = binary()) {
    std::uniform_int_distribution<State> st(0, n - 1);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::vector<State>> delta(n, std::vector<State>(alphabet.size()));
    std::vector<bool> accepting(n);
    for (State s = 0; s < n; s++) {
        for (auto &t : delta[s]) {
            t = st(rng);
        }
        accepting[s] = coin(rng);
    }
    return Dfa(default_state_names(n), alphabet, 0, accepting, delta);
}

inline Qfac random_qfac(Rng &rng, std::size_t k, std::size_t n, const Alphabet &alphabet = binary(),
                        const Alphabet &outcomes = {"a", "r"}) {
    std::uniform_int_distribution<State> st(0, k - 1);
    Qfac::Parts p{
        .classical_states = default_state_names(k),
        .alphabet = alphabet,
        .outcomes = outcomes,
        .initial_classical = st(rng),
        .initial_quantum = random_state(rng, n),
        .delta = {},
        .unitaries = {},
        .measurements = {},
    };
    for (State s = 0; s < k; s++) {
        p.delta.emplace_back();
        p.unitaries.emplace_back();
        for (std::size_t a = 0; a < alphabet.size(); a++) {
            p.delta[s].push_back(st(rng));
            p.unitaries[s].push_back(haar_unitary(rng, n));
        }
        p.measurements.push_back(random_measurement(rng, n, outcomes.size()));
    }
    return Qfac(std::move(p));
}

inline MoQfa random_mo(Rng &rng, std::size_t n, const Alphabet &alphabet = binary()) {
    MoQfa::Parts p{alphabet, random_state(rng, n), {}, random_measurement(rng, n, 2)[0]};
    for (std::size_t a = 0; a < alphabet.size(); a++) {
        p.unitaries.push_back(haar_unitary(rng, n));
    }
    return MoQfa(std::move(p));
}

inline MmQfa random_mm(Rng &rng, std::size_t n, const Alphabet &alphabet = binary()) {
    auto m = random_measurement(rng, n, 3);
    MmQfa::Parts p{alphabet, random_state(rng, n), {}, haar_unitary(rng, n), m[0], m[1], m[2]};
    for (std::size_t a = 0; a < alphabet.size(); a++) {
        p.unitaries.push_back(haar_unitary(rng, n));
    }
    return MmQfa(std::move(p));
}

/// Every window pad^j u, u in Sigma^{k-j}, 0 <= j < k, enumerated directly.
inline std::vector<KLetterQfa::Window> all_windows(std::size_t k, std::size_t sigma) {
    std::vector<KLetterQfa::Window> out;
    for (std::size_t j = 0; j < k; j++) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < k - j; i++) {
            count *= sigma;
        }
        for (std::size_t code = 0; code < count; code++) {
            KLetterQfa::Window w(j, KLetterQfa::kPad);
            std::size_t rest = code;
            std::vector<Symbol> tail(k - j);
            for (std::size_t i = k - j; i-- > 0;) {
                tail[i] = rest % sigma;
                rest /= sigma;
            }
            w.insert(w.end(), tail.begin(), tail.end());
            out.push_back(std::move(w));
        }
    }
    return out;
}

inline KLetterQfa random_kletter(Rng &rng, std::size_t k, std::size_t n, const Alphabet &alphabet = binary()) {
    KLetterQfa::Parts p{k, alphabet, random_state(rng, n), {}, random_measurement(rng, n, 2)[0]};
    for (auto &w : all_windows(k, alphabet.size())) {
        p.nu.emplace(w, haar_unitary(rng, n));
    }
    return KLetterQfa(std::move(p));
}

inline QfaCl random_qfacl(Rng &rng, std::size_t n, std::size_t labels, std::size_t control_states,
                          const Alphabet &alphabet = binary()) {
    Alphabet names;
    for (std::size_t i = 0; i < labels; i++) {
        names.push_back("c" + std::to_string(i));
    }
    QfaCl::Parts p{alphabet, random_state(rng, n), {}, names, random_measurement(rng, n, labels),
                   random_dfa(rng, control_states, names)};
    for (std::size_t a = 0; a <= alphabet.size(); a++) {
        p.unitaries.push_back(haar_unitary(rng, n));
    }
    return QfaCl(std::move(p));
}

/// The same machine written in a random basis V (U -> V U V^dagger, P -> V P V^dagger),
/// with a global phase on the initial state.
inline Qfac conjugated_copy(Rng &rng, const Qfac &a) {
    const ComplexMatrix v = haar_unitary(rng, a.qdim());
    const ComplexMatrix vd = dagger(v);
    Qfac::Parts p = a.parts();
    const Complex phase = std::polar(1.0, 0.7);
    p.initial_quantum = phase * mat_vec(v, p.initial_quantum);
    for (auto &row : p.unitaries) {
        for (auto &u : row) {
            u = mat_mul(mat_mul(v, u), vd);
        }
    }
    for (auto &row : p.measurements) {
        for (auto &m : row) {
            m = mat_mul(mat_mul(v, m), vd);
        }
    }
    return Qfac(std::move(p));
}

/// Adds a copy of classical state `s` and sends every transition on symbol 0
/// into s to the copy instead. The recognized distributions do not change.
inline Qfac with_split_state(const Qfac &a, State s) {
    Qfac::Parts p = a.parts();
    const State copy = p.classical_states.size();
    p.classical_states.push_back("split");
    p.delta.push_back(p.delta[s]);
    p.unitaries.push_back(p.unitaries[s]);
    p.measurements.push_back(p.measurements[s]);
    for (auto &row : p.delta) {
        if (row[0] == s) {
            row[0] = copy;
        }
    }
    return Qfac(std::move(p));
}

// ---------------------------------------------------------------------------
// Words.

/// Calls f on every word over {0..sigma-1} of length <= max_len.
inline void for_each_word(std::size_t sigma, std::size_t max_len, const std::function<void(const Word &)> &f) {
    Word w;
    for (std::size_t len = 0; len <= max_len; len++) {
        w.assign(len, 0);
        while (true) {
            f(w);
            std::size_t i = len;
            while (i > 0 && w[i - 1] == sigma - 1) {
                w[--i] = 0;
            }
            if (i == 0) {
                break;
            }
            w[i - 1]++;
        }
    }
}

inline Word w01(const std::string &s) {
    Word w;
    for (char c : s) {
        w.push_back(static_cast<Symbol>(c - '0'));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Raw-loop oracles.

inline std::vector<Complex> raw_apply(const ComplexMatrix &m, const std::vector<Complex> &v) {
    std::vector<Complex> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); r++) {
        for (std::size_t c = 0; c < m.cols(); c++) {
            out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

inline std::vector<Complex> raw_entries(const ComplexVector &v) { return {v.entries().begin(), v.entries().end()}; }

inline double raw_norm_sq(const std::vector<Complex> &v) {
    double s = 0;
    for (auto x : v) {
        s += std::norm(x);
    }
    return s;
}

/// Qfac outcome probabilities by direct simulation.
inline std::vector<double> oracle_qfac_probs(const Qfac &a, const Word &w) {
    const auto &p = a.parts();
    State s = p.initial_classical;
    auto psi = raw_entries(p.initial_quantum);
    for (Symbol x : w) {
        psi = raw_apply(p.unitaries[s][x], psi);
        s = p.delta[s][x];
    }
    std::vector<double> out;
    for (const auto &proj : p.measurements[s]) {
        out.push_back(raw_norm_sq(raw_apply(proj, psi)));
    }
    return out;
}

/// MM acceptance and rejection: the halting probability at step j is
/// recomputed from scratch as ||P_h U_j P_n U_{j-1} ... P_n U_1 psi0||^2.
inline std::pair<double, double> oracle_mm_probs(const MmQfa &a, const Word &w) {
    const auto &p = a.parts();
    std::vector<const ComplexMatrix *> steps;
    for (Symbol x : w) {
        steps.push_back(&p.unitaries[x]);
    }
    steps.push_back(&p.end_unitary);
    double acc = 0;
    double rej = 0;
    for (std::size_t j = 0; j < steps.size(); j++) {
        auto psi = raw_entries(p.initial_state);
        for (std::size_t i = 0; i < j; i++) {
            psi = raw_apply(p.nonhalt_proj, raw_apply(*steps[i], psi));
        }
        psi = raw_apply(*steps[j], psi);
        acc += raw_norm_sq(raw_apply(p.accepting_proj, psi));
        rej += raw_norm_sq(raw_apply(p.reject_proj, psi));
    }
    return {acc, rej};
}

/// k-letter acceptance, windows read off the explicitly padded string.
inline double oracle_kletter_prob(const KLetterQfa &a, const Word &w) {
    const auto &p = a.parts();
    Word padded(p.k - 1, KLetterQfa::kPad);
    padded.insert(padded.end(), w.begin(), w.end());
    auto psi = raw_entries(p.initial_state);
    for (std::size_t i = 0; i < w.size(); i++) {
        KLetterQfa::Window win(padded.begin() + i, padded.begin() + i + p.k);
        psi = raw_apply(p.nu.at(win), psi);
    }
    return raw_norm_sq(raw_apply(p.accepting_proj, psi));
}

/// Control-language acceptance summed over every outcome sequence.
inline double oracle_qfacl_prob(const QfaCl &a, const Word &w) {
    const auto &p = a.parts();
    Word input = w;
    input.push_back(p.alphabet.size());
    const std::size_t labels = p.outcome_labels.size();
    double total = 0;
    std::vector<std::size_t> seq(input.size(), 0);
    while (true) {
        auto psi = raw_entries(p.initial_state);
        State e = p.control.initial();
        for (std::size_t i = 0; i < input.size(); i++) {
            psi = raw_apply(p.outcome_projectors[seq[i]], raw_apply(p.unitaries[input[i]], psi));
            e = p.control.delta()[e][seq[i]];
        }
        if (p.control.accepting()[e]) {
            total += raw_norm_sq(psi);
        }
        std::size_t i = seq.size();
        while (i > 0 && seq[i - 1] == labels - 1) {
            seq[--i] = 0;
        }
        if (i == 0) {
            break;
        }
        seq[i - 1]++;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Transition-monoid oracles for the structural patterns.

using StateMap = std::vector<State>;

/// Every transformation induced by a nonempty word.
inline std::set<StateMap> nonempty_transformations(const Dfa &d) {
    std::set<StateMap> seen;
    std::vector<StateMap> frontier;
    for (Symbol a = 0; a < d.alphabet().size(); a++) {
        StateMap f(d.num_states());
        for (State s = 0; s < d.num_states(); s++) {
            f[s] = d.next(s, a);
        }
        if (seen.insert(f).second) {
            frontier.push_back(f);
        }
    }
    while (!frontier.empty()) {
        std::vector<StateMap> next;
        for (const auto &f : frontier) {
            for (Symbol a = 0; a < d.alphabet().size(); a++) {
                StateMap g(d.num_states());
                for (State s = 0; s < d.num_states(); s++) {
                    g[s] = d.next(f[s], a);
                }
                if (seen.insert(g).second) {
                    next.push_back(g);
                }
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

inline bool oracle_has_f_construction(const Dfa &d) {
    const auto maps = nonempty_transformations(d);
    for (State q1 = 0; q1 < d.num_states(); q1++) {
        for (State q2 = 0; q2 < d.num_states(); q2++) {
            if (q1 == q2) {
                continue;
            }
            bool has_t = false;
            bool has_z = false;
            for (const auto &f : maps) {
                has_t |= f[q1] == q1 && f[q2] == q2;
                has_z |= f[q1] == q2 && f[q2] == q2;
            }
            if (has_t && has_z) {
                return true;
            }
        }
    }
    return false;
}

/// Assumes d is minimal, so distinct states are distinguishable.
inline bool oracle_has_mm_blocker(const Dfa &d) {
    const auto maps = nonempty_transformations(d);
    for (State p = 0; p < d.num_states(); p++) {
        for (State q = 0; q < d.num_states(); q++) {
            if (p == q) {
                continue;
            }
            bool has_x = false;
            bool has_y = false;
            for (const auto &f : maps) {
                has_x |= f[p] == q && f[q] == q;
                has_y |= f[q] == p;
            }
            if (has_x && has_y) {
                return true;
            }
        }
    }
    return false;
}

/// Number of Myhill-Nerode classes of the language of d, computed by brute
/// force: two reachable states are merged when no word of length < n
/// separates them.
inline std::size_t oracle_nerode_classes(const Dfa &d) {
    std::vector<State> reach{d.initial()};
    std::vector<bool> seen(d.num_states(), false);
    seen[d.initial()] = true;
    for (std::size_t i = 0; i < reach.size(); i++) {
        for (Symbol a = 0; a < d.alphabet().size(); a++) {
            State t = d.next(reach[i], a);
            if (!seen[t]) {
                seen[t] = true;
                reach.push_back(t);
            }
        }
    }
    std::vector<std::string> signature(reach.size());
    for_each_word(d.alphabet().size(), d.num_states(), [&](const Word &w) {
        for (std::size_t i = 0; i < reach.size(); i++) {
            signature[i].push_back(d.is_accepting(d.run(reach[i], w)) ? '1' : '0');
        }
    });
    return std::set<std::string>(signature.begin(), signature.end()).size();
}

}  // namespace qfac::testkit

#endif  // QFAC_TESTS_SUPPORT_H
