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

#include "qfac/machines.h"

#include <cmath>
#include <stdexcept>

namespace qfac {

namespace {

void check_shape(const ComplexMatrix &m, std::size_t n, const std::string &path) {
    if (m.rows() != n || m.cols() != n) {
        throw ValidationError(path, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix, got " +
                                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!all_finite(m)) {
        throw ValidationError(path, "non-finite entry");
    }
}

void check_unit_vector(const ComplexVector &v, const std::string &path, double tol) {
    if (!all_finite(v)) {
        throw ValidationError(path, "non-finite entry");
    }
    if (std::abs(norm_sq(v) - 1) > tol) {
        throw ValidationError(path, "not a unit vector (norm^2 = " + std::to_string(norm_sq(v)) + ")");
    }
}

void check_unitary(const ComplexMatrix &u, std::size_t n, const std::string &path, double tol) {
    check_shape(u, n, path);
    if (!is_unitary(u, tol)) {
        throw ValidationError(path, "matrix is not unitary");
    }
}

void check_projector(const ComplexMatrix &p, std::size_t n, const std::string &path, double tol) {
    check_shape(p, n, path);
    if (!is_projector(p, tol)) {
        throw ValidationError(path, "matrix is not an orthogonal projector");
    }
}

/// Projectors must be individually valid, pairwise orthogonal and resolve the
/// identity.
void check_measurement(const std::vector<const ComplexMatrix *> &projs, const std::vector<std::string> &paths,
                       std::size_t n, const std::string &sum_path, double tol) {
    ComplexMatrix sum(n, n);
    for (std::size_t i = 0; i < projs.size(); i++) {
        check_projector(*projs[i], n, paths[i], tol);
        sum = sum + *projs[i];
    }
    for (std::size_t i = 0; i < projs.size(); i++) {
        for (std::size_t j = i + 1; j < projs.size(); j++) {
            if (max_abs_diff(mat_mul(*projs[i], *projs[j]), ComplexMatrix(n, n)) > tol) {
                throw ValidationError(paths[j], "projector is not orthogonal to " + paths[i]);
            }
        }
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(n)) > tol) {
        throw ValidationError(sum_path, "projectors do not sum to the identity");
    }
}

void check_reserved(const Alphabet &alphabet, std::string_view reserved) {
    for (const auto &s : alphabet) {
        if (s == reserved) {
            throw ValidationError("alphabet", "symbol '" + s + "' is reserved");
        }
    }
}

void check_alphabet(const Alphabet &alphabet) {
    if (alphabet.empty()) {
        throw ValidationError("alphabet", "alphabet is empty");
    }
    check_names(alphabet, "alphabet");
}

}  // namespace

MoQfa::MoQfa(Parts parts, double tol) : p_(std::move(parts)) {
    check_alphabet(p_.alphabet);
    const std::size_t n = p_.initial_state.dim();
    check_unit_vector(p_.initial_state, "initial_state", tol);
    if (p_.unitaries.size() != p_.alphabet.size()) {
        throw ValidationError("unitaries", "expected one unitary per symbol");
    }
    for (Symbol a = 0; a < p_.alphabet.size(); a++) {
        check_unitary(p_.unitaries[a], n, "unitaries." + p_.alphabet[a], tol);
    }
    check_projector(p_.accepting_proj, n, "accepting_proj", tol);
}

MmQfa::MmQfa(Parts parts, double tol) : p_(std::move(parts)) {
    check_alphabet(p_.alphabet);
    check_reserved(p_.alphabet, "$");
    const std::size_t n = p_.initial_state.dim();
    check_unit_vector(p_.initial_state, "initial_state", tol);
    if (p_.unitaries.size() != p_.alphabet.size()) {
        throw ValidationError("unitaries", "expected one unitary per symbol");
    }
    for (Symbol a = 0; a < p_.alphabet.size(); a++) {
        check_unitary(p_.unitaries[a], n, "unitaries." + p_.alphabet[a], tol);
    }
    check_unitary(p_.end_unitary, n, "end_unitary", tol);
    check_measurement({&p_.accepting_proj, &p_.reject_proj, &p_.nonhalt_proj},
                      {"accepting_proj", "reject_proj", "nonhalt_proj"}, n, "nonhalt_proj", tol);
}

std::string window_key(const Alphabet &alphabet, const KLetterQfa::Window &w) {
    std::string key;
    for (std::size_t i = 0; i < w.size(); i++) {
        if (i > 0) {
            key += ',';
        }
        if (w[i] == KLetterQfa::kPad) {
            key += KLetterQfa::kPadName;
        } else if (w[i] < alphabet.size()) {
            key += alphabet[w[i]];
        } else {
            key += "#" + std::to_string(w[i]);
        }
    }
    return key;
}

KLetterQfa::KLetterQfa(Parts parts, double tol) : p_(std::move(parts)) {
    if (p_.k == 0) {
        throw ValidationError("k", "k must be positive");
    }
    check_alphabet(p_.alphabet);
    check_reserved(p_.alphabet, kPadName);
    const std::size_t n = p_.initial_state.dim();
    check_unit_vector(p_.initial_state, "initial_state", tol);
    for (const auto &[window, u] : p_.nu) {
        const std::string path = "nu." + window_key(p_.alphabet, window);
        if (window.size() != p_.k) {
            throw ValidationError(path, "window length differs from k");
        }
        for (Symbol s : window) {
            if (s != kPad && s >= p_.alphabet.size()) {
                throw ValidationError(path, "window symbol outside the alphabet");
            }
        }
        check_unitary(u, n, path, tol);
    }
    for (const auto &window : reachable_windows()) {
        if (!p_.nu.contains(window)) {
            throw ValidationError("nu." + window_key(p_.alphabet, window), "missing unitary for reachable window");
        }
    }
    check_projector(p_.accepting_proj, n, "accepting_proj", tol);
}

std::vector<KLetterQfa::Window> KLetterQfa::reachable_windows() const {
    std::vector<Window> out;
    const std::size_t sigma = p_.alphabet.size();
    for (std::size_t pad = 0; pad < p_.k; pad++) {
        const std::size_t free = p_.k - pad;
        // Enumerate Sigma^free in lexicographic order.
        std::vector<Symbol> digits(free, 0);
        while (true) {
            Window w(pad, kPad);
            w.insert(w.end(), digits.begin(), digits.end());
            out.push_back(std::move(w));
            std::size_t i = free;
            while (i > 0 && ++digits[i - 1] == sigma) {
                digits[i - 1] = 0;
                i--;
            }
            if (i == 0) {
                break;
            }
        }
    }
    return out;
}

QfaCl::QfaCl(Parts parts, double tol) : p_(std::move(parts)) {
    check_alphabet(p_.alphabet);
    check_reserved(p_.alphabet, "$");
    const std::size_t n = p_.initial_state.dim();
    check_unit_vector(p_.initial_state, "initial_state", tol);
    if (p_.unitaries.size() != p_.alphabet.size() + 1) {
        throw ValidationError("unitaries", "expected one unitary per symbol plus one for '$'");
    }
    for (Symbol a = 0; a <= p_.alphabet.size(); a++) {
        check_unitary(p_.unitaries[a], n, "unitaries." + (a < p_.alphabet.size() ? p_.alphabet[a] : "$"), tol);
    }
    if (p_.outcome_labels.empty()) {
        throw ValidationError("observable", "observable has no outcomes");
    }
    check_names(p_.outcome_labels, "observable");
    if (p_.outcome_projectors.size() != p_.outcome_labels.size()) {
        throw ValidationError("observable", "expected one projector per outcome");
    }
    std::vector<const ComplexMatrix *> projs;
    std::vector<std::string> paths;
    for (std::size_t i = 0; i < p_.outcome_labels.size(); i++) {
        projs.push_back(&p_.outcome_projectors[i]);
        paths.push_back("observable." + std::to_string(i) + ".projector");
    }
    check_measurement(projs, paths, n, "observable", tol);
    if (p_.control.alphabet() != p_.outcome_labels) {
        throw ValidationError("control.alphabet", "control alphabet must equal the outcome labels");
    }
}

Qfac::Qfac(Parts parts, double tol) : p_(std::move(parts)) {
    const std::size_t k = p_.classical_states.size();
    if (k == 0) {
        throw ValidationError("classical_states", "at least one classical state is required");
    }
    check_names(p_.classical_states, "classical_states");
    check_alphabet(p_.alphabet);
    if (p_.outcomes.empty()) {
        throw ValidationError("outcomes", "outcome set is empty");
    }
    check_names(p_.outcomes, "outcomes");
    if (p_.initial_classical >= k) {
        throw ValidationError("initial_classical", "initial classical state out of range");
    }
    const std::size_t n = p_.initial_quantum.dim();
    check_unit_vector(p_.initial_quantum, "initial_quantum", tol);
    if (p_.delta.size() != k || p_.unitaries.size() != k || p_.measurements.size() != k) {
        throw ValidationError("classical_states", "per-state tables do not match the classical state count");
    }
    for (State s = 0; s < k; s++) {
        const std::string &sn = p_.classical_states[s];
        if (p_.delta[s].size() != p_.alphabet.size()) {
            throw ValidationError("delta." + sn, "row does not cover the alphabet");
        }
        if (p_.unitaries[s].size() != p_.alphabet.size()) {
            throw ValidationError("unitaries." + sn, "row does not cover the alphabet");
        }
        for (Symbol a = 0; a < p_.alphabet.size(); a++) {
            const std::string key = sn + "," + p_.alphabet[a];
            if (p_.delta[s][a] >= k) {
                throw ValidationError("delta." + key, "target state out of range");
            }
            check_unitary(p_.unitaries[s][a], n, "unitaries." + key, tol);
        }
        if (p_.measurements[s].size() != p_.outcomes.size()) {
            throw ValidationError("measurements." + sn, "expected one projector per outcome");
        }
        std::vector<const ComplexMatrix *> projs;
        std::vector<std::string> paths;
        for (std::size_t g = 0; g < p_.outcomes.size(); g++) {
            projs.push_back(&p_.measurements[s][g]);
            paths.push_back("measurements." + sn + "." + p_.outcomes[g]);
        }
        check_measurement(projs, paths, n, "measurements." + sn, tol);
    }
}

std::size_t Qfac::outcome_index(std::string_view label) const {
    for (std::size_t g = 0; g < p_.outcomes.size(); g++) {
        if (p_.outcomes[g] == label) {
            return g;
        }
    }
    throw std::invalid_argument("outcome '" + std::string(label) + "' is not in the output alphabet");
}

double mo_accept_prob(const MoQfa &a, const Word &w) {
    check_word(w, a.alphabet().size());
    ComplexVector psi = a.initial_state();
    for (Symbol s : w) {
        psi = mat_vec(a.unitary(s), psi);
    }
    return norm_sq(mat_vec(a.accepting_proj(), psi));
}

MmProbs mm_probs(const MmQfa &a, const Word &w) {
    check_word(w, a.alphabet().size());
    const auto &p = a.parts();
    MmProbs out{0, 0};
    // psi is the surviving (non-halting) unnormalized amplitude.
    ComplexVector psi = p.initial_state;
    auto step = [&](const ComplexMatrix &u) {
        ComplexVector next = mat_vec(u, psi);
        out.accept += norm_sq(mat_vec(p.accepting_proj, next));
        out.reject += norm_sq(mat_vec(p.reject_proj, next));
        psi = mat_vec(p.nonhalt_proj, next);
    };
    for (Symbol s : w) {
        step(p.unitaries[s]);
    }
    step(p.end_unitary);
    return out;
}

double kletter_accept_prob(const KLetterQfa &a, const Word &w) {
    check_word(w, a.alphabet().size());
    const auto &p = a.parts();
    KLetterQfa::Window window(p.k, KLetterQfa::kPad);
    ComplexVector psi = p.initial_state;
    for (Symbol s : w) {
        window.erase(window.begin());
        window.push_back(s);
        auto it = p.nu.find(window);
        if (it == p.nu.end()) {
            throw std::invalid_argument("no unitary for window " + window_key(p.alphabet, window));
        }
        psi = mat_vec(it->second, psi);
    }
    return norm_sq(mat_vec(p.accepting_proj, psi));
}

double qfacl_accept_prob(const QfaCl &a, const Word &w) {
    check_word(w, a.alphabet().size());
    const auto &p = a.parts();
    const Dfa &control = p.control;
    const std::size_t n = a.qdim();
    std::vector<ComplexMatrix> rho(control.num_states(), ComplexMatrix(n, n));
    rho[control.initial()] = outer(p.initial_state, p.initial_state);

    Word input = w;
    input.push_back(a.end_marker());
    for (Symbol x : input) {
        const ComplexMatrix &u = p.unitaries[x];
        const ComplexMatrix ud = dagger(u);
        std::vector<ComplexMatrix> next(control.num_states(), ComplexMatrix(n, n));
        for (State e = 0; e < control.num_states(); e++) {
            const ComplexMatrix evolved = mat_mul(mat_mul(u, rho[e]), ud);
            for (std::size_t c = 0; c < p.outcome_labels.size(); c++) {
                const ComplexMatrix &pc = p.outcome_projectors[c];
                State target = control.next(e, c);
                next[target] = next[target] + mat_mul(mat_mul(pc, evolved), pc);
            }
        }
        rho = std::move(next);
    }
    double total = 0;
    for (State e = 0; e < control.num_states(); e++) {
        if (control.is_accepting(e)) {
            total += trace(rho[e]).real();
        }
    }
    return total;
}

std::vector<double> qfac_outcome_probs(const Qfac &a, const Word &w) {
    return qfac_run_trace(a, w).outcome_distribution;
}

double qfac_accept_prob(const Qfac &a, const Word &w, std::string_view outcome) {
    const std::size_t g = a.outcome_index(outcome);
    return qfac_outcome_probs(a, w)[g];
}

RunTrace qfac_run_trace(const Qfac &a, const Word &w) {
    check_word(w, a.alphabet().size());
    RunTrace trace_out;
    State s = a.initial_classical();
    ComplexVector psi = a.initial_quantum();
    trace_out.classical_path.push_back(s);
    trace_out.quantum_path.push_back(psi);
    for (Symbol x : w) {
        psi = mat_vec(a.unitary(s, x), psi);
        s = a.next(s, x);
        trace_out.classical_path.push_back(s);
        trace_out.quantum_path.push_back(psi);
    }
    for (std::size_t g = 0; g < a.outcomes().size(); g++) {
        trace_out.outcome_distribution.push_back(norm_sq(mat_vec(a.projector(s, g), psi)));
    }
    return trace_out;
}

}  // namespace qfac
