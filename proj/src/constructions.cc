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

#include "qfac/constructions.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfac {

namespace {

void require_m(int m) {
    if (m < 2) {
        throw std::invalid_argument("m must be at least 2, got " + std::to_string(m));
    }
}

ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }

}  // namespace

std::string_view set_op_name(SetOp op) {
    switch (op) {
        case SetOp::kIntersection:
            return "intersection";
        case SetOp::kUnion:
            return "union";
        case SetOp::kDfaMinusQfa:
            return "dfa-minus-qfa";
        case SetOp::kQfaMinusDfa:
            return "qfa-minus-dfa";
    }
    return "?";
}

std::optional<SetOp> parse_set_op(std::string_view name) {
    for (SetOp op : {SetOp::kIntersection, SetOp::kUnion, SetOp::kDfaMinusQfa, SetOp::kQfaMinusDfa}) {
        if (set_op_name(op) == name) {
            return op;
        }
    }
    return std::nullopt;
}

Qfac dfa_to_qfac(const Dfa &d) {
    const std::size_t k = d.num_states();
    const ComplexMatrix one = ComplexMatrix::identity(1);
    Qfac::Parts p{
        .classical_states = d.state_names(),
        .alphabet = d.alphabet(),
        .outcomes = {std::string(kAcceptOutcome), std::string(kRejectOutcome)},
        .initial_classical = d.initial(),
        .initial_quantum = ComplexVector::basis(1, 0),
        .delta = d.delta(),
        .unitaries = std::vector<std::vector<ComplexMatrix>>(k, std::vector<ComplexMatrix>(d.alphabet().size(), one)),
        .measurements = {},
    };
    for (State s = 0; s < k; s++) {
        if (d.is_accepting(s)) {
            p.measurements.push_back({one, zero(1)});
        } else {
            p.measurements.push_back({zero(1), one});
        }
    }
    return Qfac(std::move(p));
}

Qfac mo_to_qfac(const MoQfa &q) {
    const std::size_t n = q.qdim();
    const auto &mp = q.parts();
    Qfac::Parts p{
        .classical_states = {"s0"},
        .alphabet = q.alphabet(),
        .outcomes = {std::string(kAcceptOutcome), std::string(kRejectOutcome)},
        .initial_classical = 0,
        .initial_quantum = q.initial_state(),
        .delta = {std::vector<State>(q.alphabet().size(), 0)},
        .unitaries = {mp.unitaries},
        .measurements = {{mp.accepting_proj, ComplexMatrix::identity(n) - mp.accepting_proj}},
    };
    return Qfac(std::move(p));
}

Qfac combine(const Dfa &d, const MoQfa &q, SetOp op) {
    if (d.alphabet() != q.alphabet()) {
        throw std::invalid_argument("combine: DFA and MO-1QFA alphabets differ");
    }
    const std::size_t n = q.qdim();
    const ComplexMatrix id = ComplexMatrix::identity(n);
    const ComplexMatrix &pa = q.accepting_proj();
    const ComplexMatrix pa_complement = id - pa;

    Qfac::Parts p{
        .classical_states = d.state_names(),
        .alphabet = d.alphabet(),
        .outcomes = {std::string(kAcceptOutcome), std::string(kRejectOutcome)},
        .initial_classical = d.initial(),
        .initial_quantum = q.initial_state(),
        .delta = d.delta(),
        .unitaries = std::vector<std::vector<ComplexMatrix>>(d.num_states(), q.parts().unitaries),
        .measurements = {},
    };
    for (State s = 0; s < d.num_states(); s++) {
        const bool in_f = d.is_accepting(s);
        ComplexMatrix accept = zero(n);
        switch (op) {
            case SetOp::kIntersection:
                accept = in_f ? pa : zero(n);
                break;
            case SetOp::kUnion:
                accept = in_f ? id : pa;
                break;
            case SetOp::kDfaMinusQfa:
                accept = in_f ? pa_complement : zero(n);
                break;
            case SetOp::kQfaMinusDfa:
                accept = in_f ? zero(n) : pa;
                break;
        }
        ComplexMatrix reject = id - accept;
        p.measurements.push_back({std::move(accept), std::move(reject)});
    }
    return Qfac(std::move(p));
}

MoQfa build_rotation_mo1qfa(int m, Alphabet alphabet) {
    require_m(m);
    const double theta = std::numbers::pi / m;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const ComplexMatrix rot{{c, -s}, {s, c}};
    std::vector<ComplexMatrix> unitaries(alphabet.size(), rot);
    return MoQfa(MoQfa::Parts{
        .alphabet = std::move(alphabet),
        .initial_state = ComplexVector::basis(2, 0),
        .unitaries = std::move(unitaries),
        .accepting_proj = ComplexMatrix{{1, 0}, {0, 0}},
    });
}

Dfa build_l0_dfa() {
    // q0 --0--> q1, q0 --1--> q0, q1 --0--> q1, q1 --1--> q0; q1 accepting.
    return Dfa({"0", "1"}, 0, {false, true}, {{1, 0}, {1, 0}});
}

Dfa build_l0m_dfa(int m) {
    require_m(m);
    const std::size_t mm = static_cast<std::size_t>(m);
    std::vector<std::vector<State>> delta(mm + 1);
    for (State i = 0; i + 1 < mm; i++) {
        delta[i] = {i + 1, i + 1};
    }
    // q_{m-1}: a closing 0 accepts, a closing 1 restarts the count.
    delta[mm - 1] = {mm, 0};
    delta[mm] = {1, 1};
    std::vector<bool> accepting(mm + 1, false);
    accepting[mm] = true;
    return Dfa({"0", "1"}, 0, std::move(accepting), std::move(delta));
}

Dfa build_lzm_dfa(const LanguageFamilyParams &params) {
    require_m(params.m);
    if (params.z.empty()) {
        throw std::invalid_argument("z must be nonempty");
    }
    Alphabet alphabet = params.alphabet;
    if (alphabet.empty()) {
        for (const auto &sym : params.z) {
            if (std::find(alphabet.begin(), alphabet.end(), sym) == alphabet.end()) {
                alphabet.push_back(sym);
            }
        }
    }
    Word z;
    for (const auto &sym : params.z) {
        z.push_back(symbol_index(alphabet, sym));
    }
    const std::size_t n = z.size();
    const std::size_t m = static_cast<std::size_t>(params.m);
    // S_{i,j} has index i*m + (j-1).
    auto id = [m](std::size_t i, std::size_t j) { return i * m + (j - 1); };
    std::vector<std::string> names;
    std::vector<std::vector<State>> delta((n + 1) * m, std::vector<State>(alphabet.size()));
    std::vector<bool> accepting((n + 1) * m, false);
    for (std::size_t i = 0; i <= n; i++) {
        for (std::size_t j = 1; j <= m; j++) {
            names.push_back("S" + std::to_string(i) + "_" + std::to_string(j));
            const std::size_t jn = (j % m) + 1;
            for (Symbol a = 0; a < alphabet.size(); a++) {
                std::size_t in = i;
                if (i != n && a == z[i]) {
                    in = i + 1;
                }
                delta[id(i, j)][a] = id(in, jn);
            }
        }
    }
    accepting[id(n, 1)] = true;
    return Dfa(std::move(names), std::move(alphabet), id(0, 1), std::move(accepting), std::move(delta));
}

Qfac build_l0m_qfac(int m) {
    return combine(build_l0_dfa(), build_rotation_mo1qfa(m), SetOp::kIntersection);
}

}  // namespace qfac
