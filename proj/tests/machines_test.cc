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

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "support.h"

using namespace qfac;
using namespace qfac::testkit;

namespace {

// q0 -0-> q1, q0 -1-> q0, q1 -0-> q1, q1 -1-> q0; q1 accepting.
Dfa ends_in_zero() { return Dfa({"q0", "q1"}, binary(), 0, {false, true}, {{1, 0}, {1, 0}}); }

ComplexMatrix rotation(double angle) {
    return ComplexMatrix{{std::cos(angle), -std::sin(angle)}, {std::sin(angle), std::cos(angle)}};
}

ComplexMatrix proj0() { return ComplexMatrix{{1, 0}, {0, 0}}; }
ComplexMatrix proj1() { return ComplexMatrix{{0, 0}, {0, 1}}; }

MoQfa rotation_by(int m) {
    const double th = std::numbers::pi / m;
    return MoQfa({binary(), ComplexVector{1, 0}, {rotation(th), rotation(th)}, proj0()});
}

}  // namespace

TEST(Dfa, AcceptsByWalkingTransitions) {
    const Dfa d = ends_in_zero();
    EXPECT_TRUE(dfa_accepts(d, w01("10")));
    EXPECT_FALSE(dfa_accepts(d, {}));
    EXPECT_FALSE(dfa_accepts(d, w01("01")));
    EXPECT_EQ(d.run(0, w01("110")), 1u);
    EXPECT_THROW(dfa_accepts(d, {2}), std::invalid_argument);
}

TEST(Dfa, ValidationNamesTheField) {
    try {
        Dfa({"q0", "q1"}, binary(), 0, {false, true}, {{1, 0}, {1, 5}});
        FAIL() << "expected a validation error";
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.path(), "delta.q1,1");
    }
    EXPECT_THROW(Dfa({"q0"}, binary(), 1, {false}, {{0, 0}}), ValidationError);
    EXPECT_THROW(Dfa({"q0", "q0"}, binary(), 0, {false, false}, {{0, 0}, {0, 0}}), ValidationError);
}

TEST(MoQfa, EmptyWordMeasuresInitialState) {
    Rng rng(1);
    for (int i = 0; i < 5; i++) {
        const MoQfa q = random_mo(rng, 3);
        const double expected = raw_norm_sq(raw_apply(q.accepting_proj(), raw_entries(q.initial_state())));
        EXPECT_NEAR(mo_accept_prob(q, {}), expected, 1e-12);
    }
}

TEST(MoQfa, RotationProbabilities) {
    // One rotation by pi/3 applied to |0>: cos^2(pi/3).
    EXPECT_NEAR(mo_accept_prob(rotation_by(3), w01("0")), std::pow(std::cos(std::numbers::pi / 3), 2), 1e-12);
    EXPECT_NEAR(mo_accept_prob(rotation_by(3), w01("101")), 1.0, 1e-12);
}

TEST(MoQfa, NonUnitaryIsRejectedWithPath) {
    std::vector<Complex> d{1, 2};
    try {
        MoQfa({binary(), ComplexVector{1, 0}, {ComplexMatrix::diagonal(d), rotation(0.1)}, proj0()});
        FAIL() << "expected a validation error";
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.path(), "unitaries.0");
    }
    EXPECT_THROW(MoQfa({binary(), ComplexVector{1, 1}, {rotation(0), rotation(0)}, proj0()}), ValidationError);
    EXPECT_THROW(MoQfa({binary(), ComplexVector{1, 0}, {rotation(0), rotation(0)}, ComplexMatrix{{1, 1}, {0, 0}}}),
                 ValidationError);
}

TEST(MmQfa, TrivialMachines) {
    const ComplexMatrix one{{1}};
    const ComplexMatrix zero{{0}};
    MmQfa accept_all({{"0"}, ComplexVector{1}, {one}, one, one, zero, zero});
    EXPECT_NEAR(mm_probs(accept_all, {}).accept, 1.0, 1e-15);
    EXPECT_NEAR(mm_probs(accept_all, {}).reject, 0.0, 1e-15);
    MmQfa reject_all({{"0"}, ComplexVector{1}, {one}, one, zero, one, zero});
    for (const Word &w : {Word{}, Word{0}, Word{0, 0, 0}}) {
        EXPECT_NEAR(mm_probs(reject_all, w).accept, 0.0, 1e-15);
        EXPECT_NEAR(mm_probs(reject_all, w).reject, 1.0, 1e-15);
    }
}

TEST(MmQfa, MatchesHaltingBranchEnumeration) {
    Rng rng(2);
    for (int i = 0; i < 10; i++) {
        const MmQfa q = random_mm(rng, 2 + i % 2);
        for_each_word(2, 4, [&](const Word &w) {
            const MmProbs got = mm_probs(q, w);
            const auto [acc, rej] = oracle_mm_probs(q, w);
            EXPECT_NEAR(got.accept, acc, 1e-9);
            EXPECT_NEAR(got.reject, rej, 1e-9);
            EXPECT_LE(got.accept + got.reject, 1 + 1e-9);
        });
    }
}

TEST(MmQfa, RejectsReservedSymbolAndBadMeasurement) {
    const ComplexMatrix one{{1}};
    const ComplexMatrix zero{{0}};
    EXPECT_THROW(MmQfa({{"$"}, ComplexVector{1}, {one}, one, one, zero, zero}), ValidationError);
    try {
        MmQfa({{"0"}, ComplexVector{1}, {one}, one, one, one, zero});
        FAIL() << "expected a validation error";
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.path(), "reject_proj");
    }
}

TEST(KLetterQfa, OneLetterIsMeasureOnce) {
    Rng rng(3);
    for (int i = 0; i < 5; i++) {
        const MoQfa mo = random_mo(rng, 3);
        KLetterQfa::Parts p{1, binary(), mo.initial_state(), {}, mo.accepting_proj()};
        p.nu.emplace(KLetterQfa::Window{0}, mo.unitary(0));
        p.nu.emplace(KLetterQfa::Window{1}, mo.unitary(1));
        const KLetterQfa k1(std::move(p));
        for_each_word(2, 6, [&](const Word &w) { EXPECT_NEAR(kletter_accept_prob(k1, w), mo_accept_prob(mo, w), 1e-12); });
    }
}

TEST(KLetterQfa, IdentityUnitariesGiveConstantProbability) {
    const ComplexVector psi{std::sqrt(0.3), std::sqrt(0.7)};
    KLetterQfa::Parts p{2, binary(), psi, {}, proj1()};
    for (auto &w : all_windows(2, 2)) {
        p.nu.emplace(w, ComplexMatrix::identity(2));
    }
    const KLetterQfa q(std::move(p));
    for_each_word(2, 5, [&](const Word &w) { EXPECT_NEAR(kletter_accept_prob(q, w), 0.7, 1e-12); });
}

TEST(KLetterQfa, BitFlipOnEveryB) {
    // Windows ending in b flip the qubit, the rest do nothing, so the
    // accepting probability is the parity of the number of b's.
    const ComplexMatrix flip{{0, 1}, {1, 0}};
    const Alphabet ab{"a", "b"};
    KLetterQfa::Parts p{2, ab, ComplexVector{1, 0}, {}, proj1()};
    for (auto &w : all_windows(2, 2)) {
        p.nu.emplace(w, w.back() == 1 ? flip : ComplexMatrix::identity(2));
    }
    const KLetterQfa q(std::move(p));
    EXPECT_NEAR(kletter_accept_prob(q, parse_word(ab, "b")), 1.0, 1e-15);
    for_each_word(2, 6, [&](const Word &w) {
        const auto bs = std::count(w.begin(), w.end(), Symbol{1});
        EXPECT_NEAR(kletter_accept_prob(q, w), bs % 2 == 1 ? 1.0 : 0.0, 1e-15);
    });
}

TEST(KLetterQfa, MatchesExplicitWindowWalk) {
    Rng rng(4);
    for (std::size_t k = 1; k <= 3; k++) {
        const KLetterQfa q = random_kletter(rng, k, 2);
        EXPECT_EQ(q.reachable_windows().size(), all_windows(k, 2).size());
        for_each_word(2, 6, [&](const Word &w) { EXPECT_NEAR(kletter_accept_prob(q, w), oracle_kletter_prob(q, w), 1e-12); });
    }
}

TEST(KLetterQfa, MissingWindowIsRejected) {
    KLetterQfa::Parts p{2, binary(), ComplexVector{1, 0}, {}, proj0()};
    for (auto &w : all_windows(2, 2)) {
        p.nu.emplace(w, ComplexMatrix::identity(2));
    }
    p.nu.erase(KLetterQfa::Window{KLetterQfa::kPad, 1});
    try {
        KLetterQfa q(std::move(p));
        FAIL() << "expected a validation error";
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.path(), "nu._,1");
    }
}

TEST(QfaCl, UniversalControlLanguageAcceptsEverything) {
    Rng rng(5);
    auto q = random_qfacl(rng, 2, 2, 1);
    auto p = q.parts();
    p.control = Dfa({"e"}, p.outcome_labels, 0, {true}, {{0, 0}});
    const QfaCl all(std::move(p));
    for_each_word(2, 4, [&](const Word &w) { EXPECT_NEAR(qfacl_accept_prob(all, w), 1.0, 1e-9); });
}

TEST(QfaCl, SingleTrivialOutcomeFollowsControlMembership) {
    // One outcome c with projector I: the outcome word is c^{|w|+1}. The
    // control DFA accepts c^j for even j.
    const QfaCl q({binary(), ComplexVector{1, 0},
                   {rotation(0.3), rotation(0.9), rotation(1.1)},
                   {"c"},
                   {ComplexMatrix::identity(2)},
                   Dfa({"even", "odd"}, {"c"}, 0, {true, false}, {{1}, {0}})});
    for_each_word(2, 5, [&](const Word &w) {
        EXPECT_NEAR(qfacl_accept_prob(q, w), (w.size() + 1) % 2 == 0 ? 1.0 : 0.0, 1e-12);
    });
}

TEST(QfaCl, AggregationMatchesOutcomeSequenceEnumeration) {
    Rng rng(6);
    for (int i = 0; i < 12; i++) {
        const QfaCl q = random_qfacl(rng, 2 + i % 2, 2 + i % 2, 1 + i % 3);
        for_each_word(2, 3, [&](const Word &w) { EXPECT_NEAR(qfacl_accept_prob(q, w), oracle_qfacl_prob(q, w), 1e-9); });
    }
}

TEST(QfaCl, ControlAlphabetMustMatchLabels) {
    try {
        QfaCl({binary(), ComplexVector{1, 0}, {rotation(0), rotation(0), rotation(0)}, {"c", "d"},
               {proj0(), proj1()}, Dfa({"e"}, {"c", "x"}, 0, {true}, {{0, 0}})});
        FAIL() << "expected a validation error";
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.path(), "control.alphabet");
    }
}

TEST(Qfac, EmptyWordUsesInitialMeasurement) {
    Rng rng(7);
    const Qfac q = random_qfac(rng, 3, 2);
    const auto probs = qfac_outcome_probs(q, {});
    for (std::size_t g = 0; g < 2; g++) {
        EXPECT_NEAR(probs[g],
                    raw_norm_sq(raw_apply(q.projector(q.initial_classical(), g), raw_entries(q.initial_quantum()))),
                    1e-12);
    }
}

TEST(Qfac, MatchesDirectSimulationAndSumsToOne) {
    Rng rng(8);
    for (int i = 0; i < 10; i++) {
        const Qfac q = random_qfac(rng, 1 + i % 3, 1 + i % 3, binary(), {"a", "r", "x"});
        for_each_word(2, 6, [&](const Word &w) {
            const auto got = qfac_outcome_probs(q, w);
            const auto want = oracle_qfac_probs(q, w);
            double total = 0;
            for (std::size_t g = 0; g < got.size(); g++) {
                EXPECT_NEAR(got[g], want[g], 1e-12);
                EXPECT_GE(got[g], -1e-9);
                EXPECT_LE(got[g], 1 + 1e-9);
                total += got[g];
            }
            EXPECT_NEAR(total, 1.0, 1e-9);
        });
    }
}

TEST(Qfac, SingleClassicalStateIsMeasureOnce) {
    Rng rng(9);
    for (int i = 0; i < 5; i++) {
        const MoQfa mo = random_mo(rng, 3);
        const Qfac q({{"s"}, binary(), {"a", "r"}, 0, mo.initial_state(), {{0, 0}},
                      {{mo.unitary(0), mo.unitary(1)}},
                      {{mo.accepting_proj(), ComplexMatrix::identity(3) - mo.accepting_proj()}}});
        for_each_word(2, 6, [&](const Word &w) { EXPECT_NEAR(qfac_accept_prob(q, w), mo_accept_prob(mo, w), 1e-12); });
    }
}

TEST(Qfac, BasisChangeAndGlobalPhaseAreInvisible) {
    Rng rng(10);
    for (int i = 0; i < 5; i++) {
        const Qfac q = random_qfac(rng, 2, 3);
        const Qfac c = conjugated_copy(rng, q);
        for_each_word(2, 6, [&](const Word &w) {
            const auto a = qfac_outcome_probs(q, w);
            const auto b = qfac_outcome_probs(c, w);
            for (std::size_t g = 0; g < a.size(); g++) {
                EXPECT_NEAR(a[g], b[g], 1e-9);
            }
        });
    }
}

TEST(Qfac, UnknownOutcomeThrows) {
    Rng rng(11);
    const Qfac q = random_qfac(rng, 1, 2);
    EXPECT_THROW(qfac_accept_prob(q, {}, "zz"), std::invalid_argument);
    EXPECT_EQ(q.outcome_index("r"), 1u);
}

TEST(Qfac, ValidationPaths) {
    Rng rng(12);
    const Qfac good = random_qfac(rng, 2, 2);
    {
        auto p = good.parts();
        p.unitaries[1][0] = ComplexMatrix{{1, 0}, {0, 2}};
        try {
            Qfac q(std::move(p));
            FAIL();
        } catch (const ValidationError &e) {
            EXPECT_EQ(e.path(), "unitaries.q1,0");
        }
    }
    {
        auto p = good.parts();
        p.measurements[0][1] = ComplexMatrix(2, 2);
        try {
            Qfac q(std::move(p));
            FAIL();
        } catch (const ValidationError &e) {
            EXPECT_EQ(e.path(), "measurements.q0");
        }
    }
    {
        auto p = good.parts();
        p.delta[0][1] = 7;
        EXPECT_THROW(Qfac(std::move(p)), ValidationError);
    }
}

TEST(Qfac, RunTraceRecordsBothPaths) {
    Rng rng(13);
    const Qfac q = random_qfac(rng, 3, 2);
    const RunTrace empty = qfac_run_trace(q, {});
    ASSERT_EQ(empty.classical_path.size(), 1u);
    EXPECT_EQ(empty.classical_path[0], q.initial_classical());
    EXPECT_EQ(empty.quantum_path[0], q.initial_quantum());

    const Word w = w01("0110");
    const RunTrace t = qfac_run_trace(q, w);
    ASSERT_EQ(t.classical_path.size(), w.size() + 1);
    State s = q.initial_classical();
    auto psi = raw_entries(q.initial_quantum());
    for (std::size_t i = 0; i < w.size(); i++) {
        psi = raw_apply(q.unitary(s, w[i]), psi);
        s = q.next(s, w[i]);
        EXPECT_EQ(t.classical_path[i + 1], s);
        for (std::size_t j = 0; j < psi.size(); j++) {
            EXPECT_NEAR(std::abs(t.quantum_path[i + 1][j] - psi[j]), 0.0, 1e-12);
        }
    }
    const auto want = oracle_qfac_probs(q, w);
    for (std::size_t g = 0; g < want.size(); g++) {
        EXPECT_NEAR(t.outcome_distribution[g], want[g], 1e-12);
    }
}

TEST(AllModels, ProbabilitiesStayInUnitInterval) {
    Rng rng(14);
    for (int i = 0; i < 4; i++) {
        const std::size_t n = 1 + i % 3;
        const MoQfa mo = random_mo(rng, n);
        const MmQfa mm = random_mm(rng, n);
        const KLetterQfa kl = random_kletter(rng, 2, n);
        const QfaCl cl = random_qfacl(rng, n, 2, 2);
        for_each_word(2, 6, [&](const Word &w) {
            for (double p : {mo_accept_prob(mo, w), mm_probs(mm, w).accept, mm_probs(mm, w).reject,
                             kletter_accept_prob(kl, w)}) {
                EXPECT_GE(p, -1e-9);
                EXPECT_LE(p, 1 + 1e-9);
            }
            if (w.size() <= 3) {
                const double p = qfacl_accept_prob(cl, w);
                EXPECT_GE(p, -1e-9);
                EXPECT_LE(p, 1 + 1e-9);
            }
        });
    }
}
