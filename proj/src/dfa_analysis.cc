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

#include "qfac/dfa_analysis.h"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace qfac {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// Breadth-first search over an implicit graph whose edges are labelled by
/// symbols 0..num_symbols-1. Returns the length-lexicographically first word
/// leading from `start` to a node satisfying `is_target`. With `nonempty`,
/// the empty word is not considered, so `start` itself can only be reached
/// through a cycle.
template <class Succ, class Pred>
std::optional<Word> shortest_word(std::size_t num_nodes, std::size_t start, std::size_t num_symbols, Succ succ,
                                  Pred is_target, bool nonempty) {
    if (!nonempty && is_target(start)) {
        return Word{};
    }
    std::vector<std::size_t> parent(num_nodes, kNone);
    std::vector<Symbol> via(num_nodes, 0);
    std::vector<bool> seen(num_nodes, false);
    std::deque<std::size_t> queue;
    // Layer 1 is expanded from `start` without marking it, so a cycle back to
    // it is discovered like any other node.
    auto reconstruct = [&](std::size_t node) {
        Word w;
        while (node != kNone) {
            w.push_back(via[node]);
            node = parent[node];
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    for (Symbol a = 0; a < num_symbols; a++) {
        std::size_t nxt = succ(start, a);
        if (seen[nxt]) {
            continue;
        }
        seen[nxt] = true;
        via[nxt] = a;
        if (is_target(nxt)) {
            return reconstruct(nxt);
        }
        queue.push_back(nxt);
    }
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (Symbol a = 0; a < num_symbols; a++) {
            std::size_t nxt = succ(cur, a);
            if (seen[nxt]) {
                continue;
            }
            seen[nxt] = true;
            parent[nxt] = cur;
            via[nxt] = a;
            if (is_target(nxt)) {
                return reconstruct(nxt);
            }
            queue.push_back(nxt);
        }
    }
    return std::nullopt;
}

std::vector<State> reachable_order(const Dfa &d) {
    std::vector<State> order{d.initial()};
    std::vector<bool> seen(d.num_states(), false);
    seen[d.initial()] = true;
    for (std::size_t i = 0; i < order.size(); i++) {
        for (Symbol a = 0; a < d.alphabet().size(); a++) {
            State t = d.next(order[i], a);
            if (!seen[t]) {
                seen[t] = true;
                order.push_back(t);
            }
        }
    }
    return order;
}

void require_minimal(const Dfa &d) {
    if (!is_minimal(d)) {
        throw std::invalid_argument("DFA is not minimal; minimize it first");
    }
}

}  // namespace

Dfa minimize_dfa(const Dfa &d) {
    const std::size_t sigma = d.alphabet().size();

    // Restrict to reachable states, renumbered densely.
    const std::vector<State> reach = reachable_order(d);
    const std::size_t n = reach.size();
    std::vector<std::size_t> local(d.num_states(), kNone);
    for (std::size_t i = 0; i < n; i++) {
        local[reach[i]] = i;
    }
    std::vector<std::vector<State>> delta(n, std::vector<State>(sigma));
    for (std::size_t i = 0; i < n; i++) {
        for (Symbol a = 0; a < sigma; a++) {
            delta[i][a] = local[d.next(reach[i], a)];
        }
    }

    // inverse[a][t] = states s with delta(s, a) = t
    std::vector<std::vector<std::vector<State>>> inverse(sigma, std::vector<std::vector<State>>(n));
    for (std::size_t s = 0; s < n; s++) {
        for (Symbol a = 0; a < sigma; a++) {
            inverse[a][delta[s][a]].push_back(s);
        }
    }

    // Hopcroft partition refinement.
    std::vector<std::vector<State>> blocks;
    std::vector<std::size_t> block_of(n);
    {
        std::vector<State> acc, rej;
        for (std::size_t s = 0; s < n; s++) {
            (d.is_accepting(reach[s]) ? acc : rej).push_back(s);
        }
        for (auto *part : {&acc, &rej}) {
            if (!part->empty()) {
                for (State s : *part) {
                    block_of[s] = blocks.size();
                }
                blocks.push_back(std::move(*part));
            }
        }
    }
    std::vector<std::size_t> worklist;
    std::vector<bool> in_worklist(n + 1, false);
    for (std::size_t b = 0; b < blocks.size(); b++) {
        worklist.push_back(b);
        in_worklist[b] = true;
    }
    std::vector<std::size_t> hits(n, 0);
    std::vector<bool> in_pre(n, false);
    while (!worklist.empty()) {
        const std::size_t splitter = worklist.back();
        worklist.pop_back();
        in_worklist[splitter] = false;
        const std::vector<State> members = blocks[splitter];
        for (Symbol a = 0; a < sigma; a++) {
            std::vector<State> pre;
            for (State t : members) {
                for (State s : inverse[a][t]) {
                    pre.push_back(s);
                }
            }
            std::vector<std::size_t> touched;
            for (State s : pre) {
                in_pre[s] = true;
                if (hits[block_of[s]]++ == 0) {
                    touched.push_back(block_of[s]);
                }
            }
            for (std::size_t b : touched) {
                if (hits[b] < blocks[b].size()) {
                    std::vector<State> inside, outside;
                    for (State s : blocks[b]) {
                        (in_pre[s] ? inside : outside).push_back(s);
                    }
                    const std::size_t fresh = blocks.size();
                    blocks[b] = std::move(inside);
                    for (State s : outside) {
                        block_of[s] = fresh;
                    }
                    blocks.push_back(std::move(outside));
                    if (in_worklist.size() < blocks.size()) {
                        in_worklist.resize(blocks.size(), false);
                    }
                    if (in_worklist[b]) {
                        worklist.push_back(fresh);
                        in_worklist[fresh] = true;
                    } else {
                        const std::size_t smaller = blocks[b].size() <= blocks[fresh].size() ? b : fresh;
                        worklist.push_back(smaller);
                        in_worklist[smaller] = true;
                    }
                }
                hits[b] = 0;
            }
            for (State s : pre) {
                in_pre[s] = false;
            }
        }
    }

    // Canonical renumbering by breadth-first discovery of blocks.
    std::vector<std::size_t> canon(blocks.size(), kNone);
    std::vector<std::size_t> order{block_of[0]};
    canon[block_of[0]] = 0;
    for (std::size_t i = 0; i < order.size(); i++) {
        const State rep = blocks[order[i]].front();
        for (Symbol a = 0; a < sigma; a++) {
            std::size_t b = block_of[delta[rep][a]];
            if (canon[b] == kNone) {
                canon[b] = order.size();
                order.push_back(b);
            }
        }
    }
    const std::size_t m = order.size();
    std::vector<std::vector<State>> min_delta(m, std::vector<State>(sigma));
    std::vector<bool> accepting(m);
    for (std::size_t i = 0; i < m; i++) {
        const State rep = blocks[order[i]].front();
        accepting[i] = d.is_accepting(reach[rep]);
        for (Symbol a = 0; a < sigma; a++) {
            min_delta[i][a] = canon[block_of[delta[rep][a]]];
        }
    }
    return Dfa(d.alphabet(), 0, std::move(accepting), std::move(min_delta));
}

bool is_minimal(const Dfa &d) { return minimize_dfa(d).num_states() == d.num_states(); }

DfaEquivalence dfa_equivalent(const Dfa &d1, const Dfa &d2) {
    if (d1.alphabet() != d2.alphabet()) {
        throw std::invalid_argument("dfa_equivalent: alphabets differ");
    }
    const std::size_t n2 = d2.num_states();
    auto succ = [&](std::size_t node, Symbol a) { return d1.next(node / n2, a) * n2 + d2.next(node % n2, a); };
    auto differs = [&](std::size_t node) { return d1.is_accepting(node / n2) != d2.is_accepting(node % n2); };
    auto w = shortest_word(d1.num_states() * n2, d1.initial() * n2 + d2.initial(), d1.alphabet().size(), succ,
                           differs, false);
    return DfaEquivalence{.equivalent = !w.has_value(), .witness = w};
}

std::optional<FConstructionWitness> find_f_construction(const Dfa &d) {
    require_minimal(d);
    const std::size_t n = d.num_states();
    const std::size_t sigma = d.alphabet().size();
    auto succ = [&](std::size_t node, Symbol a) { return d.next(node / n, a) * n + d.next(node % n, a); };
    for (State q1 = 0; q1 < n; q1++) {
        for (State q2 = 0; q2 < n; q2++) {
            if (q1 == q2) {
                continue;
            }
            const std::size_t start = q1 * n + q2;
            auto t = shortest_word(n * n, start, sigma, succ, [&](std::size_t x) { return x == start; }, true);
            if (!t) {
                continue;
            }
            const std::size_t sink = q2 * n + q2;
            auto z = shortest_word(n * n, start, sigma, succ, [&](std::size_t x) { return x == sink; }, true);
            if (!z) {
                continue;
            }
            return FConstructionWitness{.q1 = q1, .q2 = q2, .t = std::move(*t), .z = std::move(*z)};
        }
    }
    return std::nullopt;
}

std::optional<MmBlockerWitness> find_mm_blocker(const Dfa &d) {
    require_minimal(d);
    const std::size_t n = d.num_states();
    const std::size_t sigma = d.alphabet().size();
    auto pair_succ = [&](std::size_t node, Symbol a) { return d.next(node / n, a) * n + d.next(node % n, a); };
    auto single_succ = [&](std::size_t s, Symbol a) { return d.next(s, a); };
    auto distinguished = [&](std::size_t node) { return d.is_accepting(node / n) != d.is_accepting(node % n); };
    for (State p = 0; p < n; p++) {
        for (State q = 0; q < n; q++) {
            if (p == q) {
                continue;
            }
            const std::size_t start = p * n + q;
            const std::size_t sink = q * n + q;
            auto x = shortest_word(n * n, start, sigma, pair_succ, [&](std::size_t v) { return v == sink; }, true);
            if (!x) {
                continue;
            }
            auto y = shortest_word(n, q, sigma, single_succ, [&](std::size_t v) { return v == p; }, true);
            if (!y) {
                continue;
            }
            auto dist = shortest_word(n * n, start, sigma, pair_succ, distinguished, false);
            if (!dist) {
                continue;
            }
            return MmBlockerWitness{
                .p = p, .q = q, .x = std::move(*x), .y = std::move(*y), .d = std::move(*dist)};
        }
    }
    return std::nullopt;
}

bool verify(const Dfa &d, const FConstructionWitness &w) {
    if (w.q1 == w.q2 || w.t.empty() || w.z.empty() || w.q1 >= d.num_states() || w.q2 >= d.num_states()) {
        return false;
    }
    return d.run(w.q1, w.z) == w.q2 && d.run(w.q2, w.z) == w.q2 && d.run(w.q1, w.t) == w.q1 &&
           d.run(w.q2, w.t) == w.q2;
}

bool verify(const Dfa &d, const MmBlockerWitness &w) {
    if (w.p == w.q || w.x.empty() || w.y.empty() || w.p >= d.num_states() || w.q >= d.num_states()) {
        return false;
    }
    return d.run(w.p, w.x) == w.q && d.run(w.q, w.x) == w.q && d.run(w.q, w.y) == w.p &&
           d.is_accepting(d.run(w.p, w.d)) != d.is_accepting(d.run(w.q, w.d));
}

}  // namespace qfac
