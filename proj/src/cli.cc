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

#include "qfac/cli.h"

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "qfac/constructions.h"
#include "qfac/dfa_analysis.h"
#include "qfac/equivalence.h"
#include "qfac/io.h"

namespace qfac {

namespace {

constexpr const char *kBanner = "qfac 1.0.0 (format_version 1)";

/// A usage problem detected after CLI11 parsing succeeded.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string fixed9(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    return buf;
}

std::string sci(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

std::string show_word(const Alphabet &alphabet, const Word &w) {
    return w.empty() ? std::string("(empty word)") : "\"" + format_word(alphabet, w) + "\"";
}

std::string show_complex(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.9f%+.9fi", z.real(), z.imag());
    return buf;
}

/// Machines that compare as 1QFACs are promoted to one.
std::optional<Qfac> as_qfac(const Machine &m) {
    if (const auto *q = std::get_if<Qfac>(&m)) {
        return *q;
    }
    if (const auto *d = std::get_if<Dfa>(&m)) {
        return dfa_to_qfac(*d);
    }
    if (const auto *mo = std::get_if<MoQfa>(&m)) {
        return mo_to_qfac(*mo);
    }
    return std::nullopt;
}

const Alphabet &alphabet_of(const Machine &m) {
    return std::visit([](const auto &x) -> const Alphabet & { return x.alphabet(); }, m);
}

Blm as_blm(const Machine &m, const std::string &outcome, const std::string &which) {
    if (const auto *b = std::get_if<Blm>(&m)) {
        return *b;
    }
    auto q = as_qfac(m);
    if (!q) {
        throw UsageError(which + ": a " + std::string(machine_kind(m)) + " machine cannot be compared for equivalence");
    }
    return bilinearize(*q, outcome);
}

struct Options {
    bool quiet = false;
    std::optional<double> tol;

    // prob / trace / validate / analyze
    std::string machine_path;
    std::string word;
    double threshold = 0.5;

    // equiv / oracle-equiv
    std::string first_path;
    std::string second_path;
    std::string outcome;
    std::optional<std::size_t> max_len;

    // construct
    std::string family;
    int m = 0;
    std::string z;
    std::string alphabet;
    std::string in_path;
    std::string dfa_path;
    std::string mo_path;
    std::string op;
    bool as_qfac = false;
    std::string out_path;

    // analyze
    bool minimize = false;
    bool f_construction = false;
    bool mm_blocker = false;
};

double resolve_tol(const Options &o) {
    if (o.tol) {
        return *o.tol;
    }
    if (const char *env = std::getenv("QFA_TOL"); env != nullptr && *env != '\0') {
        char *end = nullptr;
        double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0)) {
            throw UsageError(std::string("QFA_TOL must be a positive number, got '") + env + "'");
        }
        return v;
    }
    return kEquivTol;
}

std::vector<std::string> split_names(const std::string &text) {
    std::vector<std::string> out;
    if (text.find(',') == std::string::npos) {
        for (char c : text) {
            out.emplace_back(1, c);
        }
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        out.push_back(tok);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns an exit code and appends its report to `out`.

int run_prob(const Options &o, std::ostream &out) {
    const Machine m = load_machine(o.machine_path);
    const Word w = parse_word(alphabet_of(m), o.word);
    double accept = 0;
    if (const auto *q = std::get_if<Qfac>(&m)) {
        const auto probs = qfac_outcome_probs(*q, w);
        for (std::size_t g = 0; g < probs.size(); g++) {
            out << q->outcomes()[g] << ": " << fixed9(probs[g]) << "\n";
        }
        for (std::size_t g = 0; g < probs.size(); g++) {
            if (q->outcomes()[g] == kAcceptOutcome) {
                accept = probs[g];
            }
        }
    } else if (const auto *d = std::get_if<Dfa>(&m)) {
        accept = dfa_accepts(*d, w) ? 1.0 : 0.0;
        out << "a: " << fixed9(accept) << "\n";
        out << "r: " << fixed9(1 - accept) << "\n";
    } else if (const auto *mo = std::get_if<MoQfa>(&m)) {
        accept = mo_accept_prob(*mo, w);
        out << "a: " << fixed9(accept) << "\n";
        out << "r: " << fixed9(1 - accept) << "\n";
    } else if (const auto *mm = std::get_if<MmQfa>(&m)) {
        const MmProbs p = mm_probs(*mm, w);
        accept = p.accept;
        out << "a: " << fixed9(p.accept) << "\n";
        out << "r: " << fixed9(p.reject) << "\n";
    } else if (const auto *kl = std::get_if<KLetterQfa>(&m)) {
        accept = kletter_accept_prob(*kl, w);
        out << "a: " << fixed9(accept) << "\n";
        out << "r: " << fixed9(1 - accept) << "\n";
    } else if (const auto *cl = std::get_if<QfaCl>(&m)) {
        accept = qfacl_accept_prob(*cl, w);
        out << "a: " << fixed9(accept) << "\n";
        out << "r: " << fixed9(1 - accept) << "\n";
    } else if (const auto *b = std::get_if<Blm>(&m)) {
        const Complex f = blm_word_fn(*b, w);
        accept = f.real();
        out << "f: " << show_complex(f) << "\n";
    }
    const bool accepted = accept > o.threshold;
    out << (accepted ? "accepted" : "rejected") << " (threshold " << fixed9(o.threshold) << ")\n";
    return accepted ? kExitAffirmative : kExitNegative;
}

int run_trace(const Options &o, std::ostream &out) {
    const Machine m = load_machine(o.machine_path);
    const auto q = as_qfac(m);
    if (!q) {
        throw UsageError("trace needs a qfac, dfa or mo1qfa machine, got " + std::string(machine_kind(m)));
    }
    const Word w = parse_word(q->alphabet(), o.word);
    const RunTrace t = qfac_run_trace(*q, w);
    for (std::size_t i = 0; i < t.classical_path.size(); i++) {
        out << "step " << i;
        if (i > 0) {
            out << " read " << q->alphabet()[w[i - 1]];
        }
        out << " state " << q->classical_states()[t.classical_path[i]] << " amplitudes [";
        const auto e = t.quantum_path[i].entries();
        for (std::size_t j = 0; j < e.size(); j++) {
            out << (j ? ", " : "") << show_complex(e[j]);
        }
        out << "]\n";
    }
    for (std::size_t g = 0; g < t.outcome_distribution.size(); g++) {
        out << q->outcomes()[g] << ": " << fixed9(t.outcome_distribution[g]) << "\n";
    }
    return kExitAffirmative;
}

/// Word-level probability of the compared quantity, for the report.
std::string describe_value(const Machine &m, const std::string &outcome, const Word &w) {
    if (const auto *b = std::get_if<Blm>(&m)) {
        return show_complex(blm_word_fn(*b, w));
    }
    return fixed9(qfac_accept_prob(*as_qfac(m), w, outcome));
}

int run_equiv(const Options &o, std::ostream &out) {
    const double tol = resolve_tol(o);
    const Machine m1 = load_machine(o.first_path);
    const Machine m2 = load_machine(o.second_path);
    if (alphabet_of(m1) != alphabet_of(m2)) {
        throw UsageError("the machines have different alphabets");
    }
    const Alphabet &alphabet = alphabet_of(m1);
    const auto q1 = as_qfac(m1);
    const auto q2 = as_qfac(m2);

    EquivalenceVerdict v;
    if (q1 && q2) {
        if (o.outcome.empty()) {
            v = qfac_equivalent_all(*q1, *q2, tol);
        } else {
            v = qfac_equivalent(*q1, *q2, o.outcome, tol);
        }
    } else {
        const std::string outcome = o.outcome.empty() ? std::string(kAcceptOutcome) : o.outcome;
        v = blm_equivalent(as_blm(m1, outcome, "first machine"), as_blm(m2, outcome, "second machine"), tol);
        v.outcome = outcome;
    }

    out << (v.equivalent ? "equivalent" : "inequivalent");
    if (!v.outcome.empty()) {
        out << " (outcome " << v.outcome << ")";
    }
    out << "\n";
    if (v.witness) {
        out << "witness: " << show_word(alphabet, *v.witness) << "\n";
        out << "first: " << describe_value(m1, v.outcome, *v.witness) << "\n";
        out << "second: " << describe_value(m2, v.outcome, *v.witness) << "\n";
        out << "gap: " << fixed9(v.max_abs_diff_at_witness) << "\n";
    }
    out << "basis size: " << v.basis_size << "\n";
    out << "length bound: " << v.length_bound << "\n";
    out << "tolerance: " << sci(tol) << "\n";

    if (o.max_len) {
        std::optional<Word> bf;
        if (q1 && q2) {
            bf = o.outcome.empty() ? brute_force_k_equiv_all(*q1, *q2, *o.max_len, tol)
                                   : brute_force_k_equiv(*q1, *q2, o.outcome, *o.max_len, tol);
        } else {
            throw UsageError("--max-len confirmation needs machines that promote to qfac");
        }
        const bool expect_witness = v.witness && v.witness->size() <= *o.max_len;
        out << "brute force up to length " << *o.max_len << ": ";
        if (bf) {
            out << "witness " << show_word(alphabet, *bf);
        } else {
            out << "no witness";
        }
        if (bf.has_value() != expect_witness) {
            out << " (DISAGREES with the basis verdict)\n";
            return kExitUsage;
        }
        out << " (consistent)\n";
    }
    return v.equivalent ? kExitAffirmative : kExitNegative;
}

int run_oracle_equiv(const Options &o, std::ostream &out) {
    const double tol = resolve_tol(o);
    const Machine m1 = load_machine(o.first_path);
    const Machine m2 = load_machine(o.second_path);
    const auto q1 = as_qfac(m1);
    const auto q2 = as_qfac(m2);
    if (!q1 || !q2) {
        throw UsageError("oracle-equiv needs qfac, dfa or mo1qfa machines");
    }
    if (q1->alphabet() != q2->alphabet()) {
        throw UsageError("the machines have different alphabets");
    }
    const auto bf = o.outcome.empty() ? brute_force_k_equiv_all(*q1, *q2, *o.max_len, tol)
                                      : brute_force_k_equiv(*q1, *q2, o.outcome, *o.max_len, tol);
    if (bf) {
        out << "inequivalent\n";
        out << "witness: " << show_word(q1->alphabet(), *bf) << "\n";
        return kExitNegative;
    }
    out << "no difference on words up to length " << *o.max_len << "\n";
    return kExitAffirmative;
}

int emit(const Machine &m, const Options &o, std::ostream &out) {
    if (o.out_path.empty()) {
        out << serialize_machine(m);
    } else {
        save_machine(m, o.out_path);
        out << "wrote " << machine_kind(m) << " to " << o.out_path << "\n";
    }
    return kExitAffirmative;
}

template <typename T>
T load_as(const std::string &path, const char *flag) {
    if (path.empty()) {
        throw UsageError(std::string("missing ") + flag);
    }
    Machine m = load_machine(path);
    if (auto *x = std::get_if<T>(&m)) {
        return std::move(*x);
    }
    throw UsageError(std::string(flag) + " expects a different machine kind, got " + std::string(machine_kind(m)));
}

int run_construct(const Options &o, std::ostream &out) {
    const auto need_m = [&] {
        if (o.m < 2) {
            throw UsageError("--m must be at least 2");
        }
        return o.m;
    };
    if (o.family == "l0") {
        return emit(o.as_qfac ? Machine(dfa_to_qfac(build_l0_dfa())) : Machine(build_l0_dfa()), o, out);
    }
    if (o.family == "l0m") {
        const int m = need_m();
        return emit(o.as_qfac ? Machine(build_l0m_qfac(m)) : Machine(build_l0m_dfa(m)), o, out);
    }
    if (o.family == "lzm") {
        if (o.z.empty()) {
            throw UsageError("lzm needs --z");
        }
        LanguageFamilyParams p{.m = need_m(), .z = split_names(o.z), .alphabet = split_names(o.alphabet)};
        const Dfa d = build_lzm_dfa(p);
        return emit(o.as_qfac ? Machine(dfa_to_qfac(d)) : Machine(d), o, out);
    }
    if (o.family == "rotation") {
        const int m = need_m();
        MoQfa q = o.alphabet.empty() ? build_rotation_mo1qfa(m) : build_rotation_mo1qfa(m, split_names(o.alphabet));
        return emit(o.as_qfac ? Machine(mo_to_qfac(q)) : Machine(std::move(q)), o, out);
    }
    if (o.family == "dfa2qfac") {
        return emit(dfa_to_qfac(load_as<Dfa>(o.in_path, "--in")), o, out);
    }
    if (o.family == "combine") {
        const auto op = parse_set_op(o.op);
        if (!op) {
            throw UsageError("--op must be intersection, union, dfa-minus-qfa or qfa-minus-dfa");
        }
        return emit(combine(load_as<Dfa>(o.dfa_path, "--dfa"), load_as<MoQfa>(o.mo_path, "--mo"), *op), o, out);
    }
    throw UsageError("unknown family '" + o.family + "'");
}

int run_analyze(const Options &o, std::ostream &out) {
    const Machine m = load_machine(o.machine_path);
    const auto *d = std::get_if<Dfa>(&m);
    if (d == nullptr) {
        throw UsageError("analyze needs a dfa, got " + std::string(machine_kind(m)));
    }
    out << "states: " << d->num_states() << "\n";
    const Dfa minimal = minimize_dfa(*d);
    if (o.minimize) {
        out << "minimal states: " << minimal.num_states() << "\n";
        if (!o.out_path.empty()) {
            save_machine(minimal, o.out_path);
            out << "wrote minimal dfa to " << o.out_path << "\n";
        }
    }
    const auto &names = minimal.state_names();
    const auto &alphabet = minimal.alphabet();
    bool obstruction = false;
    if (o.f_construction) {
        if (auto w = find_f_construction(minimal)) {
            obstruction = true;
            out << "F-construction: found q1=" << names[w->q1] << " q2=" << names[w->q2]
                << " t=" << show_word(alphabet, w->t) << " z=" << show_word(alphabet, w->z) << "\n";
            out << "  not multi-letter-acceptable (multi-letter-acceptable iff no F-construction)\n";
        } else {
            out << "F-construction: none\n";
            out << "  multi-letter-acceptable (multi-letter-acceptable iff no F-construction)\n";
        }
    }
    if (o.mm_blocker) {
        if (auto w = find_mm_blocker(minimal)) {
            obstruction = true;
            out << "MM-blocking construction: found p=" << names[w->p] << " q=" << names[w->q]
                << " x=" << show_word(alphabet, w->x) << " y=" << show_word(alphabet, w->y)
                << " distinguisher=" << show_word(alphabet, w->d) << "\n";
            out << "  not MM-acceptable\n";
        } else {
            out << "MM-blocking construction: none\n";
            out << "  inconclusive (absence of the pattern does not prove MM-acceptability)\n";
        }
    }
    return obstruction ? kExitNegative : kExitAffirmative;
}

int run_validate(const Options &o, std::ostream &out) {
    const Machine m = load_machine(o.machine_path);
    out << "valid " << machine_kind(m) << "\n";
    return kExitAffirmative;
}

}  // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Quantum finite automata with classical states: simulation, constructions, analysis, equivalence",
                 "qfac"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--quiet", o.quiet, "Suppress the banner line");

    auto *prob = app.add_subcommand("prob", "Outcome probabilities of a machine on a word");
    prob->add_option("machine", o.machine_path, "Machine document")->required();
    prob->add_option("word", o.word, "Input word ('' for the empty word)")->required();
    prob->add_option("--threshold", o.threshold, "Accept when the accepting probability exceeds this");

    auto *trace = app.add_subcommand("trace", "Step-by-step run of a 1QFAC");
    trace->add_option("machine", o.machine_path, "Machine document")->required();
    trace->add_option("word", o.word, "Input word")->required();

    auto *equiv = app.add_subcommand("equiv", "Decide equivalence by basis closure");
    equiv->add_option("first", o.first_path, "First machine")->required();
    equiv->add_option("second", o.second_path, "Second machine")->required();
    equiv->add_option("--outcome", o.outcome, "Outcome label to compare (default: every outcome)");
    equiv->add_option("--tol", o.tol, "Span and comparison tolerance")->check(CLI::PositiveNumber);
    equiv->add_option("--max-len", o.max_len, "Also confirm by brute force up to this length");

    auto *oracle = app.add_subcommand("oracle-equiv", "Compare machines on every word up to a length");
    oracle->add_option("first", o.first_path, "First machine")->required();
    oracle->add_option("second", o.second_path, "Second machine")->required();
    oracle->add_option("--max-len", o.max_len, "Longest word compared")->required();
    oracle->add_option("--outcome", o.outcome, "Outcome label to compare (default: every outcome)");
    oracle->add_option("--tol", o.tol, "Comparison tolerance")->check(CLI::PositiveNumber);

    auto *construct = app.add_subcommand("construct", "Build an example machine");
    construct->add_option("family", o.family, "l0, l0m, lzm, rotation, dfa2qfac or combine")
        ->required()
        ->check(CLI::IsMember({"l0", "l0m", "lzm", "rotation", "dfa2qfac", "combine"}));
    construct->add_option("--m", o.m, "Family parameter m");
    construct->add_option("--z", o.z, "Pattern word of lzm");
    construct->add_option("--alphabet", o.alphabet, "Alphabet, e.g. 01 or a,b,c");
    construct->add_option("--in", o.in_path, "Input dfa for dfa2qfac");
    construct->add_option("--dfa", o.dfa_path, "Dfa operand of combine");
    construct->add_option("--mo", o.mo_path, "MO-1QFA operand of combine");
    construct->add_option("--op", o.op, "intersection, union, dfa-minus-qfa or qfa-minus-dfa");
    construct->add_flag("--qfac", o.as_qfac, "Emit the 1QFAC form of l0, l0m, lzm or rotation");
    construct->add_option("--out", o.out_path, "Write to this file instead of stdout");

    auto *analyze = app.add_subcommand("analyze", "Minimize a dfa and look for acceptability obstructions");
    analyze->add_option("machine", o.machine_path, "Dfa document")->required();
    analyze->add_flag("--minimize", o.minimize, "Report the minimal state count");
    analyze->add_flag("--f-construction", o.f_construction, "Search for an F-construction");
    analyze->add_flag("--mm-blocker", o.mm_blocker, "Search for the MM-blocking construction");
    analyze->add_option("--out", o.out_path, "Write the minimal dfa here (with --minimize)");

    auto *validate = app.add_subcommand("validate", "Parse and validate a machine document");
    validate->add_option("machine", o.machine_path, "Machine document")->required();

    std::ostringstream report;
    std::ostringstream diag;
    int code = kExitUsage;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (!o.quiet) {
            report << kBanner << "\n";
        }
        if (prob->parsed()) {
            code = run_prob(o, report);
        } else if (trace->parsed()) {
            code = run_trace(o, report);
        } else if (equiv->parsed()) {
            code = run_equiv(o, report);
        } else if (oracle->parsed()) {
            code = run_oracle_equiv(o, report);
        } else if (construct->parsed()) {
            code = run_construct(o, report);
        } else if (analyze->parsed()) {
            code = run_analyze(o, report);
        } else if (validate->parsed()) {
            code = run_validate(o, report);
        }
    } catch (const CLI::CallForHelp &) {
        report << app.help();
        code = kExitAffirmative;
    } catch (const CLI::ParseError &e) {
        diag << "error: " << e.what() << "\n" << app.help();
        code = kExitUsage;
    } catch (const ValidationError &e) {
        diag << "validation error: " << e.what() << "\n";
        code = kExitUsage;
    } catch (const ParseError &e) {
        diag << "parse error: " << e.what() << "\n";
        code = kExitUsage;
    } catch (const IoError &e) {
        diag << "i/o error: " << e.what() << "\n";
        code = kExitUsage;
    } catch (const std::exception &e) {
        diag << "error: " << e.what() << "\n";
        code = kExitUsage;
    }
    out << report.str();
    err << diag.str();
    out.flush();
    err.flush();
    return code;
}

}  // namespace qfac
