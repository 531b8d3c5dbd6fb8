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

#include "qfac/io.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qfac {

using json = nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Canonical text output.

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

/// Arrays of scalars, or arrays of arrays of scalars, stay on one line.
bool is_inline(const json &j) {
    if (!j.is_array()) {
        return !j.is_object();
    }
    for (const auto &e : j) {
        if (e.is_object()) {
            return false;
        }
        if (e.is_array()) {
            for (const auto &f : e) {
                if (f.is_array() || f.is_object()) {
                    return false;
                }
            }
        }
    }
    return true;
}

void write_canonical(const json &j, int indent, std::string &out) {
    const std::string pad(indent, ' ');
    const std::string inner_pad(indent + 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto &[key, value] : j.items()) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out += inner_pad + json(key).dump() + ": ";
                write_canonical(value, indent + 2, out);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            if (is_inline(j)) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); i++) {
                    if (i > 0) {
                        out += ", ";
                    }
                    write_canonical(j[i], indent, out);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); i++) {
                if (i > 0) {
                    out += ",\n";
                }
                out += inner_pad;
                write_canonical(j[i], indent + 2, out);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float:
            out += format_real(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

// ---------------------------------------------------------------------------
// Encoding.

json encode_complex(Complex z) { return json::array({json(z.real()), json(z.imag())}); }

json encode_vector(const ComplexVector &v) {
    json a = json::array();
    for (const auto &z : v.entries()) {
        a.push_back(encode_complex(z));
    }
    return a;
}

json encode_matrix(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); c++) {
            row.push_back(encode_complex(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json encode_dfa(const Dfa &d) {
    json body;
    body["alphabet"] = d.alphabet();
    body["states"] = d.state_names();
    body["initial"] = d.state_names()[d.initial()];
    json acc = json::array();
    json delta = json::object();
    for (State s = 0; s < d.num_states(); s++) {
        if (d.is_accepting(s)) {
            acc.push_back(d.state_names()[s]);
        }
        for (Symbol a = 0; a < d.alphabet().size(); a++) {
            delta[d.state_names()[s] + "," + d.alphabet()[a]] = d.state_names()[d.next(s, a)];
        }
    }
    body["accepting"] = std::move(acc);
    body["delta"] = std::move(delta);
    return body;
}

json encode_symbol_matrices(const Alphabet &alphabet, const std::vector<ComplexMatrix> &ms) {
    json out = json::object();
    for (Symbol a = 0; a < alphabet.size(); a++) {
        out[alphabet[a]] = encode_matrix(ms[a]);
    }
    return out;
}

json encode_body(const Machine &m) {
    return std::visit(
        [](const auto &x) -> json {
            using T = std::decay_t<decltype(x)>;
            json body;
            if constexpr (std::is_same_v<T, Dfa>) {
                body = encode_dfa(x);
            } else if constexpr (std::is_same_v<T, MoQfa>) {
                const auto &p = x.parts();
                body["alphabet"] = p.alphabet;
                body["qdim"] = x.qdim();
                body["initial_state"] = encode_vector(p.initial_state);
                body["unitaries"] = encode_symbol_matrices(p.alphabet, p.unitaries);
                body["accepting_proj"] = encode_matrix(p.accepting_proj);
            } else if constexpr (std::is_same_v<T, MmQfa>) {
                const auto &p = x.parts();
                body["alphabet"] = p.alphabet;
                body["qdim"] = x.qdim();
                body["initial_state"] = encode_vector(p.initial_state);
                body["unitaries"] = encode_symbol_matrices(p.alphabet, p.unitaries);
                body["end_unitary"] = encode_matrix(p.end_unitary);
                body["accepting_proj"] = encode_matrix(p.accepting_proj);
                body["reject_proj"] = encode_matrix(p.reject_proj);
                body["nonhalt_proj"] = encode_matrix(p.nonhalt_proj);
            } else if constexpr (std::is_same_v<T, KLetterQfa>) {
                const auto &p = x.parts();
                body["k"] = p.k;
                body["alphabet"] = p.alphabet;
                body["qdim"] = x.qdim();
                body["initial_state"] = encode_vector(p.initial_state);
                json nu = json::object();
                for (const auto &[window, u] : p.nu) {
                    nu[window_key(p.alphabet, window)] = encode_matrix(u);
                }
                body["nu"] = std::move(nu);
                body["accepting_proj"] = encode_matrix(p.accepting_proj);
            } else if constexpr (std::is_same_v<T, QfaCl>) {
                const auto &p = x.parts();
                body["alphabet"] = p.alphabet;
                body["qdim"] = x.qdim();
                body["initial_state"] = encode_vector(p.initial_state);
                json us = encode_symbol_matrices(p.alphabet, p.unitaries);
                us["$"] = encode_matrix(p.unitaries.back());
                body["unitaries"] = std::move(us);
                json obs = json::array();
                for (std::size_t i = 0; i < p.outcome_labels.size(); i++) {
                    obs.push_back(json{{"label", p.outcome_labels[i]},
                                       {"projector", encode_matrix(p.outcome_projectors[i])}});
                }
                body["observable"] = std::move(obs);
                body["control"] = encode_dfa(p.control);
            } else if constexpr (std::is_same_v<T, Qfac>) {
                const auto &p = x.parts();
                body["classical_states"] = p.classical_states;
                body["alphabet"] = p.alphabet;
                body["outcomes"] = p.outcomes;
                body["initial_classical"] = p.classical_states[p.initial_classical];
                body["qdim"] = x.qdim();
                body["initial_quantum"] = encode_vector(p.initial_quantum);
                json delta = json::object();
                json us = json::object();
                json ms = json::object();
                for (State s = 0; s < x.num_classical(); s++) {
                    for (Symbol a = 0; a < p.alphabet.size(); a++) {
                        const std::string key = p.classical_states[s] + "," + p.alphabet[a];
                        delta[key] = p.classical_states[p.delta[s][a]];
                        us[key] = encode_matrix(p.unitaries[s][a]);
                    }
                    json per = json::object();
                    for (std::size_t g = 0; g < p.outcomes.size(); g++) {
                        per[p.outcomes[g]] = encode_matrix(p.measurements[s][g]);
                    }
                    ms[p.classical_states[s]] = std::move(per);
                }
                body["delta"] = std::move(delta);
                body["unitaries"] = std::move(us);
                body["measurements"] = std::move(ms);
            } else if constexpr (std::is_same_v<T, Blm>) {
                const auto &p = x.parts();
                body["alphabet"] = p.alphabet;
                body["dim"] = x.dim();
                body["pi"] = encode_vector(p.pi);
                body["step"] = encode_symbol_matrices(p.alphabet, p.step);
                body["eta"] = encode_vector(p.eta);
            }
            return body;
        },
        m);
}

// ---------------------------------------------------------------------------
// Decoding. Every accessor reports the field path on failure.

std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }

const json &field(const json &obj, const std::string &path, const std::string &key) {
    if (!obj.is_object()) {
        throw ValidationError(path.empty() ? "body" : path, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ValidationError(join(path, key), "missing field");
    }
    return *it;
}

const json &object_field(const json &obj, const std::string &path, const std::string &key) {
    const json &v = field(obj, path, key);
    if (!v.is_object()) {
        throw ValidationError(join(path, key), "expected an object");
    }
    return v;
}

std::string get_string(const json &v, const std::string &path) {
    if (!v.is_string()) {
        throw ValidationError(path, "expected a string");
    }
    return v.get<std::string>();
}

std::size_t get_size(const json &v, const std::string &path) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw ValidationError(path, "expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::vector<std::string> get_names(const json &v, const std::string &path) {
    if (!v.is_array()) {
        throw ValidationError(path, "expected an array of strings");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); i++) {
        out.push_back(get_string(v[i], path + "." + std::to_string(i)));
    }
    check_names(out, path);
    return out;
}

Complex get_complex(const json &v, const std::string &path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ValidationError(path, "expected a complex number [re, im]");
    }
    return Complex(v[0].get<double>(), v[1].get<double>());
}

ComplexVector get_vector(const json &v, const std::string &path) {
    if (!v.is_array() || v.empty()) {
        throw ValidationError(path, "expected a nonempty array of complex numbers");
    }
    std::vector<Complex> e;
    for (std::size_t i = 0; i < v.size(); i++) {
        e.push_back(get_complex(v[i], path + "." + std::to_string(i)));
    }
    ComplexVector out(std::move(e));
    if (!all_finite(out)) {
        throw ValidationError(path, "non-finite entry");
    }
    return out;
}

ComplexMatrix get_matrix(const json &v, const std::string &path) {
    if (!v.is_array() || v.empty()) {
        throw ValidationError(path, "expected a nonempty array of rows");
    }
    const std::size_t rows = v.size();
    std::size_t cols = 0;
    std::vector<Complex> e;
    for (std::size_t r = 0; r < rows; r++) {
        const json &row = v[r];
        const std::string rp = path + "." + std::to_string(r);
        if (!row.is_array() || row.empty()) {
            throw ValidationError(rp, "expected a nonempty row");
        }
        if (r == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            throw ValidationError(rp, "ragged matrix");
        }
        for (std::size_t c = 0; c < cols; c++) {
            e.push_back(get_complex(row[c], rp + "." + std::to_string(c)));
        }
    }
    ComplexMatrix out(rows, cols, std::move(e));
    if (!all_finite(out)) {
        throw ValidationError(path, "non-finite entry");
    }
    return out;
}

std::size_t name_index(const std::vector<std::string> &names, const std::string &name, const std::string &path) {
    for (std::size_t i = 0; i < names.size(); i++) {
        if (names[i] == name) {
            return i;
        }
    }
    throw ValidationError(path, "unknown name '" + name + "'");
}

/// Checks that a keyed map has exactly the expected keys.
void check_keys(const json &obj, const std::string &path, const std::set<std::string> &expected) {
    for (const auto &[key, value] : obj.items()) {
        if (!expected.contains(key)) {
            throw ValidationError(join(path, key), "unexpected key");
        }
    }
    for (const auto &key : expected) {
        if (!obj.contains(key)) {
            throw ValidationError(join(path, key), "missing entry");
        }
    }
}

std::vector<ComplexMatrix> get_symbol_matrices(const json &obj, const std::string &path, const Alphabet &alphabet,
                                               std::set<std::string> extra = {}) {
    std::set<std::string> keys(alphabet.begin(), alphabet.end());
    keys.insert(extra.begin(), extra.end());
    check_keys(obj, path, keys);
    std::vector<ComplexMatrix> out;
    for (const auto &a : alphabet) {
        out.push_back(get_matrix(obj.at(a), join(path, a)));
    }
    return out;
}

void check_qdim(const json &body, std::size_t actual) {
    if (get_size(field(body, "", "qdim"), "qdim") != actual) {
        throw ValidationError("qdim", "qdim does not match the initial state dimension");
    }
}

Dfa decode_dfa(const json &body, const std::string &path) {
    const auto alphabet = get_names(field(body, path, "alphabet"), join(path, "alphabet"));
    const auto states = get_names(field(body, path, "states"), join(path, "states"));
    const State initial =
        name_index(states, get_string(field(body, path, "initial"), join(path, "initial")), join(path, "initial"));
    std::vector<bool> accepting(states.size(), false);
    const auto acc = get_names(field(body, path, "accepting"), join(path, "accepting"));
    for (const auto &s : acc) {
        accepting[name_index(states, s, join(path, "accepting"))] = true;
    }
    const std::string dpath = join(path, "delta");
    const json &delta_obj = object_field(body, path, "delta");
    std::set<std::string> keys;
    for (const auto &s : states) {
        for (const auto &a : alphabet) {
            keys.insert(s + "," + a);
        }
    }
    check_keys(delta_obj, dpath, keys);
    std::vector<std::vector<State>> delta(states.size(), std::vector<State>(alphabet.size()));
    for (State s = 0; s < states.size(); s++) {
        for (Symbol a = 0; a < alphabet.size(); a++) {
            const std::string key = states[s] + "," + alphabet[a];
            delta[s][a] = name_index(states, get_string(delta_obj.at(key), join(dpath, key)), join(dpath, key));
        }
    }
    try {
        return Dfa(states, alphabet, initial, std::move(accepting), std::move(delta));
    } catch (const ValidationError &e) {
        throw ValidationError(join(path, e.path()), e.what());
    }
}

Machine decode_body(const std::string &kind, const json &body) {
    if (!body.is_object()) {
        throw ValidationError("body", "expected an object");
    }
    if (kind == "dfa") {
        return decode_dfa(body, "");
    }
    if (kind == "mo1qfa") {
        const auto alphabet = get_names(field(body, "", "alphabet"), "alphabet");
        MoQfa::Parts p{
            .alphabet = alphabet,
            .initial_state = get_vector(field(body, "", "initial_state"), "initial_state"),
            .unitaries = get_symbol_matrices(object_field(body, "", "unitaries"), "unitaries", alphabet),
            .accepting_proj = get_matrix(field(body, "", "accepting_proj"), "accepting_proj"),
        };
        check_qdim(body, p.initial_state.dim());
        return MoQfa(std::move(p));
    }
    if (kind == "mm1qfa") {
        const auto alphabet = get_names(field(body, "", "alphabet"), "alphabet");
        MmQfa::Parts p{
            .alphabet = alphabet,
            .initial_state = get_vector(field(body, "", "initial_state"), "initial_state"),
            .unitaries = get_symbol_matrices(object_field(body, "", "unitaries"), "unitaries", alphabet),
            .end_unitary = get_matrix(field(body, "", "end_unitary"), "end_unitary"),
            .accepting_proj = get_matrix(field(body, "", "accepting_proj"), "accepting_proj"),
            .reject_proj = get_matrix(field(body, "", "reject_proj"), "reject_proj"),
            .nonhalt_proj = get_matrix(field(body, "", "nonhalt_proj"), "nonhalt_proj"),
        };
        check_qdim(body, p.initial_state.dim());
        return MmQfa(std::move(p));
    }
    if (kind == "kletter") {
        const auto alphabet = get_names(field(body, "", "alphabet"), "alphabet");
        const std::size_t k = get_size(field(body, "", "k"), "k");
        std::map<KLetterQfa::Window, ComplexMatrix> nu;
        for (const auto &[key, value] : object_field(body, "", "nu").items()) {
            const std::string path = "nu." + key;
            KLetterQfa::Window window;
            std::size_t start = 0;
            while (true) {
                const std::size_t comma = key.find(',', start);
                const std::string tok =
                    key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                if (tok == KLetterQfa::kPadName) {
                    window.push_back(KLetterQfa::kPad);
                } else {
                    window.push_back(name_index(alphabet, tok, path));
                }
                if (comma == std::string::npos) {
                    break;
                }
                start = comma + 1;
            }
            nu.emplace(std::move(window), get_matrix(value, path));
        }
        KLetterQfa::Parts p{
            .k = k,
            .alphabet = alphabet,
            .initial_state = get_vector(field(body, "", "initial_state"), "initial_state"),
            .nu = std::move(nu),
            .accepting_proj = get_matrix(field(body, "", "accepting_proj"), "accepting_proj"),
        };
        check_qdim(body, p.initial_state.dim());
        return KLetterQfa(std::move(p));
    }
    if (kind == "qfacl") {
        const auto alphabet = get_names(field(body, "", "alphabet"), "alphabet");
        const json &us = object_field(body, "", "unitaries");
        auto unitaries = get_symbol_matrices(us, "unitaries", alphabet, {"$"});
        unitaries.push_back(get_matrix(us.at("$"), "unitaries.$"));
        const json &obs = field(body, "", "observable");
        if (!obs.is_array()) {
            throw ValidationError("observable", "expected an array");
        }
        Alphabet labels;
        std::vector<ComplexMatrix> projectors;
        for (std::size_t i = 0; i < obs.size(); i++) {
            const std::string path = "observable." + std::to_string(i);
            labels.push_back(get_string(field(obs[i], path, "label"), path + ".label"));
            projectors.push_back(get_matrix(field(obs[i], path, "projector"), path + ".projector"));
        }
        QfaCl::Parts p{
            .alphabet = alphabet,
            .initial_state = get_vector(field(body, "", "initial_state"), "initial_state"),
            .unitaries = std::move(unitaries),
            .outcome_labels = std::move(labels),
            .outcome_projectors = std::move(projectors),
            .control = decode_dfa(object_field(body, "", "control"), "control"),
        };
        check_qdim(body, p.initial_state.dim());
        return QfaCl(std::move(p));
    }
    if (kind == "qfac") {
        const auto states = get_names(field(body, "", "classical_states"), "classical_states");
        const auto alphabet = get_names(field(body, "", "alphabet"), "alphabet");
        const auto outcomes = get_names(field(body, "", "outcomes"), "outcomes");
        const State initial = name_index(states, get_string(field(body, "", "initial_classical"), "initial_classical"),
                                         "initial_classical");
        std::set<std::string> keys;
        for (const auto &s : states) {
            for (const auto &a : alphabet) {
                keys.insert(s + "," + a);
            }
        }
        const json &delta_obj = object_field(body, "", "delta");
        const json &us_obj = object_field(body, "", "unitaries");
        const json &ms_obj = object_field(body, "", "measurements");
        check_keys(delta_obj, "delta", keys);
        check_keys(us_obj, "unitaries", keys);
        check_keys(ms_obj, "measurements", std::set<std::string>(states.begin(), states.end()));
        std::vector<std::vector<State>> delta(states.size());
        std::vector<std::vector<ComplexMatrix>> unitaries(states.size());
        std::vector<std::vector<ComplexMatrix>> measurements(states.size());
        for (State s = 0; s < states.size(); s++) {
            for (const auto &a : alphabet) {
                const std::string key = states[s] + "," + a;
                delta[s].push_back(name_index(states, get_string(delta_obj.at(key), "delta." + key), "delta." + key));
                unitaries[s].push_back(get_matrix(us_obj.at(key), "unitaries." + key));
            }
            const std::string mpath = "measurements." + states[s];
            const json &per = ms_obj.at(states[s]);
            if (!per.is_object()) {
                throw ValidationError(mpath, "expected an object");
            }
            check_keys(per, mpath, std::set<std::string>(outcomes.begin(), outcomes.end()));
            for (const auto &g : outcomes) {
                measurements[s].push_back(get_matrix(per.at(g), mpath + "." + g));
            }
        }
        Qfac::Parts p{
            .classical_states = states,
            .alphabet = alphabet,
            .outcomes = outcomes,
            .initial_classical = initial,
            .initial_quantum = get_vector(field(body, "", "initial_quantum"), "initial_quantum"),
            .delta = std::move(delta),
            .unitaries = std::move(unitaries),
            .measurements = std::move(measurements),
        };
        check_qdim(body, p.initial_quantum.dim());
        return Qfac(std::move(p));
    }
    if (kind == "blm") {
        const auto alphabet = get_names(field(body, "", "alphabet"), "alphabet");
        Blm::Parts p{
            .alphabet = alphabet,
            .pi = get_vector(field(body, "", "pi"), "pi"),
            .step = get_symbol_matrices(object_field(body, "", "step"), "step", alphabet),
            .eta = get_vector(field(body, "", "eta"), "eta"),
        };
        if (get_size(field(body, "", "dim"), "dim") != p.pi.dim()) {
            throw ValidationError("dim", "dim does not match pi");
        }
        return Blm(std::move(p));
    }
    throw ParseError("unknown machine kind '" + kind + "'");
}

}  // namespace

std::string_view machine_kind(const Machine &m) {
    static constexpr std::string_view kinds[] = {"dfa", "mo1qfa", "mm1qfa", "kletter", "qfacl", "qfac", "blm"};
    return kinds[m.index()];
}

std::string serialize_machine(const Machine &m) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["kind"] = std::string(machine_kind(m));
    doc["body"] = encode_body(m);
    std::string out;
    write_canonical(doc, 0, out);
    out += "\n";
    return out;
}

Machine parse_machine(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("document is not a JSON object");
    }
    auto version = doc.find("format_version");
    if (version == doc.end() || !version->is_number_integer() || version->get<long long>() != kFormatVersion) {
        throw ParseError("unsupported or missing format_version (expected " + std::to_string(kFormatVersion) + ")");
    }
    auto kind = doc.find("kind");
    if (kind == doc.end() || !kind->is_string()) {
        throw ParseError("missing machine kind");
    }
    auto body = doc.find("body");
    if (body == doc.end()) {
        throw ParseError("missing body");
    }
    return decode_body(kind->get<std::string>(), *body);
}

Machine load_machine(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_machine(buf.str());
}

void save_machine(const Machine &m, const std::filesystem::path &path) {
    const std::string text = serialize_machine(m);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace qfac
