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

#include "qfac/word.h"

#include <set>

namespace qfac {

void check_names(const std::vector<std::string> &names, const std::string &path) {
    std::set<std::string> seen;
    for (const auto &n : names) {
        if (n.empty()) {
            throw ValidationError(path, "empty name");
        }
        if (n.find(',') != std::string::npos) {
            throw ValidationError(path, "name '" + n + "' contains ','");
        }
        if (!seen.insert(n).second) {
            throw ValidationError(path, "duplicate name '" + n + "'");
        }
    }
}

Symbol symbol_index(const Alphabet &alphabet, std::string_view name) {
    for (Symbol i = 0; i < alphabet.size(); i++) {
        if (alphabet[i] == name) {
            return i;
        }
    }
    throw std::invalid_argument("symbol '" + std::string(name) + "' is not in the alphabet");
}

void check_word(const Word &w, std::size_t alphabet_size) {
    for (std::size_t i = 0; i < w.size(); i++) {
        if (w[i] >= alphabet_size) {
            throw std::invalid_argument("symbol index " + std::to_string(w[i]) + " at position " +
                                        std::to_string(i) + " is outside the alphabet");
        }
    }
}

bool single_char_alphabet(const Alphabet &alphabet) {
    for (const auto &s : alphabet) {
        if (s.size() != 1) {
            return false;
        }
    }
    return true;
}

Word parse_word(const Alphabet &alphabet, std::string_view text) {
    Word w;
    if (text.empty()) {
        return w;
    }
    if (single_char_alphabet(alphabet)) {
        for (char ch : text) {
            w.push_back(symbol_index(alphabet, std::string_view(&ch, 1)));
        }
        return w;
    }
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view tok = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                  : comma - start);
        w.push_back(symbol_index(alphabet, tok));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return w;
}

std::string format_word(const Alphabet &alphabet, const Word &w) {
    check_word(w, alphabet.size());
    const bool compact = single_char_alphabet(alphabet);
    std::string out;
    for (std::size_t i = 0; i < w.size(); i++) {
        if (!compact && i > 0) {
            out += ',';
        }
        out += alphabet[w[i]];
    }
    return out;
}

}  // namespace qfac
