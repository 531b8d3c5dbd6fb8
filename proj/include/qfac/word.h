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

#ifndef QFAC_WORD_H
#define QFAC_WORD_H

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qfac {

/// Index into a machine's ordered alphabet.
using Symbol = std::size_t;
/// Input words are sequences of symbol indices, independent of any encoding.
using Word = std::vector<Symbol>;
/// Ordered symbol names; position is the symbol index.
using Alphabet = std::vector<std::string>;

/// A machine (or document) violates one of its invariants. `path()` names the
/// offending field in the serialized form, e.g. "unitaries.0".
class ValidationError : public std::invalid_argument {
   public:
    ValidationError(std::string path, const std::string &message)
        : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}
    const std::string &path() const { return path_; }

   private:
    std::string path_;
};

/// Throws ValidationError(path, ...) unless every name is nonempty, unique,
/// and free of ',' (names are joined with ',' in serialized map keys).
void check_names(const std::vector<std::string> &names, const std::string &path);

/// Returns the index of `name` in `alphabet` or throws std::invalid_argument.
Symbol symbol_index(const Alphabet &alphabet, std::string_view name);

/// Throws std::invalid_argument if any symbol of w is outside [0, alphabet_size).
void check_word(const Word &w, std::size_t alphabet_size);

/// True when every symbol name is exactly one character.
bool single_char_alphabet(const Alphabet &alphabet);

/// Parses "0110" (single-character alphabets) or "a,b,b" (otherwise). The
/// empty string is the empty word.
Word parse_word(const Alphabet &alphabet, std::string_view text);

/// Inverse of parse_word.
std::string format_word(const Alphabet &alphabet, const Word &w);

}  // namespace qfac

#endif  // QFAC_WORD_H
