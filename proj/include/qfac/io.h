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

#ifndef QFAC_IO_H
#define QFAC_IO_H

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "qfac/dfa.h"
#include "qfac/equivalence.h"
#include "qfac/machines.h"

namespace qfac {

/// Any machine a document can hold.
using Machine = std::variant<Dfa, MoQfa, MmQfa, KLetterQfa, QfaCl, Qfac, Blm>;

inline constexpr int kFormatVersion = 1;

/// The document is not well-formed JSON, or not a machine document at all
/// (bad version or kind).
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// "dfa", "mo1qfa", "mm1qfa", "kletter", "qfacl", "qfac" or "blm".
std::string_view machine_kind(const Machine &m);

/// Canonical document text: sorted keys, two-space indentation, reals as
/// 17-significant-digit lowercase scientific notation, trailing newline.
std::string serialize_machine(const Machine &m);

/// Parses and validates a document. Throws ParseError for malformed input
/// and ValidationError (with the field path inside "body") for schema or
/// machine-invariant violations.
Machine parse_machine(std::string_view text);

Machine load_machine(const std::filesystem::path &path);
void save_machine(const Machine &m, const std::filesystem::path &path);

}  // namespace qfac

#endif  // QFAC_IO_H
