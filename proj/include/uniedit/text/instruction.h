// Copyright 2026 The UniEdit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNIEDIT_TEXT_INSTRUCTION_H_
#define UNIEDIT_TEXT_INSTRUCTION_H_

#include <string>
#include <string_view>
#include <variant>

#include "uniedit/common/language.h"

namespace uniedit::text {

enum class EditKind { kDeletion, kInsertion, kSubstitution };

// Where an insertion goes relative to its locator; deletions and
// substitutions always use kReplace.
enum class Relation { kReplace, kBefore, kAfter, kAtStart, kAtEnd };

// Benchmark statistics split instructions by how they locate the edit.
enum class InstructionType { kIndexBased, kContentBased };

// 1-based inclusive token range.
struct IndexRange {
  int start = 1;
  int end = 1;
  bool operator==(const IndexRange&) const = default;
};

// The first or last `count` tokens.
struct EdgeSpan {
  bool from_end = false;
  int count = 1;
  bool operator==(const EdgeSpan&) const = default;
};

// Quoted text that must occur in the transcript.
struct ContentAnchor {
  std::string text;
  bool operator==(const ContentAnchor&) const = default;
};

// monostate is used by kAtStart / kAtEnd insertions.
using Locator = std::variant<std::monostate, IndexRange, EdgeSpan, ContentAnchor>;

struct EditInstruction {
  EditKind kind = EditKind::kDeletion;
  Relation relation = Relation::kReplace;
  Locator locator;
  std::string payload;  // empty for deletion
  // Language the instruction itself is written in (not the transcript's).
  Language instruction_language = Language::kEn;

  InstructionType type() const;
  bool operator==(const EditInstruction&) const = default;
};

std::string EditKindName(EditKind kind);
EditKind ParseEditKind(std::string_view name);
std::string InstructionTypeName(InstructionType type);
InstructionType ParseInstructionType(std::string_view name);

// Checks the structural invariants (index bounds, payload presence per kind,
// relation/locator compatibility). Throws ValidationError.
void ValidateInstruction(const EditInstruction& instruction);

// Parses one instruction from the template grammar documented in README.md.
// English templates are case-insensitive and may end with a period;
// unmatched text raises ParseError carrying the input.
EditInstruction ParseInstruction(std::string_view text);

// Renders an instruction in the template grammar. Parsing the result gives
// back an equal instruction.
std::string FormatInstruction(const EditInstruction& instruction);

}  // namespace uniedit::text

#endif  // UNIEDIT_TEXT_INSTRUCTION_H_
