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

#include "uniedit/text/instruction.h"

#include <array>
#include <functional>
#include <regex>
#include <vector>

#include "uniedit/common/error.h"

namespace uniedit::text {
namespace {

// Opening / closing quote marks accepted around payloads and anchors.
const std::string kOpen = "(?:'|\"|`|‘|“|「)";
const std::string kClose = "(?:'|\"|’|”|」)";
const std::string kQuoted = kOpen + "(.+?)" + kClose;
const std::string kQuotedGreedy = kOpen + "(.+)" + kClose;
const std::string kNumber =
    "(\\d+|one|two|three|four|five|six|seven|eight|nine|ten)";
const std::string kUnit = "(?:characters?|words?|characters? or words?)";

int ParseNumber(const std::string& s) {
  static const std::array<const char*, 10> kWords = {
      "one", "two", "three", "four", "five",
      "six", "seven", "eight", "nine", "ten"};
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (std::size_t i = 0; i < kWords.size(); ++i) {
    if (lower == kWords[i]) return static_cast<int>(i) + 1;
  }
  try {
    return std::stoi(s);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "' in instruction");
  }
}

bool IsWord(const std::string& s, const char* word) {
  if (s.size() != std::char_traits<char>::length(word)) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != word[i]) return false;
  }
  return true;
}

using Builder = std::function<EditInstruction(const std::smatch&)>;

struct Rule {
  std::regex pattern;
  Builder build;
};

EditInstruction Make(EditKind kind, Relation relation, Locator locator,
                     std::string payload, Language lang) {
  EditInstruction ins;
  ins.kind = kind;
  ins.relation = relation;
  ins.locator = std::move(locator);
  ins.payload = std::move(payload);
  ins.instruction_language = lang;
  return ins;
}

std::vector<Rule> BuildRules() {
  const auto en = [](const std::string& body) {
    return std::regex("^" + body + "$",
                      std::regex::ECMAScript | std::regex::icase);
  };
  const auto zh = [](const std::string& body) {
    return std::regex("^" + body + "$", std::regex::ECMAScript);
  };
  const Language E = Language::kEn;
  const Language Z = Language::kZh;
  std::vector<Rule> rules;

  // --- English deletion.
  rules.push_back({en("(?:delete|remove)\\s+the\\s+" + kUnit + "\\s+from\\s+index\\s+(\\d+)\\s+to\\s+index\\s+(\\d+)"),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kDeletion, Relation::kReplace,
                                 IndexRange{ParseNumber(m[1]), ParseNumber(m[2])}, "", E);
                   }});
  rules.push_back({en("(?:delete|remove)\\s+the\\s+" + kUnit + "\\s+at\\s+index\\s+(\\d+)"),
                   [=](const std::smatch& m) {
                     const int i = ParseNumber(m[1]);
                     return Make(EditKind::kDeletion, Relation::kReplace, IndexRange{i, i}, "", E);
                   }});
  rules.push_back({en("(?:delete|remove)\\s+the\\s+(first|last)\\s+" + kNumber + "\\s+" + kUnit),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kDeletion, Relation::kReplace,
                                 EdgeSpan{IsWord(m[1], "last"), ParseNumber(m[2])}, "", E);
                   }});
  rules.push_back({en("(?:delete|remove)\\s+" + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kDeletion, Relation::kReplace,
                                 ContentAnchor{m[1]}, "", E);
                   }});

  // --- English insertion.
  rules.push_back({en("(?:insert|add)\\s+" + kQuoted + "\\s+at\\s+the\\s+(end|beginning|start)(?:\\s+of\\s+the\\s+sentence)?"),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kInsertion,
                                 IsWord(m[2], "end") ? Relation::kAtEnd : Relation::kAtStart,
                                 std::monostate{}, m[1], E);
                   }});
  rules.push_back({en("(?:insert|add)\\s+" + kQuoted + "\\s+(after|before)\\s+the\\s+" + kUnit + "\\s+at\\s+index\\s+(\\d+)"),
                   [=](const std::smatch& m) {
                     const int i = ParseNumber(m[3]);
                     return Make(EditKind::kInsertion,
                                 IsWord(m[2], "after") ? Relation::kAfter : Relation::kBefore,
                                 IndexRange{i, i}, m[1], E);
                   }});
  rules.push_back({en("(?:insert|add)\\s+" + kQuoted + "\\s+(after|before)\\s+" + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kInsertion,
                                 IsWord(m[2], "after") ? Relation::kAfter : Relation::kBefore,
                                 ContentAnchor{m[3]}, m[1], E);
                   }});
  rules.push_back({en("(start|end)\\s+the\\s+sentence\\s+with\\s+" + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kInsertion,
                                 IsWord(m[1], "end") ? Relation::kAtEnd : Relation::kAtStart,
                                 std::monostate{}, m[2], E);
                   }});

  // --- English substitution.
  rules.push_back({en("(?:substitute|replace)\\s+the\\s+" + kUnit + "\\s+from\\s+index\\s+(\\d+)\\s+to\\s+index\\s+(\\d+)\\s+with\\s+" + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kSubstitution, Relation::kReplace,
                                 IndexRange{ParseNumber(m[1]), ParseNumber(m[2])}, m[3], E);
                   }});
  rules.push_back({en("(?:substitute|replace)\\s+the\\s+" + kUnit + "\\s+at\\s+index\\s+(\\d+)\\s+with\\s+" + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     const int i = ParseNumber(m[1]);
                     return Make(EditKind::kSubstitution, Relation::kReplace,
                                 IndexRange{i, i}, m[2], E);
                   }});
  rules.push_back({en("(?:change|replace)\\s+the\\s+(first|last)\\s+" + kNumber + "\\s+" + kUnit + "\\s+(?:to|with)\\s+" + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kSubstitution, Relation::kReplace,
                                 EdgeSpan{IsWord(m[1], "last"), ParseNumber(m[2])}, m[3], E);
                   }});
  rules.push_back({en("(?:substitute|replace)\\s+" + kQuoted + "\\s+with\\s+" + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kSubstitution, Relation::kReplace,
                                 ContentAnchor{m[1]}, m[2], E);
                   }});
  rules.push_back({en("change\\s+" + kQuoted + "\\s+to\\s+" + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kSubstitution, Relation::kReplace,
                                 ContentAnchor{m[1]}, m[2], E);
                   }});

  // --- Chinese templates. 字/词 are interchangeable units.
  const std::string unit = "个(?:字|词)";
  const std::string add = "(?:添加|加上|插入|加入)";
  const std::string swap = "(?:换成|替换成|替换为|改成|改为)";
  rules.push_back({zh("删除第(\\d+)(?:个(?:字|词))?到第(\\d+)" + unit),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kDeletion, Relation::kReplace,
                                 IndexRange{ParseNumber(m[1]), ParseNumber(m[2])}, "", Z);
                   }});
  rules.push_back({zh("删除第(\\d+)" + unit),
                   [=](const std::smatch& m) {
                     const int i = ParseNumber(m[1]);
                     return Make(EditKind::kDeletion, Relation::kReplace, IndexRange{i, i}, "", Z);
                   }});
  rules.push_back({zh("删除(前|最后)(\\d+)" + unit),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kDeletion, Relation::kReplace,
                                 EdgeSpan{m[1] == "最后", ParseNumber(m[2])}, "", Z);
                   }});
  rules.push_back({zh("删除" + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kDeletion, Relation::kReplace,
                                 ContentAnchor{m[1]}, "", Z);
                   }});
  rules.push_back({zh("在句(首|末|尾)" + add + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kInsertion,
                                 m[1] == "首" ? Relation::kAtStart : Relation::kAtEnd,
                                 std::monostate{}, m[2], Z);
                   }});
  rules.push_back({zh("在第(\\d+)" + unit + "(之后|后面|后|之前|前面|前)" + add + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     const int i = ParseNumber(m[1]);
                     const bool after = m[2].str().find("后") != std::string::npos;
                     return Make(EditKind::kInsertion,
                                 after ? Relation::kAfter : Relation::kBefore,
                                 IndexRange{i, i}, m[3], Z);
                   }});
  rules.push_back({zh("在" + kQuoted + "(之后|后面|后|之前|前面|前)" + add + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     const bool after = m[2].str().find("后") != std::string::npos;
                     return Make(EditKind::kInsertion,
                                 after ? Relation::kAfter : Relation::kBefore,
                                 ContentAnchor{m[1]}, m[3], Z);
                   }});
  rules.push_back({zh("(?:把|将)第(\\d+)(?:个(?:字|词))?到第(\\d+)" + unit + swap + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kSubstitution, Relation::kReplace,
                                 IndexRange{ParseNumber(m[1]), ParseNumber(m[2])}, m[3], Z);
                   }});
  rules.push_back({zh("(?:把|将)第(\\d+)" + unit + swap + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     const int i = ParseNumber(m[1]);
                     return Make(EditKind::kSubstitution, Relation::kReplace,
                                 IndexRange{i, i}, m[2], Z);
                   }});
  rules.push_back({zh("(?:把|将)(前|最后)(\\d+)" + unit + swap + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kSubstitution, Relation::kReplace,
                                 EdgeSpan{m[1] == "最后", ParseNumber(m[2])}, m[3], Z);
                   }});
  rules.push_back({zh("(?:把|将)" + kQuoted + swap + kQuotedGreedy),
                   [=](const std::smatch& m) {
                     return Make(EditKind::kSubstitution, Relation::kReplace,
                                 ContentAnchor{m[1]}, m[2], Z);
                   }});
  return rules;
}

const std::vector<Rule>& Rules() {
  static const std::vector<Rule> rules = BuildRules();
  return rules;
}

std::string Trim(std::string_view text) {
  const char* ws = " \t\r\n";
  const auto b = text.find_first_not_of(ws);
  if (b == std::string_view::npos) return "";
  const auto e = text.find_last_not_of(ws);
  std::string s(text.substr(b, e - b + 1));
  // One sentence-final period.
  if (!s.empty() && s.back() == '.') {
    s.pop_back();
  } else if (s.size() >= 3 && s.compare(s.size() - 3, 3, "。") == 0) {
    s.resize(s.size() - 3);
  }
  return s;
}

}  // namespace

InstructionType EditInstruction::type() const {
  return std::holds_alternative<ContentAnchor>(locator)
             ? InstructionType::kContentBased
             : InstructionType::kIndexBased;
}

std::string EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kDeletion:
      return "deletion";
    case EditKind::kInsertion:
      return "insertion";
    case EditKind::kSubstitution:
      return "substitution";
  }
  return "unknown";
}

EditKind ParseEditKind(std::string_view name) {
  if (name == "deletion") return EditKind::kDeletion;
  if (name == "insertion") return EditKind::kInsertion;
  if (name == "substitution") return EditKind::kSubstitution;
  throw ValidationError("unknown edit kind '" + std::string(name) + "'");
}

std::string InstructionTypeName(InstructionType type) {
  return type == InstructionType::kIndexBased ? "index" : "content";
}

InstructionType ParseInstructionType(std::string_view name) {
  if (name == "index") return InstructionType::kIndexBased;
  if (name == "content") return InstructionType::kContentBased;
  throw ValidationError("unknown instruction type '" + std::string(name) + "'");
}

void ValidateInstruction(const EditInstruction& ins) {
  if (const auto* r = std::get_if<IndexRange>(&ins.locator)) {
    if (r->start < 1 || r->start > r->end) {
      throw ValidationError("index range must satisfy 1 <= start <= end");
    }
  }
  if (const auto* e = std::get_if<EdgeSpan>(&ins.locator)) {
    if (e->count < 1) throw ValidationError("edge span count must be >= 1");
  }
  if (const auto* a = std::get_if<ContentAnchor>(&ins.locator)) {
    if (a->text.empty()) throw ValidationError("content anchor is empty");
  }
  const bool at_edge =
      ins.relation == Relation::kAtStart || ins.relation == Relation::kAtEnd;
  if (at_edge != std::holds_alternative<std::monostate>(ins.locator)) {
    throw ValidationError("at_start/at_end relations take no locator");
  }
  switch (ins.kind) {
    case EditKind::kDeletion:
      if (!ins.payload.empty()) throw ValidationError("deletion has a payload");
      if (ins.relation != Relation::kReplace) {
        throw ValidationError("deletion must use the replace relation");
      }
      break;
    case EditKind::kSubstitution:
      if (ins.payload.empty()) {
        throw ValidationError("substitution needs a non-empty payload");
      }
      if (ins.relation != Relation::kReplace) {
        throw ValidationError("substitution must use the replace relation");
      }
      break;
    case EditKind::kInsertion:
      if (ins.payload.empty()) {
        throw ValidationError("insertion needs a non-empty payload");
      }
      if (ins.relation == Relation::kReplace) {
        throw ValidationError("insertion needs a before/after/start/end relation");
      }
      if (std::holds_alternative<EdgeSpan>(ins.locator)) {
        throw ValidationError("insertion cannot be located by an edge span");
      }
      if (const auto* r = std::get_if<IndexRange>(&ins.locator);
          r && r->start != r->end) {
        throw ValidationError("insertion index must name a single position");
      }
      break;
  }
}

EditInstruction ParseInstruction(std::string_view text) {
  const std::string trimmed = Trim(text);
  std::smatch m;
  for (const auto& rule : Rules()) {
    if (std::regex_match(trimmed, m, rule.pattern)) {
      EditInstruction ins = rule.build(m);
      ValidateInstruction(ins);
      return ins;
    }
  }
  throw ParseError("unrecognized edit instruction: \"" + std::string(text) +
                   "\"");
}

std::string FormatInstruction(const EditInstruction& ins) {
  ValidateInstruction(ins);
  const auto* range = std::get_if<IndexRange>(&ins.locator);
  const auto* edge = std::get_if<EdgeSpan>(&ins.locator);
  const auto* anchor = std::get_if<ContentAnchor>(&ins.locator);

  if (ins.instruction_language == Language::kZh) {
    const auto q = [](const std::string& s) { return "“" + s + "”"; };
    const auto span = [&]() -> std::string {
      if (range) {
        return range->start == range->end
                   ? "第" + std::to_string(range->start) + "个字"
                   : "第" + std::to_string(range->start) + "到第" +
                         std::to_string(range->end) + "个字";
      }
      return std::string(edge->from_end ? "最后" : "前") +
             std::to_string(edge->count) + "个字";
    };
    switch (ins.kind) {
      case EditKind::kDeletion:
        return anchor ? "删除" + q(anchor->text) : "删除" + span();
      case EditKind::kSubstitution:
        return "把" + (anchor ? q(anchor->text) : span()) + "换成" + q(ins.payload);
      case EditKind::kInsertion: {
        if (ins.relation == Relation::kAtStart) return "在句首添加" + q(ins.payload);
        if (ins.relation == Relation::kAtEnd) return "在句末添加" + q(ins.payload);
        const std::string where = anchor ? q(anchor->text) : span();
        return "在" + where +
               (ins.relation == Relation::kAfter ? "之后" : "之前") + "插入" +
               q(ins.payload);
      }
    }
  }

  const auto q = [](const std::string& s) { return "'" + s + "'"; };
  const auto span = [&]() -> std::string {
    if (range) {
      return range->start == range->end
                 ? "the character or word at index " + std::to_string(range->start)
                 : "the characters or words from index " +
                       std::to_string(range->start) + " to index " +
                       std::to_string(range->end);
    }
    return std::string("the ") + (edge->from_end ? "last " : "first ") +
           std::to_string(edge->count) + (edge->count == 1 ? " word" : " words");
  };
  switch (ins.kind) {
    case EditKind::kDeletion:
      return "delete " + (anchor ? q(anchor->text) : span());
    case EditKind::kSubstitution:
      if (edge) return "change " + span() + " to " + q(ins.payload);
      return "substitute " + (anchor ? q(anchor->text) : span()) + " with " +
             q(ins.payload);
    case EditKind::kInsertion: {
      if (ins.relation == Relation::kAtStart) {
        return "insert " + q(ins.payload) + " at the beginning";
      }
      if (ins.relation == Relation::kAtEnd) {
        return "insert " + q(ins.payload) + " at the end";
      }
      const std::string where = anchor ? q(anchor->text) : span();
      return "insert " + q(ins.payload) +
             (ins.relation == Relation::kAfter ? " after " : " before ") + where;
    }
  }
  return "";
}

}  // namespace uniedit::text
