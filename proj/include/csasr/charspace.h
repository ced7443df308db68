// csasr/charspace.h

// Copyright 2026  CSASR Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CSASR_CHARSPACE_H_
#define CSASR_CHARSPACE_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csasr {

// The three Latin character-space strategies:
//   kDefault      - identity; each script keeps its natural characters.
//   kDistinct     - Latin letters get a per-language tag so that e.g.
//                   English 'a' and French 'a' become different symbols.
//   kForcedShared - nearby Latin characters fold onto one representative
//                   (accent stripping, oe/ae/c-cedilla folding).
// Arabic-block characters, digits and punctuation are fixed points in every
// mode.
enum class CharSpaceMode { kDefault, kDistinct, kForcedShared };

struct CharMapTable {
  CharSpaceMode mode = CharSpaceMode::kDefault;
  // ForcedShared folding, lower- and uppercase entries.
  std::map<char32_t, std::u32string> fold;
  // Distinct-mode language sigils (private-use prefixes).
  std::map<std::string, char32_t> lang_sigil;
  std::map<char32_t, std::string> sigil_lang;
};

CharMapTable BuildCharMap(CharSpaceMode mode);

// Character-wise application of the table. Distinct mode requires `lang`
// ("en" or "fr") whenever the text contains a Latin letter.
std::string ApplyCharMap(const CharMapTable& table, std::string_view text,
                         const std::optional<std::string>& lang = std::nullopt);

struct InvertResult {
  std::string text;
  // One tag per output character; "" for untagged (non-Latin) characters.
  std::vector<std::string> lang_tags;
};

// Decodes Distinct-mode output back to surface text plus per-character
// language tags. Errors on any other mode and on untagged Latin symbols.
InvertResult InvertCharMap(const CharMapTable& table, std::string_view text);

// CLI serialization of Distinct-mode symbols: each tagged pair renders as
// U+27E8 lang ':' char U+27E9, e.g. "le" tagged fr -> "⟨fr:l⟩⟨fr:e⟩".
// Literal U+27E8/U+27E9 in the text are escaped as ⟨lit:⟨⟩ and ⟨lit:⟩⟩.
std::string RenderTagged(const CharMapTable& table, std::string_view mapped);
std::string ParseTagged(const CharMapTable& table, std::string_view rendered);

CharSpaceMode CharSpaceModeFromName(const std::string& name);

}  // namespace csasr

#endif  // CSASR_CHARSPACE_H_
