// csasr/charspace.cc

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

#include "csasr/charspace.h"

#include <stdexcept>

#include "csasr/unicode.h"

namespace csasr {

namespace {

constexpr char32_t kSigilEn = 0xE000;  // private use area
constexpr char32_t kSigilFr = 0xE001;
constexpr char32_t kLeftBracket = 0x27E8;   // ⟨
constexpr char32_t kRightBracket = 0x27E9;  // ⟩

struct FoldEntry {
  char32_t from;
  const char32_t* to;  // NUL-terminated
};

// Accent folding over Latin-1 and Latin Extended-A, lowercase first, then
// the uppercase counterparts. Outputs are plain ASCII letters, so the map
// is idempotent by construction.
constexpr char32_t A[] = U"a", E[] = U"e", I[] = U"i", O[] = U"o", U_[] = U"u",
                   Y[] = U"y", N[] = U"n", C[] = U"c", D[] = U"d", G[] = U"g",
                   H[] = U"h", J[] = U"j", K[] = U"k", L[] = U"l", R[] = U"r",
                   S[] = U"s", T[] = U"t", W[] = U"w", Z[] = U"z",
                   AE[] = U"ae", OE[] = U"oe", TH[] = U"th", SS[] = U"ss",
                   UA[] = U"A", UE[] = U"E", UI[] = U"I", UO[] = U"O",
                   UU[] = U"U", UY[] = U"Y", UN[] = U"N", UC[] = U"C",
                   UD[] = U"D", UG[] = U"G", UH[] = U"H", UJ[] = U"J",
                   UK[] = U"K", UL[] = U"L", UR[] = U"R", US[] = U"S",
                   UT[] = U"T", UW[] = U"W", UZ[] = U"Z", UAE[] = U"AE",
                   UOE[] = U"OE", UTH[] = U"TH";

constexpr FoldEntry kFoldTable[] = {
    // Latin-1 lowercase.
    {0x00E0, A}, {0x00E1, A}, {0x00E2, A}, {0x00E3, A}, {0x00E4, A},
    {0x00E5, A}, {0x00E6, AE}, {0x00E7, C}, {0x00E8, E}, {0x00E9, E},
    {0x00EA, E}, {0x00EB, E}, {0x00EC, I}, {0x00ED, I}, {0x00EE, I},
    {0x00EF, I}, {0x00F0, D}, {0x00F1, N}, {0x00F2, O}, {0x00F3, O},
    {0x00F4, O}, {0x00F5, O}, {0x00F6, O}, {0x00F8, O}, {0x00F9, U_},
    {0x00FA, U_}, {0x00FB, U_}, {0x00FC, U_}, {0x00FD, Y}, {0x00FE, TH},
    {0x00FF, Y}, {0x00DF, SS},
    // Latin-1 uppercase.
    {0x00C0, UA}, {0x00C1, UA}, {0x00C2, UA}, {0x00C3, UA}, {0x00C4, UA},
    {0x00C5, UA}, {0x00C6, UAE}, {0x00C7, UC}, {0x00C8, UE}, {0x00C9, UE},
    {0x00CA, UE}, {0x00CB, UE}, {0x00CC, UI}, {0x00CD, UI}, {0x00CE, UI},
    {0x00CF, UI}, {0x00D0, UD}, {0x00D1, UN}, {0x00D2, UO}, {0x00D3, UO},
    {0x00D4, UO}, {0x00D5, UO}, {0x00D6, UO}, {0x00D8, UO}, {0x00D9, UU},
    {0x00DA, UU}, {0x00DB, UU}, {0x00DC, UU}, {0x00DD, UY}, {0x00DE, UTH},
    // Latin Extended-A lowercase.
    {0x0101, A}, {0x0103, A}, {0x0105, A}, {0x0107, C}, {0x0109, C},
    {0x010B, C}, {0x010D, C}, {0x010F, D}, {0x0111, D}, {0x0113, E},
    {0x0115, E}, {0x0117, E}, {0x0119, E}, {0x011B, E}, {0x011D, G},
    {0x011F, G}, {0x0121, G}, {0x0123, G}, {0x0125, H}, {0x0127, H},
    {0x0129, I}, {0x012B, I}, {0x012D, I}, {0x012F, I}, {0x0131, I},
    {0x0135, J}, {0x0137, K}, {0x013A, L}, {0x013C, L}, {0x013E, L},
    {0x0140, L}, {0x0142, L}, {0x0144, N}, {0x0146, N}, {0x0148, N},
    {0x014D, O}, {0x014F, O}, {0x0151, O}, {0x0153, OE}, {0x0155, R},
    {0x0157, R}, {0x0159, R}, {0x015B, S}, {0x015D, S}, {0x015F, S},
    {0x0161, S}, {0x0163, T}, {0x0165, T}, {0x0167, T}, {0x0169, U_},
    {0x016B, U_}, {0x016D, U_}, {0x016F, U_}, {0x0171, U_}, {0x0173, U_},
    {0x0175, W}, {0x0177, Y}, {0x017A, Z}, {0x017C, Z}, {0x017E, Z},
    // Latin Extended-A uppercase.
    {0x0100, UA}, {0x0102, UA}, {0x0104, UA}, {0x0106, UC}, {0x0108, UC},
    {0x010A, UC}, {0x010C, UC}, {0x010E, UD}, {0x0110, UD}, {0x0112, UE},
    {0x0114, UE}, {0x0116, UE}, {0x0118, UE}, {0x011A, UE}, {0x011C, UG},
    {0x011E, UG}, {0x0120, UG}, {0x0122, UG}, {0x0124, UH}, {0x0126, UH},
    {0x0128, UI}, {0x012A, UI}, {0x012C, UI}, {0x012E, UI}, {0x0130, UI},
    {0x0134, UJ}, {0x0136, UK}, {0x0139, UL}, {0x013B, UL}, {0x013D, UL},
    {0x013F, UL}, {0x0141, UL}, {0x0143, UN}, {0x0145, UN}, {0x0147, UN},
    {0x014C, UO}, {0x014E, UO}, {0x0150, UO}, {0x0152, UOE}, {0x0154, UR},
    {0x0156, UR}, {0x0158, UR}, {0x015A, US}, {0x015C, US}, {0x015E, US},
    {0x0160, US}, {0x0162, UT}, {0x0164, UT}, {0x0166, UT}, {0x0168, UU},
    {0x016A, UU}, {0x016C, UU}, {0x016E, UU}, {0x0170, UU}, {0x0172, UU},
    {0x0174, UW}, {0x0176, UY}, {0x0178, UY}, {0x0179, UZ}, {0x017B, UZ},
    {0x017D, UZ}, {0x017F, S},
};

void RequireDistinct(const CharMapTable& table, const char* op) {
  if (table.mode != CharSpaceMode::kDistinct) {
    throw std::invalid_argument(std::string(op) +
                                " requires a Distinct-mode table");
  }
}

}  // namespace

CharMapTable BuildCharMap(CharSpaceMode mode) {
  CharMapTable table;
  table.mode = mode;
  switch (mode) {
    case CharSpaceMode::kDefault:
      break;
    case CharSpaceMode::kDistinct:
      table.lang_sigil = {{"en", kSigilEn}, {"fr", kSigilFr}};
      for (const auto& [lang, sigil] : table.lang_sigil) {
        table.sigil_lang[sigil] = lang;
      }
      break;
    case CharSpaceMode::kForcedShared:
      for (const FoldEntry& entry : kFoldTable) {
        table.fold[entry.from] = entry.to;
      }
      break;
  }
  return table;
}

std::string ApplyCharMap(const CharMapTable& table, std::string_view text,
                         const std::optional<std::string>& lang) {
  std::u32string in = DecodeUtf8(text);
  switch (table.mode) {
    case CharSpaceMode::kDefault:
      return std::string(text);
    case CharSpaceMode::kDistinct: {
      char32_t sigil = 0;
      if (lang.has_value()) {
        auto it = table.lang_sigil.find(*lang);
        if (it == table.lang_sigil.end()) {
          throw std::invalid_argument("unsupported language tag '" + *lang +
                                      "'");
        }
        sigil = it->second;
      }
      std::u32string out;
      out.reserve(in.size() * 2);
      for (char32_t cp : in) {
        if (IsLatinLetter(cp)) {
          if (sigil == 0) {
            throw std::invalid_argument(
                "Distinct mode needs a language tag for Latin characters");
          }
          out.push_back(sigil);
        }
        out.push_back(cp);
      }
      return EncodeUtf8(out);
    }
    case CharSpaceMode::kForcedShared: {
      std::u32string out;
      out.reserve(in.size());
      for (char32_t cp : in) {
        auto it = table.fold.find(cp);
        if (it != table.fold.end()) {
          out += it->second;
        } else {
          out.push_back(cp);
        }
      }
      return EncodeUtf8(out);
    }
  }
  return std::string(text);
}

InvertResult InvertCharMap(const CharMapTable& table, std::string_view text) {
  RequireDistinct(table, "invert_charmap");
  std::u32string in = DecodeUtf8(text);
  InvertResult result;
  std::u32string out;
  for (size_t i = 0; i < in.size(); ++i) {
    auto sig = table.sigil_lang.find(in[i]);
    if (sig != table.sigil_lang.end()) {
      if (i + 1 >= in.size()) {
        throw std::invalid_argument("dangling language tag at end of input");
      }
      out.push_back(in[i + 1]);
      result.lang_tags.push_back(sig->second);
      ++i;
    } else if (IsLatinLetter(in[i])) {
      std::string repr;
      AppendUtf8(&repr, in[i]);
      throw std::invalid_argument("unknown symbol '" + repr +
                                  "': Latin character without language tag");
    } else {
      out.push_back(in[i]);
      result.lang_tags.push_back("");
    }
  }
  result.text = EncodeUtf8(out);
  return result;
}

std::string RenderTagged(const CharMapTable& table, std::string_view mapped) {
  RequireDistinct(table, "render_tagged");
  std::u32string in = DecodeUtf8(mapped);
  std::u32string out;
  auto emit_pair = [&out](std::string_view lang, char32_t cp) {
    out.push_back(kLeftBracket);
    for (char c : lang) out.push_back(static_cast<char32_t>(c));
    out.push_back(U':');
    out.push_back(cp);
    out.push_back(kRightBracket);
  };
  for (size_t i = 0; i < in.size(); ++i) {
    auto sig = table.sigil_lang.find(in[i]);
    if (sig != table.sigil_lang.end()) {
      if (i + 1 >= in.size()) {
        throw std::invalid_argument("dangling language tag at end of input");
      }
      emit_pair(sig->second, in[i + 1]);
      ++i;
    } else if (in[i] == kLeftBracket || in[i] == kRightBracket) {
      emit_pair("lit", in[i]);
    } else {
      out.push_back(in[i]);
    }
  }
  return EncodeUtf8(out);
}

std::string ParseTagged(const CharMapTable& table, std::string_view rendered) {
  RequireDistinct(table, "parse_tagged");
  std::u32string in = DecodeUtf8(rendered);
  std::u32string out;
  for (size_t i = 0; i < in.size(); ++i) {
    if (in[i] != kLeftBracket) {
      out.push_back(in[i]);
      continue;
    }
    // ⟨lang:char⟩
    size_t colon = i + 1;
    std::string lang;
    while (colon < in.size() && in[colon] != U':') {
      AppendUtf8(&lang, in[colon]);
      ++colon;
    }
    if (colon >= in.size() || colon + 2 >= in.size() ||
        in[colon + 2] != kRightBracket) {
      throw std::invalid_argument("malformed tagged pair in '" +
                                  std::string(rendered) + "'");
    }
    char32_t cp = in[colon + 1];
    if (lang == "lit") {
      out.push_back(cp);
    } else {
      auto it = table.lang_sigil.find(lang);
      if (it == table.lang_sigil.end()) {
        throw std::invalid_argument("unknown language tag '" + lang + "'");
      }
      out.push_back(it->second);
      out.push_back(cp);
    }
    i = colon + 2;
  }
  return EncodeUtf8(out);
}

CharSpaceMode CharSpaceModeFromName(const std::string& name) {
  if (name == "default") return CharSpaceMode::kDefault;
  if (name == "distinct") return CharSpaceMode::kDistinct;
  if (name == "forced") return CharSpaceMode::kForcedShared;
  throw std::invalid_argument("unknown charspace mode '" + name +
                              "' (expected default|distinct|forced)");
}

}  // namespace csasr
