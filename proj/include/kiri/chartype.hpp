#pragma once

#include <cstdint>

namespace kiri {

// Script class of a code point. H/T/K are the Japanese scripts; L and N are
// restricted to ASCII/fullwidth Latin letters and decimal digits; everything
// else falls back to its Unicode general-category major class.
enum class Script : std::uint8_t {
  Hiragana,
  Katakana,
  Kanji,
  Latin,
  Digit,
  Punct,
  Symbol,
  Space,
  Other,
};

// Unicode general-category major class.
enum class General : std::uint8_t { L, M, N, P, S, Z, C };

struct CharClass {
  General general;
  Script script;
  bool japanese_letter;  // script is one of H, T, K
};

// Total and deterministic; context-free.
CharClass classify(char32_t c);

char script_letter(Script s);   // H T K L N P S Z O
char general_letter(General g);  // L M N P S Z C

}  // namespace kiri
