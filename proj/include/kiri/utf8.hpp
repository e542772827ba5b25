#pragma once

#include <string>
#include <string_view>

namespace kiri {

// Strict UTF-8 decoding: rejects overlong forms, surrogates and values
// beyond U+10FFFF. Offsets in error messages are byte positions.
std::u32string decode_utf8(std::string_view bytes);

void append_utf8(std::string& out, char32_t c);
std::string encode_utf8(char32_t c);
std::string encode_utf8(std::u32string_view text);

}  // namespace kiri
