#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace intertext {

// Canonical composition (NFC) followed by full case folding and a final NFC
// pass. Diacritics are preserved; final sigma folds to sigma. The result is
// the Token surface and the custom-key lookup form. May return an empty
// string (callers drop such tokens with a warning).
std::string normalize_surface(std::string_view raw);

// Splits verse text into word candidates: maximal runs of letters, combining
// marks and elision apostrophes. Punctuation and digits separate words.
std::vector<std::string> split_words(std::string_view text);

}  // namespace intertext
