#include "intertext/normalize.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "intertext/error.hpp"

namespace intertext {
namespace {

const icu::Normalizer2& nfc() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* instance = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || instance == nullptr)
        throw Error(ErrorCategory::Config, "ICU NFC normalizer unavailable");
    return *instance;
}

bool is_word_codepoint(UChar32 c) {
    if (u_isalpha(c)) return true;
    const int8_t type = u_charType(c);
    if (type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK) return true;
    // elision marks inside Greek words (e.g. "δ'")
    return c == 0x27 || c == 0x2019 || c == 0x02BC || c == 0x1FBD;
}

}  // namespace

std::string normalize_surface(std::string_view raw) {
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString s = icu::UnicodeString::fromUTF8(
        icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
    const icu::Normalizer2& n = nfc();
    icu::UnicodeString composed = n.normalize(s, status);
    // root-locale lowercasing keeps the Greek final-sigma distinction
    // ("Λόγος" -> "λόγος", "ΛΟΓΟΣ" -> "λογος"), unlike full case folding
    composed.toLower(icu::Locale::getRoot());
    icu::UnicodeString out = n.normalize(composed, status);
    if (U_FAILURE(status)) throw_parse("Unicode normalization failed");
    std::string utf8;
    out.toUTF8String(utf8);
    return utf8;
}

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
    const int32_t len = static_cast<int32_t>(text.size());
    int32_t i = 0;
    std::string current;
    int32_t word_start = -1;
    while (i < len) {
        UChar32 c;
        int32_t prev = i;
        U8_NEXT(bytes, i, len, c);
        if (c < 0) {
            // invalid UTF-8 byte: treat as a separator
            c = 0;
        }
        if (c > 0 && is_word_codepoint(c)) {
            if (word_start < 0) word_start = prev;
            current.append(text.substr(static_cast<size_t>(prev), static_cast<size_t>(i - prev)));
        } else if (word_start >= 0) {
            words.push_back(std::move(current));
            current.clear();
            word_start = -1;
        }
    }
    if (word_start >= 0) words.push_back(std::move(current));
    return words;
}

}  // namespace intertext
