#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intertext/canon.hpp"

namespace intertext {

// One word straight out of the XML, before key assignment.
struct RawToken {
    std::string surface;                 // as written (un-normalized)
    std::optional<std::string> strongs;  // canonical "G<digits>" if annotated
    BookId book;
    int chapter = 0;
    int verse = 0;
};

// A book present in the document but outside the Protestant 66-book canon
// (deuterocanonical LXX books); parsed, counted and excluded from analysis.
struct ExcludedBook {
    std::string name;
    std::uint64_t word_count = 0;
};

struct ZefaniaDocument {
    std::vector<RawToken> tokens;  // document order
    std::vector<ExcludedBook> excluded;
};

// Parses a Zefania-format document (BIBLEBOOK/CHAPTER/VERS with optional
// per-word <gr str="..."> Strong's annotations) for the given testament.
// Books are resolved by bnumber first, bname second; books of the other
// testament or outside the canon land in `excluded`. Words carrying several
// Strong's numbers keep the first one. NOTE and XREF subtrees are ignored.
ZefaniaDocument parse_zefania(std::string_view xml_document, Testament testament);

// Normalizes one Strong's attribute value to "G<digits>"/"H<digits>" form;
// returns nullopt for values with no usable number.
std::optional<std::string> canonical_strongs(std::string_view attr_value);

}  // namespace intertext
