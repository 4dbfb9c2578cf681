#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace intertext {

enum class Testament { OT, NT };

constexpr int kOtBookCount = 39;
constexpr int kNtBookCount = 27;

inline const char* testament_name(Testament t) { return t == Testament::OT ? "OT" : "NT"; }

std::optional<Testament> testament_from_name(std::string_view name);

// Identity of a book inside the fixed Protestant 66-book canon.
// Ordering follows canon order within a testament.
struct BookId {
    Testament testament;
    int canon_index;  // 0..38 for OT, 0..26 for NT

    friend bool operator==(const BookId&, const BookId&) = default;
    friend auto operator<=>(const BookId&, const BookId&) = default;
};

namespace canon {

int book_count(Testament t);

// Canon-order book names, exactly as used in all emitted tables.
std::span<const std::string_view> book_names(Testament t);

const std::string& book_name(BookId id);

bool valid(BookId id);

// Resolves a Zefania book number (1..66; 1 = Genesis, 40 = Matthew) to a canon id.
std::optional<BookId> from_zefania_number(int bnumber);

// Resolves a book name, tolerating case, dots, roman numerals and a handful
// of Latin/alternate titles. Returns nullopt for non-canon books.
std::optional<BookId> from_name(std::string_view name);

}  // namespace canon

}  // namespace intertext
