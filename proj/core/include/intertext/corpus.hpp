#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "intertext/canon.hpp"

namespace intertext {

// Canonical word identity. Real keys are Strong's numbers ("G2316"); words
// that came without an annotation get shared custom keys ("C-17"). Two tokens
// match iff their keys compare equal.
class TokenKey {
public:
    TokenKey() = default;

    static TokenKey real(std::string value);
    static TokenKey custom(std::string value);

    bool is_custom() const { return value_.rfind("C-", 0) == 0; }
    bool is_real() const { return !value_.empty() && !is_custom(); }
    const std::string& value() const { return value_; }

    friend bool operator==(const TokenKey& a, const TokenKey& b) { return a.value_ == b.value_; }
    friend auto operator<=>(const TokenKey& a, const TokenKey& b) { return a.value_ <=> b.value_; }

private:
    explicit TokenKey(std::string v) : value_(std::move(v)) {}
    std::string value_;
};

struct Token {
    TokenKey key;
    std::string surface;  // normalized (NFC + case fold)
    BookId book;
    int chapter = 0;      // positive
    int verse = 0;        // positive
    std::uint32_t book_offset = 0;  // dense, strictly increasing within the book
};

struct Book {
    BookId id;
    std::vector<Token> tokens;
};

// Immutable ordered token sequence for one testament. Every canon book is
// present (possibly empty) so matrices always have the full 27x39 shape.
class Corpus {
public:
    // Default state is empty (no books); usable only as a move/assign target.
    Corpus() = default;

    // `tokens_by_book[i]` holds the document-order tokens of canon book i with
    // key/surface/chapter/verse filled in; book ids and offsets are assigned
    // here. Throws on invariant violations.
    static Corpus build(Testament t, std::vector<std::vector<Token>> tokens_by_book);

    Testament testament() const { return testament_; }
    const std::vector<Book>& books() const { return books_; }
    const Book& book(BookId id) const;

    // Number of tokens in the given book. Unknown book -> canon-membership error.
    std::uint32_t book_word_count(BookId id) const;

    std::uint64_t total_word_count() const;

    // {start_offset, ..., start_offset + length - 1}; bounds-checked.
    std::vector<std::uint32_t> span_positions(BookId id, std::uint32_t start_offset,
                                              std::uint32_t length) const;

private:
    Testament testament_ = Testament::OT;
    std::vector<Book> books_;
};

}  // namespace intertext
