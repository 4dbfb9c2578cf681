#include "intertext/corpus.hpp"

#include "intertext/error.hpp"

namespace intertext {

TokenKey TokenKey::real(std::string value) {
    if (value.empty()) throw_config("real token key must be nonempty");
    if (value.rfind("C-", 0) == 0) throw_config("real token key may not begin with \"C-\": " + value);
    return TokenKey(std::move(value));
}

TokenKey TokenKey::custom(std::string value) {
    if (value.rfind("C-", 0) != 0) throw_config("custom token key must begin with \"C-\": " + value);
    return TokenKey(std::move(value));
}

Corpus Corpus::build(Testament t, std::vector<std::vector<Token>> tokens_by_book) {
    const int n_books = canon::book_count(t);
    if (static_cast<int>(tokens_by_book.size()) != n_books)
        throw_config("corpus must list every canon book of its testament");

    Corpus c;
    c.testament_ = t;
    c.books_.resize(static_cast<size_t>(n_books));
    for (int i = 0; i < n_books; ++i) {
        Book& book = c.books_[static_cast<size_t>(i)];
        book.id = BookId{t, i};
        book.tokens = std::move(tokens_by_book[static_cast<size_t>(i)]);
        std::uint32_t offset = 0;
        for (Token& tok : book.tokens) {
            if (tok.surface.empty()) throw_config("token surface empty after normalization");
            if (tok.chapter <= 0 || tok.verse <= 0)
                throw_config("token chapter/verse must be positive");
            tok.book = book.id;
            tok.book_offset = offset++;
        }
    }
    return c;
}

const Book& Corpus::book(BookId id) const {
    if (id.testament != testament_ || !canon::valid(id) ||
        static_cast<size_t>(id.canon_index) >= books_.size())
        throw_config("book is not part of this corpus's canon: testament/index mismatch");
    return books_[static_cast<size_t>(id.canon_index)];
}

std::uint32_t Corpus::book_word_count(BookId id) const {
    return static_cast<std::uint32_t>(book(id).tokens.size());
}

std::uint64_t Corpus::total_word_count() const {
    std::uint64_t total = 0;
    for (const Book& b : books_) total += b.tokens.size();
    return total;
}

std::vector<std::uint32_t> Corpus::span_positions(BookId id, std::uint32_t start_offset,
                                                  std::uint32_t length) const {
    if (length < 1) throw_config("span length must be >= 1");
    const std::uint32_t count = book_word_count(id);
    if (start_offset + length > count)
        throw_config("span exceeds book length: [" + std::to_string(start_offset) + ", " +
                     std::to_string(start_offset + length) + ") in a book of " +
                     std::to_string(count) + " tokens");
    std::vector<std::uint32_t> out(length);
    for (std::uint32_t i = 0; i < length; ++i) out[i] = start_offset + i;
    return out;
}

}  // namespace intertext
