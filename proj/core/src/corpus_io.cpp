#include "intertext/corpus_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "intertext/error.hpp"

namespace intertext {
namespace {

constexpr std::string_view kHeader = "intertext-corpus 1";

void append_books(std::string& out, const Corpus& corpus) {
    for (const Book& book : corpus.books()) {
        out += "book ";
        out += testament_name(book.id.testament);
        out += ' ';
        out += std::to_string(book.id.canon_index);
        out += ' ';
        out += std::to_string(book.tokens.size());
        out += ' ';
        out += canon::book_name(book.id);
        out += '\n';
        for (const Token& tok : book.tokens) {
            out += "tok ";
            out += std::to_string(tok.chapter);
            out += ' ';
            out += std::to_string(tok.verse);
            out += ' ';
            out += tok.key.value();
            out += ' ';
            out += tok.surface;
            out += '\n';
        }
    }
}

void append_excluded(std::string& out, Testament t, const std::vector<ExcludedBook>& excluded) {
    for (const ExcludedBook& e : excluded) {
        out += "excluded ";
        out += testament_name(t);
        out += ' ';
        out += std::to_string(e.word_count);
        out += ' ';
        out += e.name;
        out += '\n';
    }
}

void append_dropped(std::string& out, const std::vector<DroppedToken>& dropped) {
    for (const DroppedToken& d : dropped) {
        out += "dropped ";
        out += testament_name(d.book.testament);
        out += ' ';
        out += std::to_string(d.chapter);
        out += ' ';
        out += std::to_string(d.verse);
        out += ' ';
        out += canon::book_name(d.book);
        out += '\n';
    }
}

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    bool next(std::string_view& line) {
        if (pos_ >= text_.size()) return false;
        size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        line = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++line_no_;
        return true;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw_parse("corpus container line " + std::to_string(line_no_) + ": " + msg);
    }

private:
    std::string_view text_;
    size_t pos_ = 0;
    std::uint64_t line_no_ = 0;
};

// splits off the first `n` space-separated fields; the remainder of the line
// is the last element
std::vector<std::string_view> split_fields(std::string_view line, int n, LineReader& reader) {
    std::vector<std::string_view> fields;
    size_t pos = 0;
    for (int i = 0; i < n - 1; ++i) {
        size_t space = line.find(' ', pos);
        if (space == std::string_view::npos) reader.fail("expected at least " + std::to_string(n) + " fields");
        fields.push_back(line.substr(pos, space - pos));
        pos = space + 1;
    }
    fields.push_back(line.substr(pos));
    return fields;
}

int parse_int(std::string_view s, LineReader& reader) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) reader.fail("bad integer field");
    return value;
}

std::uint64_t parse_u64(std::string_view s, LineReader& reader) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) reader.fail("bad integer field");
    return value;
}

}  // namespace

std::string serialize_corpus(const CorpusContainer& container) {
    std::string out;
    out += kHeader;
    out += '\n';
    for (const auto& [key, value] : container.meta) {
        out += "meta ";
        out += key;
        out += ' ';
        out += value;
        out += '\n';
    }
    append_excluded(out, Testament::OT, container.excluded_ot);
    append_excluded(out, Testament::NT, container.excluded_nt);
    append_dropped(out, container.dropped_ot);
    append_dropped(out, container.dropped_nt);
    for (const auto& [surface, key] : container.table.entries()) {
        out += "custom ";
        out += key;
        out += ' ';
        out += surface;
        out += '\n';
    }
    append_books(out, container.ot);
    append_books(out, container.nt);
    return out;
}

CorpusContainer deserialize_corpus(std::string_view text) {
    LineReader reader(text);
    std::string_view line;
    if (!reader.next(line) || line != kHeader)
        throw_parse("not an intertext corpus container (bad header line)");

    std::map<std::string, std::string> meta;
    std::vector<ExcludedBook> excluded_ot;
    std::vector<ExcludedBook> excluded_nt;
    std::vector<DroppedToken> dropped_ot;
    std::vector<DroppedToken> dropped_nt;
    std::vector<std::pair<std::string, std::string>> custom_entries;
    std::vector<std::vector<Token>> ot_books(static_cast<size_t>(kOtBookCount));
    std::vector<std::vector<Token>> nt_books(static_cast<size_t>(kNtBookCount));

    std::vector<Token>* current_book = nullptr;
    std::uint64_t expected_tokens = 0;
    std::uint64_t seen_tokens = 0;

    auto close_book = [&] {
        if (current_book && seen_tokens != expected_tokens)
            throw_parse("corpus container: book token count mismatch (declared " +
                        std::to_string(expected_tokens) + ", found " + std::to_string(seen_tokens) +
                        ")");
    };

    while (reader.next(line)) {
        if (line.empty()) continue;
        if (line.rfind("meta ", 0) == 0) {
            auto fields = split_fields(line.substr(5), 2, reader);
            meta.emplace(std::string(fields[0]), std::string(fields[1]));
        } else if (line.rfind("excluded ", 0) == 0) {
            auto fields = split_fields(line.substr(9), 3, reader);
            auto t = testament_from_name(fields[0]);
            if (!t) reader.fail("bad testament in excluded record");
            ExcludedBook e{std::string(fields[2]), parse_u64(fields[1], reader)};
            (*t == Testament::OT ? excluded_ot : excluded_nt).push_back(std::move(e));
        } else if (line.rfind("dropped ", 0) == 0) {
            auto fields = split_fields(line.substr(8), 4, reader);
            auto t = testament_from_name(fields[0]);
            if (!t) reader.fail("bad testament in dropped record");
            auto book = canon::from_name(fields[3]);
            if (!book || book->testament != *t) reader.fail("bad book in dropped record");
            DroppedToken d{*book, parse_int(fields[1], reader), parse_int(fields[2], reader), ""};
            (*t == Testament::OT ? dropped_ot : dropped_nt).push_back(std::move(d));
        } else if (line.rfind("custom ", 0) == 0) {
            auto fields = split_fields(line.substr(7), 2, reader);
            custom_entries.emplace_back(std::string(fields[1]), std::string(fields[0]));
        } else if (line.rfind("book ", 0) == 0) {
            close_book();
            auto fields = split_fields(line.substr(5), 4, reader);
            auto t = testament_from_name(fields[0]);
            if (!t) reader.fail("bad testament in book record");
            const int index = parse_int(fields[1], reader);
            BookId id{*t, index};
            if (!canon::valid(id)) reader.fail("book canon index out of range");
            if (canon::book_name(id) != fields[3]) reader.fail("book name does not match canon");
            current_book = (*t == Testament::OT) ? &ot_books[static_cast<size_t>(index)]
                                                 : &nt_books[static_cast<size_t>(index)];
            if (!current_book->empty()) reader.fail("duplicate book record");
            expected_tokens = parse_u64(fields[2], reader);
            seen_tokens = 0;
        } else if (line.rfind("tok ", 0) == 0) {
            if (!current_book) reader.fail("token before any book record");
            auto fields = split_fields(line.substr(4), 4, reader);
            Token tok;
            tok.chapter = parse_int(fields[0], reader);
            tok.verse = parse_int(fields[1], reader);
            std::string key(fields[2]);
            tok.key = key.rfind("C-", 0) == 0 ? TokenKey::custom(std::move(key))
                                              : TokenKey::real(std::move(key));
            tok.surface = std::string(fields[3]);
            current_book->push_back(std::move(tok));
            ++seen_tokens;
        } else {
            reader.fail("unknown record type");
        }
    }
    close_book();

    CorpusContainer container{
        Corpus::build(Testament::OT, std::move(ot_books)),
        Corpus::build(Testament::NT, std::move(nt_books)),
        CustomKeyTable::from_entries(std::move(custom_entries)),
        std::move(meta),
        std::move(excluded_ot),
        std::move(excluded_nt),
        std::move(dropped_ot),
        std::move(dropped_nt),
    };
    return container;
}

void write_corpus_file(const CorpusContainer& container, const std::filesystem::path& path) {
    write_file(path, serialize_corpus(container));
}

CorpusContainer read_corpus_file(const std::filesystem::path& path) {
    return deserialize_corpus(read_file(path));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open for reading: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw_io("read failed: " + path.string());
    return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw_io("cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw_io("write failed: " + path.string());
}

}  // namespace intertext
