#include "intertext/zefania.hpp"

#include <algorithm>
#include <cctype>

#include "intertext/error.hpp"
#include "intertext/normalize.hpp"
#include "intertext/xml.hpp"

namespace intertext {

std::optional<std::string> canonical_strongs(std::string_view attr_value) {
    // Values look like "2316", "G2316", "G1722 G3588", "0025". Take the first
    // number; keep an explicit G/H prefix, default to G (both corpora are Greek).
    size_t i = 0;
    while (i < attr_value.size() && (std::isspace(static_cast<unsigned char>(attr_value[i])) ||
                                     attr_value[i] == ','))
        ++i;
    char prefix = 'G';
    if (i < attr_value.size() && (attr_value[i] == 'G' || attr_value[i] == 'g' ||
                                  attr_value[i] == 'H' || attr_value[i] == 'h')) {
        prefix = static_cast<char>(std::toupper(static_cast<unsigned char>(attr_value[i])));
        ++i;
    }
    size_t digits_start = i;
    while (i < attr_value.size() && std::isdigit(static_cast<unsigned char>(attr_value[i]))) ++i;
    if (i == digits_start) return std::nullopt;
    std::string_view digits = attr_value.substr(digits_start, i - digits_start);
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    if (digits == "0") return std::nullopt;
    std::string key(1, prefix);
    key += digits;
    return key;
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::optional<int> to_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        v = v * 10 + (c - '0');
        if (v > 100000000) return std::nullopt;
    }
    return v;
}

class ZefaniaHandler : public xml::Handler {
public:
    ZefaniaHandler(Testament testament, ZefaniaDocument& out)
        : testament_(testament), out_(out) {}

    void start_element(std::string_view name, const std::vector<xml::Attribute>& attrs) override {
        if (skip_depth_ > 0) {
            ++skip_depth_;
            return;
        }
        if (iequals(name, "NOTE") || iequals(name, "XREF")) {
            flush_pending();
            skip_depth_ = 1;
            return;
        }
        if (iequals(name, "BIBLEBOOK")) {
            flush_pending();
            begin_book(attrs);
        } else if (iequals(name, "CHAPTER")) {
            chapter_ = attr_int(attrs, "cnumber").value_or(0);
        } else if (iequals(name, "VERS")) {
            verse_ = attr_int(attrs, "vnumber").value_or(0);
            in_verse_ = true;
        } else if (in_verse_ && (iequals(name, "gr") || iequals(name, "GRAM"))) {
            flush_pending();
            ++gr_depth_;
            if (gr_depth_ == 1) {
                current_strongs_.reset();
                for (const char* attr_name : {"str", "strong", "strongs"}) {
                    if (const std::string* str = attr(attrs, attr_name)) {
                        current_strongs_ = canonical_strongs(*str);
                        break;
                    }
                }
            }
        }
        // other elements (STYLE, DIV, BR, ...) are transparent
    }

    void end_element(std::string_view name) override {
        if (skip_depth_ > 0) {
            --skip_depth_;
            return;
        }
        if (in_verse_ && (iequals(name, "gr") || iequals(name, "GRAM"))) {
            flush_pending();
            if (gr_depth_ > 0) --gr_depth_;
            if (gr_depth_ == 0) current_strongs_.reset();
        } else if (iequals(name, "VERS")) {
            flush_pending();
            in_verse_ = false;
        } else if (iequals(name, "BIBLEBOOK")) {
            flush_pending();
            end_book();
        }
    }

    void text(std::string_view content) override {
        if (skip_depth_ > 0 || !in_verse_) return;
        pending_text_.append(content);
    }

private:
    // Words are flushed on every annotation boundary so each word is tagged
    // with the gr element it sits in (or none).
    void flush_pending() {
        if (pending_text_.empty()) return;
        std::vector<std::string> words = split_words(pending_text_);
        pending_text_.clear();
        if (words.empty()) return;
        std::optional<std::string> strongs = (gr_depth_ > 0) ? current_strongs_ : std::nullopt;
        for (std::string& w : words) {
            if (!book_) {
                if (excluded_active_) excluded_words_ += 1;
                continue;
            }
            if (chapter_ <= 0 || verse_ <= 0)
                throw_parse("word outside a numbered chapter/verse in book '" + book_name_ + "'");
            RawToken tok;
            tok.surface = std::move(w);
            tok.strongs = strongs;
            tok.book = *book_;
            tok.chapter = chapter_;
            tok.verse = verse_;
            out_.tokens.push_back(std::move(tok));
        }
    }

    void begin_book(const std::vector<xml::Attribute>& attrs) {
        book_.reset();
        excluded_active_ = false;
        excluded_words_ = 0;
        chapter_ = 0;
        verse_ = 0;
        const std::string* bname = attr(attrs, "bname");
        book_name_ = bname ? *bname : "";
        std::optional<BookId> id;
        if (auto num = attr_int(attrs, "bnumber")) id = canon::from_zefania_number(*num);
        if (!id && bname) id = canon::from_name(*bname);
        if (book_name_.empty()) {
            if (auto num = attr_int(attrs, "bnumber")) book_name_ = "book #" + std::to_string(*num);
            else book_name_ = "(unnamed book)";
        }
        if (id && id->testament == testament_) {
            book_ = id;
        } else {
            // known book of the wrong testament, deuterocanonical, or unknown
            excluded_active_ = true;
        }
    }

    void end_book() {
        if (excluded_active_)
            out_.excluded.push_back(ExcludedBook{book_name_, excluded_words_});
        book_.reset();
        excluded_active_ = false;
    }

    static const std::string* attr(const std::vector<xml::Attribute>& attrs, std::string_view name) {
        for (const auto& a : attrs)
            if (iequals(a.name, name)) return &a.value;
        return nullptr;
    }

    static std::optional<int> attr_int(const std::vector<xml::Attribute>& attrs,
                                       std::string_view name) {
        const std::string* v = attr(attrs, name);
        if (!v) return std::nullopt;
        return to_int(*v);
    }

    Testament testament_;
    ZefaniaDocument& out_;
    std::optional<BookId> book_;
    std::string book_name_;
    bool excluded_active_ = false;
    std::uint64_t excluded_words_ = 0;
    int chapter_ = 0;
    int verse_ = 0;
    bool in_verse_ = false;
    int gr_depth_ = 0;
    int skip_depth_ = 0;
    std::optional<std::string> current_strongs_;
    std::string pending_text_;
};

}  // namespace

ZefaniaDocument parse_zefania(std::string_view xml_document, Testament testament) {
    ZefaniaDocument doc;
    ZefaniaHandler handler(testament, doc);
    xml::parse(xml_document, handler);
    return doc;
}

}  // namespace intertext
