#include "intertext/xml.hpp"

#include <cctype>
#include <cstdint>

#include "intertext/error.hpp"

namespace intertext::xml {
namespace {

class Cursor {
public:
    explicit Cursor(std::string_view doc) : doc_(doc) {
        if (doc_.size() >= 2) {
            const auto b0 = static_cast<unsigned char>(doc_[0]);
            const auto b1 = static_cast<unsigned char>(doc_[1]);
            if ((b0 == 0xFF && b1 == 0xFE) || (b0 == 0xFE && b1 == 0xFF))
                throw_parse("document is UTF-16 encoded; convert it to UTF-8 first");
        }
        // skip UTF-8 BOM
        if (doc_.size() >= 3 && static_cast<unsigned char>(doc_[0]) == 0xEF &&
            static_cast<unsigned char>(doc_[1]) == 0xBB && static_cast<unsigned char>(doc_[2]) == 0xBF)
            pos_ = 3;
    }

    bool eof() const { return pos_ >= doc_.size(); }
    char peek() const { return doc_[pos_]; }
    bool starts_with(std::string_view s) const { return doc_.compare(pos_, s.size(), s) == 0; }

    char next() {
        char c = doc_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void advance(size_t n) {
        for (size_t i = 0; i < n && !eof(); ++i) next();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw_parse("XML parse error at line " + std::to_string(line_) + ", column " +
                    std::to_string(col_) + " (offset " + std::to_string(pos_) + "): " + msg);
    }

    size_t pos() const { return pos_; }
    std::string_view rest() const { return doc_.substr(pos_); }
    std::string_view slice(size_t from, size_t to) const { return doc_.substr(from, to - from); }

private:
    std::string_view doc_;
    size_t pos_ = 0;
    std::uint64_t line_ = 1;
    std::uint64_t col_ = 1;
};

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
    return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

void skip_space(Cursor& cur) {
    while (!cur.eof() && is_space(cur.peek())) cur.next();
}

std::string parse_name(Cursor& cur) {
    if (cur.eof() || !is_name_start(cur.peek())) cur.fail("expected a name");
    std::string name;
    while (!cur.eof() && is_name_char(cur.peek())) name.push_back(cur.next());
    return name;
}

void append_codepoint(std::string& out, std::uint32_t cp, Cursor& cur) {
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
        cur.fail("invalid character reference");
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Consumes one entity reference starting at '&'.
void parse_entity(Cursor& cur, std::string& out) {
    cur.next();  // '&'
    std::string ent;
    while (!cur.eof() && cur.peek() != ';') {
        ent.push_back(cur.next());
        if (ent.size() > 10) cur.fail("unterminated entity reference");
    }
    if (cur.eof()) cur.fail("unterminated entity reference");
    cur.next();  // ';'
    if (ent == "amp") out.push_back('&');
    else if (ent == "lt") out.push_back('<');
    else if (ent == "gt") out.push_back('>');
    else if (ent == "quot") out.push_back('"');
    else if (ent == "apos") out.push_back('\'');
    else if (!ent.empty() && ent[0] == '#') {
        std::uint32_t cp = 0;
        size_t i = 1;
        bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
        if (hex) i = 2;
        if (i >= ent.size()) cur.fail("empty character reference");
        for (; i < ent.size(); ++i) {
            char c = ent[i];
            std::uint32_t digit;
            if (c >= '0' && c <= '9') digit = static_cast<std::uint32_t>(c - '0');
            else if (hex && c >= 'a' && c <= 'f') digit = static_cast<std::uint32_t>(c - 'a' + 10);
            else if (hex && c >= 'A' && c <= 'F') digit = static_cast<std::uint32_t>(c - 'A' + 10);
            else cur.fail("bad character reference '&" + ent + ";'");
            cp = cp * (hex ? 16u : 10u) + digit;
            if (cp > 0x10FFFF) cur.fail("character reference out of range");
        }
        append_codepoint(out, cp, cur);
    } else {
        cur.fail("unknown entity '&" + ent + ";'");
    }
}

std::string parse_attr_value(Cursor& cur) {
    if (cur.eof() || (cur.peek() != '"' && cur.peek() != '\'')) cur.fail("expected quoted attribute value");
    const char quote = cur.next();
    std::string value;
    while (true) {
        if (cur.eof()) cur.fail("unterminated attribute value");
        char c = cur.peek();
        if (c == quote) {
            cur.next();
            return value;
        }
        if (c == '&') {
            parse_entity(cur, value);
        } else if (c == '<') {
            cur.fail("'<' inside attribute value");
        } else {
            value.push_back(cur.next());
        }
    }
}

void skip_until(Cursor& cur, std::string_view terminator, const char* what) {
    while (!cur.eof()) {
        if (cur.starts_with(terminator)) {
            cur.advance(terminator.size());
            return;
        }
        cur.next();
    }
    cur.fail(std::string("unterminated ") + what);
}

void skip_doctype(Cursor& cur) {
    // "<!DOCTYPE" already consumed; honor an internal subset in brackets.
    int bracket_depth = 0;
    while (!cur.eof()) {
        char c = cur.next();
        if (c == '[') ++bracket_depth;
        else if (c == ']') --bracket_depth;
        else if (c == '>' && bracket_depth <= 0) return;
    }
    cur.fail("unterminated DOCTYPE");
}

}  // namespace

void parse(std::string_view document, Handler& handler) {
    Cursor cur(document);
    std::vector<std::string> open;
    std::string text_buf;

    auto flush_text = [&] {
        if (!text_buf.empty()) {
            if (!open.empty()) handler.text(text_buf);
            text_buf.clear();
        }
    };

    bool seen_root = false;
    while (!cur.eof()) {
        if (cur.peek() == '<') {
            if (cur.starts_with("<!--")) {
                flush_text();
                cur.advance(4);
                skip_until(cur, "-->", "comment");
                continue;
            }
            if (cur.starts_with("<![CDATA[")) {
                if (open.empty()) cur.fail("CDATA outside the root element");
                cur.advance(9);
                size_t start = cur.pos();
                while (!cur.eof() && !cur.starts_with("]]>")) cur.next();
                if (cur.eof()) cur.fail("unterminated CDATA section");
                text_buf.append(cur.slice(start, cur.pos()));
                cur.advance(3);
                continue;
            }
            if (cur.starts_with("<?")) {
                flush_text();
                cur.advance(2);
                skip_until(cur, "?>", "processing instruction");
                continue;
            }
            if (cur.starts_with("<!DOCTYPE")) {
                flush_text();
                cur.advance(9);
                skip_doctype(cur);
                continue;
            }
            if (cur.starts_with("</")) {
                flush_text();
                cur.advance(2);
                std::string name = parse_name(cur);
                skip_space(cur);
                if (cur.eof() || cur.peek() != '>') cur.fail("expected '>' after closing tag name");
                cur.next();
                if (open.empty() || open.back() != name)
                    cur.fail("mismatched closing tag </" + name + ">" +
                             (open.empty() ? "" : ", expected </" + open.back() + ">"));
                open.pop_back();
                handler.end_element(name);
                continue;
            }
            // start tag
            flush_text();
            if (open.empty() && seen_root) cur.fail("second root element");
            cur.next();  // '<'
            std::string name = parse_name(cur);
            std::vector<Attribute> attrs;
            while (true) {
                skip_space(cur);
                if (cur.eof()) cur.fail("unterminated start tag <" + name + ">");
                if (cur.peek() == '>') {
                    cur.next();
                    handler.start_element(name, attrs);
                    open.push_back(name);
                    seen_root = true;
                    break;
                }
                if (cur.starts_with("/>")) {
                    cur.advance(2);
                    handler.start_element(name, attrs);
                    handler.end_element(name);
                    seen_root = true;
                    break;
                }
                Attribute attr;
                attr.name = parse_name(cur);
                skip_space(cur);
                if (cur.eof() || cur.peek() != '=') cur.fail("expected '=' after attribute name");
                cur.next();
                skip_space(cur);
                attr.value = parse_attr_value(cur);
                attrs.push_back(std::move(attr));
            }
            continue;
        }
        // character data
        if (open.empty()) {
            char c = cur.next();
            if (!is_space(c)) cur.fail("character data outside the root element");
            continue;
        }
        if (cur.peek() == '&') {
            parse_entity(cur, text_buf);
        } else {
            text_buf.push_back(cur.next());
        }
    }

    if (!open.empty()) cur.fail("unexpected end of document, <" + open.back() + "> still open");
    if (!seen_root) cur.fail("document has no root element");
}

}  // namespace intertext::xml
