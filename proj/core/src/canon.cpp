#include "intertext/canon.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>

#include "intertext/error.hpp"

namespace intertext {

std::optional<Testament> testament_from_name(std::string_view name) {
    if (name == "OT") return Testament::OT;
    if (name == "NT") return Testament::NT;
    return std::nullopt;
}

namespace canon {
namespace {

constexpr std::array<std::string_view, kOtBookCount> kOtNames = {
    "Genesis",       "Exodus",       "Leviticus",    "Numbers",        "Deuteronomy",
    "Joshua",        "Judges",       "Ruth",         "1 Samuel",       "2 Samuel",
    "1 Kings",       "2 Kings",      "1 Chronicles", "2 Chronicles",   "Ezra",
    "Nehemiah",      "Esther",       "Job",          "Psalms",         "Proverbs",
    "Ecclesiastes",  "Song of Solomon", "Isaiah",    "Jeremiah",       "Lamentations",
    "Ezekiel",       "Daniel",       "Hosea",        "Joel",           "Amos",
    "Obadiah",       "Jonah",        "Micah",        "Nahum",          "Habakkuk",
    "Zephaniah",     "Haggai",       "Zechariah",    "Malachi",
};

constexpr std::array<std::string_view, kNtBookCount> kNtNames = {
    "Matthew",       "Mark",         "Luke",         "John",           "Acts",
    "Romans",        "1 Corinthians","2 Corinthians","Galatians",      "Ephesians",
    "Philippians",   "Colossians",   "1 Thessalonians", "2 Thessalonians", "1 Timothy",
    "2 Timothy",     "Titus",        "Philemon",     "Hebrews",        "James",
    "1 Peter",       "2 Peter",      "1 John",       "2 John",         "3 John",
    "Jude",          "Revelation",
};

// Lookup key: lowercase, dots stripped, whitespace collapsed, leading roman
// numeral converted to a digit, leading "the " dropped.
std::string normalize_book_name(std::string_view raw) {
    std::string s;
    s.reserve(raw.size());
    for (char c : raw) {
        if (c == '.') continue;
        s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    // collapse whitespace
    std::string t;
    bool prev_space = true;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!prev_space) t.push_back(' ');
            prev_space = true;
        } else {
            t.push_back(c);
            prev_space = false;
        }
    }
    while (!t.empty() && t.back() == ' ') t.pop_back();
    if (t.rfind("the ", 0) == 0) t = t.substr(4);
    auto starts = [&](std::string_view p) { return t.rfind(p, 0) == 0; };
    if (starts("iii ")) t = "3 " + t.substr(4);
    else if (starts("ii ")) t = "2 " + t.substr(3);
    else if (starts("i ")) t = "1 " + t.substr(2);
    return t;
}

const std::unordered_map<std::string, BookId>& name_table() {
    static const std::unordered_map<std::string, BookId> table = [] {
        std::unordered_map<std::string, BookId> m;
        auto put = [&m](std::string_view name, BookId id) {
            m.emplace(normalize_book_name(name), id);
        };
        for (int i = 0; i < kOtBookCount; ++i) put(kOtNames[i], BookId{Testament::OT, i});
        for (int i = 0; i < kNtBookCount; ++i) put(kNtNames[i], BookId{Testament::NT, i});
        // Alternate titles seen across Zefania editions.
        auto ot = [](int i) { return BookId{Testament::OT, i}; };
        auto nt = [](int i) { return BookId{Testament::NT, i}; };
        put("Numeri", ot(3));
        put("Deuteronomium", ot(4));
        put("Josua", ot(5));
        put("Iosue", ot(5));
        put("Judices", ot(6));
        put("1 Kingdoms", ot(8));
        put("2 Kingdoms", ot(9));
        put("3 Kingdoms", ot(10));
        put("4 Kingdoms", ot(11));
        put("1 Paralipomenon", ot(12));
        put("2 Paralipomenon", ot(13));
        put("Esdras", ot(14));
        put("Canticum Canticorum", ot(21));
        put("Song of Songs", ot(21));
        put("Canticles", ot(21));
        put("Psalm", ot(18));
        put("Psalmen", ot(18));
        put("Ecclesiast", ot(20));
        put("Qoheleth", ot(20));
        put("Isaias", ot(22));
        put("Jeremias", ot(23));
        put("Ezechiel", ot(25));
        put("Osee", ot(27));
        put("Abdias", ot(30));
        put("Jonas", ot(31));
        put("Michaeas", ot(32));
        put("Sophonias", ot(35));
        put("Aggaeus", ot(36));
        put("Zacharias", ot(37));
        put("Malachias", ot(38));
        put("Matthaeus", nt(0));
        put("Markus", nt(1));
        put("Lukas", nt(2));
        put("Johannes", nt(3));
        put("Acts of the Apostles", nt(4));
        put("Apostelgeschichte", nt(4));
        put("Romans", nt(5));
        put("Philemon", nt(17));
        put("Hebrews", nt(18));
        put("Apocalypse", nt(26));
        put("Revelation of John", nt(26));
        put("Offenbarung", nt(26));
        return m;
    }();
    return table;
}

}  // namespace

int book_count(Testament t) { return t == Testament::OT ? kOtBookCount : kNtBookCount; }

std::span<const std::string_view> book_names(Testament t) {
    if (t == Testament::OT) return kOtNames;
    return kNtNames;
}

const std::string& book_name(BookId id) {
    static const std::array<std::string, kOtBookCount> ot = [] {
        std::array<std::string, kOtBookCount> a;
        for (int i = 0; i < kOtBookCount; ++i) a[i] = std::string(kOtNames[i]);
        return a;
    }();
    static const std::array<std::string, kNtBookCount> nt = [] {
        std::array<std::string, kNtBookCount> a;
        for (int i = 0; i < kNtBookCount; ++i) a[i] = std::string(kNtNames[i]);
        return a;
    }();
    if (!valid(id)) throw_config("book id outside the canon");
    return id.testament == Testament::OT ? ot[static_cast<size_t>(id.canon_index)]
                                         : nt[static_cast<size_t>(id.canon_index)];
}

bool valid(BookId id) {
    return id.canon_index >= 0 && id.canon_index < book_count(id.testament);
}

std::optional<BookId> from_zefania_number(int bnumber) {
    if (bnumber >= 1 && bnumber <= kOtBookCount) return BookId{Testament::OT, bnumber - 1};
    if (bnumber >= 40 && bnumber <= 66) return BookId{Testament::NT, bnumber - 40};
    return std::nullopt;
}

std::optional<BookId> from_name(std::string_view name) {
    const auto& table = name_table();
    auto it = table.find(normalize_book_name(name));
    if (it == table.end()) return std::nullopt;
    return it->second;
}

}  // namespace canon
}  // namespace intertext
