#include "intertext/ingest.hpp"

#include "intertext/error.hpp"
#include "intertext/normalize.hpp"

namespace intertext {

const std::string& CustomKeyTable::key_for(const std::string& normalized_surface) {
    auto it = index_.find(normalized_surface);
    if (it != index_.end()) return entries_[it->second].second;
    std::string key = "C-" + std::to_string(next_++);
    entries_.emplace_back(normalized_surface, std::move(key));
    index_.emplace(normalized_surface, entries_.size() - 1);
    return entries_.back().second;
}

CustomKeyTable CustomKeyTable::from_entries(
    std::vector<std::pair<std::string, std::string>> entries) {
    CustomKeyTable t;
    for (auto& [surface, key] : entries) {
        std::string expected = "C-" + std::to_string(t.next_);
        if (key != expected)
            throw_parse("custom key table out of order: got '" + key + "', expected '" +
                        expected + "'");
        t.entries_.emplace_back(surface, key);
        if (!t.index_.emplace(t.entries_.back().first, t.entries_.size() - 1).second)
            throw_parse("duplicate surface in custom key table: " + surface);
        ++t.next_;
    }
    return t;
}

Corpus assign_custom_keys(const std::vector<RawToken>& raw, Testament testament,
                          CustomKeyTable& table, std::vector<DroppedToken>* dropped) {
    std::vector<std::vector<Token>> by_book(static_cast<size_t>(canon::book_count(testament)));
    for (const RawToken& r : raw) {
        if (r.book.testament != testament || !canon::valid(r.book))
            throw_config("raw token book outside this testament's canon");
        std::string surface = normalize_surface(r.surface);
        if (surface.empty()) {
            if (dropped)
                dropped->push_back(DroppedToken{r.book, r.chapter, r.verse, r.surface});
            continue;
        }
        Token tok;
        tok.surface = std::move(surface);
        tok.chapter = r.chapter;
        tok.verse = r.verse;
        if (r.strongs)
            tok.key = TokenKey::real(*r.strongs);
        else
            tok.key = TokenKey::custom(table.key_for(tok.surface));
        by_book[static_cast<size_t>(r.book.canon_index)].push_back(std::move(tok));
    }
    return Corpus::build(testament, std::move(by_book));
}

namespace {

IngestStats make_stats(const Corpus& corpus, std::vector<DroppedToken> dropped,
                       std::vector<ExcludedBook> excluded) {
    IngestStats s;
    s.token_count = corpus.total_word_count();
    s.dropped = std::move(dropped);
    s.excluded = std::move(excluded);
    return s;
}

}  // namespace

IngestResult ingest_documents(std::string_view ot_xml, std::string_view nt_xml) {
    ZefaniaDocument ot_doc = parse_zefania(ot_xml, Testament::OT);
    ZefaniaDocument nt_doc = parse_zefania(nt_xml, Testament::NT);

    CustomKeyTable table;
    std::vector<DroppedToken> ot_dropped;
    std::vector<DroppedToken> nt_dropped;
    // OT first: cross-testament surfaces share keys in OT-first order.
    Corpus ot = assign_custom_keys(ot_doc.tokens, Testament::OT, table, &ot_dropped);
    Corpus nt = assign_custom_keys(nt_doc.tokens, Testament::NT, table, &nt_dropped);

    IngestStats ot_stats = make_stats(ot, std::move(ot_dropped), std::move(ot_doc.excluded));
    IngestStats nt_stats = make_stats(nt, std::move(nt_dropped), std::move(nt_doc.excluded));
    return IngestResult{std::move(ot), std::move(nt), std::move(table), std::move(ot_stats),
                        std::move(nt_stats)};
}

}  // namespace intertext
