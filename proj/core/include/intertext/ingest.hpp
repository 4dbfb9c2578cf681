#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "intertext/corpus.hpp"
#include "intertext/zefania.hpp"

namespace intertext {

// Shared table mapping normalized surfaces of unannotated words to custom
// keys "C-<k>". One table serves both testaments in a run, so the same word
// gets the same key on both sides. Assignment order is first appearance.
class CustomKeyTable {
public:
    // Returns the existing key for `normalized_surface` or assigns the next one.
    const std::string& key_for(const std::string& normalized_surface);

    std::uint64_t size() const { return entries_.size(); }
    std::uint64_t next_sequence() const { return next_; }

    // (surface, key) pairs in assignment order.
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    // Rebuilds a table from serialized entries; keys must be "C-1", "C-2", ...
    // in order.
    static CustomKeyTable from_entries(std::vector<std::pair<std::string, std::string>> entries);

private:
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::pair<std::string, std::string>> entries_;
    std::uint64_t next_ = 1;
};

struct DroppedToken {
    BookId book;
    int chapter = 0;
    int verse = 0;
    std::string raw_surface;
};

struct IngestStats {
    std::uint64_t token_count = 0;
    std::vector<DroppedToken> dropped;
    std::vector<ExcludedBook> excluded;
};

// Gives every raw token a TokenKey: annotated words keep their Strong's
// number, the rest get table-assigned custom keys on the normalized surface.
// Words whose surface normalizes to empty are dropped and logged.
Corpus assign_custom_keys(const std::vector<RawToken>& raw, Testament testament,
                          CustomKeyTable& table, std::vector<DroppedToken>* dropped = nullptr);

struct IngestResult {
    Corpus ot;
    Corpus nt;
    CustomKeyTable table;
    IngestStats ot_stats;
    IngestStats nt_stats;
};

// Full ingest over both documents, OT first (shared custom key table).
IngestResult ingest_documents(std::string_view ot_xml, std::string_view nt_xml);

}  // namespace intertext
