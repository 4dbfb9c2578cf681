#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "intertext/ingest.hpp"

namespace intertext {

// The on-disk corpus container: both testaments, the shared custom key table
// and the ingestion manifest, in a line-oriented versioned text format
// ("intertext-corpus 1"). Writing is deterministic.
struct CorpusContainer {
    Corpus ot;
    Corpus nt;
    CustomKeyTable table;
    std::map<std::string, std::string> meta;  // source paths, digests, ...
    std::vector<ExcludedBook> excluded_ot;
    std::vector<ExcludedBook> excluded_nt;
    std::vector<DroppedToken> dropped_ot;
    std::vector<DroppedToken> dropped_nt;
};

std::string serialize_corpus(const CorpusContainer& container);
CorpusContainer deserialize_corpus(std::string_view text);

void write_corpus_file(const CorpusContainer& container, const std::filesystem::path& path);
CorpusContainer read_corpus_file(const std::filesystem::path& path);

// Whole-file helpers with Io-category errors.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace intertext
