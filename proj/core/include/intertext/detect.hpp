#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "intertext/corpus.hpp"

namespace intertext {

// One exact n-gram hit: the n keys at ot_start equal the n keys at nt_start.
struct RawMatch {
    BookId ot_book;
    std::uint32_t ot_start = 0;
    BookId nt_book;
    std::uint32_t nt_start = 0;
    int n = 0;

    friend bool operator==(const RawMatch&, const RawMatch&) = default;
};

// Maximal merged span pair; the `length` keys on both sides are pairwise equal.
struct Quotation {
    BookId ot_book;
    std::uint32_t ot_start = 0;
    BookId nt_book;
    std::uint32_t nt_start = 0;
    std::uint32_t length = 0;  // >= n

    friend bool operator==(const Quotation&, const Quotation&) = default;
};

// Hash multimap over every in-book window of n consecutive OT keys.
// Fingerprints are 64-bit FNV-1a over the key strings; every hit is verified
// against the full key sequence, so collisions never produce matches.
class NGramIndex {
public:
    struct WindowRef {
        int book_index;  // OT canon index
        std::uint32_t start;
    };

    NGramIndex(const Corpus& ot, int n);

    int n() const { return n_; }
    std::uint64_t window_count() const { return windows_; }
    const Corpus& source() const { return *ot_; }

    const std::vector<WindowRef>* lookup(std::uint64_t fingerprint) const;

    static std::uint64_t fingerprint(const std::vector<Token>& tokens, std::uint32_t start, int n);

private:
    const Corpus* ot_;
    int n_;
    std::uint64_t windows_ = 0;
    std::unordered_map<std::uint64_t, std::vector<WindowRef>> map_;
};

inline NGramIndex build_index(const Corpus& ot, int n) { return NGramIndex(ot, n); }

// All (OT window, NT window) pairs with equal key sequences, sorted by
// (nt_book, nt_start, ot_book, ot_start). `workers` > 1 shards the scan by NT
// book; the result does not depend on the worker count.
std::vector<RawMatch> find_matches(const NGramIndex& index, const Corpus& nt, int workers = 1);

enum class MergeRule {
    Diagonal,  // same book pair, same diagonal, overlapping-or-adjacent spans
    Overlap,   // diagnostic: same book pair, overlapping-or-adjacent NT and OT spans
};

// Transitive-closure merge of raw matches into maximal distinct quotations,
// sorted like find_matches output. Under the default diagonal rule every
// merged span still satisfies pairwise key equality.
std::vector<Quotation> merge_matches(const std::vector<RawMatch>& raw,
                                     MergeRule rule = MergeRule::Diagonal);

// length -> number of quotations of that length.
std::map<std::uint32_t, std::uint64_t> length_histogram(const std::vector<Quotation>& quotes);

}  // namespace intertext
