#include "intertext/detect.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <tuple>

#include "intertext/error.hpp"

namespace intertext {
namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;
constexpr unsigned char kKeySeparator = 0x1F;

std::uint64_t fnv1a_append(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    h ^= kKeySeparator;
    h *= kFnvPrime;
    return h;
}

bool keys_equal(const std::vector<Token>& a, std::uint32_t a_start, const std::vector<Token>& b,
                std::uint32_t b_start, int n) {
    for (int i = 0; i < n; ++i)
        if (!(a[a_start + static_cast<std::uint32_t>(i)].key ==
              b[b_start + static_cast<std::uint32_t>(i)].key))
            return false;
    return true;
}

struct MatchOrder {
    bool operator()(const RawMatch& a, const RawMatch& b) const {
        return std::tie(a.nt_book.canon_index, a.nt_start, a.ot_book.canon_index, a.ot_start) <
               std::tie(b.nt_book.canon_index, b.nt_start, b.ot_book.canon_index, b.ot_start);
    }
};

struct QuoteOrder {
    bool operator()(const Quotation& a, const Quotation& b) const {
        return std::tie(a.nt_book.canon_index, a.nt_start, a.ot_book.canon_index, a.ot_start) <
               std::tie(b.nt_book.canon_index, b.nt_start, b.ot_book.canon_index, b.ot_start);
    }
};

}  // namespace

std::uint64_t NGramIndex::fingerprint(const std::vector<Token>& tokens, std::uint32_t start, int n) {
    std::uint64_t h = kFnvOffset;
    for (int i = 0; i < n; ++i)
        h = fnv1a_append(h, tokens[start + static_cast<std::uint32_t>(i)].key.value());
    return h;
}

NGramIndex::NGramIndex(const Corpus& ot, int n) : ot_(&ot), n_(n) {
    if (n < 2) throw_config("n-gram size must be >= 2, got " + std::to_string(n));
    std::uint64_t total = 0;
    for (const Book& book : ot.books()) {
        if (book.tokens.size() >= static_cast<size_t>(n))
            total += book.tokens.size() - static_cast<size_t>(n) + 1;
    }
    map_.reserve(static_cast<size_t>(total) * 2);
    for (const Book& book : ot.books()) {
        if (book.tokens.size() < static_cast<size_t>(n)) continue;
        const auto last = static_cast<std::uint32_t>(book.tokens.size() - static_cast<size_t>(n));
        for (std::uint32_t start = 0; start <= last; ++start) {
            map_[fingerprint(book.tokens, start, n)].push_back(
                WindowRef{book.id.canon_index, start});
            ++windows_;
        }
    }
}

const std::vector<NGramIndex::WindowRef>* NGramIndex::lookup(std::uint64_t fingerprint) const {
    auto it = map_.find(fingerprint);
    if (it == map_.end()) return nullptr;
    return &it->second;
}

std::vector<RawMatch> find_matches(const NGramIndex& index, const Corpus& nt, int workers) {
    if (workers < 1) throw_config("worker count must be >= 1");
    const Corpus& ot = index.source();
    const int n = index.n();
    const auto& nt_books = nt.books();

    std::vector<std::vector<RawMatch>> per_book(nt_books.size());
    auto scan_book = [&](size_t book_idx) {
        const Book& book = nt_books[book_idx];
        if (book.tokens.size() < static_cast<size_t>(n)) return;
        std::vector<RawMatch>& out = per_book[book_idx];
        const auto last = static_cast<std::uint32_t>(book.tokens.size() - static_cast<size_t>(n));
        for (std::uint32_t nt_start = 0; nt_start <= last; ++nt_start) {
            const std::uint64_t fp = NGramIndex::fingerprint(book.tokens, nt_start, n);
            const auto* hits = index.lookup(fp);
            if (!hits) continue;
            for (const NGramIndex::WindowRef& ref : *hits) {
                const Book& ot_book = ot.books()[static_cast<size_t>(ref.book_index)];
                if (!keys_equal(ot_book.tokens, ref.start, book.tokens, nt_start, n)) continue;
                out.push_back(RawMatch{ot_book.id, ref.start, book.id, nt_start, n});
            }
        }
    };

    if (workers == 1 || nt_books.size() <= 1) {
        for (size_t i = 0; i < nt_books.size(); ++i) scan_book(i);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= nt_books.size()) return;
                scan_book(i);
            }
        };
        std::vector<std::thread> pool;
        const int count = std::min<int>(workers, static_cast<int>(nt_books.size()));
        pool.reserve(static_cast<size_t>(count));
        for (int i = 0; i < count; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::vector<RawMatch> result;
    size_t total = 0;
    for (const auto& v : per_book) total += v.size();
    result.reserve(total);
    for (auto& v : per_book) result.insert(result.end(), v.begin(), v.end());
    // per-book results are already grouped; the final sort pins the contract
    std::sort(result.begin(), result.end(), MatchOrder{});
    return result;
}

namespace {

std::vector<Quotation> merge_diagonal(std::vector<RawMatch> raw) {
    const std::uint32_t n = static_cast<std::uint32_t>(raw.front().n);
    auto diag = [](const RawMatch& m) {
        return static_cast<std::int64_t>(m.nt_start) - static_cast<std::int64_t>(m.ot_start);
    };
    std::sort(raw.begin(), raw.end(), [&](const RawMatch& a, const RawMatch& b) {
        return std::tuple(a.nt_book.canon_index, a.ot_book.canon_index, diag(a), a.nt_start) <
               std::tuple(b.nt_book.canon_index, b.ot_book.canon_index, diag(b), b.nt_start);
    });

    std::vector<Quotation> out;
    size_t i = 0;
    while (i < raw.size()) {
        const RawMatch& first = raw[i];
        std::uint32_t start = first.nt_start;
        std::uint32_t end = first.nt_start + n;
        size_t j = i + 1;
        while (j < raw.size() && raw[j].nt_book == first.nt_book &&
               raw[j].ot_book == first.ot_book && diag(raw[j]) == diag(first) &&
               raw[j].nt_start <= end) {  // overlap or touch
            end = std::max(end, raw[j].nt_start + n);
            ++j;
        }
        Quotation q;
        q.nt_book = first.nt_book;
        q.nt_start = start;
        q.ot_book = first.ot_book;
        q.ot_start = first.ot_start;
        q.length = end - start;
        out.push_back(q);
        i = j;
    }
    return out;
}

// Diagnostic rule: merge when both the NT spans and the OT spans overlap or
// touch, regardless of diagonal. Merged spans may not satisfy key equality.
std::vector<Quotation> merge_overlap(std::vector<RawMatch> raw) {
    const std::uint32_t n = static_cast<std::uint32_t>(raw.front().n);
    std::sort(raw.begin(), raw.end(), [](const RawMatch& a, const RawMatch& b) {
        return std::tuple(a.nt_book.canon_index, a.ot_book.canon_index, a.nt_start, a.ot_start) <
               std::tuple(b.nt_book.canon_index, b.ot_book.canon_index, b.nt_start, b.ot_start);
    });

    std::vector<Quotation> out;
    size_t group_begin = 0;
    while (group_begin < raw.size()) {
        size_t group_end = group_begin + 1;
        while (group_end < raw.size() && raw[group_end].nt_book == raw[group_begin].nt_book &&
               raw[group_end].ot_book == raw[group_begin].ot_book)
            ++group_end;

        const size_t m = group_end - group_begin;
        std::vector<size_t> parent(m);
        for (size_t i = 0; i < m; ++i) parent[i] = i;
        std::function<size_t(size_t)> find = [&](size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&](size_t a, size_t b) { parent[find(a)] = find(b); };
        auto overlaps = [&](const RawMatch& a, const RawMatch& b) {
            const bool nt_touch = a.nt_start <= b.nt_start + n && b.nt_start <= a.nt_start + n;
            const bool ot_touch = a.ot_start <= b.ot_start + n && b.ot_start <= a.ot_start + n;
            return nt_touch && ot_touch;
        };
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j)
                if (overlaps(raw[group_begin + i], raw[group_begin + j])) unite(i, j);

        std::map<size_t, Quotation> merged;
        for (size_t i = 0; i < m; ++i) {
            const RawMatch& match = raw[group_begin + i];
            size_t root = find(i);
            auto it = merged.find(root);
            if (it == merged.end()) {
                merged.emplace(root, Quotation{match.ot_book, match.ot_start, match.nt_book,
                                               match.nt_start, n});
            } else {
                Quotation& q = it->second;
                const std::uint32_t nt_end =
                    std::max(q.nt_start + q.length, match.nt_start + n);
                q.nt_start = std::min(q.nt_start, match.nt_start);
                q.ot_start = std::min(q.ot_start, match.ot_start);
                q.length = nt_end - q.nt_start;
            }
        }
        for (auto& [root, q] : merged) out.push_back(q);
        group_begin = group_end;
    }
    return out;
}

}  // namespace

std::vector<Quotation> merge_matches(const std::vector<RawMatch>& raw, MergeRule rule) {
    if (raw.empty()) return {};
    for (const RawMatch& m : raw)
        if (m.n != raw.front().n) throw_config("raw matches must all share the same n");

    std::vector<Quotation> out = rule == MergeRule::Diagonal ? merge_diagonal(raw)
                                                             : merge_overlap(raw);
    std::sort(out.begin(), out.end(), QuoteOrder{});
    return out;
}

std::map<std::uint32_t, std::uint64_t> length_histogram(const std::vector<Quotation>& quotes) {
    std::map<std::uint32_t, std::uint64_t> hist;
    for (const Quotation& q : quotes) ++hist[q.length];
    return hist;
}

}  // namespace intertext
