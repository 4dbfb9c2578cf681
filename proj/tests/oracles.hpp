#pragma once

// Independent reference implementations the fast paths are checked against.
// Everything here is deliberately naive: all-pairs scans, union-find closures
// and centroid recomputation straight from the definitions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include "intertext/detect.hpp"

namespace oracle {

// Every (OT window, NT window) pair with equal key sequences, by direct
// comparison of all window pairs.
inline std::vector<intertext::RawMatch> brute_find_matches(const intertext::Corpus& ot,
                                                           const intertext::Corpus& nt, int n) {
    using namespace intertext;
    std::vector<RawMatch> out;
    for (const Book& nt_book : nt.books()) {
        if (nt_book.tokens.size() < static_cast<size_t>(n)) continue;
        for (std::uint32_t ns = 0; ns + n <= nt_book.tokens.size(); ++ns) {
            for (const Book& ot_book : ot.books()) {
                if (ot_book.tokens.size() < static_cast<size_t>(n)) continue;
                for (std::uint32_t os = 0; os + n <= ot_book.tokens.size(); ++os) {
                    bool equal = true;
                    for (int i = 0; i < n && equal; ++i)
                        equal = ot_book.tokens[os + static_cast<std::uint32_t>(i)].key ==
                                nt_book.tokens[ns + static_cast<std::uint32_t>(i)].key;
                    if (equal)
                        out.push_back(RawMatch{ot_book.id, os, nt_book.id, ns, n});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const RawMatch& a, const RawMatch& b) {
        return std::tie(a.nt_book.canon_index, a.nt_start, a.ot_book.canon_index, a.ot_start) <
               std::tie(b.nt_book.canon_index, b.nt_start, b.ot_book.canon_index, b.ot_start);
    });
    return out;
}

// Union-find transitive closure of the pairwise merge relation: same book
// pair, same diagonal, spans overlapping or adjacent.
inline std::vector<intertext::Quotation> brute_merge(const std::vector<intertext::RawMatch>& raw) {
    using namespace intertext;
    const std::size_t m = raw.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto mergeable = [](const RawMatch& a, const RawMatch& b) {
        if (!(a.ot_book == b.ot_book) || !(a.nt_book == b.nt_book)) return false;
        const std::int64_t da = static_cast<std::int64_t>(a.nt_start) - a.ot_start;
        const std::int64_t db = static_cast<std::int64_t>(b.nt_start) - b.ot_start;
        if (da != db) return false;
        const std::uint32_t n = static_cast<std::uint32_t>(a.n);
        return a.nt_start <= b.nt_start + n && b.nt_start <= a.nt_start + n;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (mergeable(raw[i], raw[j])) parent[find(i)] = find(j);

    std::vector<Quotation> out;
    std::vector<bool> done(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t root = find(i);
        if (done[root]) continue;
        done[root] = true;
        std::uint32_t nt_lo = raw[i].nt_start, nt_hi = raw[i].nt_start;
        std::uint32_t ot_lo = raw[i].ot_start;
        for (std::size_t j = 0; j < m; ++j) {
            if (find(j) != root) continue;
            nt_lo = std::min(nt_lo, raw[j].nt_start);
            nt_hi = std::max(nt_hi, raw[j].nt_start);
            ot_lo = std::min(ot_lo, raw[j].ot_start);
        }
        Quotation q;
        q.ot_book = raw[i].ot_book;
        q.ot_start = ot_lo;
        q.nt_book = raw[i].nt_book;
        q.nt_start = nt_lo;
        q.length = nt_hi - nt_lo + static_cast<std::uint32_t>(raw[i].n);
        out.push_back(q);
    }
    std::sort(out.begin(), out.end(), [](const Quotation& a, const Quotation& b) {
        return std::tie(a.nt_book.canon_index, a.nt_start, a.ot_book.canon_index, a.ot_start) <
               std::tie(b.nt_book.canon_index, b.nt_start, b.ot_book.canon_index, b.ot_start);
    });
    return out;
}

// One Ward agglomeration trace: at each step the two member sets that merged
// (the smaller-minimum set first).
using MergeTrace = std::vector<std::pair<std::vector<int>, std::vector<int>>>;

// Naive minimum-variance merging: at every step recompute, for every cluster
// pair, the increase in total within-cluster sum of squares from raw points,
// and merge the smallest (ties: smallest min-index pair). Also returns the
// partition labels at k clusters, numbered by ascending min index.
struct NaiveWard {
    MergeTrace trace;
    std::vector<int> labels_at_k;
};

inline double sse_of(const std::vector<std::vector<double>>& points, const std::vector<int>& members) {
    const std::size_t dims = points.front().size();
    std::vector<double> centroid(dims, 0.0);
    for (int idx : members)
        for (std::size_t d = 0; d < dims; ++d) centroid[d] += points[static_cast<size_t>(idx)][d];
    for (double& c : centroid) c /= static_cast<double>(members.size());
    double sse = 0.0;
    for (int idx : members)
        for (std::size_t d = 0; d < dims; ++d) {
            const double diff = points[static_cast<size_t>(idx)][d] - centroid[d];
            sse += diff * diff;
        }
    return sse;
}

inline NaiveWard naive_ward(const std::vector<std::vector<double>>& points, int k) {
    const int n = static_cast<int>(points.size());
    std::vector<std::vector<int>> clusters(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) clusters[static_cast<size_t>(i)] = {i};

    NaiveWard result;
    auto snapshot = [&](const std::vector<std::vector<int>>& cs) {
        std::vector<std::pair<int, std::size_t>> order;
        for (std::size_t i = 0; i < cs.size(); ++i) order.emplace_back(cs[i].front(), i);
        std::sort(order.begin(), order.end());
        std::vector<int> labels(static_cast<size_t>(n), 0);
        for (std::size_t rank = 0; rank < order.size(); ++rank)
            for (int idx : cs[order[rank].second])
                labels[static_cast<size_t>(idx)] = static_cast<int>(rank) + 1;
        return labels;
    };

    if (static_cast<int>(clusters.size()) == k) result.labels_at_k = snapshot(clusters);
    while (clusters.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        long best_a = 0, best_b = 0;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                std::vector<int> merged = clusters[i];
                merged.insert(merged.end(), clusters[j].begin(), clusters[j].end());
                const double delta =
                    sse_of(points, merged) - sse_of(points, clusters[i]) - sse_of(points, clusters[j]);
                long a = *std::min_element(clusters[i].begin(), clusters[i].end());
                long b = *std::min_element(clusters[j].begin(), clusters[j].end());
                if (a > b) std::swap(a, b);
                if (delta < best || (delta == best && (a < best_a || (a == best_a && b < best_b)))) {
                    best = delta;
                    bi = i;
                    bj = j;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        std::vector<int> left = clusters[bi];
        std::vector<int> right = clusters[bj];
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        if (right.front() < left.front()) std::swap(left, right);
        result.trace.emplace_back(left, right);

        std::vector<int> merged = clusters[bi];
        merged.insert(merged.end(), clusters[bj].begin(), clusters[bj].end());
        std::sort(merged.begin(), merged.end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
        clusters[bi] = std::move(merged);
        if (static_cast<int>(clusters.size()) == k) result.labels_at_k = snapshot(clusters);
    }
    return result;
}

}  // namespace oracle
