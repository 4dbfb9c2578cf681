#include "intertext/stats.hpp"

#include "intertext/error.hpp"

namespace intertext {
namespace {

std::vector<ClusterStats> stats_for_side(const std::vector<Quotation>& quotes,
                                         const Corpus& corpus, const ClusterAssignment& assign) {
    const bool nt_side = corpus.testament() == Testament::NT;
    if (assign.testament != corpus.testament())
        throw_config("cluster assignment testament does not match corpus");
    if (static_cast<int>(assign.labels.size()) != canon::book_count(corpus.testament()))
        throw_config("cluster assignment must cover every canon book");

    const std::vector<std::uint64_t> covered = covered_positions(quotes, corpus);

    std::vector<ClusterStats> rows(static_cast<std::size_t>(assign.k));
    for (int c = 1; c <= assign.k; ++c)
        rows[static_cast<std::size_t>(c - 1)].name = assign.cluster_name(c);

    for (int b = 0; b < canon::book_count(corpus.testament()); ++b) {
        const int label = assign.labels[static_cast<std::size_t>(b)];
        if (label < 1 || label > assign.k) throw_config("cluster label out of range");
        ClusterStats& row = rows[static_cast<std::size_t>(label - 1)];
        row.book_count += 1;
        row.word_count += corpus.book_word_count(BookId{corpus.testament(), b});
        row.reference_words += covered[static_cast<std::size_t>(b)];
    }

    std::vector<std::uint64_t> length_sum(static_cast<std::size_t>(assign.k), 0);
    for (const Quotation& q : quotes) {
        const BookId book = nt_side ? q.nt_book : q.ot_book;
        const int label = assign.label(book);
        ClusterStats& row = rows[static_cast<std::size_t>(label - 1)];
        row.reference_count += 1;
        length_sum[static_cast<std::size_t>(label - 1)] += q.length;
    }

    for (int c = 0; c < assign.k; ++c) {
        ClusterStats& row = rows[static_cast<std::size_t>(c)];
        if (row.reference_count > 0)
            row.mean_reference_length = static_cast<double>(length_sum[static_cast<std::size_t>(c)]) /
                                        static_cast<double>(row.reference_count);
        if (row.word_count > 0)
            row.quotation_density =
                static_cast<double>(row.reference_words) / static_cast<double>(row.word_count);
    }
    return rows;
}

}  // namespace

std::vector<ClusterStats> cluster_stats(const std::vector<Quotation>& quotes, const Corpus& ot,
                                        const Corpus& nt, const ClusterAssignment& ot_assign,
                                        const ClusterAssignment& nt_assign) {
    std::vector<ClusterStats> rows = stats_for_side(quotes, ot, ot_assign);
    std::vector<ClusterStats> nt_rows = stats_for_side(quotes, nt, nt_assign);
    rows.insert(rows.end(), nt_rows.begin(), nt_rows.end());
    return rows;
}

std::uint64_t FlowTable::row_sum(int nt_cluster) const {
    std::uint64_t sum = 0;
    for (int c = 1; c <= k_ot; ++c) sum += at(nt_cluster, c);
    return sum;
}

std::uint64_t FlowTable::col_sum(int ot_cluster) const {
    std::uint64_t sum = 0;
    for (int r = 1; r <= k_nt; ++r) sum += at(r, ot_cluster);
    return sum;
}

std::uint64_t FlowTable::total() const {
    std::uint64_t sum = 0;
    for (std::uint64_t c : counts) sum += c;
    return sum;
}

FlowTable flow_table(const std::vector<Quotation>& quotes, const ClusterAssignment& ot_assign,
                     const ClusterAssignment& nt_assign) {
    if (ot_assign.testament != Testament::OT || nt_assign.testament != Testament::NT)
        throw_config("flow table needs one OT and one NT assignment");
    FlowTable table;
    table.k_nt = nt_assign.k;
    table.k_ot = ot_assign.k;
    table.counts.assign(static_cast<std::size_t>(table.k_nt) * static_cast<std::size_t>(table.k_ot),
                        0);
    for (const Quotation& q : quotes) {
        const int nt_label = nt_assign.label(q.nt_book);
        const int ot_label = ot_assign.label(q.ot_book);
        ++table.counts[static_cast<std::size_t>(nt_label - 1) * static_cast<std::size_t>(table.k_ot) +
                       static_cast<std::size_t>(ot_label - 1)];
    }
    return table;
}

}  // namespace intertext
