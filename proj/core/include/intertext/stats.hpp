#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "intertext/detect.hpp"
#include "intertext/matrix.hpp"
#include "intertext/ward.hpp"

namespace intertext {

struct ClusterStats {
    std::string name;                      // "OT1", "NT2", ...
    int book_count = 0;
    std::uint64_t word_count = 0;
    std::uint64_t reference_words = 0;     // distinct covered positions on this side
    double mean_reference_length = 0.0;    // mean quotation length over touching quotations
    std::uint64_t reference_count = 0;     // quotations touching the cluster
    double quotation_density = 0.0;        // reference_words / word_count
};

// One row per OT cluster then per NT cluster, labels ascending.
std::vector<ClusterStats> cluster_stats(const std::vector<Quotation>& quotes, const Corpus& ot,
                                        const Corpus& nt, const ClusterAssignment& ot_assign,
                                        const ClusterAssignment& nt_assign);

// counts[nt_cluster-1][ot_cluster-1] = quotations from that NT cluster into
// that OT cluster. Row sums give per-NT-cluster reference counts, column sums
// per-OT-cluster counts, the grand total the quotation count.
struct FlowTable {
    int k_nt = 0;
    int k_ot = 0;
    std::vector<std::uint64_t> counts;  // row-major k_nt x k_ot

    std::uint64_t at(int nt_cluster, int ot_cluster) const {
        return counts[static_cast<std::size_t>(nt_cluster - 1) * static_cast<std::size_t>(k_ot) +
                      static_cast<std::size_t>(ot_cluster - 1)];
    }
    std::uint64_t row_sum(int nt_cluster) const;
    std::uint64_t col_sum(int ot_cluster) const;
    std::uint64_t total() const;
};

FlowTable flow_table(const std::vector<Quotation>& quotes, const ClusterAssignment& ot_assign,
                     const ClusterAssignment& nt_assign);

}  // namespace intertext
