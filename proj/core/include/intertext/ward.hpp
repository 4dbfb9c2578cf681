#pragma once

#include <vector>

#include "intertext/canon.hpp"

namespace intertext {

// One agglomeration step. Cluster ids follow the usual linkage convention:
// 0..N-1 are the input points, N + step is the cluster created at `step`.
struct DendrogramMerge {
    int left = 0;   // id of the member cluster with the smaller minimum point index
    int right = 0;
    double height = 0.0;  // sqrt of the Ward squared-distance at merge time
    int size = 0;         // points in the merged cluster
};

struct WardResult {
    std::vector<int> labels;  // per input point, 1..k, numbered by ascending min point index
    std::vector<DendrogramMerge> merges;  // all N-1 steps
};

// Agglomerative clustering with Ward's minimum-variance criterion via the
// Lance-Williams update on squared Euclidean distances. Deterministic: ties
// on merge cost break toward the smallest (min index of A, min index of B)
// pair. The dendrogram always runs to a single cluster; `labels` snapshot the
// partition at k clusters.
WardResult ward_cluster(const std::vector<std::vector<double>>& points, int k);

// Per-testament book -> cluster label mapping.
struct ClusterAssignment {
    Testament testament = Testament::OT;
    int k = 0;
    std::vector<int> labels;  // indexed by canon index, values 1..k

    int label(BookId id) const { return labels[static_cast<std::size_t>(id.canon_index)]; }
    std::string cluster_name(int label) const {
        return std::string(testament_name(testament)) + std::to_string(label);
    }
};

}  // namespace intertext
