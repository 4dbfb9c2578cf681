#include "intertext/ward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intertext/error.hpp"

namespace intertext {

WardResult ward_cluster(const std::vector<std::vector<double>>& points, int k) {
    const int n = static_cast<int>(points.size());
    if (n == 0) throw_config("ward clustering needs at least one point");
    if (k < 1 || k > n)
        throw_config("cluster count k=" + std::to_string(k) + " outside [1, " + std::to_string(n) +
                     "]");
    const std::size_t dims = points.front().size();
    for (const auto& p : points)
        if (p.size() != dims) throw_config("points must share one dimensionality");

    // Squared Euclidean distances; Lance-Williams keeps this array current.
    std::vector<double> d2(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    auto d2_at = [&](int i, int j) -> double& {
        return d2[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(j)];
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t t = 0; t < dims; ++t) {
                const double diff = points[static_cast<std::size_t>(i)][t] -
                                    points[static_cast<std::size_t>(j)][t];
                sum += diff * diff;
            }
            d2_at(i, j) = sum;
            d2_at(j, i) = sum;
        }
    }

    std::vector<bool> active(static_cast<std::size_t>(n), true);
    std::vector<int> size(static_cast<std::size_t>(n), 1);
    std::vector<int> min_index(static_cast<std::size_t>(n));   // smallest point index in cluster
    std::vector<int> cluster_id(static_cast<std::size_t>(n));  // dendrogram id of slot's cluster
    std::vector<int> slot_of_point(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        min_index[static_cast<std::size_t>(i)] = i;
        cluster_id[static_cast<std::size_t>(i)] = i;
        slot_of_point[static_cast<std::size_t>(i)] = i;
    }

    WardResult result;
    result.merges.reserve(static_cast<std::size_t>(n - 1));
    std::vector<int> labels_at_k;

    auto snapshot_labels = [&]() {
        // label clusters 1..k by ascending smallest point index
        std::vector<std::pair<int, int>> order;  // (min_index, slot)
        for (int s = 0; s < n; ++s)
            if (active[static_cast<std::size_t>(s)])
                order.emplace_back(min_index[static_cast<std::size_t>(s)], s);
        std::sort(order.begin(), order.end());
        std::vector<int> slot_label(static_cast<std::size_t>(n), 0);
        for (std::size_t i = 0; i < order.size(); ++i)
            slot_label[static_cast<std::size_t>(order[i].second)] = static_cast<int>(i) + 1;
        std::vector<int> labels(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
            labels[static_cast<std::size_t>(p)] =
                slot_label[static_cast<std::size_t>(slot_of_point[static_cast<std::size_t>(p)])];
        return labels;
    };

    int active_count = n;
    if (active_count == k) labels_at_k = snapshot_labels();

    for (int step = 0; active_count > 1; ++step) {
        // pick the active pair with minimal squared distance; ties break on
        // (min index of A, min index of B), A being the smaller-min side
        double best = std::numeric_limits<double>::infinity();
        int best_i = -1, best_j = -1;
        long best_a = 0, best_b = 0;
        for (int i = 0; i < n; ++i) {
            if (!active[static_cast<std::size_t>(i)]) continue;
            for (int j = i + 1; j < n; ++j) {
                if (!active[static_cast<std::size_t>(j)]) continue;
                const double dist = d2_at(i, j);
                long a = min_index[static_cast<std::size_t>(i)];
                long b = min_index[static_cast<std::size_t>(j)];
                if (a > b) std::swap(a, b);
                if (dist < best ||
                    (dist == best && (a < best_a || (a == best_a && b < best_b)))) {
                    best = dist;
                    best_i = i;
                    best_j = j;
                    best_a = a;
                    best_b = b;
                }
            }
        }

        // slot `keep` absorbs slot `drop`
        const int keep = best_i;
        const int drop = best_j;
        const int ni = size[static_cast<std::size_t>(keep)];
        const int nj = size[static_cast<std::size_t>(drop)];
        const double dij = d2_at(keep, drop);
        for (int t = 0; t < n; ++t) {
            if (!active[static_cast<std::size_t>(t)] || t == keep || t == drop) continue;
            const int nk = size[static_cast<std::size_t>(t)];
            const double updated =
                ((static_cast<double>(ni + nk) * d2_at(keep, t)) +
                 (static_cast<double>(nj + nk) * d2_at(drop, t)) - static_cast<double>(nk) * dij) /
                static_cast<double>(ni + nj + nk);
            d2_at(keep, t) = updated;
            d2_at(t, keep) = updated;
        }

        DendrogramMerge merge;
        const int id_keep = cluster_id[static_cast<std::size_t>(keep)];
        const int id_drop = cluster_id[static_cast<std::size_t>(drop)];
        const bool keep_first = min_index[static_cast<std::size_t>(keep)] <
                                min_index[static_cast<std::size_t>(drop)];
        merge.left = keep_first ? id_keep : id_drop;
        merge.right = keep_first ? id_drop : id_keep;
        merge.height = std::sqrt(dij);
        merge.size = ni + nj;
        result.merges.push_back(merge);

        active[static_cast<std::size_t>(drop)] = false;
        size[static_cast<std::size_t>(keep)] = ni + nj;
        min_index[static_cast<std::size_t>(keep)] =
            std::min(min_index[static_cast<std::size_t>(keep)],
                     min_index[static_cast<std::size_t>(drop)]);
        cluster_id[static_cast<std::size_t>(keep)] = n + step;
        for (int p = 0; p < n; ++p)
            if (slot_of_point[static_cast<std::size_t>(p)] == drop)
                slot_of_point[static_cast<std::size_t>(p)] = keep;

        --active_count;
        if (active_count == k) labels_at_k = snapshot_labels();
    }

    result.labels = std::move(labels_at_k);
    return result;
}

}  // namespace intertext
