#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace intertext::svg {

struct ScatterPoint {
    double x = 0.0;
    double y = 0.0;
    std::string label;
    int cluster = 1;  // 1-based; selects the point color
};

// Axis-less labeled scatter plot (PCA views: only relative positions carry
// meaning). Deterministic output for identical input.
std::string scatter_plot(const std::vector<ScatterPoint>& points, const std::string& title);

// Vertical bar chart over integer bins (quotation length histogram).
std::string bar_chart(const std::map<std::uint32_t, std::uint64_t>& bins, const std::string& title,
                      const std::string& x_label);

}  // namespace intertext::svg
