#include "intertext/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace intertext::svg {
namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 540;
constexpr int kMargin = 48;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};
constexpr int kPaletteSize = 6;

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
}

std::string escape_text(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " + std::to_string(kWidth) +
           " " + std::to_string(kHeight) + "\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string title_text(const std::string& title) {
    return "<text x=\"" + std::to_string(kWidth / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           escape_text(title) + "</text>\n";
}

}  // namespace

std::string scatter_plot(const std::vector<ScatterPoint>& points, const std::string& title) {
    std::string out = header() + title_text(title);
    if (points.empty()) {
        out += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" + std::to_string(kHeight / 2) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">no data</text>\n";
        return out + "</svg>\n";
    }

    double min_x = points[0].x, max_x = points[0].x;
    double min_y = points[0].y, max_y = points[0].y;
    for (const ScatterPoint& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double span_x = (max_x - min_x) > 0 ? (max_x - min_x) : 1.0;
    const double span_y = (max_y - min_y) > 0 ? (max_y - min_y) : 1.0;

    auto px = [&](double x) {
        return kMargin + (x - min_x) / span_x * (kWidth - 2.0 * kMargin);
    };
    auto py = [&](double y) {
        // SVG y grows downward
        return kHeight - kMargin - (y - min_y) / span_y * (kHeight - 2.0 * kMargin - 24.0);
    };

    for (const ScatterPoint& p : points) {
        const char* color = kPalette[(p.cluster - 1) % kPaletteSize];
        out += "<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) +
               "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
        out += "<text x=\"" + num(px(p.x) + 5.0) + "\" y=\"" + num(py(p.y) - 4.0) +
               "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#333\">" +
               escape_text(p.label) + "</text>\n";
    }
    return out + "</svg>\n";
}

std::string bar_chart(const std::map<std::uint32_t, std::uint64_t>& bins, const std::string& title,
                      const std::string& x_label) {
    std::string out = header() + title_text(title);
    if (bins.empty()) {
        out += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" + std::to_string(kHeight / 2) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">no data</text>\n";
        return out + "</svg>\n";
    }

    const std::uint32_t lo = bins.begin()->first;
    const std::uint32_t hi = bins.rbegin()->first;
    const std::uint32_t bin_count = hi - lo + 1;
    std::uint64_t max_count = 1;
    for (const auto& [len, count] : bins) max_count = std::max(max_count, count);

    const double plot_w = kWidth - 2.0 * kMargin;
    const double plot_h = kHeight - 2.0 * kMargin - 24.0;
    const double bar_w = plot_w / bin_count;

    for (std::uint32_t len = lo; len <= hi; ++len) {
        auto it = bins.find(len);
        const std::uint64_t count = it == bins.end() ? 0 : it->second;
        const double h = plot_h * static_cast<double>(count) / static_cast<double>(max_count);
        const double x = kMargin + (len - lo) * bar_w;
        const double y = kHeight - kMargin - h;
        if (count > 0) {
            out += "<rect x=\"" + num(x + 1.0) + "\" y=\"" + num(y) + "\" width=\"" +
                   num(bar_w - 2.0) + "\" height=\"" + num(h) + "\" fill=\"#1f77b4\"/>\n";
            out += "<text x=\"" + num(x + bar_w / 2.0) + "\" y=\"" + num(y - 4.0) +
                   "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\" fill=\"#333\">" +
                   std::to_string(count) + "</text>\n";
        }
        // x tick: label sparse ranges fully, dense ranges every 5th
        if (bin_count <= 30 || len % 5 == 0) {
            out += "<text x=\"" + num(x + bar_w / 2.0) + "\" y=\"" +
                   std::to_string(kHeight - kMargin + 14) +
                   "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
                   std::to_string(len) + "</text>\n";
        }
    }
    out += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" + std::to_string(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_text(x_label) + "</text>\n";
    return out + "</svg>\n";
}

}  // namespace intertext::svg
