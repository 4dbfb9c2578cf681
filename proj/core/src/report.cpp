#include "intertext/report.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

#include <json.hpp>

#include "intertext/csv.hpp"
#include "intertext/error.hpp"
#include "intertext/svg.hpp"

namespace intertext {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string ref_of(const Corpus& corpus, BookId book, std::uint32_t offset) {
    const Token& tok = corpus.book(book).tokens.at(offset);
    return std::to_string(tok.chapter) + ":" + std::to_string(tok.verse);
}

std::uint64_t parse_u64_field(const std::string& s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw_parse("bad integer in CSV field: '" + s + "'");
    return v;
}

double parse_double_field(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw_parse("bad number in CSV field: '" + s + "'");
        return v;
    } catch (const std::exception&) {
        throw_parse("bad number in CSV field: '" + s + "'");
    }
}

BookId book_from_name_or_throw(const std::string& name, Testament expected) {
    auto id = canon::from_name(name);
    if (!id || id->testament != expected)
        throw_parse("unknown " + std::string(testament_name(expected)) + " book name in CSV: '" +
                    name + "'");
    return *id;
}

}  // namespace

std::string quotations_to_csv(const std::vector<Quotation>& quotes, const Corpus& ot,
                              const Corpus& nt) {
    std::vector<Quotation> sorted = quotes;
    std::sort(sorted.begin(), sorted.end(), [](const Quotation& a, const Quotation& b) {
        return std::tie(a.nt_book.canon_index, a.nt_start, a.ot_book.canon_index, a.ot_start) <
               std::tie(b.nt_book.canon_index, b.nt_start, b.ot_book.canon_index, b.ot_start);
    });
    std::string out = "ot_book,ot_start,ot_ref,nt_book,nt_start,nt_ref,length\n";
    for (const Quotation& q : sorted) {
        out += csv::join_row({canon::book_name(q.ot_book), std::to_string(q.ot_start),
                              ref_of(ot, q.ot_book, q.ot_start), canon::book_name(q.nt_book),
                              std::to_string(q.nt_start), ref_of(nt, q.nt_book, q.nt_start),
                              std::to_string(q.length)});
    }
    return out;
}

std::vector<Quotation> quotations_from_csv(std::string_view text) {
    const auto rows = csv::parse(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"ot_book", "ot_start", "ot_ref",
                                                            "nt_book", "nt_start", "nt_ref",
                                                            "length"})
        throw_parse("quotation CSV: missing or bad header row");
    std::vector<Quotation> quotes;
    quotes.reserve(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 7) throw_parse("quotation CSV row " + std::to_string(i + 1) +
                                         ": expected 7 fields");
        Quotation q;
        q.ot_book = book_from_name_or_throw(row[0], Testament::OT);
        q.ot_start = static_cast<std::uint32_t>(parse_u64_field(row[1]));
        q.nt_book = book_from_name_or_throw(row[3], Testament::NT);
        q.nt_start = static_cast<std::uint32_t>(parse_u64_field(row[4]));
        q.length = static_cast<std::uint32_t>(parse_u64_field(row[6]));
        quotes.push_back(q);
    }
    return quotes;
}

std::string matrix_to_csv(const Matrix& m) {
    if (m.rows != static_cast<std::size_t>(kNtBookCount) ||
        m.cols != static_cast<std::size_t>(kOtBookCount))
        throw_config("matrix CSV expects the 27x39 testament shape");
    std::vector<std::string> header{""};
    for (auto name : canon::book_names(Testament::OT)) header.emplace_back(name);
    std::string out = csv::join_row(header);
    for (int r = 0; r < kNtBookCount; ++r) {
        std::vector<std::string> row{canon::book_name(BookId{Testament::NT, r})};
        for (int c = 0; c < kOtBookCount; ++c)
            row.push_back(csv::format_number(m.at(static_cast<std::size_t>(r),
                                                  static_cast<std::size_t>(c))));
        out += csv::join_row(row);
    }
    return out;
}

Matrix matrix_from_csv(std::string_view text) {
    const auto rows = csv::parse(text);
    if (rows.size() != static_cast<std::size_t>(kNtBookCount) + 1)
        throw_parse("matrix CSV: expected 28 rows");
    const auto ot_names = canon::book_names(Testament::OT);
    if (rows[0].size() != static_cast<std::size_t>(kOtBookCount) + 1 || !rows[0][0].empty())
        throw_parse("matrix CSV: bad header row");
    for (int c = 0; c < kOtBookCount; ++c)
        if (rows[0][static_cast<std::size_t>(c) + 1] != ot_names[static_cast<std::size_t>(c)])
            throw_parse("matrix CSV: header book name mismatch at column " + std::to_string(c));
    Matrix m(static_cast<std::size_t>(kNtBookCount), static_cast<std::size_t>(kOtBookCount));
    for (int r = 0; r < kNtBookCount; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r) + 1];
        if (row.size() != static_cast<std::size_t>(kOtBookCount) + 1)
            throw_parse("matrix CSV: short row " + std::to_string(r + 2));
        if (row[0] != canon::book_name(BookId{Testament::NT, r}))
            throw_parse("matrix CSV: row book name mismatch at row " + std::to_string(r + 2));
        for (int c = 0; c < kOtBookCount; ++c)
            m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                parse_double_field(row[static_cast<std::size_t>(c) + 1]);
    }
    return m;
}

std::string clusters_to_csv(const ClusterAssignment& assign) {
    std::string out = "book,cluster\n";
    for (int b = 0; b < canon::book_count(assign.testament); ++b) {
        const BookId id{assign.testament, b};
        out += csv::join_row({canon::book_name(id), assign.cluster_name(assign.label(id))});
    }
    return out;
}

ClusterAssignment clusters_from_csv(std::string_view text) {
    const auto rows = csv::parse(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"book", "cluster"})
        throw_parse("clusters CSV: missing or bad header row");
    if (rows.size() < 2) throw_parse("clusters CSV: no data rows");

    // testament inferred from the first book name
    auto first = canon::from_name(rows[1][0]);
    if (!first) throw_parse("clusters CSV: unknown book '" + rows[1][0] + "'");
    const Testament t = first->testament;
    const int books = canon::book_count(t);
    if (static_cast<int>(rows.size()) - 1 != books)
        throw_parse("clusters CSV: expected one row per canon book");

    ClusterAssignment assign;
    assign.testament = t;
    assign.labels.assign(static_cast<std::size_t>(books), 0);
    const std::string prefix = testament_name(t);
    int max_label = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 2) throw_parse("clusters CSV: expected 2 fields per row");
        const BookId id = book_from_name_or_throw(rows[i][0], t);
        const std::string& cluster = rows[i][1];
        if (cluster.rfind(prefix, 0) != 0)
            throw_parse("clusters CSV: bad cluster name '" + cluster + "'");
        const int label = static_cast<int>(parse_u64_field(cluster.substr(prefix.size())));
        if (label < 1) throw_parse("clusters CSV: bad cluster label");
        auto& slot = assign.labels[static_cast<std::size_t>(id.canon_index)];
        if (slot != 0) throw_parse("clusters CSV: duplicate book " + rows[i][0]);
        slot = label;
        max_label = std::max(max_label, label);
    }
    assign.k = max_label;
    return assign;
}

std::string dendrogram_to_csv(const std::vector<DendrogramMerge>& merges) {
    std::string out = "step,left,right,height,size\n";
    for (std::size_t i = 0; i < merges.size(); ++i) {
        const DendrogramMerge& m = merges[i];
        out += csv::join_row({std::to_string(i + 1), std::to_string(m.left),
                              std::to_string(m.right), csv::format_number(m.height),
                              std::to_string(m.size)});
    }
    return out;
}

std::string pca_to_csv(const PcaProjection& proj, Testament t) {
    if (proj.coords.rows != static_cast<std::size_t>(canon::book_count(t)) || proj.dims < 2)
        throw_config("pca CSV expects one 2-D point per canon book");
    std::string out = "book,pc1,pc2\n";
    for (int b = 0; b < canon::book_count(t); ++b) {
        out += csv::join_row({canon::book_name(BookId{t, b}),
                              csv::format_number(proj.coords.at(static_cast<std::size_t>(b), 0)),
                              csv::format_number(proj.coords.at(static_cast<std::size_t>(b), 1))});
    }
    return out;
}

std::string cluster_stats_to_csv(const std::vector<ClusterStats>& stats) {
    std::string out =
        "cluster,books,word_count,reference_words,mean_reference_length,reference_count,"
        "quotation_density\n";
    for (const ClusterStats& s : stats) {
        out += csv::join_row({s.name, std::to_string(s.book_count), std::to_string(s.word_count),
                              std::to_string(s.reference_words),
                              csv::format_number(s.mean_reference_length),
                              std::to_string(s.reference_count),
                              csv::format_number(s.quotation_density)});
    }
    return out;
}

std::string flows_to_csv(const FlowTable& flows) {
    std::vector<std::string> header{""};
    for (int c = 1; c <= flows.k_ot; ++c) header.push_back("OT" + std::to_string(c));
    std::string out = csv::join_row(header);
    for (int r = 1; r <= flows.k_nt; ++r) {
        std::vector<std::string> row{"NT" + std::to_string(r)};
        for (int c = 1; c <= flows.k_ot; ++c) row.push_back(std::to_string(flows.at(r, c)));
        out += csv::join_row(row);
    }
    return out;
}

std::string histogram_to_csv(const std::map<std::uint32_t, std::uint64_t>& hist) {
    std::string out = "length,count\n";
    for (const auto& [length, count] : hist)
        out += csv::join_row({std::to_string(length), std::to_string(count)});
    return out;
}

std::map<std::uint32_t, std::uint64_t> histogram_from_csv(std::string_view text) {
    const auto rows = csv::parse(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"length", "count"})
        throw_parse("histogram CSV: missing or bad header row");
    std::map<std::uint32_t, std::uint64_t> hist;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 2) throw_parse("histogram CSV: expected 2 fields per row");
        hist[static_cast<std::uint32_t>(parse_u64_field(rows[i][0]))] = parse_u64_field(rows[i][1]);
    }
    return hist;
}

Matrix pca_coords_from_csv(std::string_view text, Testament t) {
    const auto rows = csv::parse(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"book", "pc1", "pc2"})
        throw_parse("pca CSV: missing or bad header row");
    const int books = canon::book_count(t);
    if (static_cast<int>(rows.size()) - 1 != books)
        throw_parse("pca CSV: expected one row per canon book");
    Matrix coords(static_cast<std::size_t>(books), 2);
    for (int b = 0; b < books; ++b) {
        const auto& row = rows[static_cast<std::size_t>(b) + 1];
        if (row.size() != 3) throw_parse("pca CSV: expected 3 fields per row");
        if (row[0] != canon::book_name(BookId{t, b}))
            throw_parse("pca CSV: book order mismatch at row " + std::to_string(b + 2));
        coords.at(static_cast<std::size_t>(b), 0) = parse_double_field(row[1]);
        coords.at(static_cast<std::size_t>(b), 1) = parse_double_field(row[2]);
    }
    return coords;
}

std::string render_pca_svg(const Matrix& coords, double explained_fraction, Testament t,
                           const std::optional<ClusterAssignment>& clusters) {
    std::vector<svg::ScatterPoint> points;
    const int books = canon::book_count(t);
    points.reserve(static_cast<std::size_t>(books));
    for (int b = 0; b < books; ++b) {
        svg::ScatterPoint p;
        p.x = coords.at(static_cast<std::size_t>(b), 0);
        p.y = coords.at(static_cast<std::size_t>(b), 1);
        p.label = canon::book_name(BookId{t, b});
        p.cluster = clusters ? clusters->label(BookId{t, b}) : 1;
        points.push_back(std::move(p));
    }
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.0f%%", explained_fraction * 100.0);
    const std::string title = std::string(testament_name(t)) +
                              " books, first two principal components (" + pct +
                              " of variance)";
    return svg::scatter_plot(points, title);
}

std::string render_pca_svg(const PcaProjection& proj, Testament t,
                           const std::optional<ClusterAssignment>& clusters) {
    return render_pca_svg(proj.coords, proj.explained_variance_fraction(), t, clusters);
}

std::string render_histogram_svg(const std::map<std::uint32_t, std::uint64_t>& hist) {
    return svg::bar_chart(hist, "Quotation length distribution", "quotation length (words)");
}

std::string manifest_json(const ReportArtifacts& artifacts, const std::vector<std::string>& files) {
    ordered_json m;
    m["tool"] = {{"name", "intertext"}, {"version", "1.0.0"}, {"format", 1}};

    ordered_json config = ordered_json::object();
    for (const auto& [key, value] : artifacts.config) config[key] = value;
    m["config"] = config;

    const auto& meta = artifacts.corpus->meta;
    ordered_json inputs = ordered_json::object();
    for (const char* side : {"ot", "nt"}) {
        ordered_json entry = ordered_json::object();
        auto path_it = meta.find(std::string(side) + "_source");
        auto digest_it = meta.find(std::string(side) + "_sha256");
        if (path_it != meta.end()) entry["path"] = path_it->second;
        if (digest_it != meta.end()) entry["sha256"] = digest_it->second;
        inputs[side] = entry;
    }
    m["inputs"] = inputs;

    ordered_json ingest = ordered_json::object();
    for (const bool is_ot : {true, false}) {
        const Corpus& corpus = is_ot ? artifacts.corpus->ot : artifacts.corpus->nt;
        const auto& excluded = is_ot ? artifacts.corpus->excluded_ot : artifacts.corpus->excluded_nt;
        const auto& dropped = is_ot ? artifacts.corpus->dropped_ot : artifacts.corpus->dropped_nt;
        ordered_json entry;
        entry["tokens"] = corpus.total_word_count();
        entry["dropped"] = dropped.size();
        ordered_json ex = ordered_json::array();
        for (const ExcludedBook& e : excluded)
            ex.push_back({{"name", e.name}, {"words", e.word_count}});
        entry["excluded_books"] = ex;
        ingest[is_ot ? "ot" : "nt"] = entry;
    }
    ingest["custom_keys"] = artifacts.corpus->table.size();
    ingest["normalization"] = "nfc_lowercase_diacritics_preserved";
    m["ingest"] = ingest;

    ordered_json detect;
    detect["raw_matches"] = artifacts.raw_match_count;
    detect["quotations"] = artifacts.quotes->size();
    detect["quotations_overlap_rule"] = artifacts.quotation_count_overlap_rule;
    m["detect"] = detect;

    ordered_json analysis;
    if (artifacts.log) {
        analysis["skipped"] = false;
        analysis["log_epsilon"] = csv::format_number(artifacts.log->epsilon);
        if (artifacts.pca_ot)
            analysis["explained_variance_ot"] =
                csv::format_number(artifacts.pca_ot->explained_variance_fraction());
        if (artifacts.pca_nt)
            analysis["explained_variance_nt"] =
                csv::format_number(artifacts.pca_nt->explained_variance_fraction());
        if (!artifacts.alternate_log_offset_mode.empty())
            analysis["log_offset_" + artifacts.alternate_log_offset_mode + "_mode"] =
                artifacts.alternate_log_offset_result;
    } else {
        analysis["skipped"] = true;
        analysis["reason"] = "no quotations (degenerate input)";
    }
    m["analysis"] = analysis;

    m["outputs"] = files;
    return m.dump(2) + "\n";
}

std::vector<std::string> emit_report(const ReportArtifacts& artifacts,
                                     const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    if (!artifacts.corpus || !artifacts.quotes)
        throw_config("emit_report needs corpus and quotations");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir))
        throw_io("cannot create output directory: " + out_dir.string());

    std::vector<fs::path> written;
    std::vector<std::string> names;
    auto emit = [&](const std::string& name, const std::string& content) {
        const fs::path path = out_dir / name;
        try {
            write_file(path, content);
        } catch (...) {
            // partial outputs are removed on failure
            for (const fs::path& p : written) {
                std::error_code rm;
                fs::remove(p, rm);
            }
            throw;
        }
        written.push_back(path);
        names.push_back(name);
    };

    const Corpus& ot = artifacts.corpus->ot;
    const Corpus& nt = artifacts.corpus->nt;
    const auto& quotes = *artifacts.quotes;

    emit("quotations.csv", quotations_to_csv(quotes, ot, nt));
    emit("matrix_proportion.csv", matrix_to_csv(artifacts.proportion));
    if (artifacts.log) emit("matrix_log.csv", matrix_to_csv(artifacts.log->m));
    if (artifacts.ot_clusters) emit("clusters_ot.csv", clusters_to_csv(*artifacts.ot_clusters));
    if (artifacts.nt_clusters) emit("clusters_nt.csv", clusters_to_csv(*artifacts.nt_clusters));
    if (!artifacts.dendrogram_ot.empty())
        emit("dendrogram_ot.csv", dendrogram_to_csv(artifacts.dendrogram_ot));
    if (!artifacts.dendrogram_nt.empty())
        emit("dendrogram_nt.csv", dendrogram_to_csv(artifacts.dendrogram_nt));
    if (artifacts.pca_ot) emit("pca_ot.csv", pca_to_csv(*artifacts.pca_ot, Testament::OT));
    if (artifacts.pca_nt) emit("pca_nt.csv", pca_to_csv(*artifacts.pca_nt, Testament::NT));

    if (artifacts.ot_clusters && artifacts.nt_clusters) {
        emit("cluster_stats.csv",
             cluster_stats_to_csv(cluster_stats(quotes, ot, nt, *artifacts.ot_clusters,
                                                *artifacts.nt_clusters)));
        emit("flows.csv",
             flows_to_csv(flow_table(quotes, *artifacts.ot_clusters, *artifacts.nt_clusters)));
    }

    const auto hist = length_histogram(quotes);
    emit("length_histogram.csv", histogram_to_csv(hist));
    emit("histogram.svg", render_histogram_svg(hist));
    if (artifacts.pca_ot)
        emit("pca_ot.svg", render_pca_svg(*artifacts.pca_ot, Testament::OT, artifacts.ot_clusters));
    if (artifacts.pca_nt)
        emit("pca_nt.svg", render_pca_svg(*artifacts.pca_nt, Testament::NT, artifacts.nt_clusters));

    // manifest lists every emitted file, itself included
    std::vector<std::string> all_files = names;
    all_files.push_back("manifest.json");
    emit("manifest.json", manifest_json(artifacts, all_files));
    return names;
}

}  // namespace intertext
