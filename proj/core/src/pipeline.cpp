#include "intertext/pipeline.hpp"

#include <iostream>
#include <thread>

#include <json.hpp>

#include "intertext/csv.hpp"
#include "intertext/error.hpp"
#include "intertext/ingest.hpp"
#include "intertext/sha256.hpp"

namespace intertext {

std::string log_offset_name(LogOffsetMode mode) {
    return mode == LogOffsetMode::Value ? "value" : "literal";
}

LogOffsetMode log_offset_from_name(const std::string& name) {
    if (name == "value") return LogOffsetMode::Value;
    if (name == "literal") return LogOffsetMode::Literal;
    throw_config("unknown log-offset mode '" + name + "' (expected value|literal)");
}

std::string merge_rule_name(MergeRule rule) {
    return rule == MergeRule::Diagonal ? "diagonal" : "overlap";
}

MergeRule merge_rule_from_name(const std::string& name) {
    if (name == "diagonal") return MergeRule::Diagonal;
    if (name == "overlap") return MergeRule::Overlap;
    throw_config("unknown merge rule '" + name + "' (expected diagonal|overlap)");
}

namespace pipeline {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void validate_common(const RunConfig& config) {
    if (config.out_dir.empty()) throw_config("output directory not set");
    if (config.n < 2) throw_config("--n must be >= 2");
    if (config.k_ot < 1 || config.k_ot > kOtBookCount)
        throw_config("--k-ot must be in [1, " + std::to_string(kOtBookCount) + "]");
    if (config.k_nt < 1 || config.k_nt > kNtBookCount)
        throw_config("--k-nt must be in [1, " + std::to_string(kNtBookCount) + "]");
    if (config.workers < 0) throw_config("--workers must be >= 0");
}

fs::path artifact(const RunConfig& config, const char* name) { return config.out_dir / name; }

CorpusContainer load_corpus(const RunConfig& config) {
    const fs::path path = artifact(config, kCorpusFile);
    if (!fs::exists(path))
        throw_config("corpus container not found: " + path.string() + " (run `ingest` first)");
    return read_corpus_file(path);
}

std::vector<Quotation> load_quotations(const RunConfig& config) {
    const fs::path path = artifact(config, kQuotationsFile);
    if (!fs::exists(path))
        throw_config("quotation file not found: " + path.string() + " (run `detect` first)");
    return quotations_from_csv(read_file(path));
}

struct AnalysisResult {
    Matrix proportion;
    std::optional<LogMatrix> log;
    std::optional<ClusterAssignment> ot_clusters;
    std::optional<ClusterAssignment> nt_clusters;
    std::optional<PcaProjection> pca_ot;
    std::optional<PcaProjection> pca_nt;
    std::vector<DendrogramMerge> dendrogram_ot;
    std::vector<DendrogramMerge> dendrogram_nt;
};

// One deterministic analysis pass shared by `analyze` and `report`.
AnalysisResult compute_analysis(const CorpusContainer& corpus,
                                const std::vector<Quotation>& quotes, int k_ot, int k_nt,
                                LogOffsetMode mode) {
    AnalysisResult result;
    result.proportion = proportion_matrix(quotes, corpus.ot, corpus.nt);
    if (quotes.empty()) return result;  // degenerate: matrices all-zero, clustering skipped

    result.log = log_transform(result.proportion, mode);
    const Matrix& logm = result.log->m;

    // NT books are rows (points in 39-D), OT books are columns (points in 27-D)
    std::vector<std::vector<double>> nt_points(static_cast<std::size_t>(kNtBookCount));
    for (int r = 0; r < kNtBookCount; ++r) nt_points[static_cast<std::size_t>(r)] = logm.row(static_cast<std::size_t>(r));
    std::vector<std::vector<double>> ot_points(static_cast<std::size_t>(kOtBookCount));
    for (int c = 0; c < kOtBookCount; ++c) ot_points[static_cast<std::size_t>(c)] = logm.col(static_cast<std::size_t>(c));

    WardResult ot_ward = ward_cluster(ot_points, k_ot);
    WardResult nt_ward = ward_cluster(nt_points, k_nt);
    result.ot_clusters = ClusterAssignment{Testament::OT, k_ot, std::move(ot_ward.labels)};
    result.nt_clusters = ClusterAssignment{Testament::NT, k_nt, std::move(nt_ward.labels)};
    result.dendrogram_ot = std::move(ot_ward.merges);
    result.dendrogram_nt = std::move(nt_ward.merges);

    result.pca_ot = pca_project(ot_points, 2);
    result.pca_nt = pca_project(nt_points, 2);
    return result;
}

ordered_json read_json(const fs::path& path) {
    const std::string text = read_file(path);
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw_parse("bad JSON in " + path.string());
    return j;
}

}  // namespace

int effective_workers(int configured) {
    if (configured > 0) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void ingest_stage(const RunConfig& config) {
    validate_common(config);
    if (config.ot_path.empty() || config.nt_path.empty())
        throw_config("both --ot and --nt input files are required");
    // inputs validated before any output is created
    for (const fs::path* path : {&config.ot_path, &config.nt_path})
        if (!fs::exists(*path) || fs::is_directory(*path))
            throw_config("input file not found: " + path->string());

    const std::string ot_xml = read_file(config.ot_path);
    const std::string nt_xml = read_file(config.nt_path);

    IngestResult result = ingest_documents(ot_xml, nt_xml);

    for (const auto* stats : {&result.ot_stats, &result.nt_stats}) {
        for (const ExcludedBook& e : stats->excluded)
            std::cerr << "intertext: warning: book '" << e.name << "' (" << e.word_count
                      << " words) is outside the canon and was excluded\n";
        for (const DroppedToken& d : stats->dropped)
            std::cerr << "intertext: warning: dropped token with empty normalized surface at "
                      << canon::book_name(d.book) << " " << d.chapter << ":" << d.verse << "\n";
    }

    CorpusContainer container{std::move(result.ot), std::move(result.nt), std::move(result.table),
                              {}, std::move(result.ot_stats.excluded),
                              std::move(result.nt_stats.excluded),
                              std::move(result.ot_stats.dropped),
                              std::move(result.nt_stats.dropped)};
    container.meta["ot_source"] = config.ot_path.string();
    container.meta["ot_sha256"] = sha256_hex(ot_xml);
    container.meta["nt_source"] = config.nt_path.string();
    container.meta["nt_sha256"] = sha256_hex(nt_xml);

    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec || !fs::is_directory(config.out_dir))
        throw_io("cannot create output directory: " + config.out_dir.string());
    write_corpus_file(container, artifact(config, kCorpusFile));
}

void detect_stage(const RunConfig& config) {
    validate_common(config);
    const CorpusContainer corpus = load_corpus(config);

    const NGramIndex index = build_index(corpus.ot, config.n);
    const std::vector<RawMatch> raw =
        find_matches(index, corpus.nt, effective_workers(config.workers));
    const std::vector<Quotation> quotes = merge_matches(raw, config.merge_rule);
    const MergeRule alt_rule =
        config.merge_rule == MergeRule::Diagonal ? MergeRule::Overlap : MergeRule::Diagonal;
    // the alternate-rule count is a comparison diagnostic; its closure is
    // quadratic per book pair, so cap the input size
    std::optional<std::uint64_t> alt_count;
    if (raw.size() <= 200000) alt_count = merge_matches(raw, alt_rule).size();

    write_file(artifact(config, kQuotationsFile),
               quotations_to_csv(quotes, corpus.ot, corpus.nt));

    ordered_json stats;
    stats["n"] = config.n;
    stats["merge_rule"] = merge_rule_name(config.merge_rule);
    stats["raw_matches"] = raw.size();
    stats["quotations"] = quotes.size();
    const std::string alt_key = "quotations_" + merge_rule_name(alt_rule) + "_rule";
    if (alt_count) stats[alt_key] = *alt_count;
    else stats[alt_key] = "not computed (raw match count over diagnostic cap)";
    write_file(artifact(config, kDetectStatsFile), stats.dump(2) + "\n");
}

void analyze_stage(const RunConfig& config) {
    validate_common(config);
    const CorpusContainer corpus = load_corpus(config);
    const std::vector<Quotation> quotes = load_quotations(config);

    const AnalysisResult analysis =
        compute_analysis(corpus, quotes, config.k_ot, config.k_nt, config.log_offset);

    write_file(artifact(config, "matrix_proportion.csv"), matrix_to_csv(analysis.proportion));

    ordered_json stats;
    stats["k_ot"] = config.k_ot;
    stats["k_nt"] = config.k_nt;
    stats["log_offset"] = log_offset_name(config.log_offset);
    if (analysis.log) {
        write_file(artifact(config, "matrix_log.csv"), matrix_to_csv(analysis.log->m));
        write_file(artifact(config, "clusters_ot.csv"), clusters_to_csv(*analysis.ot_clusters));
        write_file(artifact(config, "clusters_nt.csv"), clusters_to_csv(*analysis.nt_clusters));
        write_file(artifact(config, "dendrogram_ot.csv"),
                   dendrogram_to_csv(analysis.dendrogram_ot));
        write_file(artifact(config, "dendrogram_nt.csv"),
                   dendrogram_to_csv(analysis.dendrogram_nt));
        write_file(artifact(config, "pca_ot.csv"), pca_to_csv(*analysis.pca_ot, Testament::OT));
        write_file(artifact(config, "pca_nt.csv"), pca_to_csv(*analysis.pca_nt, Testament::NT));
        stats["skipped"] = false;
        stats["log_epsilon"] = csv::format_number(analysis.log->epsilon);
        stats["explained_variance_ot"] =
            csv::format_number(analysis.pca_ot->explained_variance_fraction());
        stats["explained_variance_nt"] =
            csv::format_number(analysis.pca_nt->explained_variance_fraction());
    } else {
        stats["skipped"] = true;
        stats["reason"] = "no quotations (degenerate input)";
    }
    write_file(artifact(config, kAnalysisStatsFile), stats.dump(2) + "\n");
}

void report_stage(const RunConfig& config) {
    validate_common(config);
    const CorpusContainer corpus = load_corpus(config);
    const std::vector<Quotation> quotes = load_quotations(config);

    // effective detect/analyze configuration comes from the stage sidecars
    RunConfig effective = config;
    std::uint64_t raw_matches = 0;
    std::uint64_t overlap_quotes = 0;
    std::string merge_rule = merge_rule_name(config.merge_rule);
    {
        const fs::path path = artifact(config, kDetectStatsFile);
        if (fs::exists(path)) {
            const ordered_json j = read_json(path);
            effective.n = j.value("n", config.n);
            merge_rule = j.value("merge_rule", merge_rule);
            raw_matches = j.value("raw_matches", 0u);
            // the alternate-rule count key depends on the rule that ran
            for (const char* key :
                 {"quotations_overlap_rule", "quotations_diagonal_rule"})
                if (j.contains(key) && j[key].is_number())
                    overlap_quotes = j[key].get<std::uint64_t>();
        }
    }
    {
        const fs::path path = artifact(config, kAnalysisStatsFile);
        if (fs::exists(path)) {
            const ordered_json j = read_json(path);
            effective.k_ot = j.value("k_ot", config.k_ot);
            effective.k_nt = j.value("k_nt", config.k_nt);
            effective.log_offset =
                log_offset_from_name(j.value("log_offset", log_offset_name(config.log_offset)));
        }
    }

    const AnalysisResult analysis = compute_analysis(corpus, quotes, effective.k_ot,
                                                     effective.k_nt, effective.log_offset);

    ReportArtifacts artifacts;
    artifacts.corpus = &corpus;
    artifacts.quotes = &quotes;
    artifacts.proportion = analysis.proportion;
    artifacts.log = analysis.log;
    artifacts.ot_clusters = analysis.ot_clusters;
    artifacts.nt_clusters = analysis.nt_clusters;
    artifacts.pca_ot = analysis.pca_ot;
    artifacts.pca_nt = analysis.pca_nt;
    artifacts.dendrogram_ot = analysis.dendrogram_ot;
    artifacts.dendrogram_nt = analysis.dendrogram_nt;
    artifacts.raw_match_count = raw_matches;
    artifacts.quotation_count_overlap_rule = overlap_quotes;
    if (analysis.log) {
        const LogOffsetMode alt = effective.log_offset == LogOffsetMode::Value
                                      ? LogOffsetMode::Literal
                                      : LogOffsetMode::Value;
        artifacts.alternate_log_offset_mode = log_offset_name(alt);
        try {
            log_transform(analysis.proportion, alt);
            artifacts.alternate_log_offset_result = "ok";
        } catch (const Error& e) {
            artifacts.alternate_log_offset_result = std::string("fails: ") + e.what();
        }
    }
    artifacts.config["n"] = std::to_string(effective.n);
    artifacts.config["merge_rule"] = merge_rule;
    artifacts.config["k_ot"] = std::to_string(effective.k_ot);
    artifacts.config["k_nt"] = std::to_string(effective.k_nt);
    artifacts.config["log_offset"] = log_offset_name(effective.log_offset);

    emit_report(artifacts, config.out_dir);
}

void plot_stage(const fs::path& report_dir) {
    if (!fs::is_directory(report_dir))
        throw_config("report directory not found: " + report_dir.string());

    const auto hist = histogram_from_csv(read_file(report_dir / "length_histogram.csv"));
    write_file(report_dir / "histogram.svg", render_histogram_svg(hist));

    const fs::path manifest_path = report_dir / "manifest.json";
    ordered_json manifest;
    if (fs::exists(manifest_path)) manifest = read_json(manifest_path);

    auto explained = [&](const char* key) {
        if (manifest.contains("analysis") && manifest["analysis"].contains(key))
            return std::stod(manifest["analysis"][key].get<std::string>());
        return 0.0;
    };

    struct View {
        Testament t;
        const char* csv;
        const char* clusters;
        const char* svg;
        const char* variance_key;
    };
    const View views[] = {
        {Testament::OT, "pca_ot.csv", "clusters_ot.csv", "pca_ot.svg", "explained_variance_ot"},
        {Testament::NT, "pca_nt.csv", "clusters_nt.csv", "pca_nt.svg", "explained_variance_nt"},
    };
    for (const View& view : views) {
        const fs::path coords_path = report_dir / view.csv;
        if (!fs::exists(coords_path)) continue;  // analysis was skipped
        const Matrix coords = pca_coords_from_csv(read_file(coords_path), view.t);
        std::optional<ClusterAssignment> clusters;
        const fs::path clusters_path = report_dir / view.clusters;
        if (fs::exists(clusters_path))
            clusters = clusters_from_csv(read_file(clusters_path));
        write_file(report_dir / view.svg,
                   render_pca_svg(coords, explained(view.variance_key), view.t, clusters));
    }
}

void run_pipeline(const RunConfig& config) {
    ingest_stage(config);
    detect_stage(config);
    analyze_stage(config);
    report_stage(config);
}

}  // namespace pipeline
}  // namespace intertext
