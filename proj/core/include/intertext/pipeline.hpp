#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "intertext/report.hpp"

namespace intertext {

struct RunConfig {
    std::filesystem::path ot_path;
    std::filesystem::path nt_path;
    std::filesystem::path out_dir;
    int n = 5;
    int k_ot = 3;
    int k_nt = 2;
    LogOffsetMode log_offset = LogOffsetMode::Value;
    MergeRule merge_rule = MergeRule::Diagonal;
    int workers = 0;  // 0 = available parallelism
};

namespace pipeline {

// Stage artifacts inside out_dir. The quotation CSV and the report files are
// public products; corpus container and *_stats.json are documented
// intermediates that let the subcommands compose.
inline constexpr const char* kCorpusFile = "corpus.itc";
inline constexpr const char* kQuotationsFile = "quotations.csv";
inline constexpr const char* kDetectStatsFile = "detect_stats.json";
inline constexpr const char* kAnalysisStatsFile = "analysis_stats.json";

// Parses/validates the two XML inputs and writes out_dir/corpus.itc. Inputs
// are validated before the output directory is created.
void ingest_stage(const RunConfig& config);

// Reads corpus.itc, finds and merges matches, writes quotations.csv and
// detect_stats.json.
void detect_stage(const RunConfig& config);

// Reads corpus.itc + quotations.csv, writes matrices, cluster memberships,
// dendrograms, PCA coordinates and analysis_stats.json. With zero quotations
// the analysis files are skipped and the stats file records why.
void analyze_stage(const RunConfig& config);

// Reads every upstream artifact, recomputes the analysis deterministically
// and emits the full fixed-name report set (see emit_report) incl. SVG plots
// and manifest.json.
void report_stage(const RunConfig& config);

// Re-renders the SVG files from the emitted CSVs + manifest.
void plot_stage(const std::filesystem::path& report_dir);

// ingest -> detect -> analyze -> report. Byte-identical to running the four
// subcommands in sequence with the same configuration.
void run_pipeline(const RunConfig& config);

int effective_workers(int configured);

}  // namespace pipeline

std::string log_offset_name(LogOffsetMode mode);
LogOffsetMode log_offset_from_name(const std::string& name);
std::string merge_rule_name(MergeRule rule);
MergeRule merge_rule_from_name(const std::string& name);

}  // namespace intertext
