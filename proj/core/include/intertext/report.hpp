#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "intertext/corpus_io.hpp"
#include "intertext/detect.hpp"
#include "intertext/matrix.hpp"
#include "intertext/pca.hpp"
#include "intertext/stats.hpp"
#include "intertext/ward.hpp"

namespace intertext {

// --- CSV table serializers (all deterministic, LF line endings) ---

// ot_book,ot_start,ot_ref,nt_book,nt_start,nt_ref,length
// sorted by (nt canon index, nt_start, ot canon index, ot_start)
std::string quotations_to_csv(const std::vector<Quotation>& quotes, const Corpus& ot,
                              const Corpus& nt);
std::vector<Quotation> quotations_from_csv(std::string_view text);

// header row: OT book names; first column: NT book names; %.6g cells
std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv(std::string_view text);

std::string clusters_to_csv(const ClusterAssignment& assign);
ClusterAssignment clusters_from_csv(std::string_view text);

// step,left,right,height,size
std::string dendrogram_to_csv(const std::vector<DendrogramMerge>& merges);

// book,pc1,pc2
std::string pca_to_csv(const PcaProjection& proj, Testament t);

std::string cluster_stats_to_csv(const std::vector<ClusterStats>& stats);
std::string flows_to_csv(const FlowTable& flows);
std::string histogram_to_csv(const std::map<std::uint32_t, std::uint64_t>& hist);
std::map<std::uint32_t, std::uint64_t> histogram_from_csv(std::string_view text);

// N x 2 coordinate block of a pca_*.csv file (row order = canon order).
Matrix pca_coords_from_csv(std::string_view text, Testament t);

// --- report emission ---

struct ReportArtifacts {
    const CorpusContainer* corpus = nullptr;
    const std::vector<Quotation>* quotes = nullptr;
    Matrix proportion;
    std::optional<LogMatrix> log;  // absent when analysis was skipped
    std::optional<ClusterAssignment> ot_clusters;
    std::optional<ClusterAssignment> nt_clusters;
    std::optional<PcaProjection> pca_ot;  // OT books as points
    std::optional<PcaProjection> pca_nt;
    std::vector<DendrogramMerge> dendrogram_ot;
    std::vector<DendrogramMerge> dendrogram_nt;
    // manifest payload
    std::map<std::string, std::string> config;      // n, k_ot, ... as strings
    std::uint64_t raw_match_count = 0;
    std::uint64_t quotation_count_overlap_rule = 0;
    // outcome of the log transform under the mode that did NOT run, so
    // reproduction reports can compare both readings
    std::string alternate_log_offset_mode;
    std::string alternate_log_offset_result;
};

// Writes the fixed-name report file set into `out_dir`:
//   matrix_proportion.csv matrix_log.csv quotations.csv clusters_ot.csv
//   clusters_nt.csv cluster_stats.csv flows.csv length_histogram.csv
//   pca_ot.svg pca_nt.svg histogram.svg manifest.json
// plus dendrogram_{ot,nt}.csv and pca_{ot,nt}.csv intermediates when analysis
// ran. On failure every file written by this call is removed. Returns the
// list of files written (relative names, emission order).
std::vector<std::string> emit_report(const ReportArtifacts& artifacts,
                                     const std::filesystem::path& out_dir);

// SVG renderers shared by emit_report and the `plot` subcommand.
std::string render_pca_svg(const Matrix& coords, double explained_fraction, Testament t,
                           const std::optional<ClusterAssignment>& clusters);
std::string render_pca_svg(const PcaProjection& proj, Testament t,
                           const std::optional<ClusterAssignment>& clusters);
std::string render_histogram_svg(const std::map<std::uint32_t, std::uint64_t>& hist);

std::string manifest_json(const ReportArtifacts& artifacts, const std::vector<std::string>& files);

}  // namespace intertext
