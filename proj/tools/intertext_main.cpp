// intertext - quotation detection and cluster analysis between the Greek
// Old and New Testaments. Subcommands compose through files in a run
// directory; `run` executes the whole pipeline.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "intertext/error.hpp"
#include "intertext/pipeline.hpp"

namespace {

constexpr const char* kVersion = "intertext 1.0.0";

struct CliOptions {
    intertext::RunConfig config;
    std::string log_offset = "value";
    std::string merge_rule = "diagonal";
    std::string format = "csv";
};

void add_common_flags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--out,--dir", opts.config.out_dir, "Run/output directory")->required();
    cmd->add_option("--workers", opts.config.workers,
                    "Worker threads for matching (0 = all cores)");
}

void add_detect_flags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--n", opts.config.n, "n-gram length (default 5)");
    cmd->add_option("--merge-rule", opts.merge_rule, "diagonal|overlap (default diagonal)");
}

void add_analyze_flags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--k-ot", opts.config.k_ot, "OT cluster count (default 3)");
    cmd->add_option("--k-nt", opts.config.k_nt, "NT cluster count (default 2)");
    cmd->add_option("--log-offset", opts.log_offset, "value|literal (default value)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inter-testament quotation detection and clustering toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CliOptions opts;
    std::filesystem::path plot_dir;

    CLI::App* ingest = app.add_subcommand("ingest", "Parse Zefania XML corpora into a corpus container");
    ingest->add_option("--ot", opts.config.ot_path, "Old Testament (Septuagint) Zefania XML")->required();
    ingest->add_option("--nt", opts.config.nt_path, "New Testament Zefania XML")->required();
    add_common_flags(ingest, opts);

    CLI::App* detect = app.add_subcommand("detect", "Find and merge n-gram quotations");
    add_common_flags(detect, opts);
    add_detect_flags(detect, opts);

    CLI::App* analyze = app.add_subcommand("analyze", "Proportion matrices, clustering and PCA");
    add_common_flags(analyze, opts);
    add_analyze_flags(analyze, opts);

    CLI::App* report = app.add_subcommand("report", "Emit the report file set (CSV + SVG + manifest)");
    add_common_flags(report, opts);

    CLI::App* run = app.add_subcommand("run", "Full pipeline: ingest, detect, analyze, report");
    run->add_option("--ot", opts.config.ot_path, "Old Testament (Septuagint) Zefania XML")->required();
    run->add_option("--nt", opts.config.nt_path, "New Testament Zefania XML")->required();
    add_common_flags(run, opts);
    add_detect_flags(run, opts);
    add_analyze_flags(run, opts);
    run->add_option("--format", opts.format, "Report format (csv; reserved)");

    CLI::App* plot = app.add_subcommand("plot", "Re-render SVG figures from an emitted report");
    plot->add_option("--dir", plot_dir, "Report directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // flag errors are configuration errors
    }

    try {
        opts.config.log_offset = intertext::log_offset_from_name(opts.log_offset);
        opts.config.merge_rule = intertext::merge_rule_from_name(opts.merge_rule);
        if (opts.format != "csv")
            intertext::throw_config("unsupported --format '" + opts.format + "'");

        using namespace intertext::pipeline;
        if (ingest->parsed()) ingest_stage(opts.config);
        else if (detect->parsed()) detect_stage(opts.config);
        else if (analyze->parsed()) analyze_stage(opts.config);
        else if (report->parsed()) report_stage(opts.config);
        else if (run->parsed()) run_pipeline(opts.config);
        else if (plot->parsed()) plot_stage(plot_dir);
    } catch (const intertext::Error& e) {
        std::cerr << "intertext: error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "intertext: unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
