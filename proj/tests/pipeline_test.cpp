#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "intertext/corpus_io.hpp"
#include "intertext/error.hpp"
#include "intertext/pipeline.hpp"
#include "intertext/report.hpp"
#include "test_util.hpp"

using namespace intertext;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() / ("intertext_pipe_" + name);
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

RunConfig fixture_config(const fs::path& out) {
    RunConfig config;
    config.ot_path = testutil::fixture("ot_small.xml");
    config.nt_path = testutil::fixture("nt_small.xml");
    config.out_dir = out;
    config.workers = 1;
    return config;
}

bool dirs_identical(const fs::path& a, const fs::path& b) {
    std::set<std::string> names_a, names_b;
    for (const auto& e : fs::directory_iterator(a))
        if (e.is_regular_file()) names_a.insert(e.path().filename().string());
    for (const auto& e : fs::directory_iterator(b))
        if (e.is_regular_file()) names_b.insert(e.path().filename().string());
    if (names_a != names_b) return false;
    for (const std::string& name : names_a)
        if (read_file(a / name) != read_file(b / name)) return false;
    return true;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(INTERTEXT_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t quotation_rows(const fs::path& csv) {
    return quotations_from_csv(read_file(csv)).size();
}

}  // namespace

TEST_CASE("run_pipeline produces the full report on the fixture corpora") {
    TempDir dir("run");
    pipeline::run_pipeline(fixture_config(dir.path));

    const char* fixed_names[] = {
        "matrix_proportion.csv", "matrix_log.csv",   "quotations.csv", "clusters_ot.csv",
        "clusters_nt.csv",       "cluster_stats.csv", "flows.csv",      "length_histogram.csv",
        "pca_ot.svg",            "pca_nt.svg",        "histogram.svg",  "manifest.json"};
    for (const char* name : fixed_names) CHECK(fs::exists(dir.path / name));

    // the fixture plants one 8-word and one 5-word quotation
    CHECK(quotation_rows(dir.path / "quotations.csv") == 2);
    const auto hist = histogram_from_csv(read_file(dir.path / "length_histogram.csv"));
    CHECK(hist == std::map<std::uint32_t, std::uint64_t>{{5, 1}, {8, 1}});

    const auto manifest = nlohmann::json::parse(read_file(dir.path / "manifest.json"));
    CHECK(manifest["config"]["n"] == "5");
    CHECK(manifest["detect"]["raw_matches"] == 5);
    CHECK(manifest["detect"]["quotations"] == 2);
    CHECK(manifest["ingest"]["ot"]["excluded_books"].size() == 1);
    CHECK(manifest["ingest"]["custom_keys"] == 1);

    // proportion spot checks: Matthew x Genesis 8/12, Revelation x Psalms 5/8
    const Matrix m = matrix_from_csv(read_file(dir.path / "matrix_proportion.csv"));
    CHECK(m.at(0, 0) == doctest::Approx(8.0 / 12.0).epsilon(1e-6));
    CHECK(m.at(26, 18) == doctest::Approx(5.0 / 8.0).epsilon(1e-6));
}

TEST_CASE("chained subcommand stages equal the single-shot run byte for byte") {
    TempDir one_shot("oneshot");
    TempDir chained("chained");
    const RunConfig config_a = fixture_config(one_shot.path);
    pipeline::run_pipeline(config_a);

    const RunConfig config_b = fixture_config(chained.path);
    pipeline::ingest_stage(config_b);
    pipeline::detect_stage(config_b);
    pipeline::analyze_stage(config_b);
    pipeline::report_stage(config_b);

    CHECK(dirs_identical(one_shot.path, chained.path));
}

TEST_CASE("determinism: repeated runs and different worker counts are byte-identical") {
    TempDir a("det_a");
    TempDir b("det_b");
    TempDir c("det_c");
    pipeline::run_pipeline(fixture_config(a.path));
    pipeline::run_pipeline(fixture_config(b.path));
    RunConfig many_workers = fixture_config(c.path);
    many_workers.workers = 8;
    pipeline::run_pipeline(many_workers);

    CHECK(dirs_identical(a.path, b.path));
    CHECK(dirs_identical(a.path, c.path));
}

TEST_CASE("missing input file fails before any output is created") {
    TempDir dir("missing");
    RunConfig config = fixture_config(dir.path);
    config.ot_path = "does_not_exist.xml";
    try {
        pipeline::run_pipeline(config);
        FAIL("expected a config error");
    } catch (const Error& e) {
        CHECK(e.exit_code() == 1);
    }
    CHECK(!fs::exists(dir.path));
}

TEST_CASE("degenerate run with zero quotations completes with analysis skipped") {
    TempDir dir("degenerate");
    RunConfig config = fixture_config(dir.path);
    // two_verses.xml shares no 5-gram with the NT fixture
    config.ot_path = testutil::fixture("two_verses.xml");
    pipeline::run_pipeline(config);

    CHECK(quotation_rows(dir.path / "quotations.csv") == 0);
    for (double x : matrix_from_csv(read_file(dir.path / "matrix_proportion.csv")).v)
        CHECK(x == 0.0);
    CHECK(!fs::exists(dir.path / "matrix_log.csv"));
    CHECK(!fs::exists(dir.path / "clusters_ot.csv"));
    CHECK(!fs::exists(dir.path / "pca_ot.svg"));
    const auto manifest = nlohmann::json::parse(read_file(dir.path / "manifest.json"));
    CHECK(manifest["analysis"]["skipped"] == true);
    CHECK(fs::exists(dir.path / "histogram.svg"));
}

TEST_CASE("plot regenerates byte-identical SVG files") {
    TempDir dir("plot");
    pipeline::run_pipeline(fixture_config(dir.path));
    const std::string hist_svg = read_file(dir.path / "histogram.svg");
    const std::string pca_ot_svg = read_file(dir.path / "pca_ot.svg");
    fs::remove(dir.path / "histogram.svg");
    fs::remove(dir.path / "pca_ot.svg");
    pipeline::plot_stage(dir.path);
    CHECK(read_file(dir.path / "histogram.svg") == hist_svg);
    CHECK(read_file(dir.path / "pca_ot.svg") == pca_ot_svg);
}

TEST_CASE("cli: run exits 0 and writes the report") {
    TempDir dir("cli_run");
    const int code = run_cli("run --ot " + testutil::fixture("ot_small.xml").string() +
                             " --nt " + testutil::fixture("nt_small.xml").string() + " --out " +
                             dir.path.string() + " --workers 1");
    CHECK(code == 0);
    CHECK(fs::exists(dir.path / "manifest.json"));
    CHECK(fs::exists(dir.path / "quotations.csv"));
}

TEST_CASE("cli: missing input exits 1 without creating the output directory") {
    TempDir dir("cli_missing");
    const int code = run_cli("run --ot nope.xml --nt also_nope.xml --out " + dir.path.string());
    CHECK(code == 1);
    CHECK(!fs::exists(dir.path));
}

TEST_CASE("cli: malformed XML exits 2") {
    TempDir dir("cli_parse");
    const int code = run_cli("run --ot " + testutil::fixture("malformed.xml").string() +
                             " --nt " + testutil::fixture("nt_small.xml").string() + " --out " +
                             dir.path.string());
    CHECK(code == 2);
}

TEST_CASE("cli: unwritable output path exits 4") {
    TempDir dir("cli_io");
    fs::create_directories(dir.path);
    write_file(dir.path / "blocker", "x");
    // output directory nested under a regular file cannot be created
    const int code = run_cli("run --ot " + testutil::fixture("ot_small.xml").string() + " --nt " +
                             testutil::fixture("nt_small.xml").string() + " --out " +
                             (dir.path / "blocker" / "out").string());
    CHECK(code == 4);
}

TEST_CASE("cli: chained subcommands equal single-shot run byte for byte") {
    TempDir chained("cli_chain");
    TempDir one_shot("cli_oneshot");
    const std::string inputs = " --ot " + testutil::fixture("ot_small.xml").string() + " --nt " +
                               testutil::fixture("nt_small.xml").string();
    const std::string base = " --out " + chained.path.string() + " --workers 1";
    REQUIRE(run_cli("ingest" + inputs + base) == 0);
    REQUIRE(run_cli("detect" + base) == 0);
    REQUIRE(run_cli("analyze" + base) == 0);
    REQUIRE(run_cli("report" + base) == 0);
    REQUIRE(run_cli("run" + inputs + " --out " + one_shot.path.string() + " --workers 1") == 0);
    CHECK(dirs_identical(chained.path, one_shot.path));
}

TEST_CASE("cli: detect with smaller n never finds fewer quotations") {
    TempDir dir("cli_n");
    const std::string base = " --out " + dir.path.string() + " --workers 1";
    REQUIRE(run_cli("ingest --ot " + testutil::fixture("ot_small.xml").string() + " --nt " +
                    testutil::fixture("nt_small.xml").string() + base) == 0);

    REQUIRE(run_cli("detect --n 4" + base) == 0);
    const std::size_t n4 = quotation_rows(dir.path / "quotations.csv");
    REQUIRE(run_cli("detect --n 5" + base) == 0);
    const std::size_t n5 = quotation_rows(dir.path / "quotations.csv");
    CHECK(n4 >= n5);

    // n below 2 is a config error
    CHECK(run_cli("detect --n 1" + base) == 1);
}

TEST_CASE("cli: literal log-offset mode fails as degenerate on fixture data") {
    TempDir dir("cli_literal");
    const std::string base = " --out " + dir.path.string() + " --workers 1";
    REQUIRE(run_cli("ingest --ot " + testutil::fixture("ot_small.xml").string() + " --nt " +
                    testutil::fixture("nt_small.xml").string() + base) == 0);
    REQUIRE(run_cli("detect" + base) == 0);
    CHECK(run_cli("analyze --log-offset literal" + base) == 3);
    CHECK(run_cli("analyze --log-offset value" + base) == 0);
}
