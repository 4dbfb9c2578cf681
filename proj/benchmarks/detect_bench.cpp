#include <benchmark/benchmark.h>

#include <random>

#include "intertext/detect.hpp"
#include "intertext/matrix.hpp"
#include "intertext/pca.hpp"
#include "intertext/ward.hpp"

using namespace intertext;

namespace {

std::vector<std::string> random_keys(std::mt19937_64& rng, std::size_t length,
                                     std::uint64_t alphabet) {
    std::vector<std::string> keys(length);
    for (auto& k : keys) k = "K" + std::to_string(rng() % alphabet);
    return keys;
}

Corpus synthetic_corpus(Testament t, std::uint64_t seed, std::size_t tokens_per_book,
                        int book_count, std::uint64_t alphabet) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Token>> books(static_cast<std::size_t>(canon::book_count(t)));
    for (int b = 0; b < book_count; ++b) {
        auto keys = random_keys(rng, tokens_per_book, alphabet);
        std::vector<Token>& out = books[static_cast<std::size_t>(b)];
        for (const std::string& key : keys) {
            Token tok;
            tok.key = TokenKey::real(key);
            tok.surface = key;
            tok.chapter = 1;
            tok.verse = 1;
            out.push_back(std::move(tok));
        }
    }
    return Corpus::build(t, std::move(books));
}

}  // namespace

static void BM_BuildIndex(benchmark::State& state) {
    const Corpus ot = synthetic_corpus(Testament::OT, 1,
                                       static_cast<std::size_t>(state.range(0)), 10, 4000);
    for (auto _ : state) {
        NGramIndex index = build_index(ot, 5);
        benchmark::DoNotOptimize(index.window_count());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}
BENCHMARK(BM_BuildIndex)->Arg(2000)->Arg(20000);

static void BM_FindMatches(benchmark::State& state) {
    const Corpus ot = synthetic_corpus(Testament::OT, 1, 20000, 10, 4000);
    const Corpus nt = synthetic_corpus(Testament::NT, 2, 5000, 10, 4000);
    const NGramIndex index = build_index(ot, 5);
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto matches = find_matches(index, nt, workers);
        benchmark::DoNotOptimize(matches.size());
    }
}
BENCHMARK(BM_FindMatches)->Arg(1)->Arg(2)->Arg(4);

static void BM_MergeMatches(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::vector<RawMatch> raw;
    for (int i = 0; i < state.range(0); ++i) {
        RawMatch m;
        m.ot_book = BookId{Testament::OT, static_cast<int>(rng() % 10)};
        m.nt_book = BookId{Testament::NT, static_cast<int>(rng() % 10)};
        m.ot_start = static_cast<std::uint32_t>(rng() % 5000);
        m.nt_start = static_cast<std::uint32_t>(rng() % 5000);
        m.n = 5;
        raw.push_back(m);
    }
    for (auto _ : state) {
        auto quotes = merge_matches(raw);
        benchmark::DoNotOptimize(quotes.size());
    }
}
BENCHMARK(BM_MergeMatches)->Arg(6000);

static void BM_WardCluster(benchmark::State& state) {
    std::mt19937_64 rng(4);
    std::vector<std::vector<double>> points(static_cast<std::size_t>(state.range(0)));
    for (auto& p : points) {
        p.resize(27);
        for (double& x : p) x = static_cast<double>(rng() % 1000000) / 1000.0;
    }
    for (auto _ : state) {
        WardResult r = ward_cluster(points, 3);
        benchmark::DoNotOptimize(r.labels.data());
    }
}
BENCHMARK(BM_WardCluster)->Arg(39);

static void BM_PcaProject(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::vector<std::vector<double>> points(39);
    for (auto& p : points) {
        p.resize(27);
        for (double& x : p) x = static_cast<double>(rng() % 1000000) / 1000.0;
    }
    for (auto _ : state) {
        PcaProjection proj = pca_project(points, 2);
        benchmark::DoNotOptimize(proj.coords.v.data());
    }
}
BENCHMARK(BM_PcaProject);

BENCHMARK_MAIN();
