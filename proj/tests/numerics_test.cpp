#include <doctest.h>

#include <cmath>
#include <random>

#include "intertext/error.hpp"
#include "intertext/matrix.hpp"
#include "intertext/pca.hpp"
#include "intertext/ward.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace intertext;
using testutil::make_corpus;

namespace {

std::vector<std::vector<double>> random_points(std::mt19937_64& rng, int count, int dims) {
    std::vector<std::vector<double>> points(static_cast<std::size_t>(count));
    for (auto& p : points) {
        p.resize(static_cast<std::size_t>(dims));
        for (double& x : p)
            x = static_cast<double>(testutil::bounded(rng, 2000001)) / 1000.0 - 1000.0;
    }
    return points;
}

// leans on ward_cluster's id convention to rebuild member sets per step
oracle::MergeTrace trace_of(const WardResult& ward, int n) {
    std::vector<std::vector<int>> members(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) members[static_cast<std::size_t>(i)] = {i};
    oracle::MergeTrace trace;
    for (const DendrogramMerge& m : ward.merges) {
        const auto& left = members[static_cast<std::size_t>(m.left)];
        const auto& right = members[static_cast<std::size_t>(m.right)];
        trace.emplace_back(left, right);
        std::vector<int> merged = left;
        merged.insert(merged.end(), right.begin(), right.end());
        std::sort(merged.begin(), merged.end());
        members.push_back(std::move(merged));
    }
    return trace;
}

}  // namespace

TEST_CASE("proportion_matrix") {
    SUBCASE("one 6-word quotation into a 100-word book -> cell 0.06") {
        std::vector<std::string> ot_keys, nt_keys;
        for (int i = 0; i < 50; ++i) ot_keys.push_back("A" + std::to_string(i));
        for (int i = 0; i < 100; ++i) nt_keys.push_back("B" + std::to_string(i));
        const Corpus ot = make_corpus(Testament::OT, {{18, ot_keys}});
        const Corpus nt = make_corpus(Testament::NT, {{26, nt_keys}});
        const std::vector<Quotation> quotes{
            {BookId{Testament::OT, 18}, 10, BookId{Testament::NT, 26}, 40, 6}};
        const Matrix m = proportion_matrix(quotes, ot, nt);
        CHECK(m.at(26, 18) == doctest::Approx(0.06).epsilon(1e-12));
        CHECK(m.at(0, 0) == 0.0);
    }

    SUBCASE("no quotations -> all-zero matrix") {
        const Corpus ot = make_corpus(Testament::OT, {});
        const Corpus nt = make_corpus(Testament::NT, {});
        const Matrix m = proportion_matrix({}, ot, nt);
        for (double x : m.v) CHECK(x == 0.0);
    }

    SUBCASE("overlapping quotations from one OT book count positions once") {
        std::vector<std::string> keys(40, "X");
        for (int i = 0; i < 40; ++i) keys[static_cast<std::size_t>(i)] += std::to_string(i);
        const Corpus ot = make_corpus(Testament::OT, {{0, keys}});
        const Corpus nt = make_corpus(Testament::NT, {{0, keys}});
        // spans [5,10) and [8,13): union covers 8 positions
        const std::vector<Quotation> quotes{
            {BookId{Testament::OT, 0}, 5, BookId{Testament::NT, 0}, 5, 5},
            {BookId{Testament::OT, 0}, 8, BookId{Testament::NT, 0}, 8, 5}};
        const Matrix m = proportion_matrix(quotes, ot, nt);
        CHECK(m.at(0, 0) == doctest::Approx(8.0 / 40.0).epsilon(1e-12));
        // distinct positions on the OT side as well
        CHECK(covered_positions(quotes, ot)[0] == 8);
        CHECK(covered_positions(quotes, nt)[0] == 8);
    }
}

TEST_CASE("log_transform") {
    Matrix m(static_cast<std::size_t>(kNtBookCount), static_cast<std::size_t>(kOtBookCount));

    SUBCASE("zero cell maps to ln(eps)") {
        m.at(0, 0) = 0.01;  // the only nonzero -> eps = 0.01
        const LogMatrix out = log_transform(m);
        CHECK(out.epsilon == doctest::Approx(0.01));
        CHECK(out.m.at(5, 5) == doctest::Approx(std::log(0.01)).epsilon(1e-12));  // -4.6052
        CHECK(out.m.at(0, 0) == doctest::Approx(std::log(0.02)).epsilon(1e-12));  // cell == eps -> ln(2 eps)
    }

    SUBCASE("all cells equal stays constant") {
        for (double& x : m.v) x = 0.25;
        const LogMatrix out = log_transform(m);
        for (double x : out.m.v) CHECK(x == doctest::Approx(std::log(0.5)).epsilon(1e-12));
    }

    SUBCASE("strict per-cell monotonicity") {
        std::mt19937_64 rng(99);
        for (double& x : m.v) x = static_cast<double>(testutil::bounded(rng, 1000)) / 1000.0;
        m.at(3, 3) = 0.0;
        const LogMatrix out = log_transform(m);
        for (std::size_t i = 0; i < m.v.size(); ++i)
            for (std::size_t j = 0; j < m.v.size(); j += 101)
                if (m.v[i] < m.v[j]) CHECK(out.m.v[i] < out.m.v[j]);
    }

    SUBCASE("all-zero input is a degenerate-input error") {
        CHECK_THROWS_AS(log_transform(m), Error);
    }

    SUBCASE("literal mode fails when ln(eps) spoils the argument") {
        m.at(0, 0) = 0.01;
        CHECK_THROWS_AS(log_transform(m, LogOffsetMode::Literal), Error);
    }
}

TEST_CASE("row_distance_matrix") {
    SUBCASE("identical vectors and the 3-4-5 triangle") {
        Matrix m(2, 2);
        m.at(0, 0) = 0.0;
        m.at(0, 1) = 0.0;
        m.at(1, 0) = 3.0;
        m.at(1, 1) = 4.0;
        const Matrix d = row_distance_matrix(m, MatrixAxis::NtRows);
        CHECK(d.at(0, 0) == 0.0);
        CHECK(d.at(1, 1) == 0.0);
        CHECK(d.at(0, 1) == doctest::Approx(5.0).epsilon(1e-12));
        CHECK(d.at(1, 0) == doctest::Approx(5.0).epsilon(1e-12));
    }

    SUBCASE("random matrix equals the quadratic-loop oracle, both axes") {
        std::mt19937_64 rng(4);
        Matrix m(5, 4);
        for (double& x : m.v) x = static_cast<double>(testutil::bounded(rng, 1000)) / 37.0;
        for (MatrixAxis axis : {MatrixAxis::NtRows, MatrixAxis::OtCols}) {
            const Matrix d = row_distance_matrix(m, axis);
            const std::size_t count = axis == MatrixAxis::NtRows ? m.rows : m.cols;
            REQUIRE(d.rows == count);
            for (std::size_t i = 0; i < count; ++i) {
                for (std::size_t j = 0; j < count; ++j) {
                    const auto vi = axis == MatrixAxis::NtRows ? m.row(i) : m.col(i);
                    const auto vj = axis == MatrixAxis::NtRows ? m.row(j) : m.col(j);
                    double sum = 0.0;
                    for (std::size_t k = 0; k < vi.size(); ++k)
                        sum += (vi[k] - vj[k]) * (vi[k] - vj[k]);
                    CHECK(d.at(i, j) == doctest::Approx(std::sqrt(sum)).epsilon(1e-12));
                    CHECK(d.at(i, j) == d.at(j, i));
                }
            }
        }
    }

    SUBCASE("triangle inequality holds on random data") {
        std::mt19937_64 rng(5);
        Matrix m(8, 3);
        for (double& x : m.v) x = static_cast<double>(testutil::bounded(rng, 1000)) / 41.0;
        const Matrix d = row_distance_matrix(m, MatrixAxis::NtRows);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j)
                for (std::size_t k = 0; k < 8; ++k)
                    CHECK(d.at(i, j) <= d.at(i, k) + d.at(k, j) + 1e-9);
    }
}

TEST_CASE("ward_cluster") {
    SUBCASE("k = point count -> singletons, labels by index") {
        const std::vector<std::vector<double>> points{{0.0}, {5.0}, {2.0}};
        const WardResult r = ward_cluster(points, 3);
        CHECK(r.labels == std::vector<int>{1, 2, 3});
        CHECK(r.merges.size() == 2);
    }

    SUBCASE("well-separated pairs split at k=2") {
        const std::vector<std::vector<double>> points{{0.0}, {1.0}, {10.0}, {11.0}};
        const WardResult r = ward_cluster(points, 2);
        CHECK(r.labels == std::vector<int>{1, 1, 2, 2});
    }

    SUBCASE("k out of range is a configuration error") {
        const std::vector<std::vector<double>> points{{0.0}, {1.0}};
        CHECK_THROWS_AS(ward_cluster(points, 0), Error);
        CHECK_THROWS_AS(ward_cluster(points, 3), Error);
        CHECK_THROWS_AS(ward_cluster({}, 1), Error);
    }

    SUBCASE("20 random 3-D points match the naive minimum-variance oracle") {
        std::mt19937_64 rng(314);
        const auto points = random_points(rng, 20, 3);
        const WardResult fast = ward_cluster(points, 3);
        const oracle::NaiveWard slow = oracle::naive_ward(points, 3);
        CHECK(trace_of(fast, 20) == slow.trace);
        CHECK(fast.labels == slow.labels_at_k);
    }

    SUBCASE("duplicate points (exact ties) stay deterministic and match the oracle") {
        std::vector<std::vector<double>> points{{1.0, 1.0}, {4.0, 4.0}, {1.0, 1.0},
                                                {4.0, 4.0}, {1.0, 1.0}};
        const WardResult fast = ward_cluster(points, 2);
        const oracle::NaiveWard slow = oracle::naive_ward(points, 2);
        CHECK(trace_of(fast, 5) == slow.trace);
        CHECK(fast.labels == slow.labels_at_k);
        CHECK(fast.labels == std::vector<int>{1, 2, 1, 2, 1});
    }

    SUBCASE("merge heights are sqrt of twice the SSE increase") {
        std::mt19937_64 rng(15);
        const auto points = random_points(rng, 8, 2);
        const WardResult fast = ward_cluster(points, 1);
        const oracle::NaiveWard slow = oracle::naive_ward(points, 1);
        REQUIRE(fast.merges.size() == slow.trace.size());
        for (std::size_t s = 0; s < fast.merges.size(); ++s) {
            std::vector<int> merged = slow.trace[s].first;
            merged.insert(merged.end(), slow.trace[s].second.begin(), slow.trace[s].second.end());
            const double delta = oracle::sse_of(points, merged) -
                                 oracle::sse_of(points, slow.trace[s].first) -
                                 oracle::sse_of(points, slow.trace[s].second);
            CHECK(fast.merges[s].height ==
                  doctest::Approx(std::sqrt(2.0 * delta)).epsilon(1e-9));
        }
    }

    SUBCASE("determinism across repeated runs") {
        std::mt19937_64 rng(2718);
        const auto points = random_points(rng, 15, 4);
        const WardResult a = ward_cluster(points, 4);
        const WardResult b = ward_cluster(points, 4);
        CHECK(a.labels == b.labels);
        REQUIRE(a.merges.size() == b.merges.size());
        for (std::size_t i = 0; i < a.merges.size(); ++i) {
            CHECK(a.merges[i].left == b.merges[i].left);
            CHECK(a.merges[i].right == b.merges[i].right);
            CHECK(a.merges[i].height == b.merges[i].height);
        }
    }
}

TEST_CASE("pca_project") {
    SUBCASE("collinear 3-D points -> first component explains everything") {
        std::vector<std::vector<double>> points;
        for (int i = 0; i < 7; ++i) {
            const double t = static_cast<double>(i);
            points.push_back({1.0 + 2.0 * t, -3.0 * t, 0.5 + t});
        }
        const PcaProjection proj = pca_project(points, 1);
        CHECK(proj.explained_variance_fraction() == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("full-rank reconstruction within 1e-9, eigenvalues nonnegative") {
        std::mt19937_64 rng(1111);
        const auto points = random_points(rng, 12, 4);
        const PcaProjection proj = pca_project(points, 4);
        for (double ev : proj.eigenvalues) CHECK(ev >= 0.0);
        // back-project: centered row i ~= coords row i * components^T
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                double reconstructed = proj.column_means[j];
                for (std::size_t c = 0; c < 4; ++c)
                    reconstructed += proj.coords.at(i, c) * proj.components.at(j, c);
                CHECK(reconstructed == doctest::Approx(points[i][j]).epsilon(1e-9));
            }
        }
        // explained fractions over all components sum to 1
        PcaProjection all = proj;
        double total = 0.0;
        for (double ev : all.eigenvalues) total += ev;
        CHECK(total > 0.0);
        all.dims = 4;
        CHECK(all.explained_variance_fraction() == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("sign convention: dominant entry of each component is positive") {
        std::mt19937_64 rng(77);
        const auto points = random_points(rng, 10, 3);
        const PcaProjection proj = pca_project(points, 3);
        for (int comp = 0; comp < 3; ++comp) {
            double best = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                const double v = proj.components.at(i, static_cast<std::size_t>(comp));
                if (std::abs(v) > std::abs(best)) best = v;
            }
            CHECK(best > 0.0);
        }
    }

    SUBCASE("too few points is a configuration error") {
        CHECK_THROWS_AS(pca_project({{1.0, 2.0}, {3.0, 4.0}}, 2), Error);
    }
}
