#include "intertext/matrix.hpp"

#include <cmath>

#include "intertext/error.hpp"

namespace intertext {

Matrix proportion_matrix(const std::vector<Quotation>& quotes, const Corpus& ot, const Corpus& nt) {
    Matrix m(static_cast<std::size_t>(kNtBookCount), static_cast<std::size_t>(kOtBookCount));
    // coverage bitmap per (NT book, OT book) pair, allocated on first touch
    std::vector<std::vector<bool>> bitmaps(static_cast<std::size_t>(kNtBookCount) *
                                           static_cast<std::size_t>(kOtBookCount));
    for (const Quotation& q : quotes) {
        const std::uint32_t nt_len = nt.book_word_count(q.nt_book);
        if (q.nt_start + q.length > nt_len)
            throw_config("quotation exceeds NT book bounds in " + canon::book_name(q.nt_book));
        if (q.ot_start + q.length > ot.book_word_count(q.ot_book))
            throw_config("quotation exceeds OT book bounds in " + canon::book_name(q.ot_book));
        auto& bitmap = bitmaps[static_cast<std::size_t>(q.nt_book.canon_index) *
                                   static_cast<std::size_t>(kOtBookCount) +
                               static_cast<std::size_t>(q.ot_book.canon_index)];
        if (bitmap.empty()) bitmap.resize(nt_len, false);
        for (std::uint32_t i = 0; i < q.length; ++i) bitmap[q.nt_start + i] = true;
    }
    for (int r = 0; r < kNtBookCount; ++r) {
        const std::uint32_t words = nt.book_word_count(BookId{Testament::NT, r});
        for (int c = 0; c < kOtBookCount; ++c) {
            const auto& bitmap = bitmaps[static_cast<std::size_t>(r) *
                                             static_cast<std::size_t>(kOtBookCount) +
                                         static_cast<std::size_t>(c)];
            if (bitmap.empty() || words == 0) continue;
            std::uint64_t covered = 0;
            for (bool b : bitmap) covered += b ? 1 : 0;
            m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                static_cast<double>(covered) / static_cast<double>(words);
        }
    }
    return m;
}

std::vector<std::uint64_t> covered_positions(const std::vector<Quotation>& quotes,
                                             const Corpus& corpus) {
    const bool nt_side = corpus.testament() == Testament::NT;
    std::vector<std::vector<bool>> bitmaps(corpus.books().size());
    for (std::size_t i = 0; i < bitmaps.size(); ++i)
        bitmaps[i].resize(corpus.books()[i].tokens.size(), false);
    for (const Quotation& q : quotes) {
        const BookId book = nt_side ? q.nt_book : q.ot_book;
        const std::uint32_t start = nt_side ? q.nt_start : q.ot_start;
        auto& bitmap = bitmaps[static_cast<std::size_t>(book.canon_index)];
        if (start + q.length > bitmap.size())
            throw_config("quotation exceeds book bounds in " + canon::book_name(book));
        for (std::uint32_t i = 0; i < q.length; ++i) bitmap[start + i] = true;
    }
    std::vector<std::uint64_t> counts(bitmaps.size(), 0);
    for (std::size_t i = 0; i < bitmaps.size(); ++i)
        for (bool b : bitmaps[i]) counts[i] += b ? 1 : 0;
    return counts;
}

LogMatrix log_transform(const Matrix& m, LogOffsetMode mode) {
    double eps = 0.0;
    for (double x : m.v)
        if (x > 0.0 && (eps == 0.0 || x < eps)) eps = x;
    if (eps == 0.0) throw_degenerate("log transform needs at least one nonzero cell");

    LogMatrix out;
    out.epsilon = eps;
    out.m = Matrix(m.rows, m.cols);
    const double offset = mode == LogOffsetMode::Value ? eps : std::log(eps);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < m.v.size(); ++i) {
        const double arg = m.v[i] + offset;
        if (arg <= 0.0) {
            ++bad;
            continue;
        }
        out.m.v[i] = std::log(arg);
    }
    if (bad > 0)
        throw_degenerate("literal log-offset mode produced " + std::to_string(bad) +
                         " non-loggable cells (offset ln(eps) = " +
                         std::to_string(std::log(eps)) + " is negative)");
    return out;
}

Matrix row_distance_matrix(const Matrix& m, MatrixAxis axis) {
    const std::size_t count = axis == MatrixAxis::NtRows ? m.rows : m.cols;
    Matrix d(count, count);
    auto vec = [&](std::size_t i) { return axis == MatrixAxis::NtRows ? m.row(i) : m.col(i); };
    std::vector<std::vector<double>> vs(count);
    for (std::size_t i = 0; i < count; ++i) vs[i] = vec(i);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < vs[i].size(); ++k) {
                const double diff = vs[i][k] - vs[j][k];
                sum += diff * diff;
            }
            const double dist = std::sqrt(sum);
            d.at(i, j) = dist;
            d.at(j, i) = dist;
        }
    }
    return d;
}

}  // namespace intertext
