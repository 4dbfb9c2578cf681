#pragma once

#include <cstddef>
#include <vector>

#include "intertext/corpus.hpp"
#include "intertext/detect.hpp"

namespace intertext {

// Dense row-major matrix; just enough linear-algebra plumbing for this tool.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> v;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }

    std::vector<double> row(std::size_t r) const {
        return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(r * cols),
                                   v.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
    }
    std::vector<double> col(std::size_t c) const {
        std::vector<double> out(rows);
        for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c);
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

// 27x39 table: cell[nt][ot] = distinct word positions of NT book `nt` covered
// by at least one quotation from OT book `ot`, divided by the NT book's word
// count. Overlapping quotations from the same OT book count positions once.
Matrix proportion_matrix(const std::vector<Quotation>& quotes, const Corpus& ot, const Corpus& nt);

// Distinct covered positions per book on one side of the quotation set
// (union over all counterpart books), indexed by canon index.
std::vector<std::uint64_t> covered_positions(const std::vector<Quotation>& quotes,
                                             const Corpus& corpus);

enum class LogOffsetMode {
    Value,    // ln(cell + eps), eps = smallest nonzero cell
    Literal,  // ln(cell + ln(eps)); fails on real data, kept for comparison runs
};

struct LogMatrix {
    Matrix m;
    double epsilon = 0.0;  // smallest nonzero cell of the input
};

// All-zero input is a degenerate-input error. Literal mode raises the same
// error as soon as any cell + ln(eps) is non-positive.
LogMatrix log_transform(const Matrix& m, LogOffsetMode mode = LogOffsetMode::Value);

enum class MatrixAxis { NtRows, OtCols };

// Pairwise Euclidean distances between row vectors (NtRows) or column
// vectors (OtCols); symmetric with zero diagonal.
Matrix row_distance_matrix(const Matrix& m, MatrixAxis axis);

}  // namespace intertext
