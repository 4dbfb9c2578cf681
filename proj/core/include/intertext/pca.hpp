#pragma once

#include <vector>

#include "intertext/matrix.hpp"

namespace intertext {

struct PcaProjection {
    Matrix coords;                    // N x dims projected coordinates
    Matrix components;                // D x dims, eigenvector columns, sign-fixed
    std::vector<double> eigenvalues;  // all D, descending, clamped at 0
    std::vector<double> column_means; // length D
    int dims = 0;

    // (lambda_1 + ... + lambda_dims) / sum of all eigenvalues
    double explained_variance_fraction() const;
};

// Column-mean centering, covariance eigen-decomposition by cyclic Jacobi
// (off-diagonal driven below 1e-12 relative), projection onto the top `dims`
// eigenvectors. Sign convention: the entry of largest absolute value in each
// component is positive. Requires at least dims + 1 points.
PcaProjection pca_project(const std::vector<std::vector<double>>& points, int dims = 2);

// Symmetric eigensolver used by PCA, exposed for tests: returns eigenvalues
// (unsorted) on the diagonal's order and the rotation matrix V with
// eigenvectors as columns (A = V diag V^T).
void jacobi_eigen(Matrix a, std::vector<double>& eigenvalues, Matrix& eigenvectors);

}  // namespace intertext
