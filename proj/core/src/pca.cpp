#include "intertext/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "intertext/error.hpp"

namespace intertext {

void jacobi_eigen(Matrix a, std::vector<double>& eigenvalues, Matrix& eigenvectors) {
    const std::size_t d = a.rows;
    if (a.cols != d) throw_config("jacobi eigensolver needs a square matrix");

    eigenvectors = Matrix(d, d);
    for (std::size_t i = 0; i < d; ++i) eigenvectors.at(i, i) = 1.0;

    double fro = 0.0;
    for (double x : a.v) fro += x * x;
    fro = std::sqrt(fro);
    const double tol = 1e-12 * std::max(1.0, fro);

    auto off_diag_norm = [&] {
        double sum = 0.0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) sum += 2.0 * a.at(p, q) * a.at(p, q);
        return std::sqrt(sum);
    };

    for (int sweep = 0; sweep < 100 && off_diag_norm() > tol; ++sweep) {
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a.at(p, q);
                if (apq == 0.0) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t i = 0; i < d; ++i) {
                    const double aip = a.at(i, p);
                    const double aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const double api = a.at(p, i);
                    const double aqi = a.at(q, i);
                    a.at(p, i) = c * api - s * aqi;
                    a.at(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const double vip = eigenvectors.at(i, p);
                    const double viq = eigenvectors.at(i, q);
                    eigenvectors.at(i, p) = c * vip - s * viq;
                    eigenvectors.at(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    eigenvalues.resize(d);
    for (std::size_t i = 0; i < d; ++i) eigenvalues[i] = a.at(i, i);
}

double PcaProjection::explained_variance_fraction() const {
    double total = 0.0;
    for (double ev : eigenvalues) total += ev;
    if (total <= 0.0) return 0.0;
    double kept = 0.0;
    for (int i = 0; i < dims && i < static_cast<int>(eigenvalues.size()); ++i)
        kept += eigenvalues[static_cast<std::size_t>(i)];
    return kept / total;
}

PcaProjection pca_project(const std::vector<std::vector<double>>& points, int dims) {
    const std::size_t n = points.size();
    if (dims < 1) throw_config("pca needs dims >= 1");
    if (n < static_cast<std::size_t>(dims) + 1)
        throw_config("pca needs at least dims + 1 = " + std::to_string(dims + 1) + " points, got " +
                     std::to_string(n));
    const std::size_t d = points.front().size();
    for (const auto& p : points)
        if (p.size() != d) throw_config("points must share one dimensionality");
    if (static_cast<std::size_t>(dims) > d)
        throw_config("pca dims exceed the data dimensionality");

    // center columns
    std::vector<double> means(d, 0.0);
    for (const auto& p : points)
        for (std::size_t j = 0; j < d; ++j) means[j] += p[j];
    for (double& m : means) m /= static_cast<double>(n);

    Matrix centered(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) centered.at(i, j) = points[i][j] - means[j];

    // covariance (d x d)
    Matrix cov(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += centered.at(i, a) * centered.at(i, b);
            const double value = sum / static_cast<double>(n - 1);
            cov.at(a, b) = value;
            cov.at(b, a) = value;
        }
    }

    std::vector<double> raw_eigenvalues;
    Matrix vectors;
    jacobi_eigen(cov, raw_eigenvalues, vectors);

    // order descending by eigenvalue, stable on ties
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return raw_eigenvalues[a] > raw_eigenvalues[b];
    });

    PcaProjection proj;
    proj.dims = dims;
    proj.column_means = means;
    proj.eigenvalues.resize(d);
    proj.components = Matrix(d, static_cast<std::size_t>(dims));
    for (std::size_t rank = 0; rank < d; ++rank)
        proj.eigenvalues[rank] = std::max(raw_eigenvalues[order[rank]], 0.0);

    for (int comp = 0; comp < dims; ++comp) {
        const std::size_t src = order[static_cast<std::size_t>(comp)];
        // sign convention: largest-magnitude entry positive (first on ties)
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double mag = std::abs(vectors.at(i, src));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        const double sign = vectors.at(arg, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < d; ++i)
            proj.components.at(i, static_cast<std::size_t>(comp)) = sign * vectors.at(i, src);
    }

    proj.coords = Matrix(n, static_cast<std::size_t>(dims));
    for (std::size_t i = 0; i < n; ++i)
        for (int comp = 0; comp < dims; ++comp) {
            double sum = 0.0;
            for (std::size_t j = 0; j < d; ++j)
                sum += centered.at(i, j) * proj.components.at(j, static_cast<std::size_t>(comp));
            proj.coords.at(i, static_cast<std::size_t>(comp)) = sum;
        }

    return proj;
}

}  // namespace intertext
