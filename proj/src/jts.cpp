#include "volent/jts.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

namespace volent::jts {

using std::complex;

MatrixSpace::MatrixSpace(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < rows) {
        throw OutOfRangeError("matrix realization requires 1 <= rows <= cols, got " +
                              std::to_string(rows) + "x" + std::to_string(cols));
    }
}

void MatrixSpace::check_shape(const Point& z) const {
    if (z.rows() != rows_ || z.cols() != cols_) {
        throw ShapeMismatchError("expected " + std::to_string(rows_) + "x" +
                                 std::to_string(cols_) + " point, got " +
                                 std::to_string(z.rows()) + "x" + std::to_string(z.cols()));
    }
}

MatrixSpace::Point MatrixSpace::triple(const Point& x, const Point& y, const Point& z) const {
    check_shape(x);
    check_shape(y);
    check_shape(z);
    return x * y.adjoint() * z + z * y.adjoint() * x;
}

SpectralDecomposition<MatrixSpace::Point> MatrixSpace::spectral_decompose(const Point& z) const {
    check_shape(z);
    Eigen::JacobiSVD<Point> svd(z, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sigma = svd.singularValues(); // descending
    const double tol = detail::merge_tolerance(sigma.size() > 0 ? sigma(0) : 0.0);

    SpectralDecomposition<Point> result;
    int i = 0;
    while (i < sigma.size() && sigma(i) > tol) {
        // Group all singular triplets whose values tie within tolerance.
        int j = i;
        double sum = 0.0;
        Point tripotent = zero();
        while (j < sigma.size() && sigma(i) - sigma(j) <= tol) {
            sum += sigma(j);
            tripotent += svd.matrixU().col(j) * svd.matrixV().col(j).adjoint();
            ++j;
        }
        result.eigenvalues.push_back(sum / static_cast<double>(j - i));
        result.tripotents.push_back(std::move(tripotent));
        i = j;
    }
    return result;
}

double MatrixSpace::spectral_norm(const Point& z) const {
    check_shape(z);
    if (z.isZero(0.0)) return 0.0;
    return z.jacobiSvd().singularValues()(0);
}

Eigen::VectorXcd MatrixSpace::to_flat(const Point& z) const {
    return Eigen::Map<const Eigen::VectorXcd>(z.data(), z.size());
}

MatrixSpace::Point MatrixSpace::from_flat(const Eigen::VectorXcd& v) const {
    return Eigen::Map<const Point>(v.data(), rows_, cols_);
}

SpinSpace::SpinSpace(int n) : n_(n) {
    if (n < 1) throw OutOfRangeError("spin factor requires n >= 1");
}

void SpinSpace::check_shape(const Point& z) const {
    if (z.size() != n_) {
        throw ShapeMismatchError("expected vector of length " + std::to_string(n_) +
                                 ", got " + std::to_string(z.size()));
    }
}

SpinSpace::Point SpinSpace::triple(const Point& x, const Point& y, const Point& z) const {
    check_shape(x);
    check_shape(y);
    check_shape(z);
    // (u|v) = sum u_k conj(v_k); note (x|conj(z)) = sum x_k z_k.
    const complex<double> form_xy = (x.array() * y.array().conjugate()).sum();
    const complex<double> form_zy = (z.array() * y.array().conjugate()).sum();
    const complex<double> form_xzc = (x.array() * z.array()).sum();
    return form_xy * z + form_zy * x - form_xzc * y.conjugate();
}

SpectralDecomposition<SpinSpace::Point> SpinSpace::spectral_decompose(const Point& z) const {
    check_shape(z);
    const double h = z.squaredNorm();                        // |z|^2
    const complex<double> q = (z.array() * z.array()).sum(); // sum z_k^2
    const double disc2 = h * h - std::norm(q);               // |z|^4 - |q|^2, >= 0
    const double disc = std::sqrt(std::max(disc2, 0.0));
    const double lambda_hi = std::sqrt((h + disc) / 2.0);
    const double lambda_lo = std::sqrt(std::max((h - disc) / 2.0, 0.0));
    const double tol = detail::merge_tolerance(lambda_hi);

    SpectralDecomposition<Point> result;
    if (lambda_hi <= tol) return result; // zero point

    if (lambda_hi - lambda_lo <= tol) {
        // Equal eigenvalues collapse into one term with z/lambda a tripotent
        // of height two.
        result.eigenvalues.push_back(lambda_hi);
        result.tripotents.push_back(z / lambda_hi);
        return result;
    }
    if (lambda_lo <= tol) {
        // Isotropic direction, q(z) ~ 0: single minimal tripotent.
        result.eigenvalues.push_back(lambda_hi);
        result.tripotents.push_back(z / lambda_hi);
        return result;
    }

    // Two distinct terms: solve c1, c2 from z and the odd cube
    // z^(3) = |z|^2 z - (q/2) conj(z) = lambda1^3 c1 + lambda2^3 c2.
    const Point cube = h * z - (q / 2.0) * z.conjugate();
    const double l1 = lambda_hi, l2 = lambda_lo;
    const double gap = l1 * l1 - l2 * l2;
    result.eigenvalues = {l1, l2};
    result.tripotents.push_back((cube - (l2 * l2) * z) / (l1 * gap));
    result.tripotents.push_back(((l1 * l1) * z - cube) / (l2 * gap));
    return result;
}

double SpinSpace::spectral_norm(const Point& z) const {
    check_shape(z);
    const double h = z.squaredNorm();
    const complex<double> q = (z.array() * z.array()).sum();
    const double disc = std::sqrt(std::max(h * h - std::norm(q), 0.0));
    return std::sqrt((h + disc) / 2.0);
}

} // namespace volent::jts
