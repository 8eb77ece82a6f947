#ifndef VOLENT_JTS_HPP
#define VOLENT_JTS_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "volent/errors.hpp"

// Concrete Hermitian positive Jordan triple systems: rectangular complex
// matrices (type I) and spin factors (type IV). The triple product is the
// primitive; the operators T, Q, B, odd powers and the functional calculus
// are derived from it generically.

namespace volent::jts {

/// z = sum_j lambda_j c_j with strictly decreasing positive eigenvalues and
/// pairwise strongly orthogonal tripotents. The zero point decomposes into
/// zero terms.
template <typename PointT>
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<PointT> tripotents;

    size_t terms() const { return eigenvalues.size(); }
};

/// Type I realization: complex n x m matrices (n <= m), rank n,
/// {x,y,z} = x y* z + z y* x.
class MatrixSpace {
public:
    using Point = Eigen::MatrixXcd;

    MatrixSpace(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int rank() const { return rows_; }
    int complex_dim() const { return rows_ * cols_; }

    Point zero() const { return Point::Zero(rows_, cols_); }
    void check_shape(const Point& z) const;

    Point triple(const Point& x, const Point& y, const Point& z) const;

    /// Distinct singular values with their tripotents u_i v_i* summed over
    /// the singular triplets at each value.
    SpectralDecomposition<Point> spectral_decompose(const Point& z) const;

    double spectral_norm(const Point& z) const;

    Eigen::VectorXcd to_flat(const Point& z) const;
    Point from_flat(const Eigen::VectorXcd& v) const;

private:
    int rows_;
    int cols_;
};

/// Type IV realization: the spin factor on C^n, rank 2,
/// {x,y,z} = (x|y) z + (z|y) x - (x|conj(z)) conj(y) with (u|v) = sum u_k conj(v_k).
class SpinSpace {
public:
    using Point = Eigen::VectorXcd;

    explicit SpinSpace(int n);

    int dim() const { return n_; }
    int rank() const { return 2; }
    int complex_dim() const { return n_; }

    Point zero() const { return Point::Zero(n_); }
    void check_shape(const Point& z) const;

    Point triple(const Point& x, const Point& y, const Point& z) const;

    /// Eigenvalues lambda_{+-} = sqrt((|z|^2 +- sqrt(|z|^4 - |q(z)|^2)) / 2)
    /// with q(z) = sum_k z_k^2; tripotents solved from the two-term
    /// reconstruction using z and its odd cube.
    SpectralDecomposition<Point> spectral_decompose(const Point& z) const;

    double spectral_norm(const Point& z) const;

    Eigen::VectorXcd to_flat(const Point& z) const { return z; }
    Point from_flat(const Eigen::VectorXcd& v) const { return v; }

private:
    int n_;
};

namespace detail {

// Eigenvalues merged when closer than this; ties must collapse into one
// spectral term since the decomposition demands strictly decreasing values.
inline double merge_tolerance(double largest) { return 1e-9 * (1.0 + largest); }

} // namespace detail

/// Real coordinates of a point: [Re(flat); Im(flat)], dimension 2N.
template <typename Space>
Eigen::VectorXd to_real_coords(const Space& space, const typename Space::Point& z) {
    const Eigen::VectorXcd flat = space.to_flat(z);
    Eigen::VectorXd out(2 * flat.size());
    out << flat.real(), flat.imag();
    return out;
}

template <typename Space>
typename Space::Point from_real_coords(const Space& space, const Eigen::VectorXd& v) {
    const Eigen::Index n = v.size() / 2;
    Eigen::VectorXcd flat(n);
    flat.real() = v.head(n);
    flat.imag() = v.tail(n);
    return space.from_flat(flat);
}

/// Materialize a real-linear (possibly antilinear) map as a dense matrix
/// over the fixed real-coordinate basis.
template <typename Space, typename Map>
Eigen::MatrixXd materialize(const Space& space, Map&& map) {
    const int dim = 2 * space.complex_dim();
    Eigen::MatrixXd matrix(dim, dim);
    Eigen::VectorXd basis = Eigen::VectorXd::Zero(dim);
    for (int j = 0; j < dim; ++j) {
        basis(j) = 1.0;
        matrix.col(j) = to_real_coords(space, map(from_real_coords(space, basis)));
        basis(j) = 0.0;
    }
    return matrix;
}

/// T(x,y): z -> {x,y,z}, complex linear.
template <typename Space>
Eigen::MatrixXd operator_T(const Space& space, const typename Space::Point& x,
                           const typename Space::Point& y) {
    return materialize(space, [&](const typename Space::Point& z) {
        return space.triple(x, y, z);
    });
}

/// Q(x): y -> {x,y,x}/2, complex antilinear.
template <typename Space>
Eigen::MatrixXd operator_Q(const Space& space, const typename Space::Point& x) {
    return materialize(space, [&](const typename Space::Point& y) {
        return typename Space::Point(0.5 * space.triple(x, y, x));
    });
}

/// Bergman operator B(x,y) = id - T(x,y) + Q(x)Q(y), complex linear.
template <typename Space>
Eigen::MatrixXd operator_B(const Space& space, const typename Space::Point& x,
                           const typename Space::Point& y) {
    return materialize(space, [&](const typename Space::Point& z) {
        const typename Space::Point qyz = 0.5 * space.triple(y, z, y);
        const typename Space::Point qxqyz = 0.5 * space.triple(x, qyz, x);
        return typename Space::Point(z - space.triple(x, y, z) + qxqyz);
    });
}

/// Action of B(x,y) on a single point without materializing the matrix.
template <typename Space>
typename Space::Point apply_B(const Space& space, const typename Space::Point& x,
                              const typename Space::Point& y, const typename Space::Point& z) {
    const typename Space::Point qyz = 0.5 * space.triple(y, z, y);
    const typename Space::Point qxqyz = 0.5 * space.triple(x, qyz, x);
    return z - space.triple(x, y, z) + qxqyz;
}

/// Complex trace of T(x,y); tr T(u,v) is the positivity form (u|v).
/// (The real-coordinate matrix of T has trace 2 Re tr.)
template <typename Space>
std::complex<double> trace_T(const Space& space, const typename Space::Point& x,
                             const typename Space::Point& y) {
    const int n = space.complex_dim();
    std::complex<double> trace = 0.0;
    Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(n);
    for (int j = 0; j < n; ++j) {
        basis(j) = 1.0;
        trace += space.to_flat(space.triple(x, y, space.from_flat(basis)))(j);
        basis(j) = 0.0;
    }
    return trace;
}

/// Membership in the bounded realization: spectral norm < 1. Equivalent to
/// positive definiteness of B(z,z).
template <typename Space>
bool is_in_domain(const Space& space, const typename Space::Point& z) {
    return space.spectral_norm(z) < 1.0;
}

/// Odd power z^(2p+1), defined by z^(1) = z, z^(2p+1) = Q(z) z^(2p-1).
template <typename Space>
typename Space::Point odd_power(const Space& space, const typename Space::Point& z, int p) {
    if (p < 0) throw Error("odd power index must be nonnegative");
    typename Space::Point result = z;
    for (int i = 0; i < p; ++i) result = 0.5 * space.triple(z, result, z);
    return result;
}

/// F(z) = sum_j f(lambda_j) c_j over the spectral decomposition of z; f is
/// sampled only at the positive eigenvalues, oddness is the caller's
/// contract. Throws FunctionDomainError when f is not finite at one of them.
template <typename Space>
typename Space::Point functional_calculus(const Space& space,
                                          const std::function<double(double)>& f,
                                          const typename Space::Point& z) {
    const auto decomposition = space.spectral_decompose(z);
    typename Space::Point result = space.zero();
    for (size_t j = 0; j < decomposition.terms(); ++j) {
        const double value = f(decomposition.eigenvalues[j]);
        if (!std::isfinite(value)) {
            throw FunctionDomainError("function not finite at eigenvalue " +
                                      std::to_string(decomposition.eigenvalues[j]));
        }
        result += value * decomposition.tripotents[j];
    }
    return result;
}

} // namespace volent::jts

#endif
