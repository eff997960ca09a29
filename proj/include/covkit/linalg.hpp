#pragma once

// Dense small-vector / small-matrix primitives shared by every module:
// inner products, norms, adjoint action, symmetric eigensolves and the
// minimum singular value (min over unit y of ||J^T y||).

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace covkit {

/// A finite real coordinate tuple. Doubles as a vector in R^n and as a
/// covector y in R^m; immutable by convention (all APIs take const&).
class Point {
  public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    static Point zeros(int dim);

    int dim() const { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& coords() const { return coords_; }

    bool is_zero(double tol = 0.0) const;

  private:
    std::vector<double> coords_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double c, const Point& a);
bool operator==(const Point& a, const Point& b);

/// Canonical pairing sum_i a_i b_i. Throws on dimension mismatch.
double inner(const Point& a, const Point& b);

/// Euclidean norm sqrt(inner(a, a)).
double norm(const Point& a);

/// Euclidean distance ||a - b||.
double distance(const Point& a, const Point& b);

/// Dense m x n matrix of partials, entry (i, j) = d f_i / d x_j at a point.
/// Stored output-major (standard Jacobian); the coderivative action on a
/// covector y is adjoint_apply(J, y) = J^T y.
class Jacobian {
  public:
    Jacobian(int rows, int cols);
    Jacobian(int rows, int cols, std::vector<double> row_major);
    Jacobian(std::initializer_list<std::initializer_list<double>> rows);

    static Jacobian identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double operator()(int i, int j) const { return data_[idx(i, j)]; }
    double& operator()(int i, int j) { return data_[idx(i, j)]; }

    /// Matrix-vector product J x, x in R^n.
    Point apply(const Point& x) const;

    Jacobian transposed() const;
    double frobenius_norm() const;

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

Jacobian operator*(double c, const Jacobian& j);
Jacobian operator+(const Jacobian& a, const Jacobian& b);
Jacobian operator-(const Jacobian& a, const Jacobian& b);

/// Adjoint action J^T y, y in R^m. Satisfies <J^T y, x> = <y, J x>.
Point adjoint_apply(const Jacobian& j, const Point& y);

/// Minimum singular value: min over unit y in R^m of ||J^T y||, i.e. the
/// square root of the smallest eigenvalue of J J^T. Square 2x2 input goes
/// through the product-of-singular-values route |det J| / sigma_max, which
/// stays exact (no cancellation) on rank-one input. Rank-deficient J
/// returns 0.
double min_singular_value(const Jacobian& j, double rel_tol = 1e-12);

/// Largest singular value, sqrt of the largest eigenvalue of J J^T.
double max_singular_value(const Jacobian& j, double rel_tol = 1e-12);

/// Eigen decomposition of a symmetric 2x2 matrix, eigenvalues ascending with
/// orthonormal eigenvectors. Throws if the input is not 2x2 or not symmetric
/// within sym_tol.
struct SymEig2 {
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    Point v_lo;
    Point v_hi;
};
SymEig2 sym_eig_2x2(const Jacobian& a, double sym_tol = 1e-9);

/// Full spectrum of a symmetric m x m matrix by cyclic Jacobi rotations,
/// eigenvalues ascending, eigenvectors orthonormal (columns reported as
/// Points). Converged to rel_tol on the off-diagonal mass.
struct SymSpectrum {
    std::vector<double> values;
    std::vector<Point> vectors;
};
SymSpectrum sym_eigensolve(const Jacobian& a, double rel_tol = 1e-13);

/// J J^T as an m x m symmetric matrix.
Jacobian gram_outer(const Jacobian& j);

/// Closed ball B(center, radius).
struct Ball {
    Point center;
    double radius = 0.0;

    Ball(Point c, double r);
    bool contains(const Point& x) const;
};

/// Shared numeric knobs. singular_floor is the value below which singular
/// values are reported as exact zeros in verdicts.
struct Tolerances {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double singular_floor = 1e-9;

    void validate() const;
};

}  // namespace covkit
