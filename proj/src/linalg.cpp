#include "covkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace covkit {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + ": entries must be finite");
        }
    }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw std::invalid_argument("Point: dimension must be >= 1");
    require_finite(coords_, "Point");
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::zeros(int dim) {
    if (dim < 1) throw std::invalid_argument("Point: dimension must be >= 1");
    return Point(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
}

bool Point::is_zero(double tol) const {
    for (double x : coords_) {
        if (std::abs(x) > tol) return false;
    }
    return true;
}

Point operator+(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Point +: dimension mismatch");
    std::vector<double> out(a.coords());
    for (int i = 0; i < b.dim(); ++i) out[static_cast<std::size_t>(i)] += b[i];
    return Point(std::move(out));
}

Point operator-(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Point -: dimension mismatch");
    std::vector<double> out(a.coords());
    for (int i = 0; i < b.dim(); ++i) out[static_cast<std::size_t>(i)] -= b[i];
    return Point(std::move(out));
}

Point operator*(double c, const Point& a) {
    std::vector<double> out(a.coords());
    for (double& x : out) x *= c;
    return Point(std::move(out));
}

bool operator==(const Point& a, const Point& b) { return a.coords() == b.coords(); }

double inner(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Point& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * a[i];
    return std::sqrt(s);
}

double distance(const Point& a, const Point& b) { return norm(a - b); }

Jacobian::Jacobian(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("Jacobian: rows and cols must be >= 1");
    data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
}

Jacobian::Jacobian(int rows, int cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("Jacobian: rows and cols must be >= 1");
    if (data_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw std::invalid_argument("Jacobian: entry count does not match rows*cols");
    }
    require_finite(data_, "Jacobian");
}

Jacobian::Jacobian(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    if (rows_ < 1) throw std::invalid_argument("Jacobian: rows must be >= 1");
    cols_ = static_cast<int>(rows.begin()->size());
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) {
            throw std::invalid_argument("Jacobian: ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
    if (cols_ < 1) throw std::invalid_argument("Jacobian: cols must be >= 1");
    require_finite(data_, "Jacobian");
}

Jacobian Jacobian::identity(int n) {
    Jacobian j(n, n);
    for (int i = 0; i < n; ++i) j(i, i) = 1.0;
    return j;
}

Point Jacobian::apply(const Point& x) const {
    if (x.dim() != cols_) throw std::invalid_argument("Jacobian::apply: dimension mismatch");
    std::vector<double> out(static_cast<std::size_t>(rows_), 0.0);
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        out[static_cast<std::size_t>(i)] = s;
    }
    return Point(std::move(out));
}

Jacobian Jacobian::transposed() const {
    Jacobian t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Jacobian::frobenius_norm() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

Jacobian operator*(double c, const Jacobian& j) {
    Jacobian out = j;
    for (int i = 0; i < j.rows(); ++i)
        for (int k = 0; k < j.cols(); ++k) out(i, k) *= c;
    return out;
}

Jacobian operator+(const Jacobian& a, const Jacobian& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("Jacobian +: shape mismatch");
    }
    Jacobian out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

Jacobian operator-(const Jacobian& a, const Jacobian& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("Jacobian -: shape mismatch");
    }
    Jacobian out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

Point adjoint_apply(const Jacobian& j, const Point& y) {
    if (y.dim() != j.rows()) throw std::invalid_argument("adjoint_apply: dim(y) must equal J.rows");
    std::vector<double> out(static_cast<std::size_t>(j.cols()), 0.0);
    for (int c = 0; c < j.cols(); ++c) {
        double s = 0.0;
        for (int r = 0; r < j.rows(); ++r) s += j(r, c) * y[r];
        out[static_cast<std::size_t>(c)] = s;
    }
    return Point(std::move(out));
}

Jacobian gram_outer(const Jacobian& j) {
    Jacobian g(j.rows(), j.rows());
    for (int a = 0; a < j.rows(); ++a) {
        for (int b = a; b < j.rows(); ++b) {
            double s = 0.0;
            for (int c = 0; c < j.cols(); ++c) s += j(a, c) * j(b, c);
            g(a, b) = s;
            g(b, a) = s;
        }
    }
    return g;
}

namespace {

// Smallest/largest eigenvalue of a symmetric 2x2 [[a,b],[b,c]].
double eig2_lo(double a, double b, double c) {
    double half_diff = 0.5 * (a - c);
    double disc = std::hypot(half_diff, b);
    return 0.5 * (a + c) - disc;
}

double eig2_hi(double a, double b, double c) {
    double half_diff = 0.5 * (a - c);
    double disc = std::hypot(half_diff, b);
    return 0.5 * (a + c) + disc;
}

}  // namespace

double min_singular_value(const Jacobian& j, double rel_tol) {
    const int m = j.rows();
    const int n = j.cols();
    if (m > n) return 0.0;  // J^T has a nontrivial kernel
    if (m == 1) {
        // unit y is +-1, so the min is the row norm
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += j(0, c) * j(0, c);
        return std::sqrt(s);
    }
    if (m == 2 && n == 2) {
        // sigma_min * sigma_max = |det|; the determinant route keeps exact
        // rank-one inputs at zero instead of sqrt(cancellation noise).
        double det = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
        Jacobian g = gram_outer(j);
        double smax2 = eig2_hi(g(0, 0), g(0, 1), g(1, 1));
        if (smax2 <= 0.0) return 0.0;
        return std::abs(det) / std::sqrt(smax2);
    }
    Jacobian g = gram_outer(j);
    if (m == 2) {
        double lo = eig2_lo(g(0, 0), g(0, 1), g(1, 1));
        return std::sqrt(std::max(lo, 0.0));
    }
    SymSpectrum sp = sym_eigensolve(g, rel_tol);
    return std::sqrt(std::max(sp.values.front(), 0.0));
}

double max_singular_value(const Jacobian& j, double rel_tol) {
    Jacobian g = gram_outer(j);
    const int m = j.rows();
    if (m == 1) return std::sqrt(g(0, 0));
    if (m == 2) return std::sqrt(std::max(eig2_hi(g(0, 0), g(0, 1), g(1, 1)), 0.0));
    SymSpectrum sp = sym_eigensolve(g, rel_tol);
    return std::sqrt(std::max(sp.values.back(), 0.0));
}

SymEig2 sym_eig_2x2(const Jacobian& a, double sym_tol) {
    if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("sym_eig_2x2: matrix must be 2x2");
    if (std::abs(a(0, 1) - a(1, 0)) > sym_tol) {
        throw std::invalid_argument("sym_eig_2x2: matrix is not symmetric within tolerance");
    }
    const double p = a(0, 0);
    const double q = 0.5 * (a(0, 1) + a(1, 0));
    const double r = a(1, 1);

    SymEig2 out;
    out.lambda_lo = eig2_lo(p, q, r);
    out.lambda_hi = eig2_hi(p, q, r);

    if (q == 0.0) {
        if (p <= r) {
            out.v_lo = Point{1.0, 0.0};
            out.v_hi = Point{0.0, 1.0};
        } else {
            out.v_lo = Point{0.0, 1.0};
            out.v_hi = Point{1.0, 0.0};
        }
        return out;
    }
    // (A - lambda I) v = 0: pick the larger pivot for v_hi, then take the
    // orthogonal complement for v_lo.
    Point v_hi = std::abs(out.lambda_hi - r) >= std::abs(out.lambda_hi - p)
                     ? Point{out.lambda_hi - r, q}
                     : Point{q, out.lambda_hi - p};
    double len = norm(v_hi);
    out.v_hi = (1.0 / len) * v_hi;
    out.v_lo = Point{-out.v_hi[1], out.v_hi[0]};
    return out;
}

SymSpectrum sym_eigensolve(const Jacobian& a, double rel_tol) {
    const int n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("sym_eigensolve: matrix must be square");
    Jacobian m = a;
    // symmetrize to guard against last-bit asymmetry
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = v;
            m(j, i) = v;
        }
    Jacobian v = Jacobian::identity(n);

    double scale = m.frobenius_norm();
    if (scale == 0.0) scale = 1.0;
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
        if (std::sqrt(off) <= rel_tol * scale) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (m(p, q) == 0.0) continue;
                double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                double t = std::copysign(1.0, theta) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return m(x, x) < m(y, y); });

    SymSpectrum out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.vectors.reserve(static_cast<std::size_t>(n));
    for (int col : order) {
        out.values.push_back(m(col, col));
        std::vector<double> vec(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) vec[static_cast<std::size_t>(k)] = v(k, col);
        out.vectors.emplace_back(std::move(vec));
    }
    return out;
}

Ball::Ball(Point c, double r) : center(std::move(c)), radius(r) {
    if (!(r >= 0.0)) throw std::invalid_argument("Ball: radius must be >= 0");
}

bool Ball::contains(const Point& x) const { return distance(x, center) <= radius; }

void Tolerances::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(singular_floor > 0.0)) {
        throw std::invalid_argument("Tolerances: all fields must be positive");
    }
    if (singular_floor < abs_tol) {
        throw std::invalid_argument("Tolerances: singular_floor must be >= abs_tol");
    }
}

}  // namespace covkit
