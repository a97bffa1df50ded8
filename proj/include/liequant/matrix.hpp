#pragma once

// Dense complex matrices and the handful of numerical kernels the rest of the
// library is built on: matrix exponential, a cyclic Jacobi eigensolver for
// Hermitian matrices, LU-based solves and a rank-revealing null space.

#include "liequant/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace liequant {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr cplx I_unit{0.0, 1.0};

struct Tolerance {
    double abs_eps = 1e-10;
    double rel_eps = 1e-10;

    constexpr Tolerance() = default;
    constexpr Tolerance(double abs, double rel) : abs_eps(abs), rel_eps(rel) {}

    void validate() const {
        if (!(abs_eps >= 0.0) || !(rel_eps >= 0.0) || (abs_eps == 0.0 && rel_eps == 0.0))
            throw Error("bad_tolerance", "need abs_eps > 0 or rel_eps > 0, both nonnegative");
    }

    // |x - y| within tolerance, relative part scaled by max(|x|, |y|).
    bool close(cplx x, cplx y) const {
        return std::abs(x - y) <= abs_eps + rel_eps * std::max(std::abs(x), std::abs(y));
    }
};

class ComplexMatrix {
public:
    ComplexMatrix() : ComplexMatrix(1, 1) {}

    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) throw Error("shape", "matrix dimensions must be positive");
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0) throw Error("shape", "matrix dimensions must be positive");
        if (data_.size() != rows * cols) throw Error("shape", "entry count does not match rows*cols");
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0) throw Error("shape", "matrix dimensions must be positive");
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw Error("shape", "ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zeros(std::size_t n) { return ComplexMatrix(n, n); }

    static ComplexMatrix diagonal(std::span<const double> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static ComplexMatrix diagonal(std::span<const cplx> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    // Matrix unit E_ij (zero-based).
    static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
        ComplexMatrix m(n, n);
        m(i, j) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const cplx> entries() const noexcept { return data_; }
    std::span<cplx> entries() noexcept { return data_; }

    CVector column(std::size_t j) const {
        CVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_column(std::size_t j, std::span<const cplx> v) {
        if (v.size() != rows_) throw Error("shape", "column length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& x : data_) x *= s;
        return *this;
    }
    ComplexMatrix& operator/=(cplx s) {
        for (auto& x : data_) x /= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= cplx(s); }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= cplx(s); }
    friend ComplexMatrix operator/(ComplexMatrix a, cplx s) { return a /= s; }
    friend ComplexMatrix operator/(ComplexMatrix a, double s) { return a /= cplx(s); }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= cplx(-1.0); }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) throw Error("shape", "inner dimensions differ in product");
        ComplexMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                const cplx* brow = &b.data_[k * b.cols_];
                cplx* crow = &c.data_[i * c.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
            }
        }
        return c;
    }

    friend CVector operator*(const ComplexMatrix& a, std::span<const cplx> x) {
        if (a.cols_ != x.size()) throw Error("shape", "vector length mismatch");
        CVector y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            cplx s{};
            for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
        return t;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix t = *this;
        for (auto& x : t.data_) x = std::conj(x);
        return t;
    }

    cplx trace() const {
        require_square("trace");
        cplx s{};
        for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
        return s;
    }

    double norm_fro() const {
        double s = 0.0;
        for (const auto& x : data_) s += std::norm(x);
        return std::sqrt(s);
    }

    double norm_max() const {
        double m = 0.0;
        for (const auto& x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    // Induced 1-norm (max column sum).
    double norm_1() const {
        double m = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
            m = std::max(m, s);
        }
        return m;
    }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(),
                           [](cplx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
    }

    bool is_real(double eps = 0.0) const {
        return std::all_of(data_.begin(), data_.end(), [eps](cplx x) { return std::abs(x.imag()) <= eps; });
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](cplx x) { return x == cplx{}; });
    }

    void require_square(const char* what) const {
        if (!is_square()) throw Error("shape", std::string(what) + " needs a square matrix");
    }

    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("shape", "operand shapes differ");
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.require_same_shape(b);
    double m = 0.0;
    auto x = a.entries();
    auto y = b.entries();
    for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k] - y[k]));
    return m;
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol = {}) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    auto x = a.entries();
    auto y = b.entries();
    for (std::size_t k = 0; k < x.size(); ++k)
        if (!tol.close(x[k], y[k])) return false;
    return true;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw Error("shape", "commutator needs square matrices of equal size");
    return a * b - b * a;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw Error("shape", "anticommutator needs square matrices of equal size");
    return a * b + b * a;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return k;
}

inline cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size()) throw Error("shape", "vector length mismatch");
    cplx s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline double norm2(std::span<const cplx> x) { return std::sqrt(std::real(inner(x, x))); }

namespace detail {

inline bool strictly_triangular(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    bool upper = true, lower = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a(i, j) == cplx{}) continue;
            if (j <= i) upper = false;
            if (j >= i) lower = false;
        }
    return upper || lower;
}

} // namespace detail

// Matrix exponential by scaling and squaring of the truncated power series.
// The scaled matrix has 1-norm <= 0.5. Strictly triangular input is nilpotent,
// so the series terminates and is summed directly.
inline ComplexMatrix expm(const ComplexMatrix& a) {
    a.require_square("expm");
    const std::size_t n = a.rows();

    if (detail::strictly_triangular(a)) {
        ComplexMatrix sum = ComplexMatrix::identity(n);
        ComplexMatrix term = ComplexMatrix::identity(n);
        for (std::size_t k = 1; k < n; ++k) {
            term = term * a / static_cast<double>(k);
            if (term.is_zero()) break;
            sum += term;
        }
        return sum;
    }

    const double norm = a.norm_1();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    ComplexMatrix b = a * std::ldexp(1.0, -squarings);

    ComplexMatrix sum = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
        if (term.norm_max() <= 1e-18 * sum.norm_max()) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

inline bool is_hermitian(const ComplexMatrix& a, const Tolerance& tol = {}) {
    a.require_square("is_hermitian");
    return approx_equal(a, a.adjoint(), tol);
}

inline bool is_antihermitian(const ComplexMatrix& a, const Tolerance& tol = {}) {
    a.require_square("is_antihermitian");
    return approx_equal(a, -a.adjoint(), tol);
}

inline bool is_unitary(const ComplexMatrix& a, const Tolerance& tol = {}) {
    a.require_square("is_unitary");
    return approx_equal(a.adjoint() * a, ComplexMatrix::identity(a.rows()), tol);
}

// LU factorization with partial pivoting, packed in place.
struct LU {
    ComplexMatrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;

    explicit LU(const ComplexMatrix& a) : lu(a), perm(a.rows()) {
        a.require_square("LU");
        const std::size_t n = a.rows();
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = std::abs(lu(k, k));
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(lu(i, k)) > best) best = std::abs(lu(i, k)), p = i;
            if (best == 0.0) {
                singular = true;
                continue;
            }
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
                std::swap(perm[k], perm[p]);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                lu(i, k) /= lu(k, k);
                const cplx f = lu(i, k);
                for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            }
        }
    }

    cplx determinant() const {
        cplx d = static_cast<double>(sign);
        for (std::size_t i = 0; i < lu.rows(); ++i) d *= lu(i, i);
        return d;
    }

    CVector solve(std::span<const cplx> b) const {
        if (singular) throw Error("singular", "matrix is singular");
        const std::size_t n = lu.rows();
        CVector x(n);
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = b[perm[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            cplx s = x[i];
            for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
            x[i] = s / lu(i, i);
        }
        return x;
    }
};

inline cplx determinant(const ComplexMatrix& a) { return LU(a).determinant(); }

inline ComplexMatrix inverse(const ComplexMatrix& a) {
    LU f(a);
    const std::size_t n = a.rows();
    ComplexMatrix inv(n, n);
    CVector e(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), cplx{});
        e[j] = 1.0;
        inv.set_column(j, f.solve(e));
    }
    return inv;
}

inline bool is_special_orthogonal(const ComplexMatrix& a, const Tolerance& tol = {}) {
    a.require_square("is_special_orthogonal");
    if (!a.is_real(tol.abs_eps)) return false;
    if (!approx_equal(a.transpose() * a, ComplexMatrix::identity(a.rows()), tol)) return false;
    return tol.close(determinant(a), 1.0);
}

struct HermitianEigen {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // column k belongs to values[k]
};

// Cyclic Jacobi sweeps. Each rotation first removes the phase of the pivot
// entry, then applies a real plane rotation. Stops when the off-diagonal
// Frobenius norm drops below 1e-13 * ||a||_F.
inline HermitianEigen eig_hermitian(const ComplexMatrix& a) {
    a.require_square("eig_hermitian");
    const std::size_t n = a.rows();
    const double scale = a.norm_max();
    if (max_abs_diff(a, a.adjoint()) > 1e-10 * (1.0 + scale))
        throw Error("not_hermitian", "eig_hermitian needs a Hermitian matrix");

    ComplexMatrix m = (a + a.adjoint()) * 0.5;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double target = 1e-13 * m.norm_fro();

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(m(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const cplx phase = apq / mag;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
                const cplx gpp = c, gpq = s;
                const cplx gqp = -s * std::conj(phase), gqq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = mkp * gpp + mkq * gqp;
                    m(k, q) = mkp * gpq + mkq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = std::conj(gpp) * mpk + std::conj(gqp) * mqk;
                    m(q, k) = std::conj(gpq) * mpk + std::conj(gqq) * mqk;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                m(p, p) = m(p, p).real();
                m(q, q) = m(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return m(i, i).real() < m(j, j).real(); });
    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = m(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

// Orthonormal basis (as columns) of {x : a x = 0}, via Gauss-Jordan elimination
// with complete pivoting. Pivots below rel_tol * max|a| count as zero.
// Returns an empty vector of columns when the kernel is trivial.
inline std::vector<CVector> null_space(const ComplexMatrix& a, double rel_tol = 1e-10) {
    ComplexMatrix m = a;
    const std::size_t rows = m.rows(), cols = m.cols();
    const double thresh = rel_tol * std::max(m.norm_max(), 1e-300);
    std::vector<std::size_t> colperm(cols);
    std::iota(colperm.begin(), colperm.end(), std::size_t{0});

    std::size_t rank = 0;
    for (; rank < std::min(rows, cols); ++rank) {
        std::size_t pi = rank, pj = rank;
        double best = 0.0;
        for (std::size_t i = rank; i < rows; ++i)
            for (std::size_t j = rank; j < cols; ++j)
                if (std::abs(m(i, j)) > best) best = std::abs(m(i, j)), pi = i, pj = j;
        if (best <= thresh) break;
        if (pi != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(rank, j), m(pi, j));
        if (pj != rank) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, rank), m(i, pj));
            std::swap(colperm[rank], colperm[pj]);
        }
        const cplx piv = m(rank, rank);
        for (std::size_t j = rank; j < cols; ++j) m(rank, j) /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            const cplx f = m(i, rank);
            if (f == cplx{}) continue;
            for (std::size_t j = rank; j < cols; ++j) m(i, j) -= f * m(rank, j);
        }
    }

    std::vector<CVector> basis;
    for (std::size_t f = rank; f < cols; ++f) {
        CVector x(cols);
        x[colperm[f]] = 1.0;
        for (std::size_t r = 0; r < rank; ++r) x[colperm[r]] = -m(r, f);
        basis.push_back(std::move(x));
    }
    // Modified Gram-Schmidt.
    for (std::size_t k = 0; k < basis.size(); ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            const cplx proj = inner(basis[j], basis[k]);
            for (std::size_t i = 0; i < cols; ++i) basis[k][i] -= proj * basis[j][i];
        }
        const double nrm = norm2(basis[k]);
        for (auto& x : basis[k]) x /= nrm;
    }
    return basis;
}

} // namespace liequant
