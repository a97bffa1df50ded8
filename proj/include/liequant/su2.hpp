#pragma once

// su(2) irreducible representations D_j, Clebsch-Gordan decomposition of
// D_k ⊗ D_l, spinor inner products, and decomposition of restricted
// representations into irreducible blocks. Spins are passed as 2j.

#include "liequant/lie.hpp"
#include "liequant/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace liequant::su2 {

inline int twice_spin(double j) {
    const double t = 2.0 * j;
    const double r = std::round(t);
    if (!(t >= 0.0) || std::abs(t - r) > 1e-12 || r > 1e6) throw Error("bad_spin", "2j must be a nonnegative integer");
    return static_cast<int>(r);
}

// Basis ordered by descending t3 eigenvalue j, j-1, ..., -j.
struct IrrepDj {
    int two_j = 0;
    ComplexMatrix t3 = ComplexMatrix(1, 1);
    ComplexMatrix Lplus = ComplexMatrix(1, 1);
    ComplexMatrix Lminus = ComplexMatrix(1, 1);

    double j() const { return 0.5 * two_j; }
    std::size_t dim() const { return static_cast<std::size_t>(two_j) + 1; }
    ComplexMatrix t1() const { return (Lplus + Lminus) / 2.0; }
    ComplexMatrix t2() const { return (Lplus - Lminus) / (2.0 * I_unit); }
};

inline IrrepDj build_irrep(int two_j) {
    if (two_j < 0) throw Error("bad_spin", "2j must be a nonnegative integer");
    const std::size_t n = static_cast<std::size_t>(two_j) + 1;
    const double j = 0.5 * two_j;
    IrrepDj r;
    r.two_j = two_j;
    r.t3 = ComplexMatrix(n, n);
    r.Lplus = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double m = j - static_cast<double>(i);
        r.t3(i, i) = m;
        if (i > 0) r.Lplus(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    r.Lminus = r.Lplus.adjoint();
    return r;
}

// J^2 = L+ L- - t3 + t3^2.
inline ComplexMatrix casimir(const ComplexMatrix& t3, const ComplexMatrix& lp, const ComplexMatrix& lm) {
    return lp * lm - t3 + t3 * t3;
}

inline ComplexMatrix casimir(const IrrepDj& r) { return casimir(r.t3, r.Lplus, r.Lminus); }

struct TensorRep {
    ComplexMatrix t3, Lplus, Lminus;
};

inline TensorRep tensor(const IrrepDj& a, const IrrepDj& b) {
    const ComplexMatrix ia = ComplexMatrix::identity(a.dim()), ib = ComplexMatrix::identity(b.dim());
    return {kron(a.t3, ib) + kron(ia, b.t3), kron(a.Lplus, ib) + kron(ia, b.Lplus),
            kron(a.Lminus, ib) + kron(ia, b.Lminus)};
}

struct CGComponent {
    int two_j = 0;
    int multiplicity = 0;
};

struct CGResult {
    std::vector<CGComponent> components; // 2j descending
    // Columns: for each component, |j, j>, |j, j-1>, ..., |j, -j> in the
    // tensor basis (row index = i_k * dim(D_l) + i_l).
    ComplexMatrix isometry = ComplexMatrix(1, 1);
};

namespace detail {

struct Cluster {
    double value = 0.0;
    std::vector<std::size_t> cols;
};

inline std::vector<Cluster> cluster_eigenvalues(const HermitianEigen& e, double tol) {
    std::vector<Cluster> out;
    for (std::size_t i = 0; i < e.values.size(); ++i) {
        if (out.empty() || e.values[i] - out.back().value > tol) out.push_back({e.values[i], {}});
        out.back().cols.push_back(i);
    }
    return out;
}

inline ComplexMatrix columns(const ComplexMatrix& v, const std::vector<std::size_t>& cols) {
    ComplexMatrix out(v.rows(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t i = 0; i < v.rows(); ++i) out(i, c) = v(i, cols[c]);
    return out;
}

} // namespace detail

// D_k ⊗ D_l = D_{k+l} ⊕ D_{k+l-1} ⊕ ... ⊕ D_{|k-l|}, found numerically from
// J^2 and t3. Each block starts from its highest-weight vector, whose first
// nonzero tensor-basis component is made real positive, and descends with L-.
inline CGResult clebsch_gordan(int two_k, int two_l) {
    const IrrepDj dk = build_irrep(two_k), dl = build_irrep(two_l);
    const TensorRep t = tensor(dk, dl);
    const std::size_t n = dk.dim() * dl.dim();
    const ComplexMatrix j2 = casimir(t.t3, t.Lplus, t.Lminus);
    const HermitianEigen ej = eig_hermitian(j2);

    CGResult res;
    res.isometry = ComplexMatrix(n, n);
    std::size_t col = 0;
    auto clusters = detail::cluster_eigenvalues(ej, 1e-6);
    std::reverse(clusters.begin(), clusters.end());
    for (const auto& cl : clusters) {
        const double jj = 0.5 * (std::sqrt(1.0 + 4.0 * std::max(0.0, cl.value)) - 1.0);
        const int two_j = static_cast<int>(std::lround(2.0 * jj));
        const std::size_t block = static_cast<std::size_t>(two_j) + 1;
        const ComplexMatrix v = detail::columns(ej.vectors, cl.cols);
        const HermitianEigen em = eig_hermitian(v.adjoint() * t.t3 * v);
        const int mult = static_cast<int>(cl.cols.size() / block);
        res.components.push_back({two_j, mult});
        // highest-weight space: the top `mult` t3 eigenvectors inside the cluster
        for (int copy = 0; copy < mult; ++copy) {
            CVector top = v * em.vectors.column(em.values.size() - 1 - static_cast<std::size_t>(copy));
            for (const cplx& c : top)
                if (std::abs(c) > 1e-10) {
                    const cplx phase = std::abs(c) / c;
                    for (auto& x : top) x *= phase;
                    break;
                }
            double m = 0.5 * two_j;
            CVector cur = top;
            for (std::size_t s = 0; s < block; ++s) {
                res.isometry.set_column(col++, cur);
                if (s + 1 == block) break;
                const double jv = 0.5 * two_j;
                const double c = std::sqrt(jv * (jv + 1.0) - m * (m - 1.0));
                cur = t.Lminus * cur;
                for (auto& x : cur) x /= c;
                m -= 1.0;
            }
        }
    }
    if (col != n) throw Error("cg_failed", "decomposition did not account for every dimension");
    return res;
}

inline std::size_t binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<std::size_t>(std::llround(r));
}

// <x,s|y,s> = (y* x)^{2s}.
inline cplx spinor_inner(const std::array<cplx, 2>& x, const std::array<cplx, 2>& y, int two_s) {
    return std::pow(std::conj(y[0]) * x[0] + std::conj(y[1]) * x[1], two_s);
}

// Same quantity through the monomials pi_k(x) = x1^k x2^{2s-k}, whose norms
// are 1 / C(2s, k): sum_k C(2s, k) pi_k(x) conj(pi_k(y)).
inline cplx spinor_inner_expansion(const std::array<cplx, 2>& x, const std::array<cplx, 2>& y, int two_s) {
    cplx s{};
    for (int k = 0; k <= two_s; ++k) {
        const cplx px = std::pow(x[0], k) * std::pow(x[1], two_s - k);
        const cplx py = std::pow(y[0], k) * std::pow(y[1], two_s - k);
        s += static_cast<double>(binomial(two_s, k)) * px * std::conj(py);
    }
    return s;
}

inline double spinor_gamma(int two_s) {
    const double s = 0.5 * two_s;
    return std::numbers::pi * std::numbers::pi / ((2.0 * s + 1.0) * (2.0 * s + 2.0));
}

namespace detail {

// Orthonormal basis of span{mats} (as vectors); returns residual of each
// probe matrix after projection.
inline std::vector<CVector> orthonormal_span(const std::vector<ComplexMatrix>& mats) {
    std::vector<CVector> q;
    for (const auto& m : mats) {
        CVector v(m.entries().begin(), m.entries().end());
        const double n0 = norm2(v);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : q) {
                const cplx c = inner(b, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
            }
        const double n = norm2(v);
        if (n > 1e-10 * std::max(1.0, n0)) {
            for (auto& x : v) x /= n;
            q.push_back(std::move(v));
        }
    }
    return q;
}

inline double projection_residual(const std::vector<CVector>& q, const ComplexMatrix& m) {
    CVector v(m.entries().begin(), m.entries().end());
    for (const auto& b : q) {
        const cplx c = inner(b, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
    return norm2(v);
}

// Basis of {T : [X, T] = 0 for all X in gens}.
inline std::vector<ComplexMatrix> commutant(const std::vector<ComplexMatrix>& gens, std::size_t n) {
    ComplexMatrix sys(gens.size() * n * n, n * n);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const ComplexMatrix& x = gens[g];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t row = g * n * n + i * n + j;
                for (std::size_t k = 0; k < n; ++k) {
                    sys(row, k * n + j) += x(i, k); // (X T)_ij
                    sys(row, i * n + k) -= x(k, j); // (T X)_ij
                }
            }
    }
    std::vector<ComplexMatrix> out;
    for (const auto& v : null_space(sys)) out.emplace_back(n, n, v);
    return out;
}

} // namespace detail

// Dimensions (descending) of the irreducible blocks of the restriction of a
// representation of dimension `dim` to the subalgebra spanned by `sub`. The
// Casimir of the subalgebra separates isotypic components; a generic
// Hermitian element of the commutant then splits each into single copies.
// The generator set must be closed under commutators and adjoints.
inline std::vector<std::size_t> decompose_restriction(const std::vector<ComplexMatrix>& big,
                                                      const std::vector<ComplexMatrix>& sub) {
    if (big.empty() || sub.empty()) throw Error("shape", "generator lists must be nonempty");
    const std::size_t n = big.front().rows();
    for (const auto& m : big)
        if (m.rows() != n || m.cols() != n) throw Error("shape", "representation matrices must share one size");
    for (const auto& m : sub)
        if (m.rows() != n || m.cols() != n) throw Error("shape", "subalgebra matrices must act on the same space");

    const auto span = detail::orthonormal_span(sub);
    if (span.empty()) return std::vector<std::size_t>(n, 1);
    for (const auto& x : sub) {
        const double scale = std::max(1.0, x.norm_fro());
        for (const auto& y : sub)
            if (detail::projection_residual(span, commutator(x, y)) > 1e-9 * scale * std::max(1.0, y.norm_fro()))
                throw Error("not_subalgebra", "commutators leave the span of the subalgebra generators");
        if (detail::projection_residual(span, x.adjoint()) > 1e-9 * scale)
            throw Error("not_subalgebra", "subalgebra span is not closed under adjoints");
    }

    // generic Hermitian element of the commutant
    const auto comm = detail::commutant(sub, n);
    std::mt19937_64 gen(0x5eed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    ComplexMatrix t(n, n);
    for (const auto& c : comm) t += cplx(uni(gen), uni(gen)) * c;
    const ComplexMatrix h = t + t.adjoint();

    // Casimir from the inverse Killing form when the subalgebra is semisimple
    std::vector<ComplexMatrix> basis;
    for (const auto& b : span) basis.emplace_back(n, n, b);
    ComplexMatrix cas(n, n);
    bool have_casimir = false;
    try {
        std::vector<std::string> names(basis.size(), "x");
        const auto lb = lie::structure_constants("sub", names, basis);
        const ComplexMatrix kf = lie::killing_form(lb);
        if (lie::smallest_singular_value(kf) > 1e-8) {
            const ComplexMatrix kinv = inverse(kf);
            for (std::size_t a = 0; a < basis.size(); ++a)
                for (std::size_t b = 0; b < basis.size(); ++b)
                    if (kinv(a, b) != cplx{}) cas += kinv(a, b) * (basis[a] * basis[b]);
            have_casimir = true;
        }
    } catch (const Error&) {
        have_casimir = false;
    }

    std::vector<ComplexMatrix> pieces;
    if (have_casimir && is_hermitian(cas, Tolerance{1e-8, 1e-8})) {
        const auto ec = eig_hermitian(cas);
        for (const auto& cl : detail::cluster_eigenvalues(ec, 1e-6 * std::max(1.0, cas.norm_max())))
            pieces.push_back(detail::columns(ec.vectors, cl.cols));
    } else {
        pieces.push_back(ComplexMatrix::identity(n));
    }

    std::vector<std::size_t> dims;
    for (const auto& v : pieces) {
        const auto eh = eig_hermitian(v.adjoint() * h * v);
        for (const auto& cl : detail::cluster_eigenvalues(eh, 1e-6 * std::max(1.0, h.norm_max())))
            dims.push_back(cl.cols.size());
    }
    std::sort(dims.rbegin(), dims.rend());
    return dims;
}

} // namespace liequant::su2
