#pragma once

// Lie algebras given by structure constants, their matrix realizations, and
// the invariants computed from them (Jacobi residual, Killing form,
// semisimplicity, Weyl relations for central commutators).

#include "liequant/matrix.hpp"

#include <array>
#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace liequant::lie {

inline constexpr std::size_t max_dim = 64;

// X_j ⊣ X_k = sum_l c(j,k,l) X_l, stored densely.
class LieAlgebraBasis {
public:
    LieAlgebraBasis() = default;

    LieAlgebraBasis(std::string name, std::vector<std::string> names)
        : name_(std::move(name)), names_(std::move(names)), c_(cube(names_.size())) {
        if (names_.empty()) throw Error("shape", "algebra needs at least one generator");
        if (names_.size() > max_dim) throw Error("too_large", "dimension capped at 64");
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    cplx& operator()(std::size_t j, std::size_t k, std::size_t l) { return c_[(j * dim() + k) * dim() + l]; }
    cplx operator()(std::size_t j, std::size_t k, std::size_t l) const { return c_[(j * dim() + k) * dim() + l]; }

    // Largest |c_jkl + c_kjl|.
    double antisymmetry_defect() const {
        double m = 0.0;
        for (std::size_t j = 0; j < dim(); ++j)
            for (std::size_t k = 0; k < dim(); ++k)
                for (std::size_t l = 0; l < dim(); ++l) m = std::max(m, std::abs((*this)(j, k, l) + (*this)(k, j, l)));
        return m;
    }

    // ad_j as a dim x dim matrix, (ad_j)_{lk} = c_jkl.
    ComplexMatrix ad(std::size_t j) const {
        ComplexMatrix m(dim(), dim());
        for (std::size_t k = 0; k < dim(); ++k)
            for (std::size_t l = 0; l < dim(); ++l) m(l, k) = (*this)(j, k, l);
        return m;
    }

private:
    static std::size_t cube(std::size_t n) { return n * n * n; }

    std::string name_;
    std::vector<std::string> names_;
    std::vector<cplx> c_;
};

enum class ProductConvention {
    commutator, // f ⊣ g = fg - gf
    quantum,    // f ⊣ g = (i/hbar)(fg - gf)
};

struct MatrixRealization {
    LieAlgebraBasis basis;
    std::vector<ComplexMatrix> mats;
    ProductConvention convention = ProductConvention::commutator;
    double hbar = 1.0;

    ComplexMatrix product(const ComplexMatrix& a, const ComplexMatrix& b) const {
        ComplexMatrix c = commutator(a, b);
        if (convention == ProductConvention::quantum) c *= I_unit / hbar;
        return c;
    }

    // max over j,k of the entrywise defect of mats[j] ⊣ mats[k] - sum_l c_jkl mats[l].
    double consistency_residual() const {
        double worst = 0.0;
        const std::size_t n = basis.dim();
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                ComplexMatrix expect(mats[0].rows(), mats[0].cols());
                for (std::size_t l = 0; l < n; ++l)
                    if (basis(j, k, l) != cplx{}) expect += basis(j, k, l) * mats[l];
                worst = std::max(worst, max_abs_diff(product(mats[j], mats[k]), expect));
            }
        return worst;
    }
};

// Coordinates of x ⊣ y for algebra elements given in basis coordinates.
inline CVector bracket(const LieAlgebraBasis& b, std::span<const cplx> x, std::span<const cplx> y) {
    const std::size_t n = b.dim();
    if (x.size() != n || y.size() != n) throw Error("shape", "coordinate length differs from dimension");
    CVector z(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j] == cplx{}) continue;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx w = x[j] * y[k];
            if (w == cplx{}) continue;
            for (std::size_t l = 0; l < n; ++l) z[l] += w * b(j, k, l);
        }
    }
    return z;
}

// Max |sum_m c_jkm c_mln + c_klm c_mjn + c_ljm c_mkn| over all j,k,l,n.
inline double verify_jacobi(const LieAlgebraBasis& b) {
    const std::size_t n = b.dim();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t o = 0; o < n; ++o) {
                    cplx s{};
                    for (std::size_t m = 0; m < n; ++m)
                        s += b(j, k, m) * b(m, l, o) + b(k, l, m) * b(m, j, o) + b(l, j, m) * b(m, k, o);
                    worst = std::max(worst, std::abs(s));
                }
    return worst;
}

inline ComplexMatrix killing_form(const LieAlgebraBasis& b) {
    const std::size_t n = b.dim();
    std::vector<ComplexMatrix> ads;
    ads.reserve(n);
    for (std::size_t j = 0; j < n; ++j) ads.push_back(b.ad(j));
    ComplexMatrix kf(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j; k < n; ++k) {
            cplx t{};
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t m = 0; m < n; ++m) t += ads[j](l, m) * ads[k](m, l);
            kf(j, k) = t;
            kf(k, j) = t;
        }
    return kf;
}

inline double smallest_singular_value(const ComplexMatrix& a) {
    const auto e = eig_hermitian(a.adjoint() * a);
    return std::sqrt(std::max(0.0, e.values.front()));
}

// Cartan's criterion: semisimple iff the Killing form is nondegenerate.
inline bool is_semisimple(const LieAlgebraBasis& b, const Tolerance& tol = {}) {
    return smallest_singular_value(killing_form(b)) > tol.abs_eps * static_cast<double>(b.dim());
}

// Checks e^{A+B} = e^{-[A,B]/2} e^A e^B for A, B with central commutator.
inline bool weyl_check(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol = {}) {
    const ComplexMatrix c = commutator(a, b);
    const double scale = std::max({1.0, a.norm_max(), b.norm_max()});
    const double central_tol = tol.abs_eps + tol.rel_eps * scale * scale * scale;
    if (commutator(c, a).norm_max() > central_tol || commutator(c, b).norm_max() > central_tol)
        throw Error("not_central", "[A,B] does not commute with A and B");
    const ComplexMatrix lhs = expm(a + b);
    const ComplexMatrix rhs = expm(-0.5 * c) * expm(a) * expm(b);
    return max_abs_diff(lhs, rhs) <= 1e-9 * std::max(1.0, lhs.norm_max());
}

// Structure constants of the span of `mats` under the given product, found by
// projecting each product onto the span (Gram system). Entries within 1e-12 of
// an integer are snapped to it so integer tables come out exact.
inline LieAlgebraBasis structure_constants(std::string name, std::vector<std::string> names,
                                           const std::vector<ComplexMatrix>& mats,
                                           ProductConvention conv = ProductConvention::commutator,
                                           double hbar = 1.0) {
    LieAlgebraBasis basis(std::move(name), std::move(names));
    const std::size_t n = basis.dim();
    if (mats.size() != n) throw Error("shape", "one matrix per generator required");

    ComplexMatrix gram(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) gram(a, b) = inner(mats[a].entries(), mats[b].entries());
    const LU gram_lu(gram);
    if (gram_lu.singular || smallest_singular_value(gram) < 1e-12 * gram.norm_max())
        throw Error("dependent_generators", "generator matrices are linearly dependent");

    MatrixRealization probe{basis, mats, conv, hbar};
    auto snap = [](double x) {
        const double r = std::round(x);
        return std::abs(x - r) < 1e-12 ? r : x;
    };
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const ComplexMatrix p = probe.product(mats[j], mats[k]);
            CVector rhs(n);
            for (std::size_t a = 0; a < n; ++a) rhs[a] = inner(mats[a].entries(), p.entries());
            const CVector coef = gram_lu.solve(rhs);
            ComplexMatrix recon(p.rows(), p.cols());
            for (std::size_t l = 0; l < n; ++l) {
                basis(j, k, l) = {snap(coef[l].real()), snap(coef[l].imag())};
                recon += basis(j, k, l) * mats[l];
            }
            if (max_abs_diff(recon, p) > 1e-9 * std::max(1.0, p.norm_max()))
                throw Error("not_closed", "product leaves the span of the generators");
        }
    return basis;
}

inline MatrixRealization realize(std::string name, std::vector<std::string> names, std::vector<ComplexMatrix> mats,
                                 ProductConvention conv = ProductConvention::commutator, double hbar = 1.0) {
    auto basis = structure_constants(std::move(name), std::move(names), mats, conv, hbar);
    return MatrixRealization{std::move(basis), std::move(mats), conv, hbar};
}

inline ComplexMatrix pauli(int k) {
    switch (k) {
    case 1: return {{0.0, 1.0}, {1.0, 0.0}};
    case 2: return {{0.0, -I_unit}, {I_unit, 0.0}};
    case 3: return {{1.0, 0.0}, {0.0, -1.0}};
    default: throw Error("bad_index", "Pauli index must be 1, 2 or 3");
    }
}

inline double levi_civita(std::size_t i, std::size_t j, std::size_t k) {
    if (i == j || j == k || i == k) return 0.0;
    // (i, j, k) is a permutation of (0, 1, 2)
    return ((j + 3 - i) % 3 == 1) ? 1.0 : -1.0;
}

// L_k with (L_k)_{ij} = -eps_{kij}; L_k v = e_k x v.
inline ComplexMatrix so3_generator(std::size_t k) {
    ComplexMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = -levi_civita(k, i, j);
    return m;
}

namespace detail {

inline std::string idx(std::size_t i) { return std::to_string(i + 1); }

inline MatrixRealization make_gl(std::size_t n) {
    std::vector<std::string> names;
    std::vector<ComplexMatrix> mats;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            names.push_back("E" + idx(i) + idx(j));
            mats.push_back(ComplexMatrix::unit(n, i, j));
        }
    return realize("gl(" + std::to_string(n) + ")", std::move(names), std::move(mats));
}

inline MatrixRealization make_sl(std::size_t n) {
    std::vector<std::string> names;
    std::vector<ComplexMatrix> mats;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                names.push_back("E" + idx(i) + idx(j));
                mats.push_back(ComplexMatrix::unit(n, i, j));
            }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        names.push_back("H" + idx(i));
        mats.push_back(ComplexMatrix::unit(n, i, i) - ComplexMatrix::unit(n, i + 1, i + 1));
    }
    return realize("sl(" + std::to_string(n) + ")", std::move(names), std::move(mats));
}

// X^T eta + eta X = 0 with eta = diag(1_p, -1_q).
inline MatrixRealization make_so(std::size_t p, std::size_t q) {
    const std::size_t n = p + q;
    auto eta = [p](std::size_t i) { return i < p ? 1.0 : -1.0; };
    std::vector<std::string> names;
    std::vector<ComplexMatrix> mats;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            names.push_back("M" + idx(i) + idx(j));
            mats.push_back(ComplexMatrix::unit(n, i, j) * eta(j) - ComplexMatrix::unit(n, j, i) * eta(i));
        }
    return realize("so(" + std::to_string(p) + "," + std::to_string(q) + ")", std::move(names), std::move(mats));
}

// X^T Omega + Omega X = 0 with Omega = [[0, 1], [-1, 0]] in n x n blocks.
inline MatrixRealization make_sp(std::size_t half) {
    const std::size_t n = 2 * half;
    std::vector<std::string> names;
    std::vector<ComplexMatrix> mats;
    for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = 0; j < half; ++j) {
            names.push_back("A" + idx(i) + idx(j));
            mats.push_back(ComplexMatrix::unit(n, i, j) - ComplexMatrix::unit(n, half + j, half + i));
        }
    for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = i; j < half; ++j) {
            names.push_back("B" + idx(i) + idx(j));
            ComplexMatrix b = ComplexMatrix::unit(n, i, half + j);
            if (i != j) b += ComplexMatrix::unit(n, j, half + i);
            mats.push_back(b);
        }
    for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = i; j < half; ++j) {
            names.push_back("C" + idx(i) + idx(j));
            ComplexMatrix c = ComplexMatrix::unit(n, half + i, j);
            if (i != j) c += ComplexMatrix::unit(n, half + j, i);
            mats.push_back(c);
        }
    return realize("sp(" + std::to_string(n) + ")", std::move(names), std::move(mats));
}

inline std::vector<std::size_t> parse_args(std::string_view spec, std::string_view head) {
    std::vector<std::size_t> out;
    if (spec.size() < head.size() + 2 || spec.substr(0, head.size()) != head || spec[head.size()] != '(' ||
        spec.back() != ')')
        return out;
    std::string_view body = spec.substr(head.size() + 1, spec.size() - head.size() - 2);
    while (!body.empty()) {
        const auto comma = body.find(',');
        std::string_view tok = body.substr(0, comma);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) return {};
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return out;
}

} // namespace detail

// Named algebras: so3, su2, heisenberg_t3, oscillator_os1, gl(n), sl(n),
// so(p,q), sp(2n). The realization carries the structure constants.
inline MatrixRealization builtin_algebra(std::string_view spec) {
    using detail::parse_args;
    if (spec == "so3") {
        MatrixRealization r;
        r.basis = LieAlgebraBasis("so3", {"L1", "L2", "L3"});
        for (std::size_t k = 0; k < 3; ++k) r.mats.push_back(so3_generator(k));
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t l = 0; l < 3; ++l) r.basis(j, k, l) = levi_civita(j, k, l);
        return r;
    }
    if (spec == "su2") {
        // generators sigma_k / (2i) share the so(3) table
        std::vector<ComplexMatrix> mats;
        for (int k = 1; k <= 3; ++k) mats.push_back(pauli(k) / (2.0 * I_unit));
        return realize("su2", {"s1", "s2", "s3"}, std::move(mats));
    }
    if (spec == "heisenberg_t3") {
        return realize("heisenberg_t3", {"p", "q", "1"},
                       {ComplexMatrix::unit(3, 0, 1), ComplexMatrix::unit(3, 1, 2), ComplexMatrix::unit(3, 0, 2)});
    }
    if (spec == "oscillator_os1") {
        // [n, a*] = a*, [n, a] = -a, [a, a*] = 1
        ComplexMatrix n(3, 3);
        n(1, 1) = 1.0;
        return realize("oscillator_os1", {"n", "a*", "a", "1"},
                       {n, ComplexMatrix::unit(3, 1, 2), ComplexMatrix::unit(3, 0, 1), ComplexMatrix::unit(3, 0, 2)});
    }
    if (auto a = parse_args(spec, "gl"); a.size() == 1) {
        if (a[0] < 1 || a[0] * a[0] > max_dim) throw Error("bad_size", "gl(n) needs 1 <= n <= 8");
        return detail::make_gl(a[0]);
    }
    if (auto a = parse_args(spec, "sl"); a.size() == 1) {
        if (a[0] < 2 || a[0] * a[0] - 1 > max_dim) throw Error("bad_size", "sl(n) needs 2 <= n <= 8");
        return detail::make_sl(a[0]);
    }
    if (auto a = parse_args(spec, "so"); a.size() == 2) {
        const std::size_t n = a[0] + a[1];
        if (n < 2 || n * (n - 1) / 2 > max_dim) throw Error("bad_size", "so(p,q) needs 2 <= p+q <= 11");
        return detail::make_so(a[0], a[1]);
    }
    if (auto a = parse_args(spec, "sp"); a.size() == 1) {
        if (a[0] < 2 || a[0] % 2 != 0 || (a[0] / 2) * (a[0] + 1) > max_dim)
            throw Error("bad_size", "sp(2n) needs an even size 2 <= 2n <= 10");
        return detail::make_sp(a[0] / 2);
    }
    throw Error("unknown_algebra", std::string(spec));
}

inline const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"so3",   "su2",   "heisenberg_t3", "oscillator_os1", "gl(1)",
                                                "gl(2)", "gl(3)", "sl(2)",         "sl(3)",          "so(3,0)",
                                                "so(2,1)", "so(3,1)", "so(4,0)",   "sp(2)",          "sp(4)"};
    return names;
}

// so(3) in the quantum convention: (i/hbar)[J_k, J_l] = sum_m eps_klm J_m with
// J_k = -(hbar/2) sigma_k.
inline MatrixRealization so3_spin_realization(double hbar) {
    if (!(hbar > 0.0)) throw Error("bad_hbar", "hbar must be positive");
    std::vector<ComplexMatrix> mats;
    for (int k = 1; k <= 3; ++k) mats.push_back(pauli(k) * (-0.5 * hbar));
    return realize("so3", {"J1", "J2", "J3"}, std::move(mats), ProductConvention::quantum, hbar);
}

} // namespace liequant::lie
