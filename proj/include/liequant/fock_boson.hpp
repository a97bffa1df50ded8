#pragma once

// Truncated bosonic Fock space in the unnormalized basis |k> = (a*)^k |0>,
// with <k|k> = hbar^k / k!, plus coherent states and the rank-one
// highest-weight constructor for [a, a*] = hbar (u h + v).

#include "liequant/matrix.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace liequant::fock {

inline constexpr double hbar_si = 1.0545718e-34; // J s

struct BosonFock {
    std::size_t dim = 0;
    double hbar = 1.0;

    // a|k> = hbar |k-1>, a*|k-1> = k |k>, n|k> = k |k>
    ComplexMatrix a = ComplexMatrix(1, 1), a_dag = ComplexMatrix(1, 1), n = ComplexMatrix(1, 1);
    // <k|k> = hbar^k / k!
    std::vector<double> metric;
    // Same operators in the orthonormal basis: a|k> = sqrt(hbar k) |k-1>.
    ComplexMatrix a_on = ComplexMatrix(1, 1), a_dag_on = ComplexMatrix(1, 1);

    cplx inner(std::span<const cplx> phi, std::span<const cplx> psi) const {
        if (phi.size() != dim || psi.size() != dim) throw Error("shape", "state length differs from truncation");
        cplx s{};
        for (std::size_t k = 0; k < dim; ++k) s += metric[k] * std::conj(phi[k]) * psi[k];
        return s;
    }

    // <psi|A psi> / <psi|psi> under the weighted metric.
    cplx expectation(const ComplexMatrix& op, std::span<const cplx> psi) const {
        return inner(psi, op * psi) / inner(psi, psi);
    }
};

inline BosonFock build_fock(std::size_t dim, double hbar = 1.0) {
    if (dim < 2) throw Error("too_small", "Fock truncation needs at least two levels");
    if (!(hbar > 0.0)) throw Error("bad_hbar", "hbar must be positive");
    BosonFock f;
    f.dim = dim;
    f.hbar = hbar;
    f.a = ComplexMatrix(dim, dim);
    f.a_dag = ComplexMatrix(dim, dim);
    f.n = ComplexMatrix(dim, dim);
    f.a_on = ComplexMatrix(dim, dim);
    f.metric.resize(dim);
    double m = 1.0;
    for (std::size_t k = 0; k < dim; ++k) {
        if (k > 0) m *= hbar / static_cast<double>(k);
        f.metric[k] = m;
        f.n(k, k) = static_cast<double>(k);
        if (k > 0) {
            f.a(k - 1, k) = hbar;
            f.a_dag(k, k - 1) = static_cast<double>(k);
            f.a_on(k - 1, k) = std::sqrt(hbar * static_cast<double>(k));
        }
    }
    f.a_dag_on = f.a_on.adjoint();
    return f;
}

// Lowest `count` eigenvalues of H = omega a* a, i.e. 0, hbar omega, ...
inline std::vector<double> oscillator_spectrum(const BosonFock& f, double omega, std::size_t count) {
    if (count > f.dim - 1) throw Error("truncation", "top level is a truncation artifact; request at most dim-1");
    const auto e = eig_hermitian(omega * (f.a_dag_on * f.a_on));
    return {e.values.begin(), e.values.begin() + static_cast<std::ptrdiff_t>(count)};
}

// |lambda, z> with coefficients psi_k = conj(lambda) conj(z)^k.
struct CoherentState {
    cplx lambda{1.0, 0.0};
    cplx z{};
    CVector coeffs;
};

inline CoherentState make_coherent(cplx lambda, cplx z, std::size_t dim) {
    CoherentState s{lambda, z, CVector(dim)};
    const cplx lb = std::conj(lambda), zb = std::conj(z);
    cplx p = 1.0;
    for (std::size_t k = 0; k < dim; ++k) {
        s.coeffs[k] = lb * p;
        p *= zb;
    }
    return s;
}

// lambda' conj(lambda) exp(hbar z' conj(z)) for s1 = |lambda', z'>, s2 = |lambda, z>.
inline cplx coherent_inner_exact(const CoherentState& s1, const CoherentState& s2, double hbar) {
    return s1.lambda * std::conj(s2.lambda) * std::exp(hbar * s1.z * std::conj(s2.z));
}

// Truncated sum  sum_k hbar^k/k! conj(psi'_k) psi_k.
inline cplx coherent_inner(const CoherentState& s1, const CoherentState& s2, double hbar) {
    const std::size_t dim = s1.coeffs.size();
    if (s2.coeffs.size() != dim) throw Error("shape", "coherent states truncated differently");
    const double w = std::abs(hbar * s1.z * std::conj(s2.z));
    const double tail = std::exp(static_cast<double>(dim) * std::log(std::max(w, 1e-300)) - std::lgamma(dim + 1.0));
    if (w > 0.0 && tail > 1e-14) throw Error("truncation", "increase the truncation dimension");
    cplx s{};
    double m = 1.0;
    for (std::size_t k = 0; k < dim; ++k) {
        if (k > 0) m *= hbar / static_cast<double>(k);
        s += m * std::conj(s1.coeffs[k]) * s2.coeffs[k];
    }
    return s;
}

// exp(-i H t / hbar) with H = omega hbar n applied to the coefficients. The
// result is again coherent; its label is z e^{+i omega t}, equivalently the
// coefficient ratio conj(z) picks up e^{-i omega t}.
inline CoherentState evolve(const CoherentState& s, double omega, double t) {
    CoherentState out = s;
    out.z = s.z * std::exp(I_unit * omega * t);
    for (std::size_t k = 0; k < s.coeffs.size(); ++k)
        out.coeffs[k] = s.coeffs[k] * std::exp(-I_unit * omega * t * static_cast<double>(k));
    return out;
}

// Position and momentum q = (a + a*)/sqrt 2, p = (a - a*)/(i sqrt 2) for
// m = k = omega = 1, in the unnormalized basis.
inline ComplexMatrix position_op(const BosonFock& f) { return (f.a + f.a_dag) / std::sqrt(2.0); }
inline ComplexMatrix momentum_op(const BosonFock& f) { return (f.a - f.a_dag) / (I_unit * std::sqrt(2.0)); }

inline double std_dev(const BosonFock& f, const ComplexMatrix& op, std::span<const cplx> psi) {
    const double m1 = f.expectation(op, psi).real();
    const double m2 = f.expectation(op * op, psi).real();
    return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

inline double uncertainty_product(const BosonFock& f, const CoherentState& s) {
    return std_dev(f, position_op(f), s.coeffs) * std_dev(f, momentum_op(f), s.coeffs);
}

struct HWData {
    double u = 0.0;
    double v = 1.0;
    double alpha = 0.0;
    double hbar = 1.0;
};

enum class HWVerdict { finite, infinite, invalid };

struct HWResult {
    HWVerdict verdict = HWVerdict::infinite;
    std::size_t dim = 0;        // retained levels
    std::size_t bad_level = 0;  // first level with N_j < 0 (invalid only)
    std::vector<double> norms;  // N_0 = 1, N_1, ...
    // Orthonormal-basis matrices; h|k> = hbar (k + alpha + 1/2)|k>.
    ComplexMatrix a = ComplexMatrix(1, 1), a_dag = ComplexMatrix(1, 1), h = ComplexMatrix(1, 1);
};

// Coefficient f(j) = v + u hbar alpha + u hbar j / 2 in j hbar N_j = f(j) N_{j-1}.
inline double hw_factor(const HWData& d, std::size_t j) {
    return d.v + d.u * d.hbar * d.alpha + 0.5 * d.u * d.hbar * static_cast<double>(j);
}

// Runs the norm recursion for j = 1..max_levels without throwing.
inline HWResult classify_highest_weight(const HWData& d, std::size_t max_levels) {
    if (max_levels < 1) throw Error("too_small", "max_levels must be at least 1");
    if (!(d.hbar > 0.0)) throw Error("bad_hbar", "hbar must be positive");
    HWResult r;
    r.norms.push_back(1.0);
    r.dim = max_levels + 1;
    for (std::size_t j = 1; j <= max_levels; ++j) {
        double fj = hw_factor(d, j);
        const double scale = 1.0 + std::abs(d.v) + std::abs(d.u) * d.hbar * (std::abs(d.alpha) + static_cast<double>(j));
        if (std::abs(fj) <= 1e-12 * scale) fj = 0.0;
        r.norms.push_back(r.norms.back() * fj / (static_cast<double>(j) * d.hbar));
        if (fj == 0.0) {
            r.verdict = HWVerdict::finite;
            r.dim = j;
            break;
        }
        if (fj < 0.0) {
            r.verdict = HWVerdict::invalid;
            r.bad_level = j;
            r.dim = j;
            break;
        }
    }
    const std::size_t n = r.dim;
    r.a = ComplexMatrix(n, n);
    r.h = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        r.h(k, k) = d.hbar * (static_cast<double>(k) + d.alpha + 0.5);
        if (k > 0) r.a(k - 1, k) = std::sqrt(d.hbar * static_cast<double>(k) * std::max(0.0, hw_factor(d, k)));
    }
    r.a_dag = r.a.adjoint();
    return r;
}

// Same as classify_highest_weight but an invalid verdict is an error.
inline HWResult build_highest_weight(const HWData& d, std::size_t max_levels) {
    HWResult r = classify_highest_weight(d, max_levels);
    if (r.verdict == HWVerdict::invalid)
        throw Error("no_unitary_rep", "norm becomes negative at level " + std::to_string(r.bad_level));
    return r;
}

// alpha making the u < 0 recursion terminate after j_m + 1 levels.
inline double finite_alpha(std::size_t j_m, double u, double v, double hbar) {
    return -0.5 * (static_cast<double>(j_m) + 1.0) - v / (hbar * u);
}

inline const char* to_string(HWVerdict v) {
    switch (v) {
    case HWVerdict::finite: return "finite";
    case HWVerdict::infinite: return "infinite";
    case HWVerdict::invalid: return "invalid";
    }
    return "?";
}

} // namespace liequant::fock
