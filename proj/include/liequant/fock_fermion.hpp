#pragma once

// Fermionic Fock space over modes 1..n. Basis vectors |J> are indexed by
// bitmask (bit i set iff mode i+1 is occupied), so index order is binary
// counting and |∅> is index 0.

#include "liequant/matrix.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace liequant::fermion {

inline constexpr std::size_t max_modes = 12;

using Subset = std::uint32_t;

inline Subset mode_bit(std::size_t j) { return Subset{1} << (j - 1); }

inline bool contains(Subset J, std::size_t j) { return (J & mode_bit(j)) != 0; }

// +1 if an even number of elements of J are smaller than j, else -1.
inline int epsilon(std::size_t j, Subset J) {
    const Subset below = mode_bit(j) - 1;
    return (std::popcount(J & below) % 2 == 0) ? 1 : -1;
}

inline std::vector<std::size_t> subset_indices(Subset J) {
    std::vector<std::size_t> out;
    for (std::size_t j = 1; J != 0; ++j, J >>= 1)
        if (J & 1u) out.push_back(j);
    return out;
}

struct FermionFock {
    std::size_t n_modes = 0;
    std::size_t dim = 0;
    std::vector<ComplexMatrix> a;     // a[j-1] annihilates mode j
    std::vector<ComplexMatrix> a_dag; // a_dag[j-1] creates mode j

    const ComplexMatrix& ann(std::size_t j) const { return a.at(j - 1); }
    const ComplexMatrix& cre(std::size_t j) const { return a_dag.at(j - 1); }

    // a(u) = sum_j u_j a_j and a*(v) = sum_j v_j a_j*.
    ComplexMatrix annihilator(std::span<const cplx> u) const { return combine(a, u); }
    ComplexMatrix creator(std::span<const cplx> v) const { return combine(a_dag, v); }

private:
    ComplexMatrix combine(const std::vector<ComplexMatrix>& ops, std::span<const cplx> c) const {
        if (c.size() != n_modes) throw Error("shape", "coefficient vector length must equal the mode count");
        ComplexMatrix out(dim, dim);
        for (std::size_t j = 0; j < n_modes; ++j) out += c[j] * ops[j];
        return out;
    }
};

// a_j*|J> = eps_j(J)|J ∪ {j}> for j not in J; a_j is its adjoint. With
// `scale` != 1 the creators are multiplied by it, giving {a_j, a_k*} = scale δ_jk.
inline FermionFock build_fermion(std::size_t n_modes, double scale = 1.0) {
    if (n_modes < 1 || n_modes > max_modes) throw Error("size_cap", "mode count must lie in 1..12");
    FermionFock f;
    f.n_modes = n_modes;
    f.dim = std::size_t{1} << n_modes;
    for (std::size_t j = 1; j <= n_modes; ++j) {
        ComplexMatrix cre(f.dim, f.dim);
        for (Subset J = 0; J < f.dim; ++J)
            if (!contains(J, j)) cre(J | mode_bit(j), J) = static_cast<double>(epsilon(j, J));
        f.a.push_back(cre.transpose());
        f.a_dag.push_back(cre * scale);
    }
    return f;
}

// Max over j, k of |{a_j, a_k}|, |{a_j*, a_k*}| and |{a_j, a_k*} - δ_jk|.
inline double car_residual(const FermionFock& f) {
    const ComplexMatrix id = ComplexMatrix::identity(f.dim);
    double worst = 0.0;
    for (std::size_t j = 0; j < f.n_modes; ++j)
        for (std::size_t k = 0; k < f.n_modes; ++k) {
            worst = std::max(worst, anticommutator(f.a[j], f.a[k]).norm_max());
            worst = std::max(worst, anticommutator(f.a_dag[j], f.a_dag[k]).norm_max());
            ComplexMatrix mixed = anticommutator(f.a[j], f.a_dag[k]);
            if (j == k) mixed -= id;
            worst = std::max(worst, mixed.norm_max());
        }
    return worst;
}

inline ComplexMatrix number_op(const FermionFock& f, std::size_t j) { return f.cre(j) * f.ann(j); }

inline std::vector<double> number_spectrum(const FermionFock& f, std::size_t j) {
    if (j < 1 || j > f.n_modes) throw Error("bad_mode", "mode index out of range");
    return eig_hermitian(number_op(f, j)).values;
}

// Each of the five sign identities checked for every admissible (j, k, J)
// with n modes; returns the number of violations.
struct EpsilonCheck {
    std::size_t cases = 0;
    std::size_t failures = 0;
};

inline EpsilonCheck check_epsilon_identities(std::size_t n) {
    EpsilonCheck r;
    auto expect = [&](bool ok) {
        ++r.cases;
        if (!ok) ++r.failures;
    };
    const Subset full = Subset{1} << n;
    for (Subset J = 0; J < full; ++J)
        for (std::size_t j = 1; j <= n; ++j) {
            const Subset bj = mode_bit(j);
            if (contains(J, j))
                expect(epsilon(j, J & ~bj) == epsilon(j, J));
            else
                expect(epsilon(j, J | bj) == epsilon(j, J));
            for (std::size_t k = 1; k <= n; ++k) {
                if (k == j) continue;
                const Subset bk = mode_bit(k);
                const bool jin = contains(J, j), kin = contains(J, k);
                if (!jin && !kin)
                    expect(epsilon(j, J) * epsilon(k, J | bj) == -epsilon(k, J) * epsilon(j, J | bk));
                if (jin && kin)
                    expect(epsilon(j, J) * epsilon(k, J & ~bj) == -epsilon(k, J) * epsilon(j, J & ~bk));
                if (!jin && kin)
                    expect(epsilon(j, J) * epsilon(k, J | bj) == -epsilon(k, J) * epsilon(j, J & ~bk));
            }
        }
    return r;
}

} // namespace liequant::fermion
