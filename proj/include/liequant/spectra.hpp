#pragma once

// Difference spectra, Rydberg lines, the Lorentz response of a forced damped
// oscillator, and the alternating least-squares line-assignment solver for
//
//   S(E, j, k) = sum_l q_l ((E_j(l) - E_k(l)) / (hbar omega_l) - 1)^2.
//
// Level and line indices are 0-based.

#include "liequant/constants.hpp"
#include "liequant/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace liequant::spectra {

// Sorted copy of `levels` with values closer than 1e-12 * span merged.
inline std::vector<double> normalize_levels(std::vector<double> levels) {
    std::sort(levels.begin(), levels.end());
    if (levels.empty()) return levels;
    const double tol = 1e-12 * (levels.back() - levels.front());
    std::vector<double> out{levels.front()};
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] - out.back() > tol) out.push_back(levels[i]);
    return out;
}

// All (E_j - E_k) / hbar for j > k, ascending, with multiplicity.
inline std::vector<double> difference_spectrum(const std::vector<double>& levels, double hbar) {
    if (levels.size() < 2) throw Error("too_few", "need at least two levels");
    if (!(hbar > 0.0)) throw Error("bad_hbar", "hbar must be positive");
    std::vector<double> e = levels;
    std::sort(e.begin(), e.end());
    std::vector<double> out;
    out.reserve(e.size() * (e.size() - 1) / 2);
    for (std::size_t j = 0; j < e.size(); ++j)
        for (std::size_t k = 0; k < j; ++k) out.push_back((e[j] - e[k]) / hbar);
    std::sort(out.begin(), out.end());
    return out;
}

struct RydbergLine {
    int k = 0;
    int l = 0;
    double wavenumber = 0.0; // 1/m
};

// R_H (1/k^2 - 1/l^2) for 1 <= k < l <= k_max, ordered by k then l.
inline std::vector<RydbergLine> rydberg_lines(int k_max, double r_h = PhysicalConstants{}.R_H) {
    if (k_max < 2) throw Error("too_few", "k_max must be at least 2");
    std::vector<RydbergLine> out;
    for (int k = 1; k < k_max; ++k)
        for (int l = k + 1; l <= k_max; ++l)
            out.push_back({k, l, r_h * (1.0 / (k * k) - 1.0 / (static_cast<double>(l) * l))});
    return out;
}

// |F|^2 / ((k - m omega^2)^2 + (c omega)^2).
inline double lorentz_response(std::complex<double> force, double omega, double m, double c, double k) {
    const double re = k - m * omega * omega, im = c * omega;
    const double den = re * re + im * im;
    if (den == 0.0) throw Error("undamped_resonance", "response diverges at an undamped resonance");
    return std::norm(force) / den;
}

struct Line {
    double omega = 0.0;
    double weight = 1.0;
};

struct SpectrumDataset {
    std::vector<Line> lines;

    void validate() const {
        if (lines.empty()) throw Error("too_few", "dataset has no lines");
        for (const auto& l : lines)
            if (!(l.omega > 0.0) || !(l.weight > 0.0)) throw Error("bad_line", "omega and weight must be positive");
    }
};

struct Pair {
    std::size_t j = 0; // upper level
    std::size_t k = 0; // lower level
    friend bool operator==(const Pair&, const Pair&) = default;
};

inline double line_term(const std::vector<double>& e, const Pair& p, const Line& l, double hbar) {
    const double r = (e[p.j] - e[p.k]) / (hbar * l.omega) - 1.0;
    return l.weight * r * r;
}

inline double objective(const std::vector<double>& e, const std::vector<Pair>& assignment, const SpectrumDataset& d,
                        double hbar) {
    if (assignment.size() != d.lines.size()) throw Error("shape", "one assignment per line required");
    double s = 0.0;
    for (std::size_t l = 0; l < d.lines.size(); ++l) s += line_term(e, assignment[l], d.lines[l], hbar);
    return s;
}

// For each line the pair j > k minimizing its term; ties go to the smallest
// j, then the smallest k.
inline std::vector<Pair> best_assignment(const std::vector<double>& e, const SpectrumDataset& d, double hbar) {
    std::vector<Pair> out(d.lines.size());
    for (std::size_t l = 0; l < d.lines.size(); ++l) {
        double best = INFINITY;
        for (std::size_t j = 1; j < e.size(); ++j)
            for (std::size_t k = 0; k < j; ++k) {
                const double t = line_term(e, {j, k}, d.lines[l], hbar);
                if (t < best) {
                    best = t;
                    out[l] = {j, k};
                }
            }
    }
    return out;
}

namespace detail {

// Minimizes |A x - b| for a dense m x n system (m >= n, full column rank)
// by Householder QR. A is row-major.
inline std::vector<double> lstsq(std::vector<double> a, std::vector<double> b, std::size_t m, std::size_t n) {
    for (std::size_t c = 0; c < n; ++c) {
        double norm = 0.0;
        for (std::size_t r = c; r < m; ++r) norm += a[r * n + c] * a[r * n + c];
        norm = std::sqrt(norm);
        if (norm == 0.0) throw Error("rank_deficient", "least-squares system is rank deficient");
        const double alpha = a[c * n + c] > 0.0 ? -norm : norm;
        std::vector<double> v(m - c);
        for (std::size_t r = c; r < m; ++r) v[r - c] = a[r * n + c];
        v[0] -= alpha;
        double vv = 0.0;
        for (double x : v) vv += x * x;
        if (vv == 0.0) continue;
        for (std::size_t cc = c; cc < n; ++cc) {
            double s = 0.0;
            for (std::size_t r = c; r < m; ++r) s += v[r - c] * a[r * n + cc];
            s = 2.0 * s / vv;
            for (std::size_t r = c; r < m; ++r) a[r * n + cc] -= s * v[r - c];
        }
        double s = 0.0;
        for (std::size_t r = c; r < m; ++r) s += v[r - c] * b[r];
        s = 2.0 * s / vv;
        for (std::size_t r = c; r < m; ++r) b[r] -= s * v[r - c];
    }
    double dmax = 0.0;
    for (std::size_t c = 0; c < n; ++c) dmax = std::max(dmax, std::abs(a[c * n + c]));
    std::vector<double> x(n);
    for (std::size_t c = n; c-- > 0;) {
        if (std::abs(a[c * n + c]) <= 1e-13 * dmax) throw Error("rank_deficient", "least-squares system is rank deficient");
        double s = b[c];
        for (std::size_t cc = c + 1; cc < n; ++cc) s -= a[c * n + cc] * x[cc];
        x[c] = s / a[c * n + c];
    }
    return x;
}

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
}

} // namespace detail

struct RefitResult {
    std::vector<double> levels;
    std::vector<std::size_t> unidentifiable; // levels not linked to level 0 by any assigned line
};

// Least-squares levels for a fixed assignment under the gauge E_0 = 0. Levels
// not connected to level 0 through assigned lines keep their previous value.
inline RefitResult refit_levels(const std::vector<double>& e, const std::vector<Pair>& assignment,
                                const SpectrumDataset& d, double hbar) {
    const std::size_t n = e.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (const auto& p : assignment) parent[detail::find_root(parent, p.j)] = detail::find_root(parent, p.k);

    RefitResult r;
    r.levels.assign(n, 0.0);
    std::vector<std::ptrdiff_t> col(n, -1);
    std::size_t unknowns = 0;
    const std::size_t root0 = detail::find_root(parent, 0);
    for (std::size_t i = 1; i < n; ++i) {
        if (detail::find_root(parent, i) == root0)
            col[i] = static_cast<std::ptrdiff_t>(unknowns++);
        else {
            r.unidentifiable.push_back(i);
            r.levels[i] = e[i] - e[0];
        }
    }
    if (unknowns == 0) return r;

    // rows: sqrt(q_l) / (hbar omega_l) (E_j - E_k) = sqrt(q_l), for lines inside the component of level 0
    std::vector<double> a, b;
    std::size_t rows = 0;
    for (std::size_t l = 0; l < d.lines.size(); ++l) {
        const Pair& p = assignment[l];
        if (detail::find_root(parent, p.j) != root0) continue;
        const double w = std::sqrt(d.lines[l].weight);
        const double s = w / (hbar * d.lines[l].omega);
        std::vector<double> row(unknowns, 0.0);
        if (col[p.j] >= 0) row[static_cast<std::size_t>(col[p.j])] += s;
        if (col[p.k] >= 0) row[static_cast<std::size_t>(col[p.k])] -= s;
        a.insert(a.end(), row.begin(), row.end());
        b.push_back(w);
        ++rows;
    }
    const auto x = detail::lstsq(std::move(a), std::move(b), rows, unknowns);
    for (std::size_t i = 1; i < n; ++i)
        if (col[i] >= 0) r.levels[i] = x[static_cast<std::size_t>(col[i])];
    return r;
}

struct AssignOptions {
    std::size_t max_iters = 100;
    std::size_t starts = 0;     // extra randomly perturbed starts
    double perturbation = 0.0;  // uniform half-width for the extra starts
    std::uint64_t seed = 0;
};

struct AssignmentSolution {
    std::vector<double> levels;     // ascending, levels[0] = 0
    std::vector<Pair> assignment;   // per line
    double objective = 0.0;
    double initial_objective = 0.0; // S at (E0, its best assignment)
    std::vector<double> trace;      // S after every half-step
    std::size_t iterations = 0;
    std::string stop_reason;        // "assignments_repeated" or "max_iters"
    std::vector<std::size_t> unidentifiable_levels;
};

namespace detail {

// Sorts levels, remaps pairs so that j > k again, and shifts level 0 to zero.
// S does not increase: swapping a reversed pair only helps since omega > 0.
inline void canonicalize(std::vector<double>& e, std::vector<Pair>& assignment) {
    std::vector<std::size_t> order(e.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return e[x] < e[y]; });
    std::vector<std::size_t> where(e.size());
    std::vector<double> sorted(e.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        where[order[i]] = i;
        sorted[i] = e[order[i]];
    }
    const double base = sorted.front();
    for (auto& x : sorted) x -= base;
    e = std::move(sorted);
    for (auto& p : assignment) {
        p = {where[p.j], where[p.k]};
        if (p.j < p.k) std::swap(p.j, p.k);
    }
}

inline AssignmentSolution assign_single(const SpectrumDataset& d, std::vector<double> e, double hbar,
                                        std::size_t max_iters) {
    AssignmentSolution s;
    std::vector<Pair> dummy;
    canonicalize(e, dummy);
    std::vector<Pair> asg = best_assignment(e, d, hbar);
    double obj = objective(e, asg, d, hbar);
    s.initial_objective = obj;
    s.trace.push_back(obj);
    s.stop_reason = "max_iters";
    for (std::size_t it = 0; it < max_iters; ++it) {
        s.iterations = it + 1;
        RefitResult rf = refit_levels(e, asg, d, hbar);
        std::vector<Pair> asg_fit = asg;
        canonicalize(rf.levels, asg_fit);
        const double fit_obj = objective(rf.levels, asg_fit, d, hbar);
        s.unidentifiable_levels = rf.unidentifiable;
        if (fit_obj <= obj) {
            e = std::move(rf.levels);
            asg = std::move(asg_fit);
            obj = fit_obj;
        }
        s.trace.push_back(obj);

        std::vector<Pair> next = best_assignment(e, d, hbar);
        const double next_obj = objective(e, next, d, hbar);
        const bool repeated = next == asg;
        if (next_obj <= obj) {
            asg = std::move(next);
            obj = next_obj;
        }
        s.trace.push_back(obj);
        if (repeated) {
            s.stop_reason = "assignments_repeated";
            break;
        }
    }
    s.levels = std::move(e);
    s.assignment = std::move(asg);
    s.objective = obj;
    return s;
}

} // namespace detail

// Alternates per-line assignment and gauge-fixed level refits until the
// assignment repeats or max_iters full iterations have run. Optional extra
// starts perturb E0 and keep the best objective.
inline AssignmentSolution assign_lines(const SpectrumDataset& d, const std::vector<double>& e0, double hbar,
                                       const AssignOptions& opt = {}) {
    d.validate();
    if (e0.size() < 2) throw Error("too_few", "need at least two trial levels");
    if (opt.max_iters < 1) throw Error("bad_iters", "max_iters must be at least 1");
    if (!(hbar > 0.0)) throw Error("bad_hbar", "hbar must be positive");
    AssignmentSolution best = detail::assign_single(d, e0, hbar, opt.max_iters);
    std::mt19937_64 gen(opt.seed);
    std::uniform_real_distribution<double> uni(-opt.perturbation, opt.perturbation);
    for (std::size_t s = 0; s < opt.starts; ++s) {
        std::vector<double> trial = e0;
        for (auto& x : trial) x += uni(gen);
        AssignmentSolution cand = detail::assign_single(d, trial, hbar, opt.max_iters);
        if (cand.objective < best.objective) {
            cand.initial_objective = best.initial_objective;
            best = std::move(cand);
        }
    }
    return best;
}

} // namespace liequant::spectra
