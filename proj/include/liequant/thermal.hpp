#pragma once

// Finite-dimensional quantum statistical mechanics. Everything is evaluated
// in the eigenbasis of the Hamiltonian (or of f in the functional
// formulation <g>_f = tr(e^{-f} g) / tr e^{-f}).

#include "liequant/constants.hpp"
#include "liequant/matrix.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace liequant::thermal {

// State <g> = tr(e^{-beta H} g) / Z. With beta = 1 this is the state <.>_f
// for f = H.
class GibbsState {
public:
    GibbsState(const ComplexMatrix& h, double beta) : beta_(beta), eig_(eig_hermitian(h)) {
        if (!(beta > 0.0) || !std::isfinite(beta)) throw Error("bad_beta", "beta must be positive and finite");
        const double e0 = eig_.values.front();
        double sum = 0.0;
        weights_.reserve(eig_.values.size());
        for (double e : eig_.values) {
            weights_.push_back(std::exp(-beta * (e - e0)));
            sum += weights_.back();
        }
        for (auto& w : weights_) w /= sum;
        log_z_ = std::log(sum) - beta * e0;
        if (!std::isfinite(log_z_)) throw Error("range", "partition function not representable");
    }

    static GibbsState of_functional(const ComplexMatrix& f) { return GibbsState(f, 1.0); }

    double beta() const noexcept { return beta_; }
    std::size_t dim() const noexcept { return weights_.size(); }
    const std::vector<double>& energies() const noexcept { return eig_.values; }
    const std::vector<double>& probabilities() const noexcept { return weights_; }
    const ComplexMatrix& eigenvectors() const noexcept { return eig_.vectors; }

    double log_partition_function() const noexcept { return log_z_; }

    double partition_function() const {
        if (log_z_ > 700.0) throw Error("range", "partition function overflows");
        return std::exp(log_z_);
    }

    // g expressed in the eigenbasis: V* g V.
    ComplexMatrix to_eigenbasis(const ComplexMatrix& g) const {
        if (g.rows() != dim() || g.cols() != dim()) throw Error("shape", "observable size differs from state");
        return eig_.vectors.adjoint() * g * eig_.vectors;
    }

    cplx value(const ComplexMatrix& g) const {
        const ComplexMatrix gd = to_eigenbasis(g);
        cplx s{};
        for (std::size_t k = 0; k < dim(); ++k) s += weights_[k] * gd(k, k);
        return s;
    }

    ComplexMatrix density() const {
        ComplexMatrix d(dim(), dim());
        for (std::size_t k = 0; k < dim(); ++k) d(k, k) = weights_[k];
        return eig_.vectors * d * eig_.vectors.adjoint();
    }

    double mean_energy() const {
        double s = 0.0;
        for (std::size_t k = 0; k < dim(); ++k) s += weights_[k] * eig_.values[k];
        return s;
    }

    // kbar (beta <H> + log Z)
    double entropy(double kbar = 1.0) const { return kbar * (beta_ * mean_energy() + log_z_); }

private:
    double beta_;
    HermitianEigen eig_;
    std::vector<double> weights_;
    double log_z_ = 0.0;
};

inline double partition_function(const ComplexMatrix& h, double beta) { return GibbsState(h, beta).partition_function(); }

inline cplx gibbs_value(const GibbsState& s, const ComplexMatrix& g) { return s.value(g); }

// Z = 1 + e^{-beta E} and <H> = E / (e^{beta E} + 1) for levels {0, E}.
inline double two_level_partition(double e, double beta) { return 1.0 + std::exp(-beta * e); }
inline double two_level_energy(double e, double beta) { return e / (std::exp(beta * e) + 1.0); }

// (1 - e^{-beta E})^{-1} for levels 0, E, 2E, ...
inline double oscillator_partition(double e, double beta) { return 1.0 / -std::expm1(-beta * e); }

// C = E^2 / (kbar T^2) e^{E/kbar T} / (e^{E/kbar T} + 1)^2.
inline double schottky_capacity(double e, double t, const PhysicalConstants& pc = {}) {
    if (!(t > 0.0)) throw Error("bad_temperature", "temperature must be positive");
    const double x = e / (pc.kbar * t);
    if (x > 700.0) return 0.0;
    const double ex = std::exp(x);
    return e * e / (pc.kbar * t * t) * ex / ((ex + 1.0) * (ex + 1.0));
}

// W(f) = -log tr e^{-f}.
inline double generating_functional(const ComplexMatrix& f) {
    const auto e = eig_hermitian(f);
    const double e0 = e.values.front();
    double sum = 0.0;
    for (double x : e.values) sum += std::exp(-(x - e0));
    const double w = e0 - std::log(sum);
    if (!std::isfinite(w)) throw Error("range", "generating functional not representable");
    return w;
}

// (e^x - 1) / x, with a six-term Taylor series near zero.
inline double phi(double x) {
    if (std::abs(x) < 1e-4) return 1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0 + x * x * x * x / 120.0 +
                                   x * x * x * x * x / 720.0;
    return std::expm1(x) / x;
}

// <g; h>_f = <g E_f h>_f with E_f h = int_0^1 e^{-sf} h e^{sf} ds. In the
// eigenbasis of f, (E_f h)_{nm} = h_{nm} phi(lambda_m - lambda_n), so the sum
// is sum_{m,n} p_m phi(lambda_m - lambda_n) g_{mn} h_{nm}.
inline cplx kubo_inner(const ComplexMatrix& f, const ComplexMatrix& g, const ComplexMatrix& h) {
    const GibbsState st = GibbsState::of_functional(f);
    const ComplexMatrix gd = st.to_eigenbasis(g), hd = st.to_eigenbasis(h);
    const auto& lam = st.energies();
    const auto& p = st.probabilities();
    cplx s{};
    for (std::size_t m = 0; m < st.dim(); ++m)
        for (std::size_t n = 0; n < st.dim(); ++n) {
            const double x = lam[m] - lam[n];
            // p_m phi(x) = (p_n - p_m) / x away from x = 0
            const double w = std::abs(x) < 1e-4 ? p[m] * phi(x) : (p[n] - p[m]) / x;
            s += w * gd(m, n) * hd(n, m);
        }
    return s;
}

// W(f) + <g - f>_f - W(g) >= 0.
inline double gibbs_bogoliubov_gap(const ComplexMatrix& f, const ComplexMatrix& g) {
    const GibbsState st = GibbsState::of_functional(f);
    return generating_functional(f) + st.value(g - f).real() - generating_functional(g);
}

// sqrt(<g^2> / <g>^2 - 1).
inline double limit_resolution(const GibbsState& s, const ComplexMatrix& g) {
    const double m1 = s.value(g).real();
    if (std::abs(m1) <= 1e-12) throw Error("zero_mean", "<g> vanishes");
    const double m2 = s.value(g * g).real();
    return std::sqrt(std::max(0.0, m2 / (m1 * m1) - 1.0));
}

// f(omega) = V hbar omega^3 / (pi^2 c^3 (e^{hbar omega / kbar T} - 1)).
inline double planck_density(double omega, double t, double volume, const PhysicalConstants& pc = {}) {
    if (!(omega > 0.0) || !(t > 0.0)) throw Error("bad_argument", "omega and T must be positive");
    const double x = pc.hbar * omega / (pc.kbar * t);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return volume * pc.hbar * omega * omega * omega / (pi2 * pc.c * pc.c * pc.c * std::expm1(x));
}

struct RootResult {
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

// Root of 3 - x = 3 e^{-x} with x > 0, by Newton from x = 3.
inline RootResult wien_displacement_x() {
    RootResult r{3.0, 0.0, 0};
    auto g = [](double x) { return 3.0 - x - 3.0 * std::exp(-x); };
    for (; r.iterations < 50; ++r.iterations) {
        const double step = g(r.x) / (-1.0 + 3.0 * std::exp(-r.x));
        r.x -= step;
        if (std::abs(step) <= 1e-16 * r.x) break;
    }
    r.residual = std::abs(g(r.x));
    return r;
}

// Angular frequency of maximal spectral density at temperature T.
inline double wien_peak_omega(double t, const PhysicalConstants& pc = {}) {
    return wien_displacement_x().x * pc.kbar * t / pc.hbar;
}

// sigma = pi^2 kbar^4 / (60 hbar^3 c^2).
inline double stefan_constant(const PhysicalConstants& pc = {}) {
    const double k2 = pc.kbar * pc.kbar;
    return std::numbers::pi * std::numbers::pi * k2 * k2 / (60.0 * pc.hbar * pc.hbar * pc.hbar * pc.c * pc.c);
}

struct QuadResult {
    double value = 0.0;
    double error_bound = 0.0;
};

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                           double whole, double eps, int depth, double& err) {
    const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1, err) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1, err);
}

} // namespace detail

inline QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps,
                                   int max_depth = 50) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    QuadResult r;
    r.value = detail::simpson_step(f, a, b, fa, fm, fb, whole, eps, max_depth, r.error_bound);
    return r;
}

// int_0^inf x^3 / (e^x - 1) dx = pi^4 / 15: Simpson on [0, 60] plus the tail,
// which lies between int_60^inf x^3 e^{-x} dx and that value / (1 - e^{-60}).
inline QuadResult planck_integral() {
    auto f = [](double x) { return x == 0.0 ? 0.0 : x * x * x / std::expm1(x); };
    const double cut = 60.0;
    QuadResult r = adaptive_simpson(f, 0.0, cut, 1e-13);
    const double lower = std::exp(-cut) * (cut * cut * cut + 3.0 * cut * cut + 6.0 * cut + 6.0);
    const double upper = lower / -std::expm1(-cut);
    r.value += 0.5 * (lower + upper);
    r.error_bound += 0.5 * (upper - lower);
    return r;
}

// kbar N_c sum_j x_j log x_j. This is S - S_c, a nonpositive number; the
// entropy gained on mixing is its negation.
inline double entropy_of_mixing(std::span<const double> x, double n_c, const PhysicalConstants& pc = {}) {
    if (x.empty()) throw Error("bad_fractions", "no components");
    double total = 0.0, s = 0.0;
    for (double xi : x) {
        if (!(xi > 0.0)) throw Error("bad_fractions", "mole fractions must be positive");
        total += xi;
        s += xi * std::log(xi);
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error("bad_fractions", "mole fractions must sum to 1");
    return pc.kbar * n_c * s;
}

// PV = RT for one mole.
inline double ideal_gas_pressure(double volume, double t, const PhysicalConstants& pc = {}) {
    if (!(volume > 0.0) || !(t > 0.0)) throw Error("bad_argument", "V and T must be positive");
    return pc.R * t / volume;
}

// H - mu N for a caller-supplied number operator.
inline ComplexMatrix effective_hamiltonian(const ComplexMatrix& h, double mu, const ComplexMatrix& n) {
    return h - mu * n;
}

} // namespace liequant::thermal
