#pragma once

// Classical brackets: canonical f ⊣ g = f_p g_q - g_p f_q on polynomials in
// (p, q), the Lie-Poisson bracket J·(∇f × ∇g) on so(3)*, and rigid-body Euler
// dynamics dJ/dt = H ⊣ J = J × ω.

#include "liequant/polynomial.hpp"
#include "liequant/rotations.hpp"

#include <iomanip>
#include <ostream>
#include <vector>

namespace liequant::poisson {

using rotations::Vec3;

// Variables ordered (p, q).
template <class C>
using PolyPQ = Polynomial<C, 2>;

// Variables ordered (J1, J2, J3).
template <class C>
using PolyJ = Polynomial<C, 3>;

template <class C>
PolyPQ<C> poisson_pq(const PolyPQ<C>& f, const PolyPQ<C>& g) {
    return f.derivative(0) * g.derivative(1) - g.derivative(0) * f.derivative(1);
}

template <class C>
PolyJ<C> lie_poisson_so3(const PolyJ<C>& f, const PolyJ<C>& g) {
    std::array<PolyJ<C>, 3> df, dg;
    for (std::size_t i = 0; i < 3; ++i) {
        df[i] = f.derivative(i);
        dg[i] = g.derivative(i);
    }
    PolyJ<C> out;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
        out += PolyJ<C>::variable(i) * (df[j] * dg[k] - df[k] * dg[j]);
    }
    return out;
}

// df/dt = H ⊣ f. The physics notation {f, H} denotes the same quantity.
template <class C>
PolyJ<C> time_derivative(const PolyJ<C>& hamiltonian, const PolyJ<C>& f) {
    return lie_poisson_so3(hamiltonian, f);
}

template <class C>
PolyPQ<C> time_derivative(const PolyPQ<C>& hamiltonian, const PolyPQ<C>& f) {
    return poisson_pq(hamiltonian, f);
}

// Rigid body with principal moments I (diagonal inertia tensor).
struct RigidBodyState {
    Vec3 J{};
    Vec3 I{1.0, 1.0, 1.0};
    double t = 0.0;

    void validate() const {
        for (double m : I)
            if (!(m > 0.0)) throw Error("bad_inertia", "principal moments must be positive");
    }

    Vec3 omega() const { return {J[0] / I[0], J[1] / I[1], J[2] / I[2]}; }
    double energy() const { return 0.5 * (J[0] * J[0] / I[0] + J[1] * J[1] / I[1] + J[2] * J[2] / I[2]); }
    double j_squared() const { return rotations::dot(J, J); }
};

inline Vec3 euler_rhs(const RigidBodyState& s) { return rotations::cross(s.J, s.omega()); }

// Classical RK4 with fixed step; the returned trajectory starts with s0.
inline std::vector<RigidBodyState> integrate_rigid_body(const RigidBodyState& s0, double dt, std::size_t steps) {
    s0.validate();
    std::vector<RigidBodyState> traj;
    traj.reserve(steps + 1);
    traj.push_back(s0);
    RigidBodyState s = s0;
    auto shifted = [&](const Vec3& d, double h) {
        RigidBodyState r = s;
        for (std::size_t i = 0; i < 3; ++i) r.J[i] += h * d[i];
        return r;
    };
    for (std::size_t n = 0; n < steps; ++n) {
        const Vec3 k1 = euler_rhs(s);
        const Vec3 k2 = euler_rhs(shifted(k1, 0.5 * dt));
        const Vec3 k3 = euler_rhs(shifted(k2, 0.5 * dt));
        const Vec3 k4 = euler_rhs(shifted(k3, dt));
        for (std::size_t i = 0; i < 3; ++i) s.J[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        s.t = s0.t + static_cast<double>(n + 1) * dt;
        traj.push_back(s);
    }
    return traj;
}

inline void write_trajectory_csv(std::ostream& os, const std::vector<RigidBodyState>& traj) {
    const auto old = os.precision(17);
    os << "t,J1,J2,J3,E,Jsq\n";
    for (const auto& s : traj)
        os << s.t << ',' << s.J[0] << ',' << s.J[1] << ',' << s.J[2] << ',' << s.energy() << ',' << s.j_squared()
           << '\n';
    os.precision(old);
}

} // namespace liequant::poisson
