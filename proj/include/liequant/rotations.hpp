#pragma once

// SO(3) and SU(2): hat map, elementary rotations, Rodrigues formula, ZYZ Euler
// angles, rotation axis, and the 2:1 covering map SU(2) -> SO(3).

#include "liequant/matrix.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

namespace liequant::rotations {

using Vec3 = std::array<double, 3>;

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Real 3x3 special orthogonal matrix.
class Rotation {
public:
    Rotation() : m_(ComplexMatrix::identity(3)) {}

    explicit Rotation(ComplexMatrix m) : m_(std::move(m)) {
        if (m_.rows() != 3 || m_.cols() != 3) throw Error("shape", "rotation must be 3x3");
        if (!is_special_orthogonal(m_, Tolerance{1e-9, 0.0}))
            throw Error("not_rotation", "matrix is not special orthogonal");
    }

    static Rotation from_rows(const std::array<Vec3, 3>& rows) {
        ComplexMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = rows[i][j];
        return Rotation(std::move(m));
    }

    const ComplexMatrix& matrix() const noexcept { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j).real(); }

    Vec3 apply(const Vec3& v) const {
        Vec3 out{};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    Rotation transpose() const { return Rotation(unchecked, m_.transpose()); }

    friend Rotation operator*(const Rotation& a, const Rotation& b) { return Rotation(unchecked, a.m_ * b.m_); }

private:
    struct unchecked_t {};
    static constexpr unchecked_t unchecked{};
    Rotation(unchecked_t, ComplexMatrix m) : m_(std::move(m)) {}

    ComplexMatrix m_;
};

// U(x, y) = [[x, y], [-conj(y), conj(x)]] with |x|^2 + |y|^2 = 1.
struct SU2Element {
    cplx x{1.0, 0.0};
    cplx y{};

    SU2Element() = default;
    SU2Element(cplx x_, cplx y_) : x(x_), y(y_) {
        if (std::abs(std::norm(x) + std::norm(y) - 1.0) > 1e-12) throw Error("not_su2", "|x|^2 + |y|^2 must be 1");
    }

    ComplexMatrix matrix() const { return {{x, y}, {-std::conj(y), std::conj(x)}}; }

    static SU2Element from_matrix(const ComplexMatrix& u) {
        if (u.rows() != 2 || u.cols() != 2) throw Error("shape", "SU(2) element must be 2x2");
        if (std::abs(u(1, 0) + std::conj(u(0, 1))) > 1e-12 || std::abs(u(1, 1) - std::conj(u(0, 0))) > 1e-12)
            throw Error("not_su2", "matrix does not have the form [[x, y], [-conj(y), conj(x)]]");
        return SU2Element(u(0, 0), u(0, 1));
    }

    SU2Element operator-() const {
        SU2Element r;
        r.x = -x;
        r.y = -y;
        return r;
    }

    friend SU2Element operator*(const SU2Element& a, const SU2Element& b) {
        SU2Element r;
        r.x = a.x * b.x - a.y * std::conj(b.y);
        r.y = a.x * b.y + a.y * std::conj(b.x);
        return r;
    }
};

// X(w) with X(w) v = w x v.
inline ComplexMatrix hat(const Vec3& w) {
    return {{0.0, -w[2], w[1]}, {w[2], 0.0, -w[0]}, {-w[1], w[0], 0.0}};
}

inline Vec3 vee(const ComplexMatrix& x) {
    if (x.rows() != 3 || x.cols() != 3) throw Error("shape", "vee expects a 3x3 matrix");
    if ((x + x.transpose()).norm_max() > 1e-10 || !x.is_real(1e-10))
        throw Error("not_antisymmetric", "vee expects a real antisymmetric matrix");
    return {x(2, 1).real(), x(0, 2).real(), x(1, 0).real()};
}

enum class Axis { x, y, z };

inline Rotation elementary(Axis axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    switch (axis) {
    case Axis::x: return Rotation::from_rows({Vec3{1, 0, 0}, Vec3{0, c, -s}, Vec3{0, s, c}});
    case Axis::y: return Rotation::from_rows({Vec3{c, 0, s}, Vec3{0, 1, 0}, Vec3{-s, 0, c}});
    case Axis::z: return Rotation::from_rows({Vec3{c, -s, 0}, Vec3{s, c, 0}, Vec3{0, 0, 1}});
    }
    throw Error("bad_axis", "axis must be x, y or z");
}

// exp(X(a)) = 1 + (sin t / t) X + ((1 - cos t) / t^2) X^2 with t = |a|.
inline Rotation rodrigues(const Vec3& a) {
    const double t = norm(a);
    if (t == 0.0) return Rotation();
    double c1, c2;
    if (t < 1e-6) {
        const double t2 = t * t;
        c1 = 1.0 - t2 / 6.0;
        c2 = 0.5 - t2 / 24.0;
    } else {
        const double sh = std::sin(0.5 * t);
        c1 = std::sin(t) / t;
        c2 = 2.0 * sh * sh / (t * t);
    }
    const ComplexMatrix x = hat(a);
    return Rotation(ComplexMatrix::identity(3) + c1 * x + c2 * (x * x));
}

// Entries of R(U(x, y)); rows as in the standard explicit parametrization.
inline Rotation covering_map(const SU2Element& u) {
    const cplx x = u.x, y = u.y;
    const cplx x2 = x * x, y2 = y * y, xy = x * y, xyb = x * std::conj(y);
    return Rotation::from_rows({
        Vec3{(x2 - y2).real(), (x2 + y2).imag(), -2.0 * xy.real()},
        Vec3{-(x2 - y2).imag(), (x2 + y2).real(), 2.0 * xy.imag()},
        Vec3{2.0 * xyb.real(), 2.0 * xyb.imag(), std::norm(x) - std::norm(y)},
    });
}

// Preimage of R under covering_map. Of the pair +-U the one whose first
// nonzero component among (Re x, Im x, Re y, Im y) is positive is returned.
inline SU2Element lift_to_su2(const Rotation& r) {
    // With x = a + ib, y = c + id:
    //   4a^2 = 1 + tr R,            4b^2 = 1 - R11 - R22 + R33,
    //   4c^2 = 1 - R11 + R22 - R33, 4d^2 = 1 + R11 - R22 - R33.
    const double r11 = r(0, 0), r22 = r(1, 1), r33 = r(2, 2);
    const std::array<double, 4> sq{1.0 + r11 + r22 + r33, 1.0 - r11 - r22 + r33, 1.0 - r11 + r22 - r33,
                                   1.0 + r11 - r22 - r33};
    const std::size_t big = static_cast<std::size_t>(std::max_element(sq.begin(), sq.end()) - sq.begin());
    const double ab = r(0, 1) - r(1, 0), cd = r(0, 1) + r(1, 0);
    const double ac = r(2, 0) - r(0, 2), bd = r(2, 0) + r(0, 2);
    const double ad = r(1, 2) - r(2, 1), bc = r(1, 2) + r(2, 1);
    std::array<double, 4> q{};
    const double v = 0.5 * std::sqrt(std::max(sq[big], 0.0));
    const double f = 0.25 / v;
    switch (big) {
    case 0: q = {v, ab * f, ac * f, ad * f}; break;
    case 1: q = {ab * f, v, bc * f, bd * f}; break;
    case 2: q = {ac * f, bc * f, v, cd * f}; break;
    default: q = {ad * f, bd * f, cd * f, v}; break;
    }
    const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    for (auto& e : q) e /= n;
    for (double e : q) {
        if (std::abs(e) <= 1e-14) continue;
        if (e < 0.0)
            for (auto& g : q) g = -g;
        break;
    }
    SU2Element u;
    u.x = {q[0], q[1]};
    u.y = {q[2], q[3]};
    return u;
}

// Unit vector fixed by R, or nullopt when R is the identity.
inline std::optional<Vec3> rotation_axis(const Rotation& r) {
    const SU2Element u = lift_to_su2(r);
    // R(U) rotates about -(Im y, Re y, Im x)
    Vec3 axis{-u.y.imag(), -u.y.real(), -u.x.imag()};
    const double n = norm(axis);
    if (n <= 1e-12) return std::nullopt;
    for (auto& e : axis) e /= n;
    return axis;
}

struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

inline Rotation from_euler_zyz(const EulerAngles& e) {
    return elementary(Axis::z, e.alpha) * elementary(Axis::y, e.beta) * elementary(Axis::z, e.gamma);
}

// R = R_z(alpha) R_y(beta) R_z(gamma), beta in [0, pi]. At gimbal lock
// gamma = 0 and the whole z-rotation goes into alpha.
inline EulerAngles euler_zyz(const Rotation& r) {
    EulerAngles e;
    const double sb = std::hypot(r(0, 2), r(1, 2));
    if (sb <= 1e-14) {
        if (r(2, 2) > 0.0) {
            e.beta = 0.0;
            e.alpha = std::atan2(r(1, 0), r(0, 0));
        } else {
            e.beta = std::numbers::pi;
            e.alpha = std::atan2(-r(1, 0), -r(0, 0));
        }
        return e;
    }
    e.beta = std::atan2(sb, r(2, 2));
    e.alpha = std::atan2(r(1, 2), r(0, 2));
    // gamma from the residual z-rotation keeps the reconstruction consistent
    const Rotation rest = (elementary(Axis::z, e.alpha) * elementary(Axis::y, e.beta)).transpose() * r;
    e.gamma = std::atan2(rest(1, 0), rest(0, 0));
    return e;
}

// Haar-distributed element: normalized vector of four standard normals.
template <class URBG>
SU2Element haar_su2(URBG& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::array<double, 4> q{};
    double n = 0.0;
    do {
        for (auto& e : q) e = normal(gen);
        n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    } while (n < 1e-8);
    SU2Element u;
    u.x = {q[0] / n, q[1] / n};
    u.y = {q[2] / n, q[3] / n};
    return u;
}

} // namespace liequant::rotations
