#pragma once

#include "liequant/matrix.hpp"

#include <Eigen/Dense>

#include <random>

namespace liequant::testing {

using EMat = Eigen::MatrixXcd;

inline EMat to_eigen(const ComplexMatrix& m) {
    EMat e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

inline ComplexMatrix from_eigen(const EMat& e) {
    ComplexMatrix m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& gen, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx{g(gen), g(gen)};
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& gen, double scale = 1.0) {
    const ComplexMatrix m = random_matrix(n, n, gen, scale);
    return (m + m.adjoint()) / 2.0;
}

inline CVector random_vector(std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVector v(n);
    for (auto& x : v) x = cplx{g(gen), g(gen)};
    return v;
}

} // namespace liequant::testing
