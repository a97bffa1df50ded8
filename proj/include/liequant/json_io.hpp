#pragma once

// JSON encoding for matrices and algebra bases. A matrix is an array of rows;
// a real entry is a number and a complex entry is [re, im].

#include "liequant/lie.hpp"
#include "liequant/matrix.hpp"

#include <nlohmann/json.hpp>

namespace liequant::json_io {

using nlohmann::json;

inline json scalar_to_json(cplx z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

inline cplx scalar_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw Error("bad_json", "expected a number or [re, im]");
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
        throw Error("bad_json", "matrix must be a nonempty array of rows");
    const std::size_t r = j.size(), c = j[0].size();
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!j[i].is_array() || j[i].size() != c) throw Error("bad_json", "ragged matrix rows");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = scalar_from_json(j[i][k]);
    }
    return m;
}

// {name, dim, names[], c[][][]}
inline json algebra_to_json(const lie::LieAlgebraBasis& b) {
    json c = json::array();
    for (std::size_t j = 0; j < b.dim(); ++j) {
        json cj = json::array();
        for (std::size_t k = 0; k < b.dim(); ++k) {
            json cjk = json::array();
            for (std::size_t l = 0; l < b.dim(); ++l) cjk.push_back(scalar_to_json(b(j, k, l)));
            cj.push_back(std::move(cjk));
        }
        c.push_back(std::move(cj));
    }
    return {{"name", b.name()}, {"dim", b.dim()}, {"names", b.names()}, {"c", std::move(c)}};
}

inline lie::LieAlgebraBasis algebra_from_json(const json& j) {
    try {
        const auto names = j.at("names").get<std::vector<std::string>>();
        const std::size_t dim = j.at("dim").get<std::size_t>();
        if (names.size() != dim) throw Error("bad_json", "dim differs from the number of names");
        lie::LieAlgebraBasis b(j.value("name", std::string("algebra")), names);
        const json& c = j.at("c");
        if (c.size() != dim) throw Error("bad_json", "structure constants have the wrong shape");
        for (std::size_t a = 0; a < dim; ++a) {
            if (c[a].size() != dim) throw Error("bad_json", "structure constants have the wrong shape");
            for (std::size_t k = 0; k < dim; ++k) {
                if (c[a][k].size() != dim) throw Error("bad_json", "structure constants have the wrong shape");
                for (std::size_t l = 0; l < dim; ++l) b(a, k, l) = scalar_from_json(c[a][k][l]);
            }
        }
        return b;
    } catch (const json::exception& e) {
        throw Error("bad_json", e.what());
    }
}

} // namespace liequant::json_io
