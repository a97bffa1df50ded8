#pragma once

// Sparse multivariate polynomials over an arbitrary coefficient ring.
// Coefficients may be exact (boost::rational) or floating point; zero terms
// are never stored.

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <ostream>
#include <utility>

namespace liequant {

template <class Coeff, std::size_t NVars>
class Polynomial {
public:
    using Exponent = std::array<int, NVars>;
    using Terms = std::map<Exponent, Coeff>;

    Polynomial() = default;

    explicit Polynomial(Coeff constant) { add_term(Exponent{}, constant); }

    Polynomial(std::initializer_list<std::pair<Exponent, Coeff>> terms) {
        for (const auto& [e, c] : terms) add_term(e, c);
    }

    static Polynomial variable(std::size_t i) {
        Exponent e{};
        e[i] = 1;
        return monomial(e, Coeff(1));
    }

    static Polynomial monomial(const Exponent& e, Coeff c) {
        Polynomial p;
        p.add_term(e, c);
        return p;
    }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Coeff coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int k : e) s += k;
            d = std::max(d, s);
        }
        return d;
    }

    void add_term(const Exponent& e, const Coeff& c) {
        if (c == Coeff(0)) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (fresh) return;
        it->second += c;
        if (it->second == Coeff(0)) terms_.erase(it);
    }

    Polynomial derivative(std::size_t var) const {
        Polynomial d;
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent f = e;
            --f[var];
            d.add_term(f, c * Coeff(e[var]));
        }
        return d;
    }

    template <class T>
    T evaluate(const std::array<T, NVars>& x) const {
        T sum{};
        for (const auto& [e, c] : terms_) {
            T m = static_cast<T>(c);
            for (std::size_t i = 0; i < NVars; ++i)
                for (int k = 0; k < e[i]; ++k) m *= x[i];
            sum += m;
        }
        return sum;
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const Coeff& s) {
        if (s == Coeff(0)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= Coeff(-1); }
    friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
    friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e;
                for (std::size_t i = 0; i < NVars; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        if (p.terms_.empty()) return os << "0";
        bool first = true;
        for (const auto& [e, c] : p.terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c << ")";
            for (std::size_t i = 0; i < NVars; ++i)
                if (e[i] != 0) os << "*x" << i << "^" << e[i];
        }
        return os;
    }

private:
    Terms terms_;
};

} // namespace liequant
