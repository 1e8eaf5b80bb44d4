#pragma once

// Cartan data, root arithmetic, coroot pairings and torus evaluation for the
// rank-2 hyperbolic root system with Cartan matrix [[2,-m],[-m,2]], m >= 3.
//
// Everything is expressed in simple-root coordinates: roots are integer pairs
// (c1,c2) meaning c1*a1 + c2*a2, weights are scalar pairs. Root coordinates
// use an arbitrary-precision integer so that closed-form Weyl actions stay
// exact at any word length.

#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "kme/errors.hpp"

namespace kme {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

struct CartanData {
    int m = 3;
    double gamma = 0.0;                        // larger root of x^2 - m x + 1
    std::array<std::array<int, 2>, 2> gram{};  // [[2,-m],[-m,2]]
};

inline CartanData new_cartan(int m) {
    if (m < 3)
        throw InvalidCartan("off-diagonal entry m must be >= 3, got " + std::to_string(m));
    CartanData cd;
    cd.m = m;
    cd.gamma = (m + std::sqrt(static_cast<double>(m) * m - 4.0)) / 2.0;
    cd.gram = {{{2, -m}, {-m, 2}}};
    return cd;
}

struct RootVec {
    BigInt c1{0};
    BigInt c2{0};

    bool operator==(const RootVec& o) const { return c1 == o.c1 && c2 == o.c2; }
    RootVec operator+(const RootVec& o) const { return {c1 + o.c1, c2 + o.c2}; }
    RootVec operator-(const RootVec& o) const { return {c1 - o.c1, c2 - o.c2}; }
    RootVec operator-() const { return {-c1, -c2}; }

    bool is_zero() const { return c1 == 0 && c2 == 0; }
    bool is_positive() const { return !is_zero() && c1 >= 0 && c2 >= 0; }
    bool is_negative() const { return !is_zero() && c1 <= 0 && c2 <= 0; }

    std::string str() const {
        std::ostringstream os;
        os << "(" << c1 << "," << c2 << ")";
        return os.str();
    }
};

inline RootVec alpha(int i) {
    if (i == 1) return {1, 0};
    if (i == 2) return {0, 1};
    throw DomainError("simple root index must be 1 or 2");
}

// (a,b) under the symmetric bilinear form given by the Gram matrix.
inline BigInt form(const CartanData& cd, const RootVec& a, const RootVec& b) {
    return 2 * a.c1 * b.c1 + 2 * a.c2 * b.c2 - cd.m * (a.c1 * b.c2 + a.c2 * b.c1);
}

inline BigInt root_norm(const CartanData& cd, const RootVec& a) { return form(cd, a, a); }

// Real roots are exactly the integer vectors of norm 2.
inline bool is_real_root(const CartanData& cd, const RootVec& a) {
    return a.c1 * a.c1 + a.c2 * a.c2 - cd.m * a.c1 * a.c2 == 1;
}

inline RootVec simple_reflection(const CartanData& cd, int i, const RootVec& a) {
    if (i == 1) return {-a.c1 + cd.m * a.c2, a.c2};
    if (i == 2) return {a.c1, -a.c2 + cd.m * a.c1};
    throw DomainError("reflection index must be 1 or 2");
}

struct Weight {
    Complex s1{0.0, 0.0};
    Complex s2{0.0, 0.0};

    Weight operator+(const Weight& o) const { return {s1 + o.s1, s2 + o.s2}; }
    Weight operator-(const Weight& o) const { return {s1 - o.s1, s2 - o.s2}; }
    Weight operator*(Complex c) const { return {c * s1, c * s2}; }
};

inline Weight operator*(Complex c, const Weight& w) { return w * c; }

inline Weight to_weight(const RootVec& a) { return {Complex(to_double(a.c1)), Complex(to_double(a.c2))}; }

// lambda(h_alpha) for a real root alpha; since the Cartan matrix is symmetric,
// h_alpha corresponds to alpha under the Gram form and the pairing is bilinear.
inline Complex pair(const CartanData& cd, const Weight& lam, const RootVec& a) {
    if (!is_real_root(cd, a))
        throw NotRealRoot("pairing requires a real root, got " + a.str());
    const double c1 = to_double(a.c1);
    const double c2 = to_double(a.c2);
    const double m = cd.m;
    return 2.0 * lam.s1 * c1 + 2.0 * lam.s2 * c2 - m * (lam.s1 * c2 + lam.s2 * c1);
}

// rho(h_{alpha_i}) = 1 for i = 1,2.
inline Weight rho(const CartanData& cd) {
    const double d = 1.0 / (2.0 - cd.m);
    return {Complex(d), Complex(d)};
}

// Fundamental weight for alpha_2: varpi2(h_{alpha_1}) = 0, varpi2(h_{alpha_2}) = 1.
inline Weight varpi2(const CartanData& cd) {
    const double d = 4.0 - static_cast<double>(cd.m) * cd.m;
    return {Complex(cd.m / d), Complex(2.0 / d)};
}

struct TorusPoint {
    double x1 = 1.0;  // h_{alpha_1}(x1) h_{alpha_2}(x2), x1, x2 > 0
    double x2 = 1.0;
};

inline TorusPoint make_torus(double x1, double x2) {
    if (!(x1 > 0.0) || !(x2 > 0.0))
        throw DomainError("torus coordinates must be positive");
    return {x1, x2};
}

// log of a^mu, i.e. mu(h_{alpha_1}) ln x1 + mu(h_{alpha_2}) ln x2.
inline Complex log_torus_eval(const CartanData& cd, const TorusPoint& a, const Weight& mu) {
    const double m = cd.m;
    const Complex e1 = 2.0 * mu.s1 - m * mu.s2;
    const Complex e2 = 2.0 * mu.s2 - m * mu.s1;
    return e1 * std::log(a.x1) + e2 * std::log(a.x2);
}

inline Complex torus_eval(const CartanData& cd, const TorusPoint& a, const Weight& mu) {
    return std::exp(log_torus_eval(cd, a, mu));
}

inline bool in_A_prime(const CartanData& cd, const TorusPoint& a) {
    return log_torus_eval(cd, a, to_weight(alpha(1))).real() < 0.0 &&
           log_torus_eval(cd, a, to_weight(alpha(2))).real() < 0.0;
}

// Godement's criterion: Re nu(h_{alpha_i}) < -2 for i = 1,2 (strict).
inline bool godement(const CartanData& cd, const Weight& nu) {
    const double m = cd.m;
    return (2.0 * nu.s1 - m * nu.s2).real() < -2.0 && (2.0 * nu.s2 - m * nu.s1).real() < -2.0;
}

} // namespace kme
