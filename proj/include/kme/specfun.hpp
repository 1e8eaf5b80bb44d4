#pragma once

// Scalar special functions: Gamma (Lanczos), Riemann zeta (Euler-Maclaurin,
// valid on Re s > -39 through the continued correction series), the completed
// zeta xi(s) = pi^{-s/2} Gamma(s/2) zeta(s), the Macdonald K-Bessel function
// via trapezoid refinement of the integral
//   K_s(y) = 1/2 \int e^{-y cosh u + s u} du,
// divisor power sums, and the local/global Whittaker factors.
//
// The Gindikin-Karpelevich products need the ratio xi(u)/xi(1+u) at arguments
// as large as the B_n sequences; log_xi_ratio switches to a cancellation-free
// Stirling difference once Re u > 40.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "kme/errors.hpp"

namespace kme {

using Complex = std::complex<double>;

struct Precision {
    double rel_tol = 1e-10;       // target relative accuracy
    int quad_levels = 12;         // max trapezoid refinement levels
    int euler_maclaurin_N = 40;   // direct-sum cutoff for zeta
    int euler_maclaurin_M = 20;   // correction terms for zeta (table holds 20)
};

inline void validate(const Precision& p) {
    if (!(p.rel_tol > 0.0 && p.rel_tol <= 1e-3))
        throw DomainError("rel_tol must lie in (0, 1e-3]");
    if (p.quad_levels < 1 || p.euler_maclaurin_N < 2 || p.euler_maclaurin_M < 1 ||
        p.euler_maclaurin_M > 20)
        throw DomainError("precision counters out of range");
}

namespace detail {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLn2Pi = 1.837877066409345483560659472811235279;

// B_{2k}/(2k)! for k = 1..20
inline constexpr double kBernOverFact[21] = {
    0.0,
    0.0833333333333333333, -0.00138888888888888889,
    0.0000330687830687830688, -8.26719576719576720e-7,
    2.08767569878680990e-8, -5.28419013868749318e-10,
    1.33825365306846788e-11, -3.38968029632258287e-13,
    8.58606205627784456e-15, -2.17486869855806187e-16,
    5.50900282836022952e-18, -1.39544646858125233e-19,
    3.53470703962946747e-21, -8.95351742703754685e-23,
    2.26795245233768306e-24, -5.74479066887220245e-26,
    1.45517247561486490e-27, -3.68599494066531018e-29,
    9.33673425709504467e-31, -2.36502241570062993e-32,
};

inline bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// principal log(1+w), stable for small |w|
inline Complex log1p_c(Complex w) {
    if (std::abs(w) > 0.4) return std::log(1.0 + w);
    Complex term = w;
    Complex acc = w;
    for (int k = 2; k < 120; ++k) {
        term *= -w;
        const Complex add = term / static_cast<double>(k);
        acc += add;
        if (std::abs(add) < 1e-20 * (1.0 + std::abs(acc))) break;
    }
    return acc;
}

// Stirling tail: log Gamma(z) = (z-1/2) log z - z + ln(2pi)/2 + stirling_tail(z)
inline Complex stirling_tail(Complex z) {
    const Complex z2 = z * z;
    Complex inv = 1.0 / z;
    Complex acc = inv * (1.0 / 12.0);
    inv /= z2;
    acc -= inv * (1.0 / 360.0);
    inv /= z2;
    acc += inv * (1.0 / 1260.0);
    inv /= z2;
    acc -= inv * (1.0 / 1680.0);
    inv /= z2;
    acc += inv * (1.0 / 1188.0);
    inv /= z2;
    acc -= inv * (691.0 / 360360.0);
    return acc;
}

// log Gamma(z) - log Gamma(z + 1/2) without cancellation; needs Re z >= 16.
inline Complex log_gamma_half_ratio(Complex z) {
    const Complex ratio = -log1p_c(0.5 / z);                       // log(z/(z+1/2))
    return (z - 0.5) * ratio - 0.5 * std::log(z + 0.5) + 0.5 +
           stirling_tail(z) - stirling_tail(z + 0.5);
}

} // namespace detail

// Lanczos approximation (g = 7, 9 terms), reflection for Re z < 1/2.
inline Complex log_gamma(Complex z) {
    if (detail::is_nonpositive_integer(z))
        throw PoleError("Gamma pole at " + std::to_string(z.real()));
    static const double c[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};
    if (z.real() < 0.5)
        return std::log(detail::kPi / std::sin(detail::kPi * z)) - log_gamma(1.0 - z);
    z -= 1.0;
    Complex x = c[0];
    for (int k = 1; k < 9; ++k) x += c[k] / (z + static_cast<double>(k));
    const Complex t = z + 7.5;
    return 0.5 * detail::kLn2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline Complex gamma_fn(Complex s) { return std::exp(log_gamma(s)); }

// Euler-Maclaurin evaluation of zeta(s); the correction series continues the
// formula well past the strip needed here (Re s > 1 - 2M).
inline Complex zeta_fn(Complex s, const Precision& prec = {}) {
    validate(prec);
    if (std::abs(s - 1.0) < 1e-12) throw PoleError("zeta pole at s = 1");
    if (s.real() >= 45.0) {
        Complex acc = 1.0;
        for (int n = 2; n < 64; ++n) {
            const Complex term = std::exp(-s * std::log(static_cast<double>(n)));
            acc += term;
            if (std::abs(term) < 1e-25) break;
        }
        return acc;
    }
    const int N = prec.euler_maclaurin_N;
    const int M = prec.euler_maclaurin_M;
    Complex acc = 0.0;
    for (int n = 1; n < N; ++n) acc += std::exp(-s * std::log(static_cast<double>(n)));
    const double lnN = std::log(static_cast<double>(N));
    acc += std::exp((1.0 - s) * lnN) / (s - 1.0);
    acc += 0.5 * std::exp(-s * lnN);
    Complex poch = s;                                  // s (s+1) ... (s+2k-2)
    Complex npow = std::exp((-s - 1.0) * lnN);         // N^{-s-2k+1}
    const double n2 = 1.0 / (static_cast<double>(N) * N);
    for (int k = 1; k <= M; ++k) {
        acc += detail::kBernOverFact[k] * poch * npow;
        poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        npow *= n2;
    }
    return acc;
}

// xi(s) = pi^{-s/2} Gamma(s/2) zeta(s). For Re s < 1/2 the direct product is
// 0 * inf at the trivial zeros, so the reflected form (zeta's functional
// equation with the sin factor cancelled analytically) is used there:
//   xi(s) = 2^s pi^{s/2} Gamma(1-s) zeta(1-s) / Gamma(1-s/2).
inline Complex xi(Complex s, const Precision& prec = {}) {
    if (std::abs(s) < 1e-12 || std::abs(s - 1.0) < 1e-12)
        throw PoleError("xi poles at s = 0 and s = 1");
    const double lnpi = std::log(detail::kPi);
    if (s.real() >= 0.5) {
        return std::exp(log_gamma(0.5 * s) - 0.5 * s * lnpi) * zeta_fn(s, prec);
    }
    return std::exp(s * std::log(2.0) + 0.5 * s * lnpi + log_gamma(1.0 - s) -
                    log_gamma(1.0 - 0.5 * s)) *
           zeta_fn(1.0 - s, prec);
}

// principal log of xi(s) for Re s > 1
inline Complex log_xi(Complex s, const Precision& prec = {}) {
    if (!(s.real() > 1.0)) throw DomainError("log_xi requires Re s > 1");
    return -0.5 * s * std::log(detail::kPi) + log_gamma(0.5 * s) + std::log(zeta_fn(s, prec));
}

// log of xi(u)/xi(1+u); stable for arbitrarily large |Re u|. The functional
// equation turns the ratio at u into the reciprocal ratio at -u.
inline Complex log_xi_ratio(Complex u, const Precision& prec = {}) {
    if (u.real() < -39.0) return -log_xi_ratio(-u, prec);
    if (u.real() <= 40.0) {
        return std::log(xi(u, prec) / xi(1.0 + u, prec));
    }
    // log zeta via log1p of the prime-free tail sum; converges immediately here
    const auto log_zeta_large = [](Complex s) {
        Complex tail = 0.0;
        for (int n = 2; n < 40; ++n) {
            const Complex term = std::exp(-s * std::log(static_cast<double>(n)));
            tail += term;
            if (std::abs(term) < 1e-30) break;
        }
        return detail::log1p_c(tail);
    };
    return 0.5 * std::log(detail::kPi) + detail::log_gamma_half_ratio(0.5 * u) +
           log_zeta_large(u) - log_zeta_large(1.0 + u);
}

inline Complex xi_ratio(Complex u, const Precision& prec = {}) {
    return std::exp(log_xi_ratio(u, prec));
}

namespace detail {

// One trapezoid pass over the scaled integrand exp(-y cosh u + s u - M),
// summed outward from the peak until the real exponent drops below -46.
inline Complex bessel_trapezoid(Complex s, double y, double u_star, double M, double h) {
    const auto scaled = [&](double u) {
        return std::exp(Complex(-y * std::cosh(u) - M, 0.0) + s * u);
    };
    const auto exponent = [&](double u) { return -y * std::cosh(u) + s.real() * u - M; };
    Complex acc = scaled(u_star);
    for (int dir : {-1, 1}) {
        for (long k = 1; k < 4000000; ++k) {
            const double u = u_star + dir * k * h;
            if (exponent(u) < -46.0) break;
            acc += scaled(u);
        }
    }
    return acc * h;
}

} // namespace detail

// log K_s(y), quadrature refined until two levels agree to rel_tol.
inline Complex log_bessel_k(Complex order, double y, const Precision& prec = {}) {
    validate(prec);
    if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("bessel_k requires y > 0");
    const double sigma = order.real();
    const double u_star = std::asinh(sigma / y);
    const double M = -y * std::cosh(u_star) + sigma * u_star;
    double h = 0.5;
    Complex prev = detail::bessel_trapezoid(order, y, u_star, M, h);
    double achieved = 1.0;
    for (int level = 1; level <= prec.quad_levels; ++level) {
        h *= 0.5;
        const Complex cur = detail::bessel_trapezoid(order, y, u_star, M, h);
        achieved = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
        if (achieved <= prec.rel_tol)
            return M + std::log(0.5 * cur);
        prev = cur;
    }
    throw AccuracyError("bessel_k did not converge within quad_levels; achieved " +
                        std::to_string(achieved));
}

inline Complex bessel_k(Complex order, double y, const Precision& prec = {}) {
    return std::exp(log_bessel_k(order, y, prec));
}

// Per-level quadrature values (diagnostic; no convergence exit). Starts two
// octaves coarser than the production path so the convergence window shows.
inline std::vector<Complex> bessel_k_refinement(Complex order, double y, int levels,
                                                const Precision& prec = {}) {
    validate(prec);
    if (!(y > 0.0)) throw DomainError("bessel_k requires y > 0");
    const double sigma = order.real();
    const double u_star = std::asinh(sigma / y);
    const double M = -y * std::cosh(u_star) + sigma * u_star;
    std::vector<Complex> out;
    double h = 2.0;
    for (int level = 0; level <= levels; ++level) {
        out.push_back(std::exp(Complex(M, 0.0)) * 0.5 *
                      detail::bessel_trapezoid(order, y, u_star, M, h));
        h *= 0.5;
    }
    return out;
}

// sigma_s(n) = sum over divisors d of n of d^s
inline Complex divisor_power_sum(Complex s, long long n) {
    if (n <= 0) throw DomainError("divisor_power_sum requires n >= 1");
    Complex acc = 0.0;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        acc += std::exp(s * std::log(static_cast<double>(d)));
        const long long q = n / d;
        if (q != d) acc += std::exp(s * std::log(static_cast<double>(q)));
    }
    return acc;
}

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::vector<int> primes_up_to(int limit) {
    std::vector<bool> sieve(static_cast<size_t>(std::max(limit + 1, 2)), true);
    sieve[0] = sieve[1] = false;
    for (int p = 2; p * p <= limit; ++p)
        if (sieve[static_cast<size_t>(p)])
            for (int q = p * p; q <= limit; q += p) sieve[static_cast<size_t>(q)] = false;
    std::vector<int> out;
    for (int p = 2; p <= limit; ++p)
        if (sieve[static_cast<size_t>(p)]) out.push_back(p);
    return out;
}

// local factor W^p_n(s) = (1-p^{-s})(1-p^{(n_p+1)(1-s)})/(1-p^{1-s})
inline Complex whittaker_p(long long p, long long n, Complex s) {
    if (!is_prime(p)) throw DomainError("whittaker_p requires a prime p");
    if (n == 0) throw DomainError("whittaker_p requires n != 0");
    if (!(s.real() > 1.0)) throw DomainError("whittaker_p requires Re s > 1");
    long long a = n < 0 ? -n : n;
    int np = 0;
    while (a % p == 0) {
        a /= p;
        ++np;
    }
    const double lnp = std::log(static_cast<double>(p));
    const Complex one_minus_ps = 1.0 - std::exp(-s * lnp);
    const Complex q = std::exp((1.0 - s) * lnp);
    return one_minus_ps * (1.0 - std::pow(q, np + 1)) / (1.0 - q);
}

// archimedean factor W^inf_n(y,s) = 2 pi^{s/2} Gamma(s/2)^{-1} |ny|^{(s-1)/2}
//                                     K_{(s-1)/2}(2 pi |n| y)
inline Complex whittaker_inf(long long n, double y, Complex s, const Precision& prec = {}) {
    if (!(s.real() > 1.0)) throw DomainError("whittaker_inf requires Re s > 1");
    if (n == 0) throw DomainError("whittaker_inf requires n != 0");
    if (!(y > 0.0)) throw DomainError("whittaker_inf requires y > 0");
    const double ny = std::abs(static_cast<double>(n)) * y;
    return 2.0 * std::exp(0.5 * s * std::log(detail::kPi) - log_gamma(0.5 * s) +
                          0.5 * (s - 1.0) * std::log(ny) +
                          log_bessel_k(0.5 * (s - 1.0), 2.0 * detail::kPi * ny, prec));
}

// log of W_n(y,s) = 2 sigma_{1-s}(|n|) |ny|^{(s-1)/2} K_{(s-1)/2}(2 pi |n| y) / xi(s)
inline Complex log_whittaker_global(long long n, double y, Complex s,
                                    const Precision& prec = {}) {
    if (!(s.real() > 1.0)) throw DomainError("whittaker_global requires Re s > 1");
    if (n == 0) throw DomainError("whittaker_global requires n != 0");
    if (!(y > 0.0)) throw DomainError("whittaker_global requires y > 0");
    const long long an = n < 0 ? -n : n;
    const double ny = static_cast<double>(an) * y;
    return std::log(2.0) + std::log(divisor_power_sum(1.0 - s, an)) +
           0.5 * (s - 1.0) * std::log(ny) +
           log_bessel_k(0.5 * (s - 1.0), 2.0 * detail::kPi * ny, prec) - log_xi(s, prec);
}

inline Complex whittaker_global(long long n, double y, Complex s, const Precision& prec = {}) {
    return std::exp(log_whittaker_global(n, y, s, prec));
}

// cheap upper bound for Re log W_n(y,s), from K_nu(z) <= (1/2) Gamma(nu) (2/z)^nu;
// used to skip Bessel quadratures for terms that underflow anyway.
inline double whittaker_log_upper(long long n, double y, Complex s, const Precision& prec = {}) {
    const double nu = 0.5 * (s.real() - 1.0);
    if (nu <= 1.0) return 1e300;  // bound only needed for large orders
    const long long an = n < 0 ? -n : n;
    const double ny = static_cast<double>(an) * y;
    const double z = 2.0 * detail::kPi * ny;
    const double log_k_bound = std::lgamma(nu) + nu * std::log(2.0 / z) - std::log(2.0);
    return std::log(2.0) + std::log(static_cast<double>(an)) + 1.0 +
           0.5 * (s.real() - 1.0) * std::log(ny) + log_k_bound -
           log_xi(s, prec).real() + 2.0;
}

} // namespace kme
