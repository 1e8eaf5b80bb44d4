#pragma once

// Truncated Weyl-group series: the constant term
//   E#_nu(a) = sum_{w in W} a^{w(nu+rho)-rho} c(nu,w),
//   c(nu,w)  = prod_{alpha in Phi_+ cap w^{-1}Phi_-} xi(-(nu+rho)(h_alpha))
//                                                  / xi(1-(nu+rho)(h_alpha)),
// the degenerate Fourier coefficients (Whittaker factor riding on the
// w^{-1}alpha_i < 0 cells), the cuspidal constant term over W1, and the
// convergence-region explorer.
//
// Terms are assembled in log space and summed sequentially in canonical order
// (by length, then R1Alt < R2Alt < Alt12 < Alt21), so reports are
// bit-reproducible. Convergence is declared when the last two length bands
// each contribute under rel_tol * |accumulated| and the band ratio is < 1.

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "kme/errors.hpp"
#include "kme/rootsys.hpp"
#include "kme/specfun.hpp"
#include "kme/weyl.hpp"

namespace kme {

struct TruncatedSum {
    Complex value{0.0, 0.0};
    long long terms_used = 0;
    int max_length = 0;
    double last_term_mag = 0.0;
    double tail_ratio = 0.0;
    bool converged = false;
};

enum class Verdict { Decaying, Stalling, Growing };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Decaying: return "Decaying";
        case Verdict::Stalling: return "Stalling";
        case Verdict::Growing: return "Growing";
    }
    return "?";
}

struct ConvergenceReport {
    Weight nu{};       // quasi-character (s * varpi2 in cuspidal mode)
    Complex param{};   // scanned parameter: nu(h_{alpha_i}) or s
    bool cuspidal = false;
    std::vector<std::pair<int, Complex>> partial_sums;  // cumulative, per band
    Verdict verdict = Verdict::Stalling;
};

namespace detail {

enum class BandFamily { All, StartsR1, StartsR2, W1 };

inline std::vector<WeylElt> band_elements(BandFamily fam, int len) {
    switch (fam) {
        case BandFamily::All:
            return elements_of_length(len);
        case BandFamily::StartsR1:
            if (len == 0) return {};
            if (len % 2 == 1) return {WeylElt{Shape::R1Alt, (len - 1) / 2}};
            return {WeylElt{Shape::Alt12, (len - 2) / 2}};
        case BandFamily::StartsR2:
            if (len == 0) return {};
            if (len % 2 == 1) return {WeylElt{Shape::R2Alt, (len - 1) / 2}};
            return {WeylElt{Shape::Alt21, (len - 2) / 2}};
        case BandFamily::W1:
            if (len == 0) return {weyl_id()};
            if (len % 2 == 1) return {WeylElt{Shape::R2Alt, (len - 1) / 2}};
            return {WeylElt{Shape::Alt12, (len - 2) / 2}};
    }
    return {};
}

// sum of log xi-ratio factors over the inversion set; nupr = nu + rho.
// skip_last drops the root consumed by a Whittaker factor.
inline Complex log_c_product(const CartanData& cd, const Weight& nupr, const WeylElt& w,
                             const Precision& prec, bool enforce_validity,
                             bool skip_last = false) {
    const auto betas = inversion_set(cd, w);
    const size_t count = betas.size() - (skip_last && !betas.empty() ? 1 : 0);
    Complex acc = 0.0;
    for (size_t j = 0; j < count; ++j) {
        const Complex u = -pair(cd, nupr, betas[j]);
        if (enforce_validity && !(u.real() > 1.0))
            throw OutsideValidityRegion("-Re(nu+rho)(h_alpha) <= 1 at root " + betas[j].str() +
                                        " of w = " + word_name(w));
        const Complex f = log_xi_ratio(u, prec);
        if (!std::isfinite(f.real()) || !std::isfinite(f.imag()))
            throw AccuracyError("xi ratio not finite at root " + betas[j].str());
        acc += f;
    }
    return acc;
}

inline Complex exp_checked(Complex logv, const WeylElt& w) {
    if (logv.real() > 709.0)
        throw TermOverflow("term magnitude overflows at w = " + word_name(w));
    if (logv.real() < -745.0) return {0.0, 0.0};
    return std::exp(logv);
}

template <typename TermFn>
TruncatedSum accumulate(BandFamily fam, int max_length, double rel_tol, TermFn&& term) {
    TruncatedSum out;
    out.max_length = max_length;
    Complex acc = 0.0;
    std::vector<double> bands;
    for (int len = 0; len <= max_length; ++len) {
        const auto ws = band_elements(fam, len);
        if (ws.empty()) continue;
        double band = 0.0;
        for (const auto& w : ws) {
            const Complex t = term(w);
            acc += t;
            band += std::abs(t);
            out.last_term_mag = std::abs(t);
            ++out.terms_used;
        }
        bands.push_back(band);
    }
    out.value = acc;
    if (bands.size() >= 2) {
        const double b1 = bands[bands.size() - 1];
        const double b0 = bands[bands.size() - 2];
        out.tail_ratio = b0 > 0.0 ? b1 / b0
                                  : (b1 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        const double abs_tol = rel_tol * std::abs(acc);
        out.converged = b1 < abs_tol && b0 < abs_tol && out.tail_ratio < 1.0;
    }
    return out;
}

inline Verdict classify_bands(const std::vector<double>& bands) {
    if (bands.size() < 3) return Verdict::Stalling;
    if (bands.back() == 0.0) return Verdict::Decaying;  // tail underflowed
    const size_t lo = bands.size() >= 5 ? bands.size() - 4 : 1;
    bool all_down = true;
    bool all_up = true;
    for (size_t i = lo; i < bands.size(); ++i) {
        if (bands[i - 1] == 0.0) {
            all_up = false;
            continue;
        }
        const double r = bands[i] / bands[i - 1];
        all_down = all_down && r < 0.95;
        all_up = all_up && r > 1.05;
    }
    if (all_down) return Verdict::Decaying;
    if (all_up) return Verdict::Growing;
    return Verdict::Stalling;
}

inline ConvergenceReport scan_point(const CartanData& cd, const Weight& nu, Complex param,
                                    bool cuspidal, const TorusPoint& a, const Precision& prec,
                                    int max_length) {
    ConvergenceReport rep;
    rep.nu = nu;
    rep.param = param;
    rep.cuspidal = cuspidal;
    const Weight nupr = nu + rho(cd);
    const BandFamily fam = cuspidal ? BandFamily::W1 : BandFamily::All;
    Complex acc = 0.0;
    std::vector<double> bands;
    bool failed = false;
    for (int len = 0; len <= max_length && !failed; ++len) {
        const auto ws = band_elements(fam, len);
        if (ws.empty()) continue;
        double band = 0.0;
        try {
            for (const auto& w : ws) {
                const Complex logt = log_torus_eval(cd, a, act_weight(cd, w, nupr) - rho(cd)) +
                                     log_c_product(cd, nupr, w, prec, false);
                const Complex t = exp_checked(logt, w);
                acc += t;
                band += std::abs(t);
            }
        } catch (const Error&) {
            failed = true;  // pole, overflow or lost accuracy: report as Growing
            break;
        }
        bands.push_back(band);
        rep.partial_sums.emplace_back(len, acc);
    }
    rep.verdict = failed ? Verdict::Growing : classify_bands(bands);
    return rep;
}

} // namespace detail

// Gindikin-Karpelevich product over the inversion set of w; empty product at
// the identity. Valid while -Re(nu+rho)(h_alpha) > 1 on every factor.
inline Complex c_function(const CartanData& cd, const Weight& nu, const WeylElt& w,
                          const Precision& prec = {}) {
    validate(prec);
    return std::exp(detail::log_c_product(cd, nu + rho(cd), w, prec, true));
}

inline TruncatedSum constant_term(const CartanData& cd, const Weight& nu, const TorusPoint& a,
                                  const Precision& prec, int max_length) {
    validate(prec);
    if (max_length < 0) throw InvalidIndex("max_length must be >= 0");
    if (!godement(cd, nu))
        throw GodementViolation("nu must satisfy Re nu(h_{alpha_i}) < -2");
    if (!in_A_prime(cd, a)) throw NotInCone("a must satisfy a^{alpha_i} < 1");
    const Weight nupr = nu + rho(cd);
    return detail::accumulate(detail::BandFamily::All, max_length, prec.rel_tol,
                              [&](const WeylElt& w) {
                                  const Complex logt =
                                      log_torus_eval(cd, a, act_weight(cd, w, nupr) - rho(cd)) +
                                      detail::log_c_product(cd, nupr, w, prec, true);
                                  return detail::exp_checked(logt, w);
                              });
}

// psi_{i,n} Fourier coefficient: the Weyl sum restricted to w^{-1}alpha_i < 0,
// with the last inversion root -w^{-1}alpha_i traded for the global Whittaker
// factor W_n(a^{-alpha_i}, 1 + w(nu+rho)(h_{alpha_i})).
inline TruncatedSum fourier_coeff(const CartanData& cd, int i, long long n, const Weight& nu,
                                  const TorusPoint& a, const Precision& prec, int max_length) {
    validate(prec);
    if (i != 1 && i != 2) throw DomainError("character index i must be 1 or 2");
    if (n == 0)
        throw DegenerateCharacter("psi_{i,0} is trivial; use constant_term");
    if (max_length < 0) throw InvalidIndex("max_length must be >= 0");
    if (!godement(cd, nu))
        throw GodementViolation("nu must satisfy Re nu(h_{alpha_i}) < -2");
    if (!in_A_prime(cd, a)) throw NotInCone("a must satisfy a^{alpha_i} < 1");

    const Weight nupr = nu + rho(cd);
    const double y = std::exp(-log_torus_eval(cd, a, to_weight(alpha(i))).real());
    const auto fam = i == 1 ? detail::BandFamily::StartsR1 : detail::BandFamily::StartsR2;
    return detail::accumulate(fam, max_length, prec.rel_tol, [&](const WeylElt& w) {
        const Complex logt = log_torus_eval(cd, a, act_weight(cd, w, nupr) - rho(cd)) +
                             detail::log_c_product(cd, nupr, w, prec, true, /*skip_last=*/true);
        const Complex s_w = 1.0 + pair(cd, act_weight(cd, w, nupr), alpha(i));
        if (!(s_w.real() > 1.0))
            throw DomainError("Whittaker argument left Re s > 1 at w = " + word_name(w));
        // skip the Bessel quadrature when the term underflows regardless
        if (logt.real() + whittaker_log_upper(n, y, s_w, prec) < -760.0) return Complex{0.0, 0.0};
        return detail::exp_checked(logt + log_whittaker_global(n, y, s_w, prec), w);
    });
}

// Constant-zero evaluator for generic characters (both psi_1 and psi_2
// nontrivial): those coefficients vanish identically.
inline Complex generic_fourier_coeff(const CartanData&, long long n1, long long n2) {
    if (n1 == 0 || n2 == 0)
        throw DegenerateCharacter("generic characters need n1 != 0 and n2 != 0");
    return {0.0, 0.0};
}

// E#_s(a) = sum_{w in W1} a^{w(s varpi2 + rho) - rho} c(s varpi2, w).
// Outside Re s < -2 the sum is not covered by the convergence theorem; pass
// force = true to evaluate anyway (the conjecture explorer does).
inline TruncatedSum cuspidal_constant_term(const CartanData& cd, Complex s, const TorusPoint& a,
                                           const Precision& prec, int max_length,
                                           bool force = false) {
    validate(prec);
    if (max_length < 0) throw InvalidIndex("max_length must be >= 0");
    if (!force && !(s.real() < -2.0))
        throw OutsideTheoremRegion("cuspidal constant term is proven for Re s < -2");
    if (!in_A_prime(cd, a)) throw NotInCone("a must satisfy a^{alpha_i} < 1");
    const Weight nupr = s * varpi2(cd) + rho(cd);
    return detail::accumulate(detail::BandFamily::W1, max_length, prec.rel_tol,
                              [&](const WeylElt& w) {
                                  const Complex logt =
                                      log_torus_eval(cd, a, act_weight(cd, w, nupr) - rho(cd)) +
                                      detail::log_c_product(cd, nupr, w, prec, !force);
                                  return detail::exp_checked(logt, w);
                              });
}

// C_n = gamma^{2n} / ((m^2-4)(gamma+1)(gamma-1)^2)
//         * [-s (m gamma - 2)(gamma - 1) - (m^2 - 4) gamma]
inline double cuspidal_Cn(const CartanData& cd, double s, int n) {
    const double g = cd.gamma;
    const double m = cd.m;
    const double bracket = -s * (m * g - 2.0) * (g - 1.0) - (m * m - 4.0) * g;
    return std::pow(g, 2 * n) / ((m * m - 4.0) * (g + 1.0) * (g - 1.0) * (g - 1.0)) * bracket;
}

// C_n -> +inf exactly when s < -1 - 1/gamma.
inline double srange_threshold(const CartanData& cd) { return -1.0 - 1.0 / cd.gamma; }

inline double lemma75_D(const CartanData& cd) { return 2.0 * cd.gamma - cd.m; }

// Literal check of the two Iwasawa inequalities behind the entirety proof:
//   coroot side:  alpha_1(h_alpha) >= D varpi_2(h_alpha)  over
//                 Phi_w = Phi_+ cap w Phi_-
//   torus side:   a^{w^{-1}alpha_1} >= a^{D' w^{-1}varpi_2}  for some D' in
//                 the admissible range (0, (m^2-4)/(2 gamma - m)).
// Vacuous at the identity. The r2-leading representatives fail the decomposed
// bounds; only the (r1 r2)^n family admits them, matching the explicit case
// of the underlying proof.
inline bool check_iwasawa_inequalities(const CartanData& cd, const WeylElt& w,
                                       const TorusPoint& a,
                                       std::optional<double> D = std::nullopt) {
    if (!in_W1(cd, w)) throw NotInW1(word_name(w) + " does not lie in W1");
    if (!in_A_prime(cd, a)) throw NotInCone("a must satisfy a^{alpha_i} < 1");
    if (w.shape == Shape::Id) return true;

    const double d2 = D.value_or(lemma75_D(cd));
    for (const auto& al : inversion_set(cd, inverse(w))) {
        const double lhs = to_double(2 * al.c1 - cd.m * al.c2);  // alpha_1(h_alpha)
        const double rhs = d2 * to_double(al.c2);                // varpi_2(h_alpha) = c2
        if (lhs < rhs - 1e-9 * (1.0 + std::abs(rhs))) return false;
    }

    const WeylElt winv = inverse(w);
    const double lhs = log_torus_eval(cd, a, to_weight(act(cd, winv, alpha(1)))).real();
    const double base = log_torus_eval(cd, a, act_weight(cd, winv, varpi2(cd))).real();
    const double dmax = (cd.m * cd.m - 4.0) / (2.0 * cd.gamma - cd.m);
    for (int k = 1; k <= 16; ++k) {
        const double dk = dmax * k / 17.0;
        if (lhs >= dk * base - 1e-9) return true;
    }
    return false;
}

// Empirical tail classification on a grid of quasi-characters. Evaluation is
// unguarded; poles and overflows at a grid point are reported as Growing.
inline std::vector<ConvergenceReport> scan_convergence(const CartanData& cd,
                                                       const std::vector<Weight>& nus,
                                                       const TorusPoint& a, const Precision& prec,
                                                       int max_length) {
    validate(prec);
    if (!in_A_prime(cd, a)) throw NotInCone("a must satisfy a^{alpha_i} < 1");
    std::vector<ConvergenceReport> out;
    out.reserve(nus.size());
    for (const auto& nu : nus)
        out.push_back(detail::scan_point(cd, nu, pair(cd, nu, alpha(1)), false, a, prec,
                                         max_length));
    return out;
}

inline std::vector<ConvergenceReport> scan_convergence_cuspidal(
    const CartanData& cd, const std::vector<Complex>& ss, const TorusPoint& a,
    const Precision& prec, int max_length) {
    validate(prec);
    if (!in_A_prime(cd, a)) throw NotInCone("a must satisfy a^{alpha_i} < 1");
    std::vector<ConvergenceReport> out;
    out.reserve(ss.size());
    for (const Complex s : ss)
        out.push_back(detail::scan_point(cd, s * varpi2(cd), s, true, a, prec, max_length));
    return out;
}

} // namespace kme
