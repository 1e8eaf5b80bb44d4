#pragma once

// The infinite dihedral Weyl group W = <r1, r2 | r1^2 = r2^2 = 1> in closed
// form. Elements carry a canonical (shape, n) encoding:
//
//   Id      : 1
//   R1Alt(n): r1 (r2 r1)^n        length 2n+1
//   R2Alt(n): r2 (r1 r2)^n        length 2n+1
//   Alt12(n): (r1 r2)^{n+1}       length 2n+2
//   Alt21(n): (r2 r1)^{n+1}       length 2n+2
//
// Actions on roots and weights use the integer sequences A_n, B_n
//   A_0 = 0, A_1 = 1, A_{n+2} = m A_{n+1} - A_n + 1
//   B_n = A_n - A_{n-1}  (B_0 = 0, fixed by the closed form)
// and are cross-checked in the tests against plain reflection composition.

#include <array>
#include <string>
#include <vector>

#include "kme/errors.hpp"
#include "kme/rootsys.hpp"

namespace kme {

enum class Shape { Id, R1Alt, R2Alt, Alt12, Alt21 };

struct WeylElt {
    Shape shape = Shape::Id;
    int n = 0;

    bool operator==(const WeylElt& o) const { return shape == o.shape && n == o.n; }
};

inline WeylElt weyl_id() { return {Shape::Id, 0}; }

inline int length(const WeylElt& w) {
    switch (w.shape) {
        case Shape::Id: return 0;
        case Shape::R1Alt:
        case Shape::R2Alt: return 2 * w.n + 1;
        case Shape::Alt12:
        case Shape::Alt21: return 2 * w.n + 2;
    }
    return 0;
}

// Odd-length elements are palindromic words, hence involutions.
inline WeylElt inverse(const WeylElt& w) {
    switch (w.shape) {
        case Shape::Alt12: return {Shape::Alt21, w.n};
        case Shape::Alt21: return {Shape::Alt12, w.n};
        default: return w;
    }
}

// Reduced word, letters in {1,2}; leftmost letter acts last.
inline std::vector<int> reduced_word(const WeylElt& w) {
    const int len = length(w);
    std::vector<int> word(static_cast<size_t>(len));
    int first = 0;
    switch (w.shape) {
        case Shape::Id: return word;
        case Shape::R1Alt:
        case Shape::Alt12: first = 1; break;
        case Shape::R2Alt:
        case Shape::Alt21: first = 2; break;
    }
    for (int j = 0; j < len; ++j) word[static_cast<size_t>(j)] = (j % 2 == 0) ? first : 3 - first;
    return word;
}

inline std::string word_name(const WeylElt& w) {
    if (w.shape == Shape::Id) return "1";
    std::string s;
    for (int k : reduced_word(w)) s += (k == 1 ? "r1" : "r2");
    return s;
}

struct SeqCache {
    int m = 3;
    std::vector<BigInt> A;  // A_0 .. A_upto
    std::vector<BigInt> B;  // B_0 .. B_upto

    SeqCache(int m_, int upto) : m(m_) {
        if (m < 3) throw InvalidCartan("m must be >= 3");
        if (upto < 1) upto = 1;
        A.resize(static_cast<size_t>(upto) + 1);
        B.resize(static_cast<size_t>(upto) + 1);
        A[0] = 0;
        A[1] = 1;
        for (size_t k = 2; k < A.size(); ++k) A[k] = m * A[k - 1] - A[k - 2] + 1;
        B[0] = 0;
        for (size_t k = 1; k < B.size(); ++k) B[k] = A[k] - A[k - 1];
    }

    const BigInt& A_at(int n) const {
        if (n < 0) throw InvalidIndex("sequence index must be >= 0");
        return A[static_cast<size_t>(n)];
    }
    const BigInt& B_at(int n) const {
        if (n < 0) throw InvalidIndex("sequence index must be >= 0");
        return B[static_cast<size_t>(n)];
    }
};

inline BigInt seq_A(int m, int n) {
    if (n < 0) throw InvalidIndex("sequence index must be >= 0");
    return SeqCache(m, n).A_at(n);
}

inline BigInt seq_B(int m, int n) {
    if (n < 0) throw InvalidIndex("sequence index must be >= 0");
    return SeqCache(m, n).B_at(n);
}

// Images of the simple roots under w, by the closed forms.
inline std::array<RootVec, 2> act_on_simples(const CartanData& cd, const WeylElt& w) {
    if (w.shape == Shape::Id) return {alpha(1), alpha(2)};
    const SeqCache seq(cd.m, 2 * w.n + 3);
    const int n = w.n;
    switch (w.shape) {
        case Shape::R1Alt:
            return {RootVec{-seq.B_at(2 * n + 1), -seq.B_at(2 * n)},
                    RootVec{seq.B_at(2 * n + 2), seq.B_at(2 * n + 1)}};
        case Shape::R2Alt:
            return {RootVec{seq.B_at(2 * n + 1), seq.B_at(2 * n + 2)},
                    RootVec{-seq.B_at(2 * n), -seq.B_at(2 * n + 1)}};
        case Shape::Alt12:
            return {RootVec{seq.B_at(2 * n + 3), seq.B_at(2 * n + 2)},
                    RootVec{-seq.B_at(2 * n + 2), -seq.B_at(2 * n + 1)}};
        case Shape::Alt21:
            return {RootVec{-seq.B_at(2 * n + 1), -seq.B_at(2 * n + 2)},
                    RootVec{seq.B_at(2 * n + 2), seq.B_at(2 * n + 3)}};
        default: return {alpha(1), alpha(2)};
    }
}

inline RootVec act(const CartanData& cd, const WeylElt& w, const RootVec& a) {
    const auto img = act_on_simples(cd, w);
    return {a.c1 * img[0].c1 + a.c2 * img[1].c1, a.c1 * img[0].c2 + a.c2 * img[1].c2};
}

inline Weight act_weight(const CartanData& cd, const WeylElt& w, const Weight& lam) {
    const auto img = act_on_simples(cd, w);
    const Complex a1c1(to_double(img[0].c1)), a1c2(to_double(img[0].c2));
    const Complex a2c1(to_double(img[1].c1)), a2c2(to_double(img[1].c2));
    return {lam.s1 * a1c1 + lam.s2 * a2c1, lam.s1 * a1c2 + lam.s2 * a2c2};
}

// w rho - rho as exact integer coordinates in the simple-root basis.
inline std::array<BigInt, 2> w_rho_shift_coeffs(const CartanData& cd, const WeylElt& w) {
    if (w.shape == Shape::Id) return {BigInt(0), BigInt(0)};
    const SeqCache seq(cd.m, 2 * w.n + 2);
    const int n = w.n;
    switch (w.shape) {
        case Shape::R1Alt: return {-seq.A_at(2 * n + 1), -seq.A_at(2 * n)};
        case Shape::R2Alt: return {-seq.A_at(2 * n), -seq.A_at(2 * n + 1)};
        case Shape::Alt12: return {-seq.A_at(2 * n + 2), -seq.A_at(2 * n + 1)};
        case Shape::Alt21: return {-seq.A_at(2 * n + 1), -seq.A_at(2 * n + 2)};
        default: return {BigInt(0), BigInt(0)};
    }
}

inline Weight w_rho_shift(const CartanData& cd, const WeylElt& w) {
    const auto c = w_rho_shift_coeffs(cd, w);
    return {Complex(to_double(c[0])), Complex(to_double(c[1]))};
}

// Phi_+ \cap w^{-1} Phi_-, ordered along the reduced word of w^{-1}:
// beta_j = r_{k_1} ... r_{k_{j-1}} alpha_{k_j}. |result| = length(w),
// sum of entries = rho - w^{-1} rho.
inline std::vector<RootVec> inversion_set(const CartanData& cd, const WeylElt& w) {
    const auto word = reduced_word(inverse(w));
    std::vector<RootVec> betas;
    betas.reserve(word.size());
    RootVec m1 = alpha(1);  // images of the simple roots under the prefix map
    RootVec m2 = alpha(2);
    for (int k : word) {
        betas.push_back(k == 1 ? m1 : m2);
        if (k == 1) {
            // compose with r1 on the right: alpha1 -> -alpha1, alpha2 -> m alpha1 + alpha2
            RootVec new1{-m1.c1, -m1.c2};
            RootVec new2{cd.m * m1.c1 + m2.c1, cd.m * m1.c2 + m2.c2};
            m1 = new1;
            m2 = new2;
        } else {
            RootVec new1{m1.c1 + cd.m * m2.c1, m1.c2 + cd.m * m2.c2};
            RootVec new2{-m2.c1, -m2.c2};
            m1 = new1;
            m2 = new2;
        }
    }
    return betas;
}

// Elements of one length in canonical order (R1Alt < R2Alt, Alt12 < Alt21).
inline std::vector<WeylElt> elements_of_length(int len) {
    if (len < 0) throw InvalidIndex("length must be >= 0");
    if (len == 0) return {weyl_id()};
    if (len % 2 == 1) {
        const int n = (len - 1) / 2;
        return {{Shape::R1Alt, n}, {Shape::R2Alt, n}};
    }
    const int n = (len - 2) / 2;
    return {{Shape::Alt12, n}, {Shape::Alt21, n}};
}

inline std::vector<WeylElt> enumerate_W(int max_len) {
    if (max_len < 0) throw InvalidIndex("max_len must be >= 0");
    std::vector<WeylElt> out;
    out.reserve(static_cast<size_t>(2 * max_len + 1));
    for (int len = 0; len <= max_len; ++len)
        for (const auto& w : elements_of_length(len)) out.push_back(w);
    return out;
}

// W1 = {w : w alpha_1 > 0}, the minimal-length representatives of W/<r1>.
inline bool in_W1(const CartanData& cd, const WeylElt& w) {
    return act(cd, w, alpha(1)).is_positive();
}

} // namespace kme
