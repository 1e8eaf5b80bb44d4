#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "kme/rootsys.hpp"
#include "kme/weyl.hpp"

using namespace kme;

namespace {

RootVec fold_word(const CartanData& cd, const std::vector<int>& word, RootVec v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = simple_reflection(cd, *it, v);
    return v;
}

} // namespace

TEST_CASE("sequences A_n and B_n") {
    CHECK(seq_A(3, 0) == 0);
    CHECK(seq_A(3, 1) == 1);
    CHECK(seq_A(3, 2) == 4);
    CHECK(seq_A(3, 3) == 12);
    CHECK(seq_A(3, 4) == 33);
    CHECK(seq_A(3, 5) == 88);
    CHECK(seq_B(3, 1) == 1);
    CHECK(seq_B(3, 2) == 3);
    CHECK(seq_B(3, 3) == 8);
    CHECK(seq_B(3, 4) == 21);
    CHECK(seq_B(3, 5) == 55);
    CHECK(seq_B(3, 0) == 0);
    for (int m = 3; m <= 9; ++m) {
        CHECK(seq_A(m, 0) == 0);
        CHECK(seq_A(m, 1) == 1);
    }
    CHECK_THROWS_AS(seq_A(3, -1), InvalidIndex);
    CHECK_THROWS_AS(seq_B(4, -2), InvalidIndex);
}

TEST_CASE("recursion matches the closed forms") {
    for (int m = 3; m <= 7; ++m) {
        const auto cd = new_cartan(m);
        const double g = cd.gamma;
        const SeqCache seq(m, 41);
        for (int n = 2; n <= 30; ++n) {
            const double closed_A = (std::pow(g, 2 * n + 1) - std::pow(g, n) * (1 + g) + 1.0) /
                                    (std::pow(g, n - 1) * (g + 1) * (g - 1) * (g - 1));
            const double An = to_double(seq.A_at(n));
            CHECK(std::abs(An - closed_A) < 1e-6 * An);
        }
        for (int n = 1; n <= 30; ++n) {
            const double closed_B = (std::pow(g, 2 * n) - 1.0) / (std::pow(g, n - 1) * (g * g - 1.0));
            const double Bn = to_double(seq.B_at(n));
            CHECK(std::abs(Bn - closed_B) < 1e-6 * Bn);
        }
        // growth used in the cuspidal estimates: B_{n+1} > gamma * B_n.
        // The gap is gamma^{-n}, so the float check needs relative slack;
        // the squared form is exact in integers and strict.
        for (int n = 1; n <= 40; ++n) {
            CHECK(to_double(seq.B_at(n + 1)) > g * to_double(seq.B_at(n)) * (1.0 - 1e-9));
            const BigInt lhs = 2 * seq.B_at(n + 1) - m * seq.B_at(n);
            CHECK(lhs > 0);
            CHECK(lhs * lhs > (m * m - 4) * seq.B_at(n) * seq.B_at(n));
        }
    }
}

TEST_CASE("canonical encoding: lengths, words, inverses") {
    CHECK(length(weyl_id()) == 0);
    CHECK(length(WeylElt{Shape::R1Alt, 0}) == 1);
    CHECK(length(WeylElt{Shape::Alt21, 2}) == 6);
    CHECK(word_name(weyl_id()) == "1");
    CHECK(word_name(WeylElt{Shape::R1Alt, 1}) == "r1r2r1");
    CHECK(word_name(WeylElt{Shape::Alt12, 0}) == "r1r2");
    CHECK(inverse(WeylElt{Shape::Alt12, 3}) == WeylElt{Shape::Alt21, 3});
    CHECK(inverse(WeylElt{Shape::R2Alt, 5}) == WeylElt{Shape::R2Alt, 5});

    // inverse really is the group inverse: w w^{-1} fixes both simple roots
    const auto cd = new_cartan(4);
    for (const auto& w : enumerate_W(9)) {
        for (int i : {1, 2}) {
            const RootVec once = act(cd, w, alpha(i));
            CHECK(act(cd, inverse(w), once) == alpha(i));
        }
    }
}

TEST_CASE("closed-form action equals reflection composition") {
    const auto cd3 = new_cartan(3);
    CHECK(act(cd3, WeylElt{Shape::R1Alt, 1}, alpha(1)) == RootVec{-8, -3});
    CHECK(act(cd3, weyl_id(), RootVec{5, -2}) == RootVec{5, -2});
    CHECK(act(cd3, WeylElt{Shape::Alt12, 0}, alpha(1)) == RootVec{8, 3});

    for (int m = 3; m <= 7; ++m) {
        const auto cd = new_cartan(m);
        for (const auto& w : enumerate_W(40)) {
            const auto word = reduced_word(w);
            for (int i : {1, 2})
                CHECK(act(cd, w, alpha(i)) == fold_word(cd, word, alpha(i)));
        }
    }
}

TEST_CASE("w rho - rho closed form") {
    const auto cd3 = new_cartan(3);
    {
        const auto c = w_rho_shift_coeffs(cd3, WeylElt{Shape::R1Alt, 1});
        CHECK(c[0] == -12);
        CHECK(c[1] == -4);
    }
    {
        const auto c = w_rho_shift_coeffs(cd3, weyl_id());
        CHECK(c[0] == 0);
        CHECK(c[1] == 0);
    }
    {
        const auto c = w_rho_shift_coeffs(cd3, WeylElt{Shape::Alt21, 0});
        CHECK(c[0] == -1);
        CHECK(c[1] == -4);
    }

    // oracle: act on (2-m) rho = (1,1), which keeps everything integral
    for (int m = 3; m <= 7; ++m) {
        const auto cd = new_cartan(m);
        for (const auto& w : enumerate_W(41)) {
            if (w.n > 20) continue;
            const auto word = reduced_word(w);
            const RootVec scaled = fold_word(cd, word, RootVec{1, 1});
            const auto c = w_rho_shift_coeffs(cd, w);
            CHECK(scaled.c1 - 1 == (2 - m) * c[0]);
            CHECK(scaled.c2 - 1 == (2 - m) * c[1]);
        }
    }
}

TEST_CASE("act_weight extends act linearly") {
    const auto cd = new_cartan(5);
    for (const auto& w : enumerate_W(10)) {
        const Weight lam{Complex(0.7, -0.3), Complex(1.1, 0.2)};
        const Weight img = act_weight(cd, w, lam);
        const RootVec w1 = act(cd, w, alpha(1));
        const RootVec w2 = act(cd, w, alpha(2));
        const Complex want1 = lam.s1 * to_double(w1.c1) + lam.s2 * to_double(w2.c1);
        const Complex want2 = lam.s1 * to_double(w1.c2) + lam.s2 * to_double(w2.c2);
        CHECK(std::abs(img.s1 - want1) < 1e-12 * (1.0 + std::abs(want1)));
        CHECK(std::abs(img.s2 - want2) < 1e-12 * (1.0 + std::abs(want2)));
    }
}

TEST_CASE("inversion sets") {
    const auto cd = new_cartan(3);
    {
        const auto inv = inversion_set(cd, WeylElt{Shape::R1Alt, 0});
        REQUIRE(inv.size() == 1);
        CHECK(inv[0] == alpha(1));
    }
    {
        const auto inv = inversion_set(cd, WeylElt{Shape::Alt12, 0});
        REQUIRE(inv.size() == 2);
        CHECK(inv[0] == RootVec{0, 1});
        CHECK(inv[1] == RootVec{1, 3});
    }

    for (int m = 3; m <= 7; ++m) {
        const auto cdm = new_cartan(m);
        for (const auto& w : enumerate_W(40)) {
            const auto inv = inversion_set(cdm, w);
            CHECK(static_cast<int>(inv.size()) == length(w));
            RootVec sum{0, 0};
            for (const auto& b : inv) {
                CHECK(b.is_positive());
                CHECK(is_real_root(cdm, b));
                sum = sum + b;
            }
            // sum beta_j = rho - w^{-1} rho
            const auto shift = w_rho_shift_coeffs(cdm, inverse(w));
            CHECK(sum.c1 == -shift[0]);
            CHECK(sum.c2 == -shift[1]);
        }
    }

    // closed form for (r1 r2)^n: {B_i a1 + B_{i+1} a2 : i = 0..2n-1}
    for (int m : {3, 5, 7}) {
        const auto cdm = new_cartan(m);
        const SeqCache seq(m, 32);
        for (int n = 1; n <= 15; ++n) {
            const auto inv = inversion_set(cdm, WeylElt{Shape::Alt12, n - 1});
            REQUIRE(static_cast<int>(inv.size()) == 2 * n);
            for (int i = 0; i < 2 * n; ++i) {
                CHECK(inv[static_cast<size_t>(i)].c1 == seq.B_at(i));
                CHECK(inv[static_cast<size_t>(i)].c2 == seq.B_at(i + 1));
            }
        }
    }
}

TEST_CASE("enumeration of W") {
    const auto five = enumerate_W(2);
    REQUIRE(five.size() == 5);
    CHECK(five[0] == weyl_id());
    CHECK(five[1] == WeylElt{Shape::R1Alt, 0});
    CHECK(five[2] == WeylElt{Shape::R2Alt, 0});
    CHECK(five[3] == WeylElt{Shape::Alt12, 0});
    CHECK(five[4] == WeylElt{Shape::Alt21, 0});

    const auto all = enumerate_W(25);
    CHECK(all.size() == 51u);
    std::set<std::string> names;
    int prev_len = 0;
    for (const auto& w : all) {
        CHECK(length(w) >= prev_len);
        prev_len = length(w);
        CHECK(names.insert(word_name(w)).second);
    }
}

TEST_CASE("W1 membership") {
    const auto cd = new_cartan(3);
    CHECK(in_W1(cd, weyl_id()));
    CHECK_FALSE(in_W1(cd, WeylElt{Shape::R1Alt, 0}));
    CHECK(in_W1(cd, WeylElt{Shape::R2Alt, 0}));
    // exactly the shapes {(r1 r2)^n, r2 (r1 r2)^n}
    for (const auto& w : enumerate_W(14)) {
        const bool expect = w.shape == Shape::Id || w.shape == Shape::R2Alt || w.shape == Shape::Alt12;
        CHECK(in_W1(cd, w) == expect);
    }
}

TEST_CASE("w^{-1} alpha1 < 0 iff the word of w begins with r1") {
    for (int m : {3, 6}) {
        const auto cd = new_cartan(m);
        for (const auto& w : enumerate_W(12)) {
            if (w.shape == Shape::Id) continue;
            const bool starts_r1 = reduced_word(w)[0] == 1;
            CHECK(act(cd, inverse(w), alpha(1)).is_negative() == starts_r1);
        }
    }
}
