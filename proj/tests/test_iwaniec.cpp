#include <doctest.h>

#include <cmath>
#include <sstream>

#include "jacsums/iwaniec.hpp"
#include "jacsums/rationals.hpp"

using namespace jacsums;

TEST_CASE("segmented prime sieve") {
    CHECK(primes_in_range(10, 30) == std::vector<int64_t>{11, 13, 17, 19, 23, 29});
    CHECK(primes_in_range(2, 2) == std::vector<int64_t>{2});
    CHECK(primes_in_range(20, 22) == std::vector<int64_t>{});
    // against a direct sieve
    std::vector<char> is_p(10001, 1);
    is_p[0] = is_p[1] = 0;
    for (int64_t i = 2; i * i <= 10000; ++i)
        if (is_p[static_cast<size_t>(i)])
            for (int64_t j = i * i; j <= 10000; j += i) is_p[static_cast<size_t>(j)] = 0;
    const auto got = primes_in_range(5000, 10000);
    std::vector<int64_t> want;
    for (int64_t v = 5000; v <= 10000; ++v)
        if (is_p[static_cast<size_t>(v)]) want.push_back(v);
    CHECK(got == want);
}

TEST_CASE("omega weight") {
    // primes in [11, 22]: 11, 13, 17, 19
    CHECK(omega_weight(8, 11, 1, -3) == 0.0);
    CHECK(omega_weight(11, 11, 1, -3) == doctest::Approx(std::log(11.0)).epsilon(1e-15));
    CHECK(omega_weight(11 * 13, 11, 1, -3) ==
          doctest::Approx(std::log(11.0) + std::log(13.0)).epsilon(1e-15));
    // excluded prime p | mD
    CHECK(omega_weight(11, 11, 11, -3) == 0.0);
    CHECK(omega_weight(13, 11, 1, -13 * 3) == 0.0);
    CHECK_THROWS_AS(omega_weight(5, 1, 1, -3), std::invalid_argument);
}

TEST_CASE("weighted sum vanishes when no weight is reachable") {
    const IndexData idx = IndexData::make(1, 1, 1);
    const SeriesSum s = weighted_s(6, idx, 1009, 500); // smallest prime 1009 > 500
    CHECK(s.value == cx{0.0, 0.0});
}

TEST_CASE("weighted sum single-term sanity") {
    const IndexData idx = IndexData::make(1, 1, 1);
    // P = 97: primes in [97, 194] start at 97; truncating at c = 100 keeps
    // only c = 97
    const SeriesSum s = weighted_s(6, idx, 97, 100);
    const auto entries = h_series(idx, 97, 97);
    const SeriesSum bare = bare_series(PeterssonJob{6, idx, 97, 97}, entries);
    const cx expected = std::log(97.0) * bare.value;
    CHECK(std::abs(s.value - expected) <= s.err + bare.err * std::log(97.0) + 1e-12);
}

TEST_CASE("weighted sum equals the level-wise regrouping") {
    const IndexData idx = IndexData::make(1, 1, 1); // |D| = 3
    const int k = 6;
    const int64_t P = 13, c_max = 2000;
    const SeriesSum lhs = weighted_s(k, idx, P, c_max);
    cx rhs{0.0, 0.0};
    double rhs_err = 0.0;
    for (int64_t p : primes_in_range(P, 2 * P)) {
        if (mod_reduce(idx.m, p) == 0 || mod_reduce(idx.disc, p) == 0) continue;
        const auto entries = h_series(idx, p, c_max);
        const SeriesSum bare = bare_series(PeterssonJob{k, idx, p, c_max}, entries);
        rhs += std::log(static_cast<double>(p)) * bare.value;
        rhs_err += std::log(static_cast<double>(p)) * bare.err;
    }
    CHECK(std::abs(lhs.value - rhs) <= lhs.err + rhs_err + 1e-9);
}

TEST_CASE("split sums partition the weighted sum") {
    const IndexData idx = IndexData::make(1, 2, 1); // |D|/m = 7
    const int k = 6;
    const int64_t P = 11;
    const SplitSums split = split_s(k, idx, P, 3.0, 7.0, 800);
    const SeriesSum total = weighted_s(k, idx, P, 800);
    const cx sum = split.flat.value + split.star.value + split.sharp.value;
    CHECK(std::abs(sum - total.value) <=
          split.flat.err + split.star.err + split.sharp.err + total.err + 1e-12);
    CHECK(split.sharp_tail > 0.0);
    CHECK(std::isfinite(split.sharp_tail));

    // C = K empties the middle range
    const SplitSums degenerate = split_s(k, idx, P, 7.0, 7.0, 800);
    CHECK(degenerate.star.value == cx{0.0, 0.0});

    CHECK_THROWS_AS(split_s(k, idx, P, 8.0, 7.0, 800), std::invalid_argument);
    CHECK_THROWS_AS(split_s(k, idx, P, 0.0, 7.0, 800), std::invalid_argument);
}

TEST_CASE("f(a,t) degenerate case, lift independence, coprimality") {
    const IndexData idx = IndexData::make(3, 2, 1); // D = -23
    // a = t = 1: f = eps2 D + eps1 r^2 mod 2m
    for (int e1 : {1, -1})
        for (int e2 : {1, -1}) {
            const Residue f = f_of_a_t(idx, 1, 1, e1, e2);
            CHECK(f.modulus == 2 * idx.m);
            CHECK(f.value == mod_reduce(e2 * idx.disc + e1 * idx.r * idx.r, 2 * idx.m));
        }

    // lift independence: recompute with shifted representatives
    for (int64_t a : {5, 7, 11, 25}) {
        for (int64_t t : {1, 2, 3, 6}) {
            if (gcd64(a, 2 * idx.m) != 1 || gcd64(a, idx.disc) != 1) continue;
            const Residue f = f_of_a_t(idx, a, t, 1, -1);
            const int64_t two_mt = 2 * idx.m * t;
            const int64_t modulus = two_mt * a;
            const int64_t inv0 = (a == 1) ? 0 : mod_inverse(mod_reduce(two_mt, a), a).value;
            const int64_t inva0 = mod_inverse(mod_reduce(a, two_mt), two_mt).value;
            // shift both lifts by one period
            const __int128 lhs =
                static_cast<__int128>(-1) * idx.disc *
                (1 + static_cast<__int128>(two_mt) * (inv0 + a));
            const __int128 rhs = static_cast<__int128>(1) * a * (inva0 + two_mt) *
                                 (idx.r * idx.r);
            const int64_t shifted = mod_reduce(static_cast<int64_t>(((lhs + rhs) % modulus +
                                                                     modulus) %
                                                                    modulus),
                                               modulus);
            CHECK(f.value == shifted);
            // gcd(f, a) = 1 whenever gcd(a, 2D) = 1
            CHECK(gcd64(f.value, a) == 1);
        }
    }
    CHECK_THROWS_AS(f_of_a_t(idx, 23, 1, 1, 1), std::domain_error);
}

TEST_CASE("S_a(B) decomposition and edge cases") {
    const IndexData idx = IndexData::make(1, 1, 1);
    // empty b-range
    const SaSum empty = s_a_sum(idx, 5, 1, 1, 4.0, 100.0, 1, 1, 11);
    CHECK(empty.terms == 0);
    CHECK(empty.s == cx{0.0, 0.0});

    const SaSum sa = s_a_sum(idx, 5, 2, 1, 400.0, 10.0, 1, -1, 11);
    CHECK(sa.terms > 0);
    const cx recombined = sa.v_a + sa.omega_a * sa.v_prime;
    CHECK(std::abs(sa.s - recombined) <= 1e-9);
    // trivial bound: each term has modulus <= max weight
    CHECK(std::abs(sa.v_prime) <= static_cast<double>(sa.terms) + 1e-9);
}

TEST_CASE("decay report is well-formed") {
    const IndexData idx = IndexData::make(1, 1, 1);
    const auto rows = decay_report(idx, 2, 1, 11, 10.0, 2000.0, 1, 1);
    CHECK(!rows.empty());
    for (const auto& row : rows) {
        CHECK(row.t == 2);
        CHECK(row.v_abs <= static_cast<double>(row.terms) * 10.0 + 1.0);
    }
    std::ostringstream os;
    decay_csv(rows, os);
    CHECK(os.str().rfind("a,t,B,V_a_abs,term_count\n", 0) == 0);
}

TEST_CASE("proof parameter invariants") {
    for (int j : {0, 5, 13, 21, 27}) {
        const mpq_class sigma = make_rational(j, 100);
        const ProofParams p = ProofParams::from_sigma(sigma);
        CHECK((p.c_exp == 1 - p.delta));
        CHECK((p.k_exp == 1 + p.delta));
        CHECK((p.t_exp == p.delta));
        CHECK((p.delta > 0));
        CHECK((p.delta < make_rational(1, 2)));
    }
    CHECK_THROWS_AS(ProofParams::from_sigma(mpq_class(1)), std::domain_error);
}

TEST_CASE("endgame calculator exact values") {
    const EndgameResult at0 = endgame_exponent(0);
    CHECK((at0.delta == make_rational(1, 24)));
    CHECK((at0.exponent == make_rational(-1, 24)));
    CHECK(at0.regime == Regime::low);

    const EndgameResult cross = endgame_exponent(make_rational(21, 155));
    CHECK((cross.exponent_low == cross.exponent_high));
    CHECK((cross.exponent == make_rational(-1, 31)));
    CHECK(cross.regime == Regime::low);

    const EndgameResult high = endgame_exponent(make_rational(1, 5));
    CHECK(high.regime == Regime::high);

    const EndgameResult top = endgame_exponent(make_rational(7, 25));
    CHECK((top.exponent == 0));

    CHECK_THROWS_AS(endgame_exponent(make_rational(3, 10)), std::domain_error);
    CHECK_THROWS_AS(endgame_exponent(make_rational(-1, 10)), std::domain_error);
}

TEST_CASE("endgame exponent is piecewise linear with the stated crossover") {
    const mpq_class cross = make_rational(21, 155);
    // linear on each side: midpoint value is the average of the endpoints
    auto e = [](const mpq_class& s) { return endgame_exponent(s).exponent; };
    const mpq_class a = 0, b = make_rational(1, 10);
    CHECK((e((a + b) / 2) == (e(a) + e(b)) / 2));
    const mpq_class c = make_rational(1, 5), d = make_rational(27, 100);
    CHECK((e((c + d) / 2) == (e(c) + e(d)) / 2));
    // kink exactly at the crossover
    CHECK((e(cross) * 2 != e(cross - make_rational(1, 1000)) + e(cross + make_rational(1, 1000))));
}

TEST_CASE("P >= T threshold") {
    const mpq_class thr = make_rational(39, 121);
    for (int j = 0; j <= 490; ++j) {
        const mpq_class s = make_rational(j, 1000);
        CHECK(p_ge_t_condition(s) == (s <= thr));
    }
    CHECK(p_ge_t_condition(thr));
    CHECK(!p_ge_t_condition(thr + make_rational(1, 1000000)));
    // the whole endgame range sits below the threshold
    CHECK(endgame_exponent(make_rational(7, 25)).p_ge_t);
    CHECK(endgame_exponent(0).p_ge_t);
}

TEST_CASE("theorem exponent interpolation") {
    CHECK((theorem_squared_exponent(0) == make_rational(-1, 24)));
    CHECK((theorem_squared_exponent(make_rational(21, 155)) == make_rational(-2, 93)));
    CHECK((theorem_squared_exponent(make_rational(7, 25)) == 0));
    for (int j = 0; j <= 28; ++j) CHECK(theorem_exponent_check(make_rational(j, 100)));
    // strict inequality at the crossover
    CHECK((theorem_squared_exponent(make_rational(21, 155)) >
           endgame_exponent(make_rational(21, 155)).exponent));
}
