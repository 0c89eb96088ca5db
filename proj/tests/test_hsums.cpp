#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "jacsums/hsums.hpp"
#include "jacsums/parallel.hpp"

using namespace jacsums;

namespace {

cx e_of(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

IndexData random_index(std::mt19937_64& rng) {
    std::uniform_int_distribution<int64_t> dm(1, 8), dn(1, 8), dr(-6, 6);
    for (;;) {
        const int64_t m = dm(rng), n = dn(rng), r = dr(rng);
        if (r * r - 4 * m * n < 0) return IndexData::make(m, n, r);
    }
}

bool coprime_to_2md(const IndexData& idx, int64_t c) {
    return gcd64(c, 2 * idx.m) == 1 && gcd64(c, idx.disc) == 1;
}

} // namespace

TEST_CASE("IndexData discriminant and fundamentality") {
    CHECK(IndexData::make(1, 1, 1).disc == -3);
    CHECK(IndexData::make(2, 2, 2).disc == -12);
    CHECK_THROWS_AS(IndexData::make(1, 1, 2), std::invalid_argument); // D = 0
    CHECK_THROWS_AS(IndexData::make(1, 1, 3), std::invalid_argument); // D > 0
    CHECK_THROWS_AS(IndexData::make(0, 1, 0), std::invalid_argument);

    for (int64_t d : {-3, -4, -7, -8, -11, -15, -19, -20, -23, -24})
        CHECK(is_fundamental_discriminant(d));
    for (int64_t d : {-9, -12, -16, -25, -27, -28, -32, 5, 0})
        CHECK(!is_fundamental_discriminant(d));
}

TEST_CASE("unit_solutions") {
    CHECK(unit_solutions(1) == std::vector<int64_t>{0});
    CHECK(unit_solutions(2) == std::vector<int64_t>{1});
    CHECK(unit_solutions(4) == std::vector<int64_t>{1, 3});
    CHECK(unit_solutions(8) == std::vector<int64_t>{1, 3, 5, 7});
    CHECK(unit_solutions(15) == std::vector<int64_t>{1, 4, 11, 14});

    for (int64_t q = 1; q <= 10000; ++q) {
        std::vector<int64_t> brute;
        for (int64_t v = 0; v < q; ++v)
            if (mul_mod(v, v, q) == 1 % q) brute.push_back(v);
        CHECK(unit_solutions(q) == brute);
    }
}

TEST_CASE("unit_solutions count is multiplicative") {
    for (int64_t q = 1; q <= 3000; ++q) {
        size_t expected = 1;
        for (const auto& pp : factorize(q)) {
            if (pp.p != 2)
                expected *= 2;
            else if (pp.e == 2)
                expected *= 2;
            else if (pp.e >= 3)
                expected *= 4;
        }
        CHECK(unit_solutions(q).size() == expected);
    }
}

TEST_CASE("h_brute base cases") {
    for (Sign s : {Sign::plus, Sign::minus}) {
        const UnitRootSum h = h_brute(HSumRequest{IndexData::make(3, 2, 1), 1, s});
        CHECK(h.value == cx{1.0, 0.0});
        CHECK(h.err == 0.0);
    }
}

TEST_CASE("closed form at the worked example (1,1,1), c = 5") {
    const IndexData idx = IndexData::make(1, 1, 1);
    // -5 (e(1/5) + e(-2/5)) for the plus sign
    const cx expected = -5.0 * (e_of(0.2) + e_of(-0.4));
    const UnitRootSum closed = h_closed_coprime(HSumRequest{idx, 5, Sign::plus});
    CHECK(std::abs(closed.value - expected) < 1e-12);
    const UnitRootSum brute = h_brute(HSumRequest{idx, 5, Sign::plus});
    CHECK(std::abs(brute.value - closed.value) <= brute.err + closed.err + 1e-9);

    CHECK_THROWS_AS(h_closed_coprime(HSumRequest{idx, 6, Sign::plus}), std::domain_error);
}

TEST_CASE("closed form matches brute force on a random sweep c <= 200") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 12; ++i) {
        const IndexData idx = random_index(rng);
        for (int64_t c = 1; c <= 200; ++c) {
            if (!coprime_to_2md(idx, c)) continue;
            const HPair brute = h_brute_pair_raw(idx.m, idx.n, idx.r, c);
            const HPair closed = h_closed_pair_raw(idx.m, idx.n, idx.r, c);
            for (Sign s : {Sign::plus, Sign::minus}) {
                const double tol = brute.get(s).err + closed.get(s).err + 1e-9;
                CHECK(std::abs(brute.get(s).value - closed.get(s).value) <= tol);
            }
        }
    }
}

TEST_CASE("factorization identity") {
    const IndexData idx = IndexData::make(1, 1, 1);
    CHECK(h_factor_check(idx, 1, 17, Sign::plus));
    CHECK(h_factor_check(idx, 2, 3, Sign::plus));
    CHECK(h_factor_check(idx, 2, 3, Sign::minus));
    CHECK_THROWS_AS(h_factor_check(idx, 2, 4, Sign::plus), std::domain_error);

    std::mt19937_64 rng(102);
    for (int i = 0; i < 6; ++i) {
        const IndexData r = random_index(rng);
        for (int64_t c = 2; c <= 120; ++c)
            for (int64_t c1 = 2; c1 * c1 <= c; ++c1) {
                if (c % c1 || gcd64(c1, c / c1) != 1) continue;
                CHECK(h_factor_check(r, c1, c / c1, Sign::plus));
                CHECK(h_factor_check(r, c1, c / c1, Sign::minus));
            }
    }
}

TEST_CASE("h_fast degenerate splits") {
    const IndexData idx = IndexData::make(1, 1, 1); // 2mD supported on {2, 3}
    // t = 1 branch: identical to the closed form
    {
        const HSumRequest req{idx, 35, Sign::plus};
        const HFastResult fast = h_fast(req);
        CHECK(!fast.brute_fallback);
        CHECK(fast.sum.value == h_closed_coprime(req).value);
    }
    // t = c branch: identical to brute force
    {
        const HSumRequest req{idx, 12, Sign::minus};
        const HFastResult fast = h_fast(req);
        CHECK(!fast.brute_fallback);
        CHECK(fast.sum.value == h_brute(req).value);
    }
}

TEST_CASE("h_fast threshold fallback") {
    const IndexData idx = IndexData::make(1, 1, 1);
    HFastOptions opts;
    opts.bad_part_threshold = 4;
    const HSumRequest req{idx, 24, Sign::plus}; // bad part 24 > 4
    const HFastResult fast = h_fast(req, opts);
    CHECK(fast.brute_fallback);
    const UnitRootSum brute = h_brute(req);
    CHECK(fast.sum.value == brute.value);
}

TEST_CASE("h_fast matches brute force on a log-uniform sweep c <= 10^4") {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> dlog(0.0, std::log(10000.0));
    for (int i = 0; i < 100; ++i) {
        const IndexData idx = random_index(rng);
        const int64_t c = std::max<int64_t>(1, static_cast<int64_t>(std::exp(dlog(rng))));
        for (Sign s : {Sign::plus, Sign::minus}) {
            const HSumRequest req{idx, c, s};
            const HFastResult fast = h_fast(req);
            const UnitRootSum brute = h_brute(req);
            CHECK(std::abs(fast.sum.value - brute.value) <= 1e-6);
        }
    }
}

TEST_CASE("h_eval_pair matches brute force including multi-prime bad parts") {
    std::mt19937_64 rng(104);
    std::uniform_int_distribution<int64_t> dc(1, 3000);
    for (int i = 0; i < 60; ++i) {
        const IndexData idx = random_index(rng);
        const int64_t c = dc(rng);
        const HPair fast = h_eval_pair(idx, c);
        const HPair brute = h_brute_pair_raw(idx.m, idx.n, idx.r, c);
        for (Sign s : {Sign::plus, Sign::minus}) {
            const double tol = fast.get(s).err + brute.get(s).err + 1e-9;
            CHECK(std::abs(fast.get(s).value - brute.get(s).value) <= tol);
        }
    }
    // dedicated multi-bad-prime moduli for D = -3 (bad primes 2 and 3)
    const IndexData idx = IndexData::make(1, 1, 1);
    for (int64_t c : {6, 12, 24, 36, 48, 72, 144, 216, 288, 864, 960, 2592}) {
        const HPair fast = h_eval_pair(idx, c);
        const HPair brute = h_brute_pair_raw(1, 1, 1, c);
        for (Sign s : {Sign::plus, Sign::minus}) {
            const double tol = fast.get(s).err + brute.get(s).err + 1e-9;
            CHECK(std::abs(fast.get(s).value - brute.get(s).value) <= tol);
        }
    }
}

TEST_CASE("h_eval_pair results do not depend on the thread count") {
    const IndexData idx = IndexData::make(1, 1, 1);
    for (int64_t c : {512, 768, 2048}) {
        set_max_threads(1);
        const HPair one = h_eval_pair(idx, c, true);
        set_max_threads(4);
        const HPair four = h_eval_pair(idx, c, true);
        set_max_threads(0);
        CHECK(one.plus.value == four.plus.value);
        CHECK(one.minus.value == four.minus.value);
    }
}

TEST_CASE("weil bound with explicit constants") {
    const IndexData fund = IndexData::make(1, 1, 1);  // D = -3, fundamental
    const IndexData gen = IndexData::make(2, 2, 2);   // D = -12, not fundamental
    CHECK(weil_check(HSumRequest{fund, 1, Sign::plus}));
    for (int64_t c = 1; c <= 300; ++c)
        for (Sign s : {Sign::plus, Sign::minus}) {
            CHECK(weil_check(HSumRequest{fund, c, s}));
            CHECK(weil_check(HSumRequest{gen, c, s}));
        }
}
