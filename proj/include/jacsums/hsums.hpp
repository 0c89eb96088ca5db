#pragma once

#include <vector>

#include "jacsums/modarith.hpp"

namespace jacsums {

enum class Sign { plus, minus };

inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

// Index triple (m, n, r) with negative discriminant r^2 - 4mn.
struct IndexData {
    int64_t m = 1;
    int64_t n = 1;
    int64_t r = 1;
    int64_t disc = -3;

    static IndexData make(int64_t m, int64_t n, int64_t r);
    bool fundamental() const;
};

bool is_fundamental_discriminant(int64_t D);

struct HSumRequest {
    IndexData index;
    int64_t c = 1;
    Sign sign = Sign::plus;
};

// Both signs of H_{m,c}(n, r); the sign variants share nearly all work.
struct HPair {
    UnitRootSum plus, minus;
    const UnitRootSum& get(Sign s) const { return s == Sign::plus ? plus : minus; }
};

// All v mod q with v^2 = 1 mod q, sorted ascending ([0] for q = 1).
std::vector<int64_t> unit_solutions(int64_t q);

// Definition-level double sum, O(c^2) terms with compensated summation.
// This is the trust anchor everything else is checked against.
UnitRootSum h_brute(const HSumRequest& req);
HPair h_brute_pair_raw(int64_t m, int64_t n, int64_t r, int64_t c);

// Salie-type closed form; requires gcd(c, 2mD) = 1.
UnitRootSum h_closed_coprime(const HSumRequest& req);
HPair h_closed_pair_raw(int64_t m, int64_t n, int64_t r, int64_t c);

// Verifies H_{m,c1c2} = H_{m c1, c2}(n c1~, r) * H_{m c2, c1}(n c2~, r)
// by brute force on both sides; requires gcd(c1, c2) = 1.
bool h_factor_check(const IndexData& index, int64_t c1, int64_t c2, Sign sign);

struct HFastOptions {
    // If the part of c supported on primes dividing 2mD exceeds this,
    // h_fast gives up on the split and brute-forces all of c.
    int64_t bad_part_threshold = 10'000;
};

struct HFastResult {
    UnitRootSum sum;
    bool brute_fallback = false;
};

// Splits c = q * t with t | (2mD)^inf and gcd(q, 2mD) = 1; evaluates the
// q part in closed form and the t part by brute force.
HFastResult h_fast(const HSumRequest& req, const HFastOptions& opts = {});

// Production evaluator used by the series code: full CRT split of c into
// prime powers, the coprime-to-2mD part in one closed-form evaluation,
// bad prime powers by table-driven brute force (optionally parallel).
// Agrees with h_brute within the combined error bounds.
HPair h_eval_pair(const IndexData& index, int64_t c, bool parallel_inner = false);

// Explicit-constant Weil-type bound |H| <= tau(c) c (c,m,r)^1/2 (c,D')^1/2
// with D' = D/(m,r); for fundamental D also |H| <= tau(c) c (c,D)^1/2.
bool weil_check(const HSumRequest& req);

} // namespace jacsums
