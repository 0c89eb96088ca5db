#pragma once

#include <gmpxx.h>

#include <ostream>
#include <vector>

#include "jacsums/hsums.hpp"
#include "jacsums/petersson.hpp"

namespace jacsums {

// Primes in [lo, hi], inclusive, by a segmented sieve.
std::vector<int64_t> primes_in_range(int64_t lo, int64_t hi);

// omega(c) = sum of log p over primes p in [P, 2P] with p | c, p not
// dividing m*D.
double omega_weight(int64_t c, int64_t P, int64_t m, int64_t D);

// Per-c weights over 1..c_max (index 0 unused).
std::vector<double> omega_weights_upto(int64_t c_max, int64_t P, int64_t m, int64_t D);

// Prime-weighted geometric sum
// S = sum_± sum_c omega(c) H±_{m,c}(n,r) c^-3/2 e(±r^2/2mc) J_{k-3/2}(pi|D|/mc)
// truncated at c_max.
SeriesSum weighted_s(int k, const IndexData& index, int64_t P, int64_t c_max);

struct SplitSums {
    SeriesSum flat, star, sharp; // c <= C, C < c < K, K <= c <= sharp_cutoff
    double sharp_tail = 0.0;     // rigorous bound on c > sharp_cutoff
};

// Three-way split of weighted_s by the cutoffs C < K; the K-piece is
// evaluated up to sharp_cutoff and bounded rigorously beyond.
SplitSums split_s(int k, const IndexData& index, int64_t P, double C, double K,
                  int64_t sharp_cutoff);

// f(a,t) = eps2 D (1 + 2mt * inv(2mt) mod a) + eps1 a * inv(a) mod 2mt * r^2,
// canonical mod 2mta; requires gcd(a, 2mD) = 1.
Residue f_of_a_t(const IndexData& index, int64_t a, int64_t t, int eps1, int eps2);

struct SaSum {
    cx s{0.0, 0.0};       // full sum
    cx v_a{0.0, 0.0};     // omega(b) part
    cx v_prime{0.0, 0.0}; // unweighted part (S = V_a + omega(a) V'_a)
    double omega_a = 0.0;
    double err = 0.0;
    int64_t terms = 0;
};

// S_a(B) = sum over max(a, C/at) < b < B, ab = s mod 4t, (b, 2mDa) = 1 of
// omega(ab) (D/b) e(f(a,t) b~ / 2mta).
SaSum s_a_sum(const IndexData& index, int64_t a, int64_t t, int64_t s, double B, double C,
              int eps1, int eps2, int64_t P);

struct DecayRow {
    int64_t a, t;
    double B;
    double v_abs;
    int64_t terms;
};

std::vector<DecayRow> decay_report(const IndexData& index, int64_t t, int64_t s, int64_t P,
                                   double C, double K, int eps1, int eps2);
void decay_csv(const std::vector<DecayRow>& rows, std::ostream& os);

// Exact rationals for the parameter choices: exponents of C, K, T in |D|/m
// are 1 - delta, 1 + delta, delta; P carries an extra m-power.
struct ProofParams {
    mpq_class sigma;
    mpq_class delta;
    mpq_class p_exp; // exponent of |D|/m in the P choice
    mpq_class c_exp, k_exp, t_exp;

    static ProofParams from_sigma(const mpq_class& sigma);
};

enum class Regime { low, high };

struct EndgameResult {
    mpq_class sigma;
    mpq_class delta;
    mpq_class exponent_low;  // 5 sigma/72 - 3/72
    mpq_class exponent_high; // 25 sigma/112 - 1/16
    mpq_class exponent;      // max of the two
    Regime regime;           // low iff sigma <= 21/155
    ProofParams params;
    mpq_class p_exp_d; // |D|-exponent of P = m^-3/10 (|D|/m)^(1/10+2delta/5)
    mpq_class t_exp_d; // |D|-exponent of T
    bool p_ge_t;        // via sigma (4 + 15 delta) <= 1 + 15 delta
    bool p_ge_t_direct; // literal comparison p_exp_d >= t_exp_d
};

// The endgame calculator; requires 0 <= sigma <= 7/25.
EndgameResult endgame_exponent(const mpq_class& sigma);

// P >= T via sigma (4 + 15 delta) <= 1 + 15 delta with delta = delta(sigma),
// defined on all of [0, 1/2); holds exactly for sigma <= 39/121.
bool p_ge_t_condition(const mpq_class& sigma);

// Squared-factor exponent -(1 - 25 sigma/7)/24 of the interpolated bound.
mpq_class theorem_squared_exponent(const mpq_class& sigma);

// The interpolated bound is never stronger than the case bounds.
bool theorem_exponent_check(const mpq_class& sigma);

} // namespace jacsums
