#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "jacsums/util.hpp"

namespace jacsums {

using std::int64_t;

// Canonical residue class: 0 <= value < modulus.
struct Residue {
    int64_t value = 0;
    int64_t modulus = 1;
};

// Value of a root-of-unity sum together with a rigorous absolute error bound.
struct UnitRootSum {
    cx value{0.0, 0.0};
    double err = 0.0;
};

int64_t mod_reduce(int64_t a, int64_t m);
int64_t mul_mod(int64_t a, int64_t b, int64_t m);
int64_t gcd64(int64_t a, int64_t b);

// Inverse of a mod c; throws std::domain_error when gcd(a, c) > 1.
Residue mod_inverse(int64_t a, int64_t c);

// Extended Jacobi symbol (a/n) for odd n >= 1; throws std::invalid_argument
// for even or nonpositive n.
int jacobi_symbol(int64_t a, int64_t n);

// e(num/den) = exp(2*pi*i*num/den) with the argument reduced mod 1 in
// integer arithmetic before any floating conversion.
cx unit_root(int64_t num, int64_t den);

// Table of e(j/c), j = 0..c-1, for table-driven exponential sums.
std::vector<cx> unit_root_table(int64_t c);

struct PrimePower {
    int64_t p;
    int e;
    int64_t pe; // p^e
};

// Trial-division factorization, cached per thread. Intended for moduli
// up to ~10^6; anything larger still works, just slower.
const std::vector<PrimePower>& factorize(int64_t n);

int64_t euler_phi(int64_t n);
int64_t divisor_count(int64_t n);
int moebius(int64_t n);
bool is_squarefree(int64_t n);

// Quadratic Gauss sum  sum_{x mod c} e(a x^2 / c)  by direct summation.
// Requires c odd (even moduli are unsupported) and gcd(a, c) = 1.
UnitRootSum gauss_sum(int64_t a, int64_t c);

// Closed form eps_c * (a/c) * sqrt(c), eps_c = 1 or i for c = 1, 3 mod 4.
cx gauss_closed(int64_t a, int64_t c);

// Classical Kloosterman sum S(a, b; c) over invertible residues.
UnitRootSum kloosterman(int64_t a, int64_t b, int64_t c);

// Salie sum: Kloosterman sum twisted by the Jacobi symbol (rho/c), c odd.
UnitRootSum salie_sum(int64_t a, int64_t b, int64_t c);

// Closed form eps_c * (a/c) * sqrt(c) * sum_{v^2 = ab mod c} e(2v/c),
// valid for c odd with gcd(ab, c) = 1.
UnitRootSum salie_closed(int64_t a, int64_t b, int64_t c);

// Ramanujan sum, exact integer via mu(c/(c,a)) * phi(c) / phi(c/(c,a)).
int64_t ramanujan_sum(int64_t a, int64_t c);

// Checks S(-y, a; c) = sum_{l | (y,a,c)} l * S(-a y / l^2, 1; c / l)
// within the combined error bounds of both sides.
bool selberg_check(int64_t y, int64_t a, int64_t c);

} // namespace jacsums
