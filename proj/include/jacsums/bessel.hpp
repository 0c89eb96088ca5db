#pragma once

namespace jacsums {

// Half-integer Bessel order nu = k - 3/2 for even weight k >= 4.
struct HalfOrder {
    int k = 4;

    double nu() const { return k - 1.5; }
    static HalfOrder make(int k);
};

// J_{k-3/2}(x) for x > 0 via the closed elementary forms: upward recurrence
// from J_{+-1/2} when x >= nu, ascending power series otherwise.
double bessel_half(HalfOrder order, double x);

// The two branches, exposed for cross-checking on the crossover region.
double bessel_half_series(HalfOrder order, double x);
double bessel_half_recurrence(HalfOrder order, double x);

// (x/2)^nu / Gamma(nu + 1); rigorous bound on |J_nu| for all x > 0.
double bessel_power_bound(HalfOrder order, double x);

// Empirical sup of x^1/2 |J_nu(x)| on a fine grid, plus 10% margin.
// Memoized per order; diagnostic only, never used for rigorous tails.
double bessel_decay_constant(HalfOrder order);

// Power bound always; for x >= 1 additionally the decay bound.
bool bessel_bound_check(HalfOrder order, double x);

} // namespace jacsums
