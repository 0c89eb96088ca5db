#pragma once

#include <complex>
#include <cstdint>
#include <limits>

namespace jacsums {

using cx = std::complex<double>;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// Coarse but rigorous roundoff bound for a compensated sum of n terms of
// magnitude <= 1 (argument reduction is exact integer arithmetic, so the
// only per-term error is the polar evaluation itself).
inline double coarse_err(double nterms) {
    return 4.0 * kEps * nterms * (nterms + 4.0);
}

// Error bound for the product of two values known to |a| +- ea, |b| +- eb.
inline double mul_err(double a_abs, double ea, double b_abs, double eb) {
    return a_abs * eb + b_abs * ea + ea * eb + 2.0 * kEps * a_abs * b_abs;
}

// Kahan-compensated complex accumulator.
struct KahanSum {
    cx sum{0.0, 0.0};
    cx comp{0.0, 0.0};

    void add(cx x) {
        const cx y = x - comp;
        const cx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    cx value() const { return sum; }
};

} // namespace jacsums
