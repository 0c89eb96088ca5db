#pragma once

#include <gmpxx.h>

#include <string>

namespace jacsums {

inline mpq_class make_rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
mpq_class parse_rational(const std::string& s);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string rational_str(const mpq_class& q);

// Gamma(j + 1/2) = gamma_half_rational(j) * sqrt(pi), exact.
mpq_class gamma_half_rational(int j);

} // namespace jacsums
