#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <ostream>
#include <utility>

namespace jacsums {

// Exact two-variable Laurent series with rational coefficients. Monomials
// are q^(qe/24) * zeta^(ze/2); exponents are stored as integers in fixed
// fractional units (1/24 for q, 1/2 for zeta), which accommodates every
// eta/theta prefactor that shows up in the assemblies below. Multiplication
// truncates at the smaller q-cutoff.
class LaurentSeries {
public:
    static constexpr long kQUnit = 24; // q-exponent denominator
    static constexpr long kZUnit = 2;  // zeta-exponent denominator

    using Row = std::map<long, mpq_class>; // ze (1/2 units) -> coefficient

    explicit LaurentSeries(long q_cutoff24) : cutoff_(q_cutoff24) {}

    long q_cutoff24() const { return cutoff_; }
    const std::map<long, Row>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }

    void add_to(long qe24, long ze2, const mpq_class& v);
    mpq_class coeff(long qe24, long ze2) const;

    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries scaled(const mpq_class& s) const;

    // Exact division by a series in q alone whose lowest coefficient is
    // nonzero (ordinary power-series long division on the q-rows).
    LaurentSeries divide_by_q_series(const LaurentSeries& den) const;

    // zeta = 1 specialization (collapses each q-row to its coefficient sum).
    LaurentSeries specialize_z1() const;

    bool is_pure_q() const;

private:
    long cutoff_;
    std::map<long, Row> rows_;
};

// q^(e/24) * prod_{n>=1} (1 - q^n)^e up to q^q_cutoff; e even positive.
LaurentSeries eta_power(int e, int q_cutoff);

// Square of theta_1(tau, z) = -i sum_n (-1)^n q^((2n+1)^2/8) zeta^(n+1/2).
LaurentSeries theta1_squared(int q_cutoff);

// Squares of the even two-variable theta functions (which = 2, 3, 4).
LaurentSeries theta_even_squared(int which, int q_cutoff);

// Integer Fourier coefficients c(n, r) of an index-m Jacobi form. Weak
// tables carry coefficients for r^2 <= 4n + 1, cusp tables for r^2 < 4mn.
struct FourierTable {
    std::int64_t m = 1;
    std::int64_t max_n = 0;
    bool weak = false;
    std::map<std::pair<std::int64_t, std::int64_t>, long long> table;

    // c(n, r) with the r -> -r reduction applied; 0 outside the stored
    // support; throws std::out_of_range past the cutoff.
    long long coeff(std::int64_t n, std::int64_t r) const;

    // Index-1 lookup by discriminant 4n - r^2 > 0.
    long long coeff_by_disc(std::int64_t disc) const;
};

// Index-1 weak Jacobi forms: kind -2 gives phi_{-2,1} (c(0,0) = -2,
// c(0,+-1) = 1), kind 0 gives phi_{0,1} (c(0,0) = 10, c(0,+-1) = 1).
FourierTable phi_weak(int kind, int q_cutoff);

// Index-1 cusp forms phi_{10,1} = Delta * phi_{-2,1} and
// phi_{12,1} = Delta * phi_{0,1}; k must be 10 or 12. Memoized.
const FourierTable& phi_cusp(int k, int q_cutoff);

void export_csv(const FourierTable& t, std::ostream& os);

} // namespace jacsums
