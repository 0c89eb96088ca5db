#include <doctest.h>

#include <sstream>
#include <vector>

#include "jacsums/jacobiforms.hpp"

using namespace jacsums;

namespace {

// Independent route to Delta: Euler's pentagonal-number series for
// prod (1 - q^n), raised to the 24th power by plain convolution.
std::vector<long long> delta_by_pentagonal(int cutoff) {
    std::vector<long long> euler(static_cast<size_t>(cutoff) + 1, 0);
    euler[0] = 1;
    for (long long k = 1;; ++k) {
        const long long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
        if (g1 > cutoff && g2 > cutoff) break;
        const long long sgn = (k % 2 == 0) ? 1 : -1;
        if (g1 <= cutoff) euler[static_cast<size_t>(g1)] += sgn;
        if (g2 <= cutoff) euler[static_cast<size_t>(g2)] += sgn;
    }
    std::vector<long long> acc(euler.size(), 0);
    acc[0] = 1;
    for (int rep = 0; rep < 24; ++rep) {
        std::vector<long long> next(euler.size(), 0);
        for (size_t i = 0; i < acc.size(); ++i) {
            if (acc[i] == 0) continue;
            for (size_t j = 0; i + j < euler.size(); ++j) next[i + j] += acc[i] * euler[j];
        }
        acc = std::move(next);
    }
    // shift by the q-prefactor
    std::vector<long long> out(euler.size(), 0);
    for (size_t i = 0; i + 1 < euler.size(); ++i) out[i + 1] = acc[i];
    return out;
}

} // namespace

TEST_CASE("eta_power(24) is the discriminant cusp form") {
    const LaurentSeries delta = eta_power(24, 12);
    // classical tau values
    const std::vector<long> tau = {0,      1,     -24,     252,     -1472,  4830,   -6048,
                                   -16744, 84480, -113643, -115920, 534612, -370944};
    const auto pent = delta_by_pentagonal(12);
    for (long n = 1; n <= 12; ++n) {
        const mpq_class c = delta.coeff(n * LaurentSeries::kQUnit, 0);
        CHECK((c.get_den() == 1));
        CHECK((c.get_num() == tau[static_cast<size_t>(n)]));
        CHECK(pent[static_cast<size_t>(n)] == static_cast<long long>(tau[static_cast<size_t>(n)]));
    }
    CHECK((delta.coeff(0, 0) == 0));
}

TEST_CASE("eta_power offsets and leading coefficients") {
    const LaurentSeries e2 = eta_power(2, 10);
    REQUIRE(!e2.empty());
    CHECK(e2.rows().begin()->first == 2); // q^(1/12) = 2 units of 1/24
    CHECK((e2.rows().begin()->second.at(0) == 1));
    CHECK_THROWS_AS(eta_power(3, 10), std::invalid_argument);
    CHECK_THROWS_AS(eta_power(0, 10), std::invalid_argument);
}

TEST_CASE("eta power multiplicativity: eta^6 * eta^6 = eta^12") {
    const LaurentSeries a = eta_power(6, 50);
    const LaurentSeries prod = a * a;
    const LaurentSeries direct = eta_power(12, 50);
    for (const auto& [qe, row] : direct.rows())
        for (const auto& [ze, c] : row) CHECK((prod.coeff(qe, ze) == c));
    for (const auto& [qe, row] : prod.rows())
        for (const auto& [ze, c] : row) CHECK((direct.coeff(qe, ze) == c));
}

TEST_CASE("theta1 squared leading row and symmetries") {
    const LaurentSeries t = theta1_squared(20);
    REQUIRE(!t.empty());
    // leading term -(zeta - 2 + zeta^-1) q^(1/4)
    CHECK(t.rows().begin()->first == 6);
    CHECK((t.coeff(6, 2) == -1));
    CHECK((t.coeff(6, 0) == 2));
    CHECK((t.coeff(6, -2) == -1));
    // zeta <-> zeta^-1 symmetry
    for (const auto& [qe, row] : t.rows())
        for (const auto& [ze, c] : row) CHECK((t.coeff(qe, -ze) == c));
    // theta_1(tau, 0) = 0: the zeta = 1 specialization vanishes identically
    CHECK(t.specialize_z1().empty());
}

TEST_CASE("weak form phi_{-2,1}") {
    const FourierTable t = phi_weak(-2, 20);
    CHECK(t.coeff(0, 0) == -2);
    CHECK(t.coeff(0, 1) == 1);
    CHECK(t.coeff(0, -1) == 1);
    CHECK(t.coeff(1, 1) == 8);
    CHECK_THROWS_AS(phi_weak(-2, 0), std::invalid_argument);
    for (const auto& [key, val] : t.table) CHECK(t.coeff(key.first, -key.second) == val);
    // zeta = 1 column sums vanish for every n
    for (long long n = 0; n <= t.max_n; ++n) {
        long long sum = 0;
        for (long long r = -2 * t.max_n - 1; r <= 2 * t.max_n + 1; ++r) {
            const auto it = t.table.find({n, r});
            if (it != t.table.end()) sum += it->second;
        }
        CHECK(sum == 0);
    }
}

TEST_CASE("weak form phi_{0,1}") {
    const FourierTable t = phi_weak(0, 20);
    CHECK(t.coeff(0, 0) == 10);
    CHECK(t.coeff(0, 1) == 1);
    CHECK(t.coeff(0, -1) == 1);
    for (const auto& [key, val] : t.table) CHECK(t.coeff(key.first, -key.second) == val);
    // zeta = 1 column sums: 12 at n = 0, zero beyond
    for (long long n = 0; n <= t.max_n; ++n) {
        long long sum = 0;
        for (long long r = -2 * t.max_n - 1; r <= 2 * t.max_n + 1; ++r) {
            const auto it = t.table.find({n, r});
            if (it != t.table.end()) sum += it->second;
        }
        CHECK(sum == (n == 0 ? 12 : 0));
    }
}

TEST_CASE("each even theta quotient specializes to 1 at zeta = 1") {
    for (int which : {2, 3, 4}) {
        const LaurentSeries sq = theta_even_squared(which, 15);
        const LaurentSeries quot = sq.divide_by_q_series(sq.specialize_z1());
        const LaurentSeries at1 = quot.specialize_z1();
        CHECK((at1.coeff(0, 0) == 1));
        for (const auto& [qe, row] : at1.rows())
            for (const auto& [ze, c] : row) {
                if (qe != 0) CHECK((c == 0));
            }
    }
}

TEST_CASE("cusp form tables phi_{10,1} and phi_{12,1}") {
    const FourierTable& t10 = phi_cusp(10, 30);
    CHECK(t10.coeff(1, 1) == 1);
    CHECK(t10.coeff(1, 0) == -2);
    const FourierTable& t12 = phi_cusp(12, 30);
    CHECK(t12.coeff(1, 1) == 1);
    CHECK(t12.coeff(1, 0) == 10);
    CHECK_THROWS_AS(phi_cusp(8, 30), std::invalid_argument);

    // cusp condition: nothing survives at r^2 >= 4n
    for (const auto& [key, val] : t10.table) {
        if (val == 0) continue;
        CHECK(key.second * key.second < 4 * key.first);
    }
    // r -> -r symmetry across the whole table
    for (const auto& [key, val] : t10.table) CHECK(t10.coeff(key.first, -key.second) == val);
}

TEST_CASE("index-1 coefficients depend only on the discriminant") {
    for (int k : {10, 12}) {
        const FourierTable& t = phi_cusp(k, 30);
        std::map<long long, long long> by_disc;
        for (const auto& [key, val] : t.table) {
            const long long d = 4 * key.first - key.second * key.second;
            if (d <= 0) continue;
            auto it = by_disc.find(d);
            if (it == by_disc.end())
                by_disc.emplace(d, val);
            else
                CHECK(it->second == val);
        }
        // elliptic shift restatement: c(n, r) = c(n + r + 1, r + 2)
        for (const auto& [key, val] : t.table) {
            const long long n2 = key.first + key.second + 1, r2 = key.second + 2;
            if (n2 <= t.max_n) CHECK(t.coeff(n2, r2) == val);
        }
    }
}

TEST_CASE("coeff lookups") {
    const FourierTable& t = phi_cusp(10, 25);
    CHECK(t.coeff(1, -1) == t.coeff(1, 1));
    CHECK(t.coeff_by_disc(7) == t.coeff(2, 1));
    CHECK(t.coeff_by_disc(3) == 1);
    CHECK(t.coeff(1, 2) == 0);  // r^2 >= 4n on a cusp table
    CHECK(t.coeff(2, 3) == 0);
    CHECK_THROWS_AS(t.coeff(26, 0), std::out_of_range);
}

TEST_CASE("csv export") {
    const FourierTable t = phi_weak(-2, 2);
    std::ostringstream os;
    export_csv(t, os);
    const std::string s = os.str();
    CHECK(s.rfind("n,r,c\n", 0) == 0);
    CHECK(s.find("0,0,-2\n") != std::string::npos);
}
