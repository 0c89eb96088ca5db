#include "jacsums/jacobiforms.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace jacsums {

void LaurentSeries::add_to(long qe24, long ze2, const mpq_class& v) {
    if (qe24 > cutoff_ || v == 0) return;
    mpq_class& slot = rows_[qe24][ze2];
    slot += v;
    if (slot == 0) {
        rows_[qe24].erase(ze2);
        if (rows_[qe24].empty()) rows_.erase(qe24);
    }
}

mpq_class LaurentSeries::coeff(long qe24, long ze2) const {
    auto it = rows_.find(qe24);
    if (it == rows_.end()) return mpq_class(0);
    auto jt = it->second.find(ze2);
    return jt == it->second.end() ? mpq_class(0) : jt->second;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    LaurentSeries out(std::min(cutoff_, o.cutoff_));
    for (const auto& [e1, row1] : rows_) {
        if (e1 > out.cutoff_) break;
        for (const auto& [e2, row2] : o.rows_) {
            const long e = e1 + e2;
            if (e > out.cutoff_) break;
            auto& orow = out.rows_[e];
            for (const auto& [z1, c1] : row1)
                for (const auto& [z2, c2] : row2) {
                    mpq_class& slot = orow[z1 + z2];
                    slot += c1 * c2;
                }
        }
    }
    // sweep empty slots created by cancellation
    for (auto it = out.rows_.begin(); it != out.rows_.end();) {
        auto& row = it->second;
        for (auto jt = row.begin(); jt != row.end();)
            jt = (jt->second == 0) ? row.erase(jt) : std::next(jt);
        it = row.empty() ? out.rows_.erase(it) : std::next(it);
    }
    return out;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    LaurentSeries out(std::min(cutoff_, o.cutoff_));
    out.rows_ = rows_;
    for (const auto& [e, row] : o.rows_)
        for (const auto& [z, c] : row) out.add_to(e, z, c);
    // drop rows beyond the common cutoff
    for (auto it = out.rows_.begin(); it != out.rows_.end();)
        it = (it->first > out.cutoff_) ? out.rows_.erase(it) : std::next(it);
    return out;
}

LaurentSeries LaurentSeries::scaled(const mpq_class& s) const {
    LaurentSeries out(cutoff_);
    if (s == 0) return out;
    out.rows_ = rows_;
    for (auto& [e, row] : out.rows_)
        for (auto& [z, c] : row) c *= s;
    return out;
}

bool LaurentSeries::is_pure_q() const {
    for (const auto& [e, row] : rows_)
        for (const auto& [z, c] : row)
            if (z != 0) return false;
    return true;
}

LaurentSeries LaurentSeries::divide_by_q_series(const LaurentSeries& den) const {
    if (den.rows_.empty()) throw std::invalid_argument("divide_by_q_series: zero divisor");
    if (!den.is_pure_q())
        throw std::invalid_argument("divide_by_q_series: divisor must not depend on zeta");
    const long d0 = den.rows_.begin()->first;
    const mpq_class b0 = den.rows_.begin()->second.at(0);
    const long cutoff = std::min(cutoff_, den.cutoff_);

    LaurentSeries out(cutoff);
    std::map<long, Row> rem = rows_; // working remainder
    while (!rem.empty()) {
        const long e_min = rem.begin()->first;
        const long qe = e_min - d0;
        if (qe > cutoff) break;
        Row qrow = rem.begin()->second;
        for (auto& [z, c] : qrow) c /= b0;
        rem.erase(rem.begin());
        // remainder -= qrow * den (the d0 term was just consumed)
        for (auto it = std::next(den.rows_.begin()); it != den.rows_.end(); ++it) {
            const long e = qe + it->first;
            if (e > cutoff + d0) break;
            const mpq_class& bd = it->second.at(0);
            auto& rrow = rem[e];
            for (const auto& [z, c] : qrow) {
                mpq_class& slot = rrow[z];
                slot -= c * bd;
                if (slot == 0) rrow.erase(z);
            }
            if (rrow.empty()) rem.erase(e);
        }
        for (const auto& [z, c] : qrow) out.add_to(qe, z, c);
    }
    return out;
}

LaurentSeries LaurentSeries::specialize_z1() const {
    LaurentSeries out(cutoff_);
    for (const auto& [e, row] : rows_) {
        mpq_class s(0);
        for (const auto& [z, c] : row) s += c;
        out.add_to(e, 0, s);
    }
    return out;
}

LaurentSeries eta_power(int e, int q_cutoff) {
    if (e <= 0 || e % 2 != 0) throw std::invalid_argument("eta_power: exponent must be even positive");
    const long cutoff24 = static_cast<long>(q_cutoff) * LaurentSeries::kQUnit;
    // base = prod (1 - q^n) truncated, exponents in whole-q units times 24
    LaurentSeries base(cutoff24);
    base.add_to(0, 0, 1);
    for (long n = 1; n * LaurentSeries::kQUnit <= cutoff24; ++n) {
        LaurentSeries factor(cutoff24);
        factor.add_to(0, 0, 1);
        factor.add_to(n * LaurentSeries::kQUnit, 0, -1);
        base = base * factor;
    }
    // binary power
    LaurentSeries acc(cutoff24);
    acc.add_to(0, 0, 1);
    LaurentSeries sq = base;
    int rem = e;
    while (rem > 0) {
        if (rem & 1) acc = acc * sq;
        rem >>= 1;
        if (rem > 0) sq = sq * sq;
    }
    // prefactor q^(e/24): shift by e units
    LaurentSeries out(cutoff24);
    for (const auto& [qe, row] : acc.rows())
        for (const auto& [z, c] : row) out.add_to(qe + e, z, c);
    return out;
}

LaurentSeries theta1_squared(int q_cutoff) {
    const long cutoff24 = static_cast<long>(q_cutoff) * LaurentSeries::kQUnit;
    LaurentSeries out(cutoff24);
    // theta_1^2 = - sum_{n,k} (-1)^(n+k) q^(((2n+1)^2+(2k+1)^2)/8) zeta^(n+k+1)
    long bound = 1;
    while (3 * (2 * bound + 1) * (2 * bound + 1) <= cutoff24 + 3) ++bound;
    for (long n = -bound; n <= bound; ++n) {
        const long a = 3 * (2 * n + 1) * (2 * n + 1); // 24 * (2n+1)^2 / 8
        if (a > cutoff24 + 3) continue;
        for (long k = -bound; k <= bound; ++k) {
            const long qe = a + 3 * (2 * k + 1) * (2 * k + 1);
            if (qe > cutoff24) continue;
            const int sgn = ((n + k) % 2 == 0) ? -1 : 1; // includes the leading minus
            out.add_to(qe, LaurentSeries::kZUnit * (n + k + 1), mpq_class(sgn));
        }
    }
    return out;
}

LaurentSeries theta_even_squared(int which, int q_cutoff) {
    const long cutoff24 = static_cast<long>(q_cutoff) * LaurentSeries::kQUnit;
    LaurentSeries out(cutoff24);
    if (which == 2) {
        // theta_2 = sum_n q^((n+1/2)^2/2) zeta^(n+1/2)
        long bound = 1;
        while (3 * (2 * bound + 1) * (2 * bound + 1) <= cutoff24 + 3) ++bound;
        for (long n = -bound; n <= bound; ++n) {
            const long a = 3 * (2 * n + 1) * (2 * n + 1);
            if (a > cutoff24 + 3) continue;
            for (long k = -bound; k <= bound; ++k) {
                const long qe = a + 3 * (2 * k + 1) * (2 * k + 1);
                if (qe > cutoff24) continue;
                out.add_to(qe, LaurentSeries::kZUnit * (n + k + 1), mpq_class(1));
            }
        }
        return out;
    }
    if (which != 3 && which != 4)
        throw std::invalid_argument("theta_even_squared: which must be 2, 3 or 4");
    // theta_3 = sum_n q^(n^2/2) zeta^n, theta_4 the same with (-1)^n
    long bound = 1;
    while (12 * bound * bound <= cutoff24) ++bound;
    for (long n = -bound; n <= bound; ++n) {
        const long a = 12 * n * n;
        if (a > cutoff24) continue;
        for (long k = -bound; k <= bound; ++k) {
            const long qe = a + 12 * k * k;
            if (qe > cutoff24) continue;
            int sgn = 1;
            if (which == 4 && (n + k) % 2 != 0) sgn = -1;
            out.add_to(qe, LaurentSeries::kZUnit * (n + k), mpq_class(sgn));
        }
    }
    return out;
}

namespace {

LaurentSeries phi_weak_series(int kind, int q_cutoff) {
    if (kind == -2) {
        // -theta_1^2 / eta^6, normalized so c(0,0) = -2, c(0,+-1) = 1
        return theta1_squared(q_cutoff).divide_by_q_series(eta_power(6, q_cutoff)).scaled(-1);
    }
    if (kind != 0) throw std::invalid_argument("phi_weak: kind must be -2 or 0");
    LaurentSeries acc(static_cast<long>(q_cutoff) * LaurentSeries::kQUnit);
    for (int which : {2, 3, 4}) {
        const LaurentSeries sq = theta_even_squared(which, q_cutoff);
        acc = acc + sq.divide_by_q_series(sq.specialize_z1());
    }
    return acc.scaled(4);
}

FourierTable extract_table(const LaurentSeries& s, std::int64_t m, bool weak) {
    FourierTable t;
    t.m = m;
    t.weak = weak;
    t.max_n = s.q_cutoff24() / LaurentSeries::kQUnit;
    for (const auto& [qe, row] : s.rows()) {
        if (qe % LaurentSeries::kQUnit != 0)
            throw std::logic_error("extract_table: fractional q-exponent survived assembly");
        const std::int64_t n = qe / LaurentSeries::kQUnit;
        for (const auto& [ze, c] : row) {
            if (ze % LaurentSeries::kZUnit != 0)
                throw std::logic_error("extract_table: fractional zeta-exponent survived assembly");
            if (c.get_den() != 1)
                throw std::logic_error("extract_table: non-integer coefficient");
            if (!c.get_num().fits_slong_p())
                throw std::overflow_error("extract_table: coefficient exceeds long long");
            const std::int64_t r = ze / LaurentSeries::kZUnit;
            t.table[{n, r}] = static_cast<long long>(c.get_num().get_si());
        }
    }
    return t;
}

} // namespace

long long FourierTable::coeff(std::int64_t n, std::int64_t r) const {
    if (n < 0 || n > max_n) throw std::out_of_range("FourierTable::coeff: n beyond cutoff");
    auto it = table.find({n, r});
    if (it == table.end()) it = table.find({n, -r});
    return it == table.end() ? 0 : it->second;
}

long long FourierTable::coeff_by_disc(std::int64_t disc) const {
    if (m != 1) throw std::logic_error("coeff_by_disc: only meaningful for index 1");
    const std::int64_t r = ((disc % 4 + 4) % 4 == 0) ? 0 : 1;
    if ((disc + r * r) % 4 != 0)
        throw std::invalid_argument("coeff_by_disc: not a discriminant value");
    return coeff((disc + r * r) / 4, r);
}

FourierTable phi_weak(int kind, int q_cutoff) {
    if (q_cutoff < 1) throw std::invalid_argument("phi_weak: cutoff must be >= 1");
    return extract_table(phi_weak_series(kind, q_cutoff), 1, /*weak=*/true);
}

const FourierTable& phi_cusp(int k, int q_cutoff) {
    if (k != 10 && k != 12) throw std::invalid_argument("phi_cusp: k must be 10 or 12");
    static std::map<std::pair<int, int>, FourierTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({k, q_cutoff});
    if (it != cache.end()) return it->second;
    const LaurentSeries weak = phi_weak_series(k == 10 ? -2 : 0, q_cutoff);
    const LaurentSeries delta = eta_power(24, q_cutoff);
    FourierTable t = extract_table(delta * weak, 1, /*weak=*/false);
    return cache.emplace(std::pair{k, q_cutoff}, std::move(t)).first->second;
}

void export_csv(const FourierTable& t, std::ostream& os) {
    os << "n,r,c\n";
    for (const auto& [key, val] : t.table)
        os << key.first << "," << key.second << "," << val << "\n";
}

} // namespace jacsums
