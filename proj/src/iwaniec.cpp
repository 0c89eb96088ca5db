#include "jacsums/iwaniec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jacsums/bessel.hpp"
#include "jacsums/rationals.hpp"

namespace jacsums {

std::vector<int64_t> primes_in_range(int64_t lo, int64_t hi) {
    if (hi < 2 || hi < lo) return {};
    lo = std::max<int64_t>(lo, 2);
    int64_t root = static_cast<int64_t>(std::sqrt(static_cast<double>(hi))) + 1;
    while (root * root > hi) --root;
    std::vector<char> small(static_cast<size_t>(root) + 1, 1);
    std::vector<int64_t> base;
    for (int64_t i = 2; i <= root; ++i) {
        if (!small[static_cast<size_t>(i)]) continue;
        base.push_back(i);
        for (int64_t j = i * i; j <= root; j += i) small[static_cast<size_t>(j)] = 0;
    }
    std::vector<char> seg(static_cast<size_t>(hi - lo + 1), 1);
    for (int64_t p : base) {
        int64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
        for (int64_t j = start; j <= hi; j += p) seg[static_cast<size_t>(j - lo)] = 0;
    }
    std::vector<int64_t> out;
    for (int64_t v = lo; v <= hi; ++v) {
        if (v < 2) continue;
        if (v <= root) {
            if (small[static_cast<size_t>(v)]) out.push_back(v);
        } else if (seg[static_cast<size_t>(v - lo)]) {
            out.push_back(v);
        }
    }
    return out;
}

double omega_weight(int64_t c, int64_t P, int64_t m, int64_t D) {
    if (P < 2) throw std::invalid_argument("omega_weight: P must be >= 2");
    double w = 0.0;
    for (int64_t p : primes_in_range(P, 2 * P)) {
        if (mod_reduce(m, p) == 0 || mod_reduce(D, p) == 0) continue;
        if (c % p == 0) w += std::log(static_cast<double>(p));
    }
    return w;
}

std::vector<double> omega_weights_upto(int64_t c_max, int64_t P, int64_t m, int64_t D) {
    if (P < 2) throw std::invalid_argument("omega_weights_upto: P must be >= 2");
    std::vector<double> w(static_cast<size_t>(c_max) + 1, 0.0);
    for (int64_t p : primes_in_range(P, 2 * P)) {
        if (mod_reduce(m, p) == 0 || mod_reduce(D, p) == 0) continue;
        const double lp = std::log(static_cast<double>(p));
        for (int64_t c = p; c <= c_max; c += p) w[static_cast<size_t>(c)] += lp;
    }
    return w;
}

namespace {

struct WeightedAccum {
    KahanSum acc;
    double err = 0.0;
    double absum = 0.0;

    void add(const cx& term, double coef_abs, const HPair& hp, double weight) {
        acc.add(term);
        err += weight * coef_abs *
               (hp.plus.err + hp.minus.err +
                128.0 * kEps * (std::abs(hp.plus.value) + std::abs(hp.minus.value)));
        absum += std::abs(term);
    }

    SeriesSum done() const { return SeriesSum{acc.value(), err + 4.0 * kEps * absum}; }
};

cx weighted_term(int k, const IndexData& idx, int64_t c, double weight, const HPair& hp,
                 double* coef_abs) {
    const double cd = static_cast<double>(c);
    const double x = std::numbers::pi * static_cast<double>(-idx.disc) /
                     (static_cast<double>(idx.m) * cd);
    const double bes = bessel_half(HalfOrder::make(k), x);
    const double coef = weight * bes / (cd * std::sqrt(cd));
    const cx phase = unit_root(mod_reduce(idx.r * idx.r, 2 * idx.m * c), 2 * idx.m * c);
    *coef_abs = std::abs(coef);
    return coef * (hp.plus.value * phase + hp.minus.value * std::conj(phase));
}

} // namespace

SeriesSum weighted_s(int k, const IndexData& index, int64_t P, int64_t c_max) {
    const auto w = omega_weights_upto(c_max, P, index.m, index.disc);
    WeightedAccum acc;
    for (int64_t c = 1; c <= c_max; ++c) {
        const double weight = w[static_cast<size_t>(c)];
        if (weight == 0.0) continue;
        const HPair hp = h_eval_pair(index, c);
        double coef_abs = 0.0;
        const cx term = weighted_term(k, index, c, weight, hp, &coef_abs);
        acc.add(term, coef_abs, hp, 1.0);
    }
    return acc.done();
}

SplitSums split_s(int k, const IndexData& index, int64_t P, double C, double K,
                  int64_t sharp_cutoff) {
    const double ratio = static_cast<double>(-index.disc) / static_cast<double>(index.m);
    if (!(0.0 < C && C <= ratio && ratio <= K))
        throw std::invalid_argument("split_s: need 0 < C <= |D|/m <= K");
    if (sharp_cutoff < static_cast<int64_t>(K))
        throw std::invalid_argument("split_s: sharp cutoff below K");

    const auto w = omega_weights_upto(sharp_cutoff, P, index.m, index.disc);
    WeightedAccum flat, star, sharp;
    for (int64_t c = 1; c <= sharp_cutoff; ++c) {
        const double weight = w[static_cast<size_t>(c)];
        if (weight == 0.0) continue;
        const HPair hp = h_eval_pair(index, c);
        double coef_abs = 0.0;
        const cx term = weighted_term(k, index, c, weight, hp, &coef_abs);
        WeightedAccum& dst =
            (static_cast<double>(c) <= C) ? flat : (static_cast<double>(c) < K ? star : sharp);
        dst.add(term, coef_abs, hp, 1.0);
    }

    // Beyond the computed range: omega(c) <= log c <= sqrt(c) and
    // |H| <= tau(c) c ((c,m,r)(c,D'))^(1/2) <= 2 sqrt(c) c |D|^(1/2),
    // with the Bessel power bound, give terms <= A c^(2-k).
    const double dabs = static_cast<double>(-index.disc);
    const double md = static_cast<double>(index.m);
    const double gamma_km =
        gamma_half_rational(k - 1).get_d() * std::sqrt(std::numbers::pi);
    const double a_const = 2.0 * std::sqrt(dabs) *
                           std::pow(std::numbers::pi * dabs / (2.0 * md), k - 1.5) / gamma_km;
    const double x0 = static_cast<double>(sharp_cutoff);
    const double tail =
        2.0 * a_const * (std::pow(x0, 2.0 - k) + std::pow(x0, 3.0 - k) / (k - 3.0));

    return SplitSums{flat.done(), star.done(), sharp.done(), tail};
}

Residue f_of_a_t(const IndexData& index, int64_t a, int64_t t, int eps1, int eps2) {
    if (a < 1 || t < 1) throw std::invalid_argument("f_of_a_t: a, t must be positive");
    if (eps1 * eps1 != 1 || eps2 * eps2 != 1)
        throw std::invalid_argument("f_of_a_t: eps must be +-1");
    if (gcd64(a, 2 * index.m) != 1 || gcd64(a, index.disc) != 1)
        throw std::domain_error("f_of_a_t: gcd(a, 2mD) > 1");
    const int64_t two_mt = 2 * index.m * t;
    const int64_t modulus = two_mt * a;
    const int64_t inv_2mt = (a == 1) ? 0 : mod_inverse(mod_reduce(two_mt, a), a).value;
    const int64_t inv_a = mod_inverse(mod_reduce(a, two_mt), two_mt).value;
    const __int128 lhs = static_cast<__int128>(eps2) * index.disc *
                         (1 + static_cast<__int128>(two_mt) * inv_2mt % modulus);
    const __int128 rhs = static_cast<__int128>(eps1) * a % modulus * inv_a % modulus *
                         mod_reduce(index.r * index.r, modulus) % modulus;
    const int64_t f = mod_reduce(static_cast<int64_t>((lhs + rhs) % modulus), modulus);
    return Residue{f, modulus};
}

SaSum s_a_sum(const IndexData& index, int64_t a, int64_t t, int64_t s, double B, double C,
              int eps1, int eps2, int64_t P) {
    if (gcd64(a, 2 * index.m) != 1 || gcd64(a, index.disc) != 1)
        throw std::domain_error("s_a_sum: gcd(a, 2mD) > 1");
    SaSum out;
    out.omega_a = omega_weight(a, P, index.m, index.disc);
    const int64_t step = 4 * t;
    if (gcd64(s, step) != 1) return out; // congruence has no coprime solutions

    const Residue f = f_of_a_t(index, a, t, eps1, eps2);
    const int64_t modulus = f.modulus; // 2mta
    const int64_t b0 = mul_mod(mod_reduce(s, step), mod_inverse(mod_reduce(a, step), step).value,
                               step);
    const double lower = std::max(static_cast<double>(a), C / (static_cast<double>(a) * t));
    int64_t b = static_cast<int64_t>(std::floor(lower)) + 1;
    b += mod_reduce(b0 - b, step);
    if (B <= lower) return out;

    const int64_t hi = static_cast<int64_t>(std::ceil(B)) + 1;
    std::vector<double> wb;
    int64_t wb_lo = b;
    if (b < hi) {
        wb.assign(static_cast<size_t>(hi - b + 1), 0.0);
        for (int64_t p : primes_in_range(P, 2 * P)) {
            if (mod_reduce(index.m, p) == 0 || mod_reduce(index.disc, p) == 0) continue;
            const double lp = std::log(static_cast<double>(p));
            for (int64_t j = ((b + p - 1) / p) * p; j <= hi; j += p)
                wb[static_cast<size_t>(j - wb_lo)] += lp;
        }
    }

    KahanSum acc_s, acc_v, acc_vp;
    for (; static_cast<double>(b) < B; b += step) {
        if (gcd64(b, 2 * index.m * a) != 1 || gcd64(b, index.disc) != 1) continue;
        const int chi = jacobi_symbol(mod_reduce(index.disc, b), b);
        if (chi == 0) continue;
        const int64_t binv = mod_inverse(mod_reduce(b, modulus), modulus).value;
        const cx e = static_cast<double>(chi) * unit_root(mul_mod(f.value, binv, modulus), modulus);
        const double ob = wb[static_cast<size_t>(b - wb_lo)];
        acc_s.add((out.omega_a + ob) * e);
        acc_v.add(ob * e);
        acc_vp.add(e);
        ++out.terms;
    }
    out.s = acc_s.value();
    out.v_a = acc_v.value();
    out.v_prime = acc_vp.value();
    const double wmax = std::log(2.0 * static_cast<double>(P));
    out.err = (1.0 + out.omega_a + wmax) * coarse_err(static_cast<double>(out.terms));
    return out;
}

std::vector<DecayRow> decay_report(const IndexData& index, int64_t t, int64_t s, int64_t P,
                                   double C, double K, int eps1, int eps2) {
    std::vector<DecayRow> rows;
    const double amax = std::sqrt(K / static_cast<double>(t));
    for (int64_t a = 1; static_cast<double>(a) < amax; ++a) {
        if (gcd64(a, 2 * index.m) != 1 || gcd64(a, index.disc) != 1) continue;
        const double B = K / (static_cast<double>(a) * t);
        const SaSum sa = s_a_sum(index, a, t, s, B, C, eps1, eps2, P);
        rows.push_back(DecayRow{a, t, B, std::abs(sa.v_a), sa.terms});
        if (rows.size() >= 64) break;
    }
    return rows;
}

void decay_csv(const std::vector<DecayRow>& rows, std::ostream& os) {
    os << "a,t,B,V_a_abs,term_count\n";
    for (const auto& r : rows) {
        os << r.a << "," << r.t << "," << r.B << "," << r.v_abs << "," << r.terms << "\n";
    }
}

ProofParams ProofParams::from_sigma(const mpq_class& sigma) {
    if (sigma < 0 || sigma > make_rational(1, 2))
        throw std::domain_error("ProofParams: sigma outside [0, 1/2]");
    ProofParams p;
    p.sigma = sigma;
    p.delta = (mpq_class(3) - 5 * sigma) / (72 * (mpq_class(1) - sigma));
    p.c_exp = 1 - p.delta;
    p.k_exp = 1 + p.delta;
    p.t_exp = p.delta;
    p.p_exp = make_rational(1, 10) + make_rational(2, 5) * p.delta;
    return p;
}

bool p_ge_t_condition(const mpq_class& sigma) {
    const mpq_class delta = ProofParams::from_sigma(sigma).delta;
    return sigma * (4 + 15 * delta) <= 1 + 15 * delta;
}

EndgameResult endgame_exponent(const mpq_class& sigma) {
    if (sigma < 0 || sigma > make_rational(7, 25))
        throw std::domain_error("endgame_exponent: sigma outside [0, 7/25]");
    EndgameResult res;
    res.sigma = sigma;
    res.params = ProofParams::from_sigma(sigma);
    res.delta = res.params.delta;
    res.exponent_low = (5 * sigma - 3) / 72;
    res.exponent_high = make_rational(25, 112) * sigma - make_rational(1, 16);
    res.exponent = std::max(res.exponent_low, res.exponent_high);
    res.regime = (sigma <= make_rational(21, 155)) ? Regime::low : Regime::high;
    // |D|-exponents of P and T with m = |D|^sigma
    const mpq_class one_minus = 1 - sigma;
    res.p_exp_d = make_rational(-3, 10) * sigma + one_minus * res.params.p_exp;
    res.t_exp_d = one_minus * res.delta;
    res.p_ge_t = p_ge_t_condition(sigma);
    res.p_ge_t_direct = res.p_exp_d >= res.t_exp_d;
    return res;
}

mpq_class theorem_squared_exponent(const mpq_class& sigma) {
    return -(1 - make_rational(25, 7) * sigma) / 24;
}

bool theorem_exponent_check(const mpq_class& sigma) {
    const EndgameResult res = endgame_exponent(sigma);
    return theorem_squared_exponent(sigma) >= res.exponent;
}

} // namespace jacsums
