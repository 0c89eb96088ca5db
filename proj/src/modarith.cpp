#include "jacsums/modarith.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace jacsums {

int64_t mod_reduce(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

int64_t gcd64(int64_t a, int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Residue mod_inverse(int64_t a, int64_t c) {
    if (c <= 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
    if (c == 1) return Residue{0, 1};
    a = mod_reduce(a, c);
    // extended Euclid
    int64_t r0 = c, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t r2 = r0 - q * r1;
        int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: argument not invertible");
    return Residue{mod_reduce(s0, c), c};
}

int jacobi_symbol(int64_t a, int64_t n) {
    if (n <= 0 || n % 2 == 0)
        throw std::invalid_argument("jacobi_symbol: modulus must be odd and positive");
    a = mod_reduce(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int64_t nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

cx unit_root(int64_t num, int64_t den) {
    num = mod_reduce(num, den);
    const double theta = 2.0 * std::numbers::pi * (static_cast<double>(num) / static_cast<double>(den));
    return cx{std::cos(theta), std::sin(theta)};
}

std::vector<cx> unit_root_table(int64_t c) {
    std::vector<cx> tab(static_cast<size_t>(c));
    for (int64_t j = 0; j < c; ++j) tab[static_cast<size_t>(j)] = unit_root(j, c);
    return tab;
}

const std::vector<PrimePower>& factorize(int64_t n) {
    if (n <= 0) throw std::invalid_argument("factorize: need n >= 1");
    thread_local std::unordered_map<int64_t, std::vector<PrimePower>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<PrimePower> fac;
    int64_t m = n;
    for (int64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p) continue;
        PrimePower pp{p, 0, 1};
        while (m % p == 0) {
            m /= p;
            ++pp.e;
            pp.pe *= p;
        }
        fac.push_back(pp);
    }
    if (m > 1) fac.push_back(PrimePower{m, 1, m});
    return cache.emplace(n, std::move(fac)).first->second;
}

int64_t euler_phi(int64_t n) {
    int64_t phi = 1;
    for (const auto& pp : factorize(n)) phi *= pp.pe / pp.p * (pp.p - 1);
    return phi;
}

int64_t divisor_count(int64_t n) {
    int64_t tau = 1;
    for (const auto& pp : factorize(n)) tau *= pp.e + 1;
    return tau;
}

int moebius(int64_t n) {
    int mu = 1;
    for (const auto& pp : factorize(n)) {
        if (pp.e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

bool is_squarefree(int64_t n) { return moebius(n) != 0; }

UnitRootSum gauss_sum(int64_t a, int64_t c) {
    if (c <= 0) throw std::invalid_argument("gauss_sum: modulus must be positive");
    if (c % 2 == 0) throw std::invalid_argument("gauss_sum: even modulus unsupported");
    if (gcd64(a, c) != 1) throw std::invalid_argument("gauss_sum: gcd(a, c) > 1");
    if (c == 1) return UnitRootSum{cx{1.0, 0.0}, 0.0};
    const auto tab = unit_root_table(c);
    const int64_t ar = mod_reduce(a, c);
    // a*x^2 stepped incrementally: f(x+1)-f(x) = a(2x+1)
    int64_t f = 0, d = ar, dd = mod_reduce(2 * ar, c);
    KahanSum acc;
    for (int64_t x = 0; x < c; ++x) {
        acc.add(tab[static_cast<size_t>(f)]);
        f += d;
        if (f >= c) f -= c;
        d += dd;
        if (d >= c) d -= c;
    }
    return UnitRootSum{acc.value(), coarse_err(static_cast<double>(c))};
}

cx gauss_closed(int64_t a, int64_t c) {
    if (c <= 0 || c % 2 == 0) throw std::invalid_argument("gauss_closed: c must be odd positive");
    const cx eps = (c % 4 == 1) ? cx{1.0, 0.0} : cx{0.0, 1.0};
    return eps * static_cast<double>(jacobi_symbol(a, c)) * std::sqrt(static_cast<double>(c));
}

UnitRootSum kloosterman(int64_t a, int64_t b, int64_t c) {
    if (c <= 0) throw std::invalid_argument("kloosterman: modulus must be positive");
    if (c == 1) return UnitRootSum{cx{1.0, 0.0}, 0.0};
    const auto tab = unit_root_table(c);
    const int64_t ar = mod_reduce(a, c), br = mod_reduce(b, c);
    KahanSum acc;
    int64_t nterms = 0;
    for (int64_t rho = 1; rho < c; ++rho) {
        if (gcd64(rho, c) != 1) continue;
        const int64_t inv = mod_inverse(rho, c).value;
        acc.add(tab[static_cast<size_t>(mod_reduce(ar * rho % c + br * inv % c, c))]);
        ++nterms;
    }
    return UnitRootSum{acc.value(), coarse_err(static_cast<double>(nterms))};
}

UnitRootSum salie_sum(int64_t a, int64_t b, int64_t c) {
    if (c <= 0) throw std::invalid_argument("salie_sum: modulus must be positive");
    if (c % 2 == 0) throw std::invalid_argument("salie_sum: even modulus unsupported");
    if (c == 1) return UnitRootSum{cx{1.0, 0.0}, 0.0};
    const auto tab = unit_root_table(c);
    const int64_t ar = mod_reduce(a, c), br = mod_reduce(b, c);
    KahanSum acc;
    int64_t nterms = 0;
    for (int64_t rho = 1; rho < c; ++rho) {
        const int chi = jacobi_symbol(rho, c);
        if (chi == 0) continue;
        const int64_t inv = mod_inverse(rho, c).value;
        const cx term = tab[static_cast<size_t>(mod_reduce(ar * rho % c + br * inv % c, c))];
        acc.add(chi > 0 ? term : -term);
        ++nterms;
    }
    return UnitRootSum{acc.value(), coarse_err(static_cast<double>(nterms))};
}

UnitRootSum salie_closed(int64_t a, int64_t b, int64_t c) {
    if (c <= 0 || c % 2 == 0) throw std::invalid_argument("salie_closed: c must be odd positive");
    if (c == 1) return UnitRootSum{cx{1.0, 0.0}, 0.0};
    if (gcd64(mod_reduce(a, c) * mod_reduce(b, c) % c, c) != 1)
        throw std::invalid_argument("salie_closed: gcd(ab, c) > 1");
    const int64_t ab = mod_reduce(a, c) * mod_reduce(b, c) % c;
    KahanSum acc;
    int64_t nsol = 0;
    for (int64_t v = 0; v < c; ++v) {
        if (v * v % c == ab) {
            acc.add(unit_root(2 * v, c));
            ++nsol;
        }
    }
    const cx val = gauss_closed(a, c) * acc.value();
    return UnitRootSum{val, coarse_err(static_cast<double>(nsol)) * std::sqrt(static_cast<double>(c))};
}

int64_t ramanujan_sum(int64_t a, int64_t c) {
    if (c <= 0) throw std::invalid_argument("ramanujan_sum: modulus must be positive");
    const int64_t g = gcd64(mod_reduce(a, c), c); // gcd(0, c) = c covers a = 0
    const int64_t d = c / g;
    const int mu = moebius(d);
    if (mu == 0) return 0;
    return mu * (euler_phi(c) / euler_phi(d));
}

bool selberg_check(int64_t y, int64_t a, int64_t c) {
    if (c <= 0) throw std::invalid_argument("selberg_check: modulus must be positive");
    const UnitRootSum lhs = kloosterman(-y, a, c);
    const int64_t g = gcd64(gcd64(y, a), c);
    cx rhs{0.0, 0.0};
    double rhs_err = 0.0;
    for (int64_t l = 1; l <= g; ++l) {
        if (g % l) continue;
        const UnitRootSum s = kloosterman(-(a * y) / (l * l), 1, c / l);
        rhs += static_cast<double>(l) * s.value;
        rhs_err += static_cast<double>(l) * s.err;
    }
    return std::abs(lhs.value - rhs) <= lhs.err + rhs_err + 1e-9;
}

} // namespace jacsums
