#include "jacsums/hsums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jacsums/parallel.hpp"

namespace jacsums {

IndexData IndexData::make(int64_t m, int64_t n, int64_t r) {
    if (m < 1) throw std::invalid_argument("IndexData: m must be positive");
    if (n < 1) throw std::invalid_argument("IndexData: n must be positive");
    IndexData idx;
    idx.m = m;
    idx.n = n;
    idx.r = r;
    idx.disc = r * r - 4 * m * n;
    if (idx.disc >= 0) throw std::invalid_argument("IndexData: discriminant must be negative");
    return idx;
}

bool is_fundamental_discriminant(int64_t D) {
    if (D >= 0) return false;
    if (mod_reduce(D, 4) == 1) return is_squarefree(-D);
    if (mod_reduce(D, 4) == 0) {
        const int64_t d = D / 4;
        const int64_t dm4 = mod_reduce(d, 4);
        return (dm4 == 2 || dm4 == 3) && is_squarefree(-d);
    }
    return false;
}

bool IndexData::fundamental() const { return is_fundamental_discriminant(disc); }

std::vector<int64_t> unit_solutions(int64_t q) {
    if (q <= 0) throw std::invalid_argument("unit_solutions: q must be positive");
    if (q == 1) return {0};
    std::vector<int64_t> sols{0};
    int64_t mod_so_far = 1;
    for (const auto& pp : factorize(q)) {
        std::vector<int64_t> local;
        if (pp.p != 2) {
            local = {1, pp.pe - 1};
        } else if (pp.e == 1) {
            local = {1};
        } else if (pp.e == 2) {
            local = {1, 3};
        } else {
            const int64_t h = pp.pe / 2;
            local = {1, h - 1, h + 1, pp.pe - 1};
        }
        std::vector<int64_t> next;
        next.reserve(sols.size() * local.size());
        // CRT: x = s mod mod_so_far, x = v mod pp.pe
        const int64_t minv = mod_inverse(mod_so_far % pp.pe, pp.pe).value;
        for (int64_t s : sols) {
            for (int64_t v : local) {
                const int64_t k = mul_mod(mod_reduce(v - s, pp.pe), minv, pp.pe);
                next.push_back(s + mod_so_far * k);
            }
        }
        sols = std::move(next);
        mod_so_far *= pp.pe;
    }
    std::sort(sols.begin(), sols.end());
    return sols;
}

namespace {

// Both signs of the double sum at modulus c for reduced data. The inner
// quadratic sum is stepped incrementally, so the loop body is adds and
// table lookups only.
//
// When `compensated` is set every term goes through a Kahan accumulator
// (the trust-anchor path); otherwise per-rho inner sums are plain and only
// the rho level is compensated, which the coarse error bound covers.
HPair brute_pair_impl(int64_t m, int64_t n, int64_t r, int64_t c, bool compensated,
                      bool parallel_inner) {
    if (c == 1) return HPair{UnitRootSum{cx{1.0, 0.0}, 0.0}, UnitRootSum{cx{1.0, 0.0}, 0.0}};
    const int64_t mr = mod_reduce(m, c);
    const int64_t nr = mod_reduce(n, c);
    const int64_t rr = mod_reduce(r, c);
    const auto tab = unit_root_table(c);

    struct Acc {
        KahanSum plus, minus;
    };

    auto run_range = [&](int64_t lo, int64_t hi, Acc& acc) {
        for (int64_t rho = lo; rho < hi; ++rho) {
            if (gcd64(rho, c) != 1) continue;
            const int64_t inv = mod_inverse(rho, c).value;
            const cx outer = tab[static_cast<size_t>(mod_reduce(nr * (rho + inv), c))];
            const int64_t A = mul_mod(mr, inv, c);
            const int64_t B0 = mul_mod(rr, inv, c);
            int64_t u = 0;
            int64_t du = (A + B0) % c;
            const int64_t ddu = (2 * A) % c;
            int64_t w = 0;
            cx ip{0.0, 0.0}, im{0.0, 0.0};
            KahanSum kp, km;
            for (int64_t lam = 0; lam < c; ++lam) {
                int64_t jp = u + w;
                if (jp >= c) jp -= c;
                int64_t jm = u - w;
                if (jm < 0) jm += c;
                if (compensated) {
                    kp.add(tab[static_cast<size_t>(jp)]);
                    km.add(tab[static_cast<size_t>(jm)]);
                } else {
                    ip += tab[static_cast<size_t>(jp)];
                    im += tab[static_cast<size_t>(jm)];
                }
                u += du;
                if (u >= c) u -= c;
                du += ddu;
                if (du >= c) du -= c;
                w += rr;
                if (w >= c) w -= c;
            }
            if (compensated) {
                ip = kp.value();
                im = km.value();
            }
            acc.plus.add(outer * ip);
            acc.minus.add(outer * im);
        }
    };

    // The chunked layout is fixed whenever parallelism is requested, so the
    // reduction order (and hence the result) is independent of --threads.
    Acc total;
    if (!parallel_inner) {
        run_range(1, c, total);
    } else {
        constexpr int kChunks = 128;
        std::vector<Acc> part(kChunks);
        parallel_chunks(1, c, kChunks,
                        [&](int i, int64_t lo, int64_t hi) { run_range(lo, hi, part[i]); });
        for (const auto& p : part) {
            total.plus.add(p.plus.value());
            total.minus.add(p.minus.value());
        }
    }

    const double nterms = static_cast<double>(euler_phi(c)) * static_cast<double>(c);
    const double err = coarse_err(nterms);
    return HPair{UnitRootSum{total.plus.value(), err}, UnitRootSum{total.minus.value(), err}};
}

HPair mul_pairs(const HPair& a, const HPair& b) {
    HPair out;
    out.plus.value = a.plus.value * b.plus.value;
    out.plus.err = mul_err(std::abs(a.plus.value), a.plus.err, std::abs(b.plus.value), b.plus.err);
    out.minus.value = a.minus.value * b.minus.value;
    out.minus.err =
        mul_err(std::abs(a.minus.value), a.minus.err, std::abs(b.minus.value), b.minus.err);
    return out;
}

int64_t raw_disc(int64_t m, int64_t n, int64_t r) { return r * r - 4 * m * n; }

// gcd(c, 2 m D) for possibly huge 2mD, via residues mod c
int64_t gcd_with_2md(int64_t m, int64_t n, int64_t r, int64_t c) {
    if (c == 1) return 1;
    const int64_t d = mod_reduce(raw_disc(mod_reduce(m, c), mod_reduce(n, c), mod_reduce(r, c)), c);
    const int64_t x = mul_mod(mod_reduce(2 * m, c), d, c);
    return gcd64(x, c);
}

} // namespace

HPair h_brute_pair_raw(int64_t m, int64_t n, int64_t r, int64_t c) {
    return brute_pair_impl(m, n, r, c, /*compensated=*/true, /*parallel_inner=*/false);
}

UnitRootSum h_brute(const HSumRequest& req) {
    if (req.c < 1) throw std::invalid_argument("h_brute: c must be positive");
    return h_brute_pair_raw(req.index.m, req.index.n, req.index.r, req.c).get(req.sign);
}

HPair h_closed_pair_raw(int64_t m, int64_t n, int64_t r, int64_t c) {
    if (c == 1) return HPair{UnitRootSum{cx{1.0, 0.0}, 0.0}, UnitRootSum{cx{1.0, 0.0}, 0.0}};
    const int64_t mr = mod_reduce(m, c);
    const int64_t nr = mod_reduce(n, c);
    const int64_t rr = mod_reduce(r, c);
    const int64_t d = mod_reduce(raw_disc(mr, nr, rr), c);
    const int chi = jacobi_symbol(mod_reduce(-d, c), c);
    const int64_t w2m = mod_inverse(mod_reduce(2 * mr, c), c).value;
    const int64_t alpha = mul_mod(w2m, d, c);
    const int64_t beta = mul_mod(w2m, mul_mod(rr, rr, c), c);

    const auto vs = unit_solutions(c);
    KahanSum vsum;
    for (int64_t v : vs) vsum.add(unit_root(mul_mod(alpha, v, c), c));

    const double sgn = (c % 4 == 1) ? 1.0 : -1.0; // eps_c^2
    const cx base = sgn * static_cast<double>(chi) * static_cast<double>(c) * vsum.value();
    const double err =
        static_cast<double>(c) * coarse_err(static_cast<double>(vs.size()) + 1.0);
    HPair out;
    out.plus = UnitRootSum{base * unit_root(-beta, c), err};
    out.minus = UnitRootSum{base * unit_root(beta, c), err};
    return out;
}

UnitRootSum h_closed_coprime(const HSumRequest& req) {
    if (req.c < 1) throw std::invalid_argument("h_closed_coprime: c must be positive");
    if (gcd_with_2md(req.index.m, req.index.n, req.index.r, req.c) != 1)
        throw std::domain_error("h_closed_coprime: gcd(c, 2mD) > 1");
    return h_closed_pair_raw(req.index.m, req.index.n, req.index.r, req.c).get(req.sign);
}

bool h_factor_check(const IndexData& index, int64_t c1, int64_t c2, Sign sign) {
    if (c1 < 1 || c2 < 1) throw std::invalid_argument("h_factor_check: moduli must be positive");
    if (gcd64(c1, c2) != 1) throw std::domain_error("h_factor_check: gcd(c1, c2) > 1");
    const int64_t m = index.m, n = index.n, r = index.r;
    const UnitRootSum lhs = h_brute_pair_raw(m, n, r, c1 * c2).get(sign);

    auto twisted = [&](int64_t part, int64_t other) {
        const int64_t mi = mod_reduce(mod_reduce(m, part) * mod_reduce(other, part), part);
        const int64_t ni =
            mul_mod(mod_reduce(n, part), mod_inverse(mod_reduce(other, part), part).value, part);
        return h_brute_pair_raw(mi, ni, mod_reduce(r, part), part).get(sign);
    };
    const UnitRootSum f2 = twisted(c2, c1); // H_{m c1, c2}(n c1~, r)
    const UnitRootSum f1 = twisted(c1, c2); // H_{m c2, c1}(n c2~, r)
    const cx rhs = f2.value * f1.value;
    const double rhs_err = mul_err(std::abs(f2.value), f2.err, std::abs(f1.value), f1.err);
    return std::abs(lhs.value - rhs) <= lhs.err + rhs_err + 1e-9;
}

HFastResult h_fast(const HSumRequest& req, const HFastOptions& opts) {
    const int64_t c = req.c;
    if (c < 1) throw std::invalid_argument("h_fast: c must be positive");
    const int64_t m = req.index.m, n = req.index.n, r = req.index.r;
    if (c == 1) return HFastResult{UnitRootSum{cx{1.0, 0.0}, 0.0}, false};

    int64_t t = 1;
    for (const auto& pp : factorize(c)) {
        const bool bad = (mod_reduce(2 * req.index.m, pp.p) == 0) ||
                         (mod_reduce(req.index.disc, pp.p) == 0);
        if (bad) t *= pp.pe;
    }
    const int64_t q = c / t;

    if (t == 1) return HFastResult{h_closed_pair_raw(m, n, r, c).get(req.sign), false};
    if (t > opts.bad_part_threshold)
        return HFastResult{h_brute_pair_raw(m, n, r, c).get(req.sign), true};
    if (t == c) return HFastResult{h_brute_pair_raw(m, n, r, c).get(req.sign), false};

    // H_{m,qt} = H_{mq,t}(n q~, r) * H_{mt,q}(n t~, r)
    const int64_t m_t = mod_reduce(mod_reduce(m, t) * mod_reduce(q, t), t);
    const int64_t n_t = mul_mod(mod_reduce(n, t), mod_inverse(mod_reduce(q, t), t).value, t);
    const HPair bad_part = h_brute_pair_raw(m_t, n_t, mod_reduce(r, t), t);

    const int64_t m_q = mod_reduce(mod_reduce(m, q) * mod_reduce(t, q), q);
    const int64_t n_q = mul_mod(mod_reduce(n, q), mod_inverse(mod_reduce(t, q), q).value, q);
    const HPair good_part = h_closed_pair_raw(m_q, n_q, mod_reduce(r, q), q);

    return HFastResult{mul_pairs(bad_part, good_part).get(req.sign), false};
}

HPair h_eval_pair(const IndexData& index, int64_t c, bool parallel_inner) {
    if (c < 1) throw std::invalid_argument("h_eval_pair: c must be positive");
    if (c == 1) return HPair{UnitRootSum{cx{1.0, 0.0}, 0.0}, UnitRootSum{cx{1.0, 0.0}, 0.0}};
    const int64_t m = index.m, n = index.n, r = index.r;

    int64_t good = 1;
    std::vector<int64_t> bad;
    for (const auto& pp : factorize(c)) {
        const bool is_bad =
            (mod_reduce(2 * m, pp.p) == 0) || (mod_reduce(index.disc, pp.p) == 0);
        if (is_bad)
            bad.push_back(pp.pe);
        else
            good *= pp.pe;
    }

    auto piece = [&](int64_t part, bool closed) {
        const int64_t co = c / part;
        const int64_t mi = mod_reduce(mod_reduce(m, part) * mod_reduce(co, part), part);
        const int64_t ni =
            mul_mod(mod_reduce(n, part), mod_inverse(mod_reduce(co, part), part).value, part);
        const int64_t ri = mod_reduce(r, part);
        if (closed) return h_closed_pair_raw(mi, ni, ri, part);
        // parallelism only pays off once the quadratic loop is sizeable
        const bool par = parallel_inner && part >= 512;
        return brute_pair_impl(mi, ni, ri, part, /*compensated=*/false, par);
    };

    HPair result{UnitRootSum{cx{1.0, 0.0}, 0.0}, UnitRootSum{cx{1.0, 0.0}, 0.0}};
    bool first = true;
    if (good == c) return h_closed_pair_raw(m, n, r, c);
    if (good > 1) {
        result = piece(good, true);
        first = false;
    }
    for (int64_t pe : bad) {
        const HPair hp = piece(pe, false);
        result = first ? hp : mul_pairs(result, hp);
        first = false;
    }
    return result;
}

bool weil_check(const HSumRequest& req) {
    const int64_t c = req.c;
    const IndexData& idx = req.index;
    const UnitRootSum h = h_fast(req).sum;

    const int64_t gmr = gcd64(idx.m, idx.r); // divides D
    const int64_t dprime = idx.disc / gmr;
    const double tau_c = static_cast<double>(divisor_count(c));
    const double general = tau_c * static_cast<double>(c) *
                           std::sqrt(static_cast<double>(gcd64(gcd64(c, idx.m), idx.r))) *
                           std::sqrt(static_cast<double>(gcd64(c, dprime)));
    const double habs = std::abs(h.value);
    bool ok = habs <= general + h.err;
    if (idx.fundamental()) {
        const double fund = tau_c * static_cast<double>(c) *
                            std::sqrt(static_cast<double>(gcd64(c, idx.disc)));
        ok = ok && habs <= fund + h.err;
    }
    return ok;
}

} // namespace jacsums
