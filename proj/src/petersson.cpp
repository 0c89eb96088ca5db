#include "jacsums/petersson.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "jacsums/bessel.hpp"
#include "jacsums/parallel.hpp"
#include "jacsums/rationals.hpp"

namespace jacsums {

namespace {

double ipow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

// cost proxy for evaluating H at modulus c: quadratic in the bad prime powers
int64_t h_cost(const IndexData& idx, int64_t c) {
    int64_t cost = 1;
    for (const auto& pp : factorize(c)) {
        const bool bad =
            (mod_reduce(2 * idx.m, pp.p) == 0) || (mod_reduce(idx.disc, pp.p) == 0);
        if (bad) cost += pp.pe * (pp.pe - pp.pe / pp.p);
    }
    return cost;
}

} // namespace

double lambda_km(int k, int64_t m, int64_t D) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("lambda_km: k must be even, >= 4");
    if (m < 1 || D >= 0) throw std::invalid_argument("lambda_km: need m >= 1 and D < 0");
    // Gamma(k - 3/2) = gamma_half_rational(k - 2) * sqrt(pi), so the
    // sqrt(pi) cancels one half-power of pi^(k-3/2) exactly.
    const double ratio = gamma_half_rational(k - 2).get_d();
    const double base = static_cast<double>(m) / std::numbers::pi;
    const double dabs = static_cast<double>(-D);
    return 0.25 * ratio * ipow(base, k - 2) * std::sqrt(dabs) / ipow(dabs, k - 1);
}

std::vector<HSeriesEntry> h_series(const IndexData& index, int64_t level, int64_t c_max) {
    if (level < 1) throw std::invalid_argument("h_series: level must be positive");
    std::vector<int64_t> light, heavy;
    for (int64_t c = level; c <= c_max; c += level)
        (h_cost(index, c) > (1 << 21) ? heavy : light).push_back(c);

    std::vector<HSeriesEntry> out(light.size() + heavy.size());
    auto fill = [&](int64_t c, size_t slot, bool parallel_inner) {
        const HPair hp = h_eval_pair(index, c, parallel_inner);
        out[slot] = HSeriesEntry{c, hp.plus.value, hp.minus.value, hp.plus.err, hp.minus.err};
    };

    // light moduli: parallel across c (entries are independent)
    parallel_chunks(0, static_cast<int64_t>(light.size()), 256,
                    [&](int, int64_t lo, int64_t hi) {
                        for (int64_t i = lo; i < hi; ++i)
                            fill(light[static_cast<size_t>(i)], static_cast<size_t>(i), false);
                    });
    // heavy moduli: sequential, parallel inside the quadratic loop
    for (size_t j = 0; j < heavy.size(); ++j) fill(heavy[j], light.size() + j, true);

    std::sort(out.begin(), out.end(),
              [](const HSeriesEntry& a, const HSeriesEntry& b) { return a.c < b.c; });
    return out;
}

SeriesSum bare_series(const PeterssonJob& job, const std::vector<HSeriesEntry>& entries) {
    const IndexData& idx = job.index;
    const HalfOrder order = HalfOrder::make(job.k);
    const double dabs = static_cast<double>(-idx.disc);
    KahanSum acc;
    double err = 0.0, absum = 0.0;
    for (const auto& e : entries) {
        if (e.c > job.c_max) break;
        const double c = static_cast<double>(e.c);
        const double x = std::numbers::pi * dabs / (static_cast<double>(idx.m) * c);
        const double bes = bessel_half(order, x);
        const double coef = bes / (c * std::sqrt(c));
        const cx phase = unit_root(mod_reduce(idx.r * idx.r, 2 * idx.m * e.c), 2 * idx.m * e.c);
        const cx term = coef * (e.plus * phase + e.minus * std::conj(phase));
        acc.add(term);
        const double cabs = std::abs(coef);
        err += cabs * (e.err_plus + e.err_minus) +
               128.0 * kEps * cabs * (std::abs(e.plus) + std::abs(e.minus));
        absum += std::abs(term);
    }
    err += 4.0 * kEps * absum;
    return SeriesSum{acc.value(), err};
}

double series_tail_bound(int k, int64_t m, int64_t D, int64_t level, int64_t c_max) {
    // |H| <= tau(c) c (c,D)^1/2 <= 2 sqrt(c) * c * |D|^1/2 and
    // |J_nu(x)| <= (x/2)^nu / Gamma(nu+1) give a term bound
    // A * c^(3/2-k); the tail is then a zeta-like remainder.
    const double dabs = static_cast<double>(-D);
    const double md = static_cast<double>(m);
    const double gamma_km = gamma_half_rational(k - 1).get_d() * std::sqrt(std::numbers::pi);
    const double a_const = (std::numbers::pi / std::sqrt(2.0 * md)) * 2.0 * std::sqrt(dabs) *
                           std::pow(std::numbers::pi * dabs / (2.0 * md), k - 1.5) / gamma_km;
    const double j1 = std::floor(static_cast<double>(c_max) / static_cast<double>(level)) + 1.0;
    const double s = std::pow(j1, 1.5 - k) + std::pow(j1, 2.5 - k) / (k - 2.5);
    return a_const * std::pow(static_cast<double>(level), 1.5 - k) * s;
}

TruncatedSide geometric_side_from(const PeterssonJob& job,
                                  const std::vector<HSeriesEntry>& entries) {
    if (job.k < 4 || job.k % 2 != 0)
        throw std::invalid_argument("geometric_side: k must be even, >= 4");
    TruncatedSide out;
    out.tail = series_tail_bound(job.k, job.index.m, job.index.disc, job.level, job.c_max);
    if (job.c_max < job.level) {
        out.value = cx{1.0, 0.0};
        out.empty_sum = true;
        return out;
    }
    const SeriesSum s = bare_series(job, entries);
    const double sgn = (job.k / 2) % 2 == 0 ? 1.0 : -1.0; // i^k for even k
    const double pref = sgn * std::numbers::pi / std::sqrt(2.0 * static_cast<double>(job.index.m));
    out.value = cx{1.0, 0.0} + pref * s.value;
    out.err = std::abs(pref) * s.err + 4.0 * kEps * (1.0 + std::abs(pref) * std::abs(s.value));
    return out;
}

TruncatedSide geometric_side(const PeterssonJob& job) {
    if (job.c_max < job.level) return geometric_side_from(job, {});
    return geometric_side_from(job, h_series(job.index, job.level, job.c_max));
}

std::string default_dimension_file() {
#ifdef JACSUMS_DATA_DIR
    return std::string(JACSUMS_DATA_DIR) + "/jacobi_dims.txt";
#else
    return "data/jacobi_dims.txt";
#endif
}

std::map<std::pair<int, int>, int> load_dimension_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dimension file: " + path);
    std::map<std::pair<int, int>, int> dims;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        int k, m, d;
        if (ss >> k >> m >> d) dims[{k, m}] = d;
    }
    return dims;
}

CheckReport zero_dim_check(int k, const std::vector<std::pair<int64_t, int64_t>>& samples,
                           int64_t c_max, double tolerance, const std::string& dim_file) {
    const auto dims = load_dimension_table(dim_file);
    const auto it = dims.find({k, 1});
    if (it == dims.end() || it->second != 0)
        throw std::invalid_argument("zero_dim_check: (k,1) is not a recorded zero-dimensional space");
    CheckReport rep;
    rep.k = k;
    for (const auto& [n, r] : samples) {
        const IndexData idx = IndexData::make(1, n, r);
        PeterssonJob job{k, idx, 1, c_max};
        const TruncatedSide side = geometric_side(job);
        SampleReport sr;
        sr.index = idx;
        sr.value_abs = std::abs(side.value);
        sr.tail = side.tail;
        sr.err = side.err;
        sr.pass = sr.value_abs <= side.tail + tolerance;
        sr.margin = side.tail + tolerance - sr.value_abs;
        rep.samples.push_back(sr);
        rep.pass = rep.pass && sr.pass;
    }
    return rep;
}

RatioCheckReport ratio_check(
    int k,
    const std::vector<std::pair<std::pair<int64_t, int64_t>, std::pair<int64_t, int64_t>>>& pairs,
    int64_t c_max, const std::string& dim_file) {
    const auto dims = load_dimension_table(dim_file);
    const auto it = dims.find({k, 1});
    if (it == dims.end() || it->second != 1)
        throw std::invalid_argument("ratio_check: (k,1) is not a recorded one-dimensional space");
    const FourierTable& tab = phi_cusp(k, 60);

    RatioCheckReport rep;
    rep.k = k;
    for (const auto& [p1, p2] : pairs) {
        RatioReport rr;
        rr.first = IndexData::make(1, p1.first, p1.second);
        rr.second = IndexData::make(1, p2.first, p2.second);
        const long long c2 = tab.coeff(p2.first, p2.second);
        if (c2 == 0) {
            rr.skipped = true;
            rr.note = "reference coefficient vanishes";
            rep.pairs.push_back(rr);
            continue;
        }
        const long long c1 = tab.coeff(p1.first, p1.second);
        auto side = [&](const IndexData& idx) {
            return geometric_side(PeterssonJob{k, idx, 1, c_max});
        };
        const TruncatedSide s1 = side(rr.first);
        const TruncatedSide s2 = side(rr.second);
        const double lhs = (s1.value.real() / lambda_km(k, 1, rr.first.disc)) /
                           (s2.value.real() / lambda_km(k, 1, rr.second.disc));
        const double rhs = (static_cast<double>(c1) * static_cast<double>(c1)) /
                           (static_cast<double>(c2) * static_cast<double>(c2));
        const double tail_rel = (s1.tail + s1.err) / std::abs(s1.value.real()) +
                                (s2.tail + s2.err) / std::abs(s2.value.real());
        rr.lhs = lhs;
        rr.rhs = rhs;
        rr.rel_tol = std::max(1e-2, tail_rel);
        if (rhs == 0.0) {
            rr.pass = std::abs(lhs) <= rr.rel_tol;
        } else {
            rr.pass = std::abs(lhs - rhs) <= rr.rel_tol * std::abs(rhs);
        }
        rep.pairs.push_back(rr);
        rep.pass = rep.pass && rr.pass;
    }
    return rep;
}

} // namespace jacsums
