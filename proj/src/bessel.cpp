#include "jacsums/bessel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "jacsums/rationals.hpp"

namespace jacsums {

HalfOrder HalfOrder::make(int k) {
    if (k % 2 != 0) throw std::domain_error("HalfOrder: odd weight unsupported");
    if (k < 4) throw std::invalid_argument("HalfOrder: weight must be >= 4");
    return HalfOrder{k};
}

// Both branches run in extended precision: the upward recurrence sheds
// digits below x = nu and the alternating series cancels, and the two
// must agree to 1e-10 across the whole crossover region.
double bessel_half_recurrence(HalfOrder order, double x) {
    const long double xl = x;
    const long double pref = std::sqrt(2.0L / (std::numbers::pi_v<long double> * xl));
    long double jm = pref * std::cos(xl); // J_{-1/2}
    long double j = pref * std::sin(xl);  // J_{+1/2}
    long double nu = 0.5L;
    const long double target = order.nu();
    while (nu < target - 0.25L) {
        const long double jp = (2.0L * nu / xl) * j - jm;
        jm = j;
        j = jp;
        nu += 1.0L;
    }
    return static_cast<double>(j);
}

double bessel_half_series(HalfOrder order, double x) {
    // The alternating series cancels to ~13 digits near x = 2 nu, so the
    // sum itself runs in exact rationals (x^2/4 is a dyadic rational);
    // only the prefactor is floating point.
    const long double nu = order.nu();
    const long double gamma_nu1 = static_cast<long double>(gamma_half_rational(order.k - 1).get_d()) *
                                  std::sqrt(std::numbers::pi_v<long double>);
    const long double pref = std::pow(0.5L * static_cast<long double>(x), nu) / gamma_nu1;
    const double pref_d = static_cast<double>(pref);

    mpq_class q(x);
    q = q * q / 4;
    mpq_class term(1), sum(0);
    for (int j = 0;; ++j) {
        sum += term;
        // nu + j + 1 = (2k + 2j - 1) / 2
        mpq_class next = term * q * (-2);
        next /= (j + 1) * mpq_class(2 * order.k + 2 * j - 1);
        const double nd = std::abs(next.get_d());
        if (nd < std::abs(term.get_d()) &&
            nd * std::abs(pref_d) < 1e-18 * (1.0 + std::abs(sum.get_d() * pref_d)))
            break;
        term = next;
        if (j > 500) throw std::runtime_error("bessel_half_series: no convergence");
    }
    return static_cast<double>(pref * static_cast<long double>(sum.get_d()));
}

double bessel_half(HalfOrder order, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("bessel_half: x must be positive");
    return x < order.nu() ? bessel_half_series(order, x) : bessel_half_recurrence(order, x);
}

double bessel_power_bound(HalfOrder order, double x) {
    const double gamma_nu1 =
        gamma_half_rational(order.k - 1).get_d() * std::sqrt(std::numbers::pi);
    return std::pow(0.5 * x, order.nu()) / gamma_nu1;
}

double bessel_decay_constant(HalfOrder order) {
    static std::map<int, double> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order.k);
    if (it != cache.end()) return it->second;
    double sup = 0.0;
    const int grid = 20000;
    const double lo = std::log(1.0), hi = std::log(1e4);
    for (int i = 0; i <= grid; ++i) {
        const double x = std::exp(lo + (hi - lo) * i / grid);
        sup = std::max(sup, std::sqrt(x) * std::abs(bessel_half(order, x)));
    }
    const double c = 1.1 * sup;
    cache.emplace(order.k, c);
    return c;
}

bool bessel_bound_check(HalfOrder order, double x) {
    if (!(x > 0.0)) return false;
    const double j = std::abs(bessel_half(order, x));
    if (j > bessel_power_bound(order, x) * (1.0 + 1e-12)) return false;
    if (x >= 1.0 && j > bessel_decay_constant(order) / std::sqrt(x)) return false;
    return true;
}

} // namespace jacsums
