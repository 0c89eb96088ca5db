#include "jacsums/rationals.hpp"

#include <stdexcept>

namespace jacsums {

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    if (s.find('.') != std::string::npos)
        throw std::invalid_argument("parse_rational: floats rejected, use p/q");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_rational: malformed rational '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator");
    q.canonicalize();
    return q;
}

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class gamma_half_rational(int j) {
    if (j < 0) throw std::invalid_argument("gamma_half_rational: j must be >= 0");
    mpq_class r(1);
    for (int i = 1; i <= j; ++i) r *= make_rational(2 * i - 1, 2);
    return r;
}

} // namespace jacsums
