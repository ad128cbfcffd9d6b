#include "swapdist/rational.hpp"

namespace swapdist {

BigInt factorial_big(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

std::string rational_str(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double rational_double(const Rational& q) {
    return q.convert_to<double>();
}

}  // namespace swapdist
