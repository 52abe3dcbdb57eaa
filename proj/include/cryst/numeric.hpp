#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace cryst {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// floor division, valid for negative numerators
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

inline bool is_integral(const Rat& q) { return den(q) == 1; }

// fractional part in [0, 1)
inline Rat mod_one(const Rat& q) { return q - Rat(floor_rat(q)); }

// floor(sqrt(a)) for a >= 0
inline Int isqrt(const Int& a) {
    if (a < 0) throw std::domain_error("isqrt of negative value");
    return boost::multiprecision::sqrt(a);
}

std::string rat_to_string(const Rat& q);
Rat parse_rational(const std::string& s);

}  // namespace cryst
