#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace rtlab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// 2^i as an exact rational, i may be negative.
inline Rat pow2(long i) {
    BigInt one = 1;
    if (i >= 0) return Rat(one << i);
    return Rat(one, one << (-i));
}

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

inline BigInt num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// floor(r) for exact rationals.
inline BigInt rat_floor(const Rat& r) {
    BigInt n = num(r), d = den(r);  // d > 0 canonical
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

inline BigInt rat_ceil(const Rat& r) { return -rat_floor(-r); }

inline std::string rat_str(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

}  // namespace rtlab
