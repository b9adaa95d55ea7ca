#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace circsys {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Least non-negative residue. Works for negative a; q must be positive.
inline BigInt mod_floor(const BigInt& a, const BigInt& q) {
    if (q <= 0) throw std::invalid_argument("mod_floor: modulus must be positive");
    BigInt r = a % q;
    if (r < 0) r += q;
    return r;
}

// Multiplicative inverse of a mod q via extended Euclid.
// Throws if gcd(a, q) != 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& q) {
    if (q <= 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
    BigInt old_r = mod_floor(a, q), r = q;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt quotient = old_r / r;
        BigInt tmp = old_r - quotient * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quotient * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::domain_error("mod_inverse: arguments are not coprime");
    return mod_floor(old_s, q);
}

inline std::string rational_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational_from_string: zero denominator");
    return Rational(num, den);
}

}  // namespace circsys
