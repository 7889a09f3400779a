#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace predim {

using Rational = boost::rational<std::int64_t>;

/// Always `p/q` with q > 0 and gcd(p, q) = 1; integers print as `n/1`.
std::string to_string(const Rational& r);

/// Accepts `p/q` or a bare integer. Throws DomainError on malformed input.
Rational parse_rational(std::string_view text);

// Mixed equality with integers; boost's own overloads recurse under C++20.
inline bool operator==(const Rational& a, int b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const Rational& a, long b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(int a, const Rational& b) { return b == a; }
inline bool operator==(long a, const Rational& b) { return b == a; }
inline bool operator!=(const Rational& a, int b) { return !(a == b); }
inline bool operator!=(const Rational& a, long b) { return !(a == b); }
inline bool operator!=(int a, const Rational& b) { return !(b == a); }
inline bool operator!=(long a, const Rational& b) { return !(b == a); }

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

}  // namespace predim
