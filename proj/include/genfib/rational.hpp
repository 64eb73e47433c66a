#pragma once
// Arbitrary-precision integers and canonical rationals used throughout the
// library, a thin layer over GMP's C++ classes plus the exact decimal
// rendering shared by the report writers.

#include <gmpxx.h>

#include <string>

namespace genfib {

using Int = mpz_class;
using Rat = mpq_class;

// num/den reduced, denominator positive. Throws std::domain_error on den == 0.
Rat make_rat(const Int& num, const Int& den);

inline Int rat_num(const Rat& r) { return Int(r.get_num()); }
inline Int rat_den(const Rat& r) { return Int(r.get_den()); }
inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Throws std::domain_error when r is not an integer.
Int to_int(const Rat& r);

std::string str(const Int& v);
std::string str(const Rat& v);  // "7", "-1/360"

// gmpxx has no long long constructor; bridge through long (64-bit here).
inline Int make_int(long long v) { return Int(static_cast<long>(v)); }

Int ipow(const Int& base, unsigned long exp);
Int ipow10(long exp);  // exp >= 0
Rat rat_pow(const Rat& base, long long exp);  // throws on 0^negative
Int binom(unsigned long n, unsigned long r);
inline int parity_sign(long long e) { return e % 2 == 0 ? 1 : -1; }
inline Int sign_pow(long long e) { return Int(parity_sign(e)); }
Int isqrt_floor(const Int& v);  // floor(sqrt(v)), v >= 0

// Decimal expansion of an exact rational to `digits` significant digits,
// rounding half to even. Plain positional notation, no exponent part.
std::string to_decimal(const Rat& v, int digits);

}  // namespace genfib
