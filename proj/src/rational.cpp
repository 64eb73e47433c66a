#include "genfib/rational.hpp"

#include <stdexcept>

namespace genfib {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Int to_int(const Rat& r) {
  if (!is_integer(r)) throw std::domain_error("rational " + str(r) + " is not an integer");
  return rat_num(r);
}

std::string str(const Int& v) { return v.get_str(); }

std::string str(const Rat& v) {
  if (is_integer(v)) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Int ipow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int ipow10(long exp) {
  if (exp < 0) throw std::domain_error("ipow10 with negative exponent");
  return ipow(10, static_cast<unsigned long>(exp));
}

Rat rat_pow(const Rat& base, long long exp) {
  if (exp == 0) return Rat(1);
  if (base == 0 && exp < 0) throw std::domain_error("zero to a negative power");
  unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  Rat r = make_rat(ipow(rat_num(base), e), ipow(rat_den(base), e));
  if (exp < 0) r = 1 / r;
  return r;
}

Int binom(unsigned long n, unsigned long r) {
  Int v;
  mpz_bin_uiui(v.get_mpz_t(), n, r);
  return v;
}

Int isqrt_floor(const Int& v) {
  if (v < 0) throw std::domain_error("square root of a negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

namespace {

// q has exactly `digits` digits and the value is q * 10^(e - digits + 1).
std::string place_digits(bool negative, const Int& q, long e, int digits) {
  std::string qs = q.get_str();
  std::string out;
  if (e >= digits - 1) {
    out = qs + std::string(static_cast<size_t>(e - digits + 1), '0');
  } else if (e >= 0) {
    out = qs.substr(0, static_cast<size_t>(e + 1)) + "." + qs.substr(static_cast<size_t>(e + 1));
  } else {
    out = "0." + std::string(static_cast<size_t>(-e - 1), '0') + qs;
  }
  return negative ? "-" + out : out;
}

}  // namespace

std::string to_decimal(const Rat& v, int digits) {
  if (digits < 1) throw std::domain_error("decimal rendering needs at least one digit");
  if (v == 0) return "0";
  bool negative = v < 0;
  Int n = abs(rat_num(v));
  Int d = rat_den(v);
  long e_est = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10)) -
               static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 10));
  for (long e = e_est + 2; e >= e_est - 2; --e) {
    long s = digits - 1 - e;
    Int num = n, den = d;
    if (s >= 0) num *= ipow10(s); else den *= ipow10(-s);
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (q < ipow10(digits - 1) || q >= ipow10(digits)) continue;
    int c = cmp(Int(2 * r), den);
    if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
    long e_out = e;
    if (q == ipow10(digits)) {
      q /= 10;
      e_out += 1;
    }
    return place_digits(negative, q, e_out, digits);
  }
  throw std::logic_error("decimal rendering failed to locate the leading digit");
}

}  // namespace genfib
