#include "genfib/quadratic.hpp"

#include <stdexcept>
#include <string>

namespace genfib {

namespace {

void validate_field(long long d) {
  if (d < 2) throw std::domain_error("quadratic field needs D >= 2, got " + std::to_string(d));
  Int root = isqrt_floor(make_int(d));
  if (root * root == make_int(d))
    throw std::domain_error("quadratic field needs a non-square D, got " + std::to_string(d));
}

}  // namespace

QuadRat::QuadRat(Rat a, Rat b, long long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  validate_field(d_);
}

void QuadRat::require_same_field(const QuadRat& o) const {
  if (d_ != o.d_)
    throw std::domain_error("mismatched quadratic fields: D=" + std::to_string(d_) +
                            " vs D=" + std::to_string(o.d_));
}

Rat QuadRat::norm() const { return a_ * a_ - Rat(make_int(d_)) * b_ * b_; }

QuadRat QuadRat::conjugate() const { return QuadRat(a_, -b_, d_); }

QuadRat QuadRat::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in quadratic field");
  Rat n = norm();  // nonzero: D is not a square
  return QuadRat(a_ / n, -b_ / n, d_);
}

QuadRat QuadRat::pow(long long n) const {
  if (n == 0) return QuadRat(Rat(1), Rat(0), d_);
  if (n < 0) {
    if (is_zero()) throw std::domain_error("zero to a negative power");
    return inverse().pow(-n);
  }
  QuadRat base = *this;
  QuadRat acc(Rat(1), Rat(0), d_);
  unsigned long long e = static_cast<unsigned long long>(n);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

int QuadRat::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite rational signs: compare a^2 against D b^2; the larger magnitude wins.
  int c = cmp(a_ * a_, Rat(make_int(d_)) * b_ * b_);
  if (c == 0) throw std::logic_error("non-square D produced a vanishing norm");
  return c > 0 ? sa : sb;
}

QuadRat QuadRat::operator-() const { return QuadRat(-a_, -b_, d_); }

QuadRat QuadRat::operator+(const QuadRat& o) const {
  require_same_field(o);
  return QuadRat(a_ + o.a_, b_ + o.b_, d_);
}

QuadRat QuadRat::operator-(const QuadRat& o) const {
  require_same_field(o);
  return QuadRat(a_ - o.a_, b_ - o.b_, d_);
}

QuadRat QuadRat::operator*(const QuadRat& o) const {
  require_same_field(o);
  return QuadRat(a_ * o.a_ + Rat(make_int(d_)) * b_ * o.b_, a_ * o.b_ + b_ * o.a_, d_);
}

QuadRat QuadRat::operator/(const QuadRat& o) const {
  require_same_field(o);
  return *this * o.inverse();
}

QuadRat QuadRat::operator*(const Rat& s) const { return QuadRat(a_ * s, b_ * s, d_); }

QuadRat QuadRat::operator/(const Rat& s) const {
  if (s == 0) throw std::domain_error("division by zero in quadratic field");
  return QuadRat(a_ / s, b_ / s, d_);
}

bool QuadRat::operator==(const QuadRat& o) const {
  require_same_field(o);
  return a_ == o.a_ && b_ == o.b_;
}

std::string QuadRat::str() const {
  if (b_ == 0) return genfib::str(a_);
  std::string out;
  if (a_ != 0) out += genfib::str(a_) + (sgn(b_) < 0 ? " - " : " + ");
  else if (sgn(b_) < 0) out += "-";
  Rat ab = abs(b_);
  if (ab != 1) out += genfib::str(ab) + "*";
  out += "sqrt(" + std::to_string(d_) + ")";
  return out;
}

std::string QuadRat::to_decimal(int digits) const {
  if (is_zero()) return "0";
  if (b_ == 0) return genfib::to_decimal(a_, digits);
  int sg = sign();
  QuadRat x = sg < 0 ? -*this : *this;
  // |x| = (A + B*sqrt(D))/C with integer A, B and C > 0.
  Int da = rat_den(x.a_), db = rat_den(x.b_);
  Int c = da / gcd(da, db) * db;
  Int a = rat_num(x.a_) * (c / da);
  Int b = rat_num(x.b_) * (c / db);
  // Bracket sqrt(D) between consecutive scaled integers and tighten until
  // both interval endpoints round to the same decimal string. Termination:
  // the value is irrational, so it is never exactly at a rounding boundary.
  for (long guard = digits + 24; guard <= digits + 6000; guard *= 2) {
    Int scale = ipow10(guard);
    Int root = isqrt_floor(make_int(d_) * scale * scale);
    Int low_num, high_num;
    if (b >= 0) {
      low_num = a * scale + b * root;
      high_num = low_num + b;
    } else {
      low_num = a * scale + b * (root + 1);
      high_num = a * scale + b * root;
    }
    if (low_num <= 0) continue;
    std::string low = genfib::to_decimal(make_rat(low_num, c * scale), digits);
    std::string high = genfib::to_decimal(make_rat(high_num, c * scale), digits);
    if (low == high) return sg < 0 ? "-" + low : low;
  }
  throw std::logic_error("decimal rendering of quadratic value did not converge");
}

FieldConstants field_constants(long long k) {
  if (k < 1) throw std::domain_error("sequence parameter k must be a positive integer");
  long long d = k * k + 4;
  QuadRat unit(make_rat(make_int(k), 2), make_rat(1, 2), d);
  QuadRat unit_inv(make_rat(make_int(-k), 2), make_rat(1, 2), d);
  QuadRat q = -(unit_inv * unit_inv);
  return FieldConstants{k, d, unit, unit_inv, q};
}

}  // namespace genfib
