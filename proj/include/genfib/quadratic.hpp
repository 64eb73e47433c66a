#pragma once
// Exact elements a + b*sqrt(D) of a real quadratic field Q(sqrt(D)).
//
// D is a positive non-square integer carried by every value and checked on
// every binary operation, so elements of different fields never mix
// silently. For the sequence work D = k*k + 4 and the fundamental unit is
// e^theta = (k + sqrt(D))/2 with norm -1.

#include "genfib/rational.hpp"

namespace genfib {

class QuadRat {
 public:
  QuadRat(Rat a, Rat b, long long d);  // validates that d is a non-square >= 2
  static QuadRat rational(const Rat& a, long long d) { return QuadRat(a, Rat(0), d); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  long long d() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  Rat norm() const;  // a^2 - D b^2
  QuadRat conjugate() const;
  QuadRat inverse() const;  // throws std::domain_error on zero
  QuadRat pow(long long n) const;
  int sign() const;  // exact: -1, 0, +1

  QuadRat operator-() const;
  QuadRat operator+(const QuadRat& o) const;
  QuadRat operator-(const QuadRat& o) const;
  QuadRat operator*(const QuadRat& o) const;
  QuadRat operator/(const QuadRat& o) const;
  QuadRat operator*(const Rat& s) const;
  QuadRat operator/(const Rat& s) const;
  bool operator==(const QuadRat& o) const;
  bool operator!=(const QuadRat& o) const { return !(*this == o); }
  bool operator<(const QuadRat& o) const { return (*this - o).sign() < 0; }

  // Correctly rounded `digits` significant decimal digits of the real value.
  std::string to_decimal(int digits) const;
  std::string str() const;  // "3/2 + 1/2*sqrt(13)"

 private:
  void require_same_field(const QuadRat& o) const;
  Rat a_, b_;
  long long d_;
};

struct FieldConstants {
  long long k;
  long long d;        // k*k + 4
  QuadRat unit;       // e^theta = (k + sqrt(D))/2, root of x^2 = k x + 1
  QuadRat unit_inv;   // e^{-theta} = (-k + sqrt(D))/2
  QuadRat q;          // -e^{-2 theta}, the base of the q-expansions
};

FieldConstants field_constants(long long k);

}  // namespace genfib
