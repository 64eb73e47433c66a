#include "genfib/rational.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace genfib;

TEST_CASE("make_rat reduces and normalizes the sign") {
  Rat r = make_rat(make_int(2), make_int(-4));
  CHECK(str(r) == "-1/2");
  CHECK(rat_num(r) == -1);
  CHECK(rat_den(r) == 2);
  CHECK(str(make_rat(make_int(-6), make_int(-4))) == "3/2");
  CHECK_THROWS_AS(make_rat(make_int(1), make_int(0)), std::domain_error);
}

TEST_CASE("string rendering uses num/den form") {
  CHECK(str(make_int(7)) == "7");
  CHECK(str(make_int(-360)) == "-360");
  CHECK(str(Rat(make_int(7))) == "7");
  CHECK(str(make_rat(make_int(-1), make_int(360))) == "-1/360");
}

TEST_CASE("to_int accepts integers only") {
  CHECK(to_int(Rat(make_int(42))) == 42);
  CHECK_THROWS_AS(to_int(make_rat(make_int(1), make_int(2))), std::domain_error);
}

TEST_CASE("integer powers and binomials") {
  CHECK(ipow(make_int(3), 5) == 243);
  CHECK(ipow(make_int(-2), 3) == -8);
  CHECK(ipow10(0) == 1);
  CHECK(ipow10(6) == 1000000);
  CHECK(binom(10, 3) == 120);
  CHECK(binom(10, 0) == 1);
  for (unsigned long n = 1; n <= 12; ++n)
    for (unsigned long r = 1; r <= n; ++r)
      CHECK(binom(n, r) == binom(n - 1, r - 1) + binom(n - 1, r));
}

TEST_CASE("rational powers include negative exponents") {
  Rat half = make_rat(make_int(1), make_int(2));
  CHECK(rat_pow(half, 3) == make_rat(make_int(1), make_int(8)));
  CHECK(rat_pow(half, -2) == Rat(make_int(4)));
  CHECK(rat_pow(Rat(make_int(5)), 0) == 1);
  CHECK_THROWS_AS(rat_pow(Rat(0), -1), std::domain_error);
}

TEST_CASE("parity helpers") {
  CHECK(parity_sign(0) == 1);
  CHECK(parity_sign(1) == -1);
  CHECK(parity_sign(-3) == -1);
  CHECK(parity_sign(-4) == 1);
  CHECK(sign_pow(7) == -1);
  CHECK(sign_pow(-2) == 1);
}

TEST_CASE("isqrt_floor brackets the value") {
  CHECK(isqrt_floor(make_int(0)) == 0);
  CHECK(isqrt_floor(make_int(15)) == 3);
  CHECK(isqrt_floor(make_int(16)) == 4);
  CHECK_THROWS_AS(isqrt_floor(make_int(-1)), std::domain_error);
  std::mt19937_64 rng(0xfeedbeefULL);
  std::uniform_int_distribution<long long> dist(0, 4000000000000000000LL);
  for (int trial = 0; trial < 200; ++trial) {
    Int v = make_int(dist(rng));
    Int r = isqrt_floor(v);
    CHECK(r * r <= v);
    CHECK((r + 1) * (r + 1) > v);
  }
}

TEST_CASE("decimal rendering keeps significant digits") {
  CHECK(to_decimal(make_rat(make_int(1), make_int(3)), 5) == "0.33333");
  CHECK(to_decimal(make_rat(make_int(1), make_int(4)), 3) == "0.250");
  CHECK(to_decimal(make_rat(make_int(2), make_int(3)), 4) == "0.6667");
  CHECK(to_decimal(Rat(make_int(7)), 3) == "7.00");
  CHECK(to_decimal(make_rat(make_int(-1), make_int(8)), 3) == "-0.125");
  CHECK(to_decimal(Rat(0), 5) == "0");
  CHECK_THROWS_AS(to_decimal(Rat(1), 0), std::domain_error);
}
