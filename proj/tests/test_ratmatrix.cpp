#include "genfib/ratmatrix.hpp"

#include "genfib/rational.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace genfib;

namespace {

// Cofactor expansion along the first row, used as an independent determinant
// oracle for small matrices.
Rat naive_det(const RatMatrix& m) {
  std::size_t n = m.rows();
  if (n == 1) return m.at(0, 0);
  Rat total(0);
  for (std::size_t c = 0; c < n; ++c) {
    RatMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t col = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor.at(i - 1, col++) = m.at(i, j);
      }
    }
    Rat term = m.at(0, c) * naive_det(minor);
    if (c % 2 == 1) term = -term;
    total += term;
  }
  return total;
}

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long long> num(-9, 9);
  std::uniform_int_distribution<long long> den(1, 7);
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = make_rat(make_int(num(rng)), make_int(den(rng)));
  return m;
}

}  // namespace

TEST_CASE("bareiss determinant matches cofactor expansion") {
  std::mt19937_64 rng(0xd15ea5eULL);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 12; ++trial) {
      RatMatrix m = random_matrix(rng, n);
      CHECK(bareiss_det(m) == naive_det(m));
    }
  CHECK(bareiss_det(RatMatrix::identity(6)) == 1);
}

TEST_CASE("exact inverse of a pinned 2x2") {
  RatMatrix m(2, 2);
  m.at(0, 0) = Rat(1);
  m.at(0, 1) = Rat(1);
  m.at(1, 0) = Rat(1);
  m.at(1, 1) = make_rat(make_int(1), make_int(2));
  RatMatrix inv = exact_inverse(m);
  CHECK(inv.at(0, 0) == -1);
  CHECK(inv.at(0, 1) == 2);
  CHECK(inv.at(1, 0) == 2);
  CHECK(inv.at(1, 1) == -2);
  CHECK(m * inv == RatMatrix::identity(2));
}

TEST_CASE("inverse round-trips on random nonsingular matrices") {
  std::mt19937_64 rng(0xabcdef12ULL);
  int done = 0;
  while (done < 10) {
    RatMatrix m = random_matrix(rng, 4);
    if (bareiss_det(m) == 0) continue;
    RatMatrix inv = exact_inverse(m);
    CHECK(m * inv == RatMatrix::identity(4));
    CHECK(inv * m == RatMatrix::identity(4));
    ++done;
  }
}

TEST_CASE("singular matrices are rejected") {
  RatMatrix m(2, 2);
  m.at(0, 0) = Rat(1);
  m.at(0, 1) = Rat(2);
  m.at(1, 0) = Rat(2);
  m.at(1, 1) = Rat(4);
  CHECK(bareiss_det(m) == 0);
  CHECK_THROWS_AS(exact_inverse(m), std::domain_error);
}

TEST_CASE("structure predicates") {
  RatMatrix m(2, 2);
  m.at(0, 0) = Rat(3);
  m.at(0, 1) = make_rat(make_int(1), make_int(2));
  m.at(1, 0) = make_rat(make_int(1), make_int(2));
  m.at(1, 1) = Rat(5);
  CHECK(m.is_symmetric());
  CHECK_FALSE(m.all_integer());
  m.at(1, 0) = Rat(0);
  CHECK_FALSE(m.is_symmetric());
  CHECK(RatMatrix::identity(3).all_integer());
  CHECK(RatMatrix::identity(3).is_symmetric());
}
