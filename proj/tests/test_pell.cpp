#include "genfib/pell.hpp"

#include "genfib/rational.hpp"
#include "genfib/sequences.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

using namespace genfib;

TEST_CASE("perfect square detection") {
  CHECK(is_square(make_int(0)) == Int(0));
  CHECK(is_square(make_int(144)) == Int(12));
  CHECK_FALSE(is_square(make_int(143)).has_value());
  CHECK_FALSE(is_square(make_int(2)).has_value());
  CHECK_THROWS_AS(is_square(make_int(-4)), std::domain_error);
}

TEST_CASE("membership classification descends to the base pair") {
  SeqParams p(3);
  ClassifyResult r = classify_general_fib(p, make_int(33));
  CHECK(r.member);
  CHECK(r.index == 4);
  CHECK(r.companion == 119);
  REQUIRE(r.trace.steps.size() == 4);
  long xs[] = {33, 10, 3, 1};
  long ys[] = {119, 36, 11, 3};
  int signs[] = {4, -4, 4, -4};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r.trace.steps[i].x == xs[i]);
    CHECK(r.trace.steps[i].y == ys[i]);
    CHECK(r.trace.steps[i].sign == signs[i]);
  }
  CHECK(r.trace.terminal_x == 1);
  CHECK(r.trace.terminal_y == 3);
  CHECK(r.verified_by_theorem);

  ClassifyResult one = classify_general_fib(p, make_int(1));
  CHECK(one.member);
  CHECK(one.index == 1);
  CHECK(one.companion == 3);

  ClassifyResult miss = classify_general_fib(p, make_int(2));
  CHECK_FALSE(miss.member);
  CHECK(miss.disc_plus == 56);
  CHECK(miss.disc_minus == 48);
}

TEST_CASE("classification guards") {
  CHECK_THROWS_AS(classify_general_fib(SeqParams(1), make_int(5)), std::domain_error);
  CHECK_THROWS_AS(classify_general_fib(SeqParams(2), make_int(2)), std::domain_error);
  CHECK_THROWS_AS(classify_general_fib(SeqParams(3), make_int(0)), std::domain_error);
}

TEST_CASE("even k is admitted only with the override") {
  SeqParams p(2);
  ClassifyResult r = classify_general_fib(p, make_int(2), true);
  CHECK(r.member);
  CHECK(r.index == 2);
  CHECK(r.companion == 6);
  CHECK_FALSE(r.verified_by_theorem);
}

TEST_CASE("round trip over members and rejection of non-members") {
  for (long long k : {3LL, 5LL, 7LL}) {
    SeqParams p(k);
    std::set<Int> members;
    for (long long m = 1; m <= 25; ++m) members.insert(fib(p, m));
    for (long long m = 1; m <= 25; ++m) {
      ClassifyResult r = classify_general_fib(p, fib(p, m));
      CHECK(r.member);
      CHECK(r.index == m);
      CHECK(r.companion == lucas(p, m));
    }
    std::mt19937_64 rng(0xc1a551f7ULL + static_cast<unsigned long long>(k));
    Int top = fib(p, 25);
    std::uniform_int_distribution<long long> lo(0, 1LL << 62);
    int checked = 0;
    while (checked < 200) {
      Int v = (Int(static_cast<long>(lo(rng))) * Int(static_cast<long>(lo(rng)))) % (top - 1) + 1;
      if (members.count(v)) continue;
      ClassifyResult r = classify_general_fib(p, v);
      CHECK_FALSE(r.member);
      ++checked;
    }
  }
}

TEST_CASE("curve solutions are exactly the consecutive pairs") {
  SeqParams p2(2);
  Pm1Result s = solve_pm1(p2, make_int(5), make_int(12));
  CHECK(s.member);
  CHECK(s.solution.n == 3);
  CHECK(s.solution.sign == -1);

  Pm1Result t = solve_pm1(p2, make_int(2), make_int(5));
  CHECK(t.member);
  CHECK(t.solution.n == 2);
  CHECK(t.solution.sign == 1);
  CHECK(t.within_theorem);

  SeqParams p1(1);
  Pm1Result u = solve_pm1(p1, make_int(1), make_int(1));
  CHECK(u.member);
  CHECK(u.solution.n == 1);
  CHECK_FALSE(u.within_theorem);

  Pm1Result miss = solve_pm1(p1, make_int(2), make_int(4));
  CHECK_FALSE(miss.member);
  CHECK(miss.relation_value == 4);
  CHECK_THROWS_AS(solve_pm1(p1, make_int(0), make_int(1)), std::domain_error);
}

TEST_CASE("enumeration matches the discriminant scan") {
  for (long long k = 1; k <= 5; ++k) {
    SeqParams p(k);
    auto fast = enumerate_pm1(p, 100000);
    auto brute = brute_force_pm1(p, 100000);
    REQUIRE(fast.size() == brute.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i].x == brute[i].x);
      CHECK(fast[i].y == brute[i].y);
      CHECK(fast[i].n == brute[i].n);
      CHECK(fast[i].sign == brute[i].sign);
    }
    for (const auto& sol : fast) {
      Pm1Result back = solve_pm1(p, sol.x, sol.y);
      CHECK(back.member);
      CHECK(back.solution.n == sol.n);
      CHECK(back.solution.sign == sol.sign);
    }
  }
  SeqParams p1(1);
  CHECK(enumerate_pm1(p1, 100000).size() == 25);
  CHECK(enumerate_pm1(SeqParams(2), 100000).size() == 14);
  CHECK(enumerate_pm1(p1, 0).empty());
  CHECK(brute_force_pm1(p1, 0).empty());
  CHECK_THROWS_AS(brute_force_pm1(p1, 2000000), std::domain_error);
}

TEST_CASE("surface points decompose along z = x + k y") {
  SurfaceReport rep = carlitz_surface_search(1, 50);
  CHECK(rep.points.size() == 1225);  // every (x, y) with x + y <= 50
  CHECK(rep.characterization_holds);
  CHECK(rep.suspicion_refuted);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->x == 2);
  CHECK(rep.witness->y == 2);
  CHECK(rep.witness->z == 4);
  CHECK(rep.consecutive_count == 14);
  CHECK(rep.other_count == 1211);
  bool has_coprime_example = false;
  for (const auto& pt : rep.points)
    if (pt.x == 1 && pt.y == 4 && pt.z == 5) {
      CHECK(pt.coprime);
      CHECK_FALSE(pt.consecutive_fib);
      CHECK_FALSE(pt.consecutive_lucas);
      has_coprime_example = true;
    }
  CHECK(has_coprime_example);
  CHECK(rep.coprime_other_count > 0);

  SurfaceReport rep4 = carlitz_surface_search(4, 50);
  long long expected = 0;
  for (long long y = 1; 4 * y + 1 <= 50; ++y) expected += 50 - 4 * y;
  CHECK(static_cast<long long>(rep4.points.size()) == expected);
  CHECK(rep4.characterization_holds);

  CHECK_THROWS_AS(carlitz_surface_search(0, 50), std::domain_error);
  CHECK_THROWS_AS(carlitz_surface_search(1, 501), std::domain_error);
}

TEST_CASE("square discriminant scan regenerates the sequence") {
  SeqParams p3(3);
  ScanReport rep = square_discriminant_scan(p3, 1000000);
  std::vector<long> expected = {1,    3,     10,    33,     109,    360,
                                1189, 3927,  12970, 42837,  141481, 467280};
  REQUIRE(rep.members.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(rep.members[i] == expected[i]);
    CHECK(rep.indices[i] == static_cast<long long>(i) + 1);
    CHECK(rep.companions[i] == lucas(p3, static_cast<long long>(i) + 1));
  }
  CHECK(rep.matches_sequence);

  SeqParams p5(5);
  ScanReport rep5 = square_discriminant_scan(p5, 10000);
  std::vector<long> expected5 = {1, 5, 26, 135, 701, 3640};
  REQUIRE(rep5.members.size() == expected5.size());
  for (std::size_t i = 0; i < expected5.size(); ++i) CHECK(rep5.members[i] == expected5[i]);
  CHECK(rep5.matches_sequence);
}
