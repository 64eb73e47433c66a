// Descent solvers for the Pell-type characterizations and the cubic surface.

#include "genfib/pell.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

namespace genfib {

namespace {

// Generous cap: a descent starting from x takes about log_phi(x) steps.
long long depth_cap(const Int& x) {
  auto bits = static_cast<long long>(mpz_sizeinbase(x.get_mpz_t(), 2));
  return 8 * bits + 16;
}

}  // namespace

std::optional<Int> is_square(const Int& v) {
  if (v < 0) throw std::domain_error("is_square needs v >= 0");
  if (mpz_perfect_square_p(v.get_mpz_t()) == 0) return std::nullopt;
  Int root;
  mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
  return root;
}

ClassifyResult classify_general_fib(const SeqParams& p, const Int& n, bool allow_even_k) {
  if (p.k <= 1) throw std::domain_error("membership classification needs k > 1");
  if (p.k % 2 == 0 && !allow_even_k)
    throw std::domain_error(
        "membership classification assumes k odd; pass the even-k override to explore");
  if (n < 1) throw std::domain_error("membership classification needs n >= 1");

  ClassifyResult res;
  res.verified_by_theorem = (p.k % 2 != 0);
  Int dn2 = p.dz * n * n;
  res.disc_plus = dn2 + 4;
  res.disc_minus = dn2 - 4;
  res.root_plus = is_square(res.disc_plus);
  res.root_minus = is_square(res.disc_minus);
  if (!res.root_plus && !res.root_minus) return res;

  res.member = true;
  res.companion = res.root_plus ? *res.root_plus : *res.root_minus;

  DescentTrace& tr = res.trace;
  tr.k = p.k;
  Int x = n;
  Int y = res.companion;
  long long cap = depth_cap(n);
  while (true) {
    Int rel = y * y - p.dz * x * x;
    int sgn;
    if (rel == 4)
      sgn = 4;
    else if (rel == -4)
      sgn = -4;
    else
      throw std::logic_error("descent lost the norm form y^2 - (k^2+4)x^2 = +-4");
    tr.steps.push_back({x, y, sgn});
    if (x == 1) {
      if (y != p.kz) throw std::logic_error("descent terminated off the base pair (1, k)");
      break;
    }
    if (static_cast<long long>(tr.steps.size()) > cap)
      throw std::logic_error("descent exceeded its depth bound");
    Int xn = y - p.kz * x;
    Int yn = p.dz * x - p.kz * y;
    if (mpz_odd_p(xn.get_mpz_t()) || mpz_odd_p(yn.get_mpz_t()))
      throw std::logic_error("descent step is not integral");
    xn /= 2;
    yn /= 2;
    if (yn < 0) yn = -yn;
    if (xn < 1 || xn >= x) throw std::logic_error("descent failed to decrease x");
    x = xn;
    y = yn;
  }
  tr.terminal_x = tr.steps.back().x;
  tr.terminal_y = tr.steps.back().y;
  auto m = static_cast<long long>(tr.steps.size());
  tr.index = m;
  res.index = m;
  if (fib(p, m) != n || lucas(p, m) != res.companion)
    throw std::logic_error("descent index does not regenerate the input");
  return res;
}

Pm1Result solve_pm1(const SeqParams& p, const Int& x, const Int& y) {
  if (x < 1 || y < 1) throw std::domain_error("curve descent needs x >= 1 and y >= 1");
  Pm1Result res;
  res.within_theorem = (p.k > 1);
  res.relation_value = y * y - p.kz * x * y - x * x;
  if (res.relation_value != 1 && res.relation_value != -1) return res;

  DescentTrace& tr = res.trace;
  tr.k = p.k;
  Int cx = x, cy = y;
  bool odd = (res.relation_value == -1);
  if (odd) {
    tr.steps.push_back({cx, cy, -1});
    Int swapped_y = cx + p.kz * cy;
    cx = cy;
    cy = swapped_y;
  }
  Int base_y = p.kz * p.kz + 1;
  long long cap = depth_cap(x + y);
  long long pairs = 0;
  while (true) {
    Int rel = cy * cy - p.kz * cx * cy - cx * cx;
    if (rel != 1) throw std::logic_error("descent lost the curve relation");
    tr.steps.push_back({cx, cy, 1});
    ++pairs;
    if (cx == p.kz && cy == base_y) break;
    if (pairs > cap) throw std::logic_error("descent exceeded its depth bound");
    Int nx = base_y * cx - p.kz * cy;
    Int ny = cy - p.kz * cx;
    if (nx < 1 || ny < 1 || nx >= cx) throw std::logic_error("descent failed to decrease x");
    cx = nx;
    cy = ny;
  }
  tr.terminal_x = tr.steps.back().x;
  tr.terminal_y = tr.steps.back().y;
  long long n = odd ? 2 * pairs - 1 : 2 * pairs;
  tr.index = n;
  if (fib(p, n) != x || fib(p, n + 1) != y)
    throw std::logic_error("descent index does not regenerate the input pair");
  res.member = true;
  res.solution = {x, y, n, odd ? -1 : 1};
  return res;
}

std::vector<PellSolution> brute_force_pm1(const SeqParams& p, long long x_bound) {
  if (x_bound > 1000000) throw std::domain_error("brute force bound exceeds 10^6");
  std::vector<PellSolution> out;
  if (x_bound < 1) return out;

  struct Hit {
    long long x;
    Int y;
    int sign;
  };
  auto scan_range = [&p](long long lo, long long hi) {
    std::vector<Hit> hits;
    for (long long x = lo; x <= hi; ++x) {
      Int xz = make_int(x);
      Int x2d = p.dz * xz * xz;
      for (int s : {-1, 1}) {
        auto root = is_square(Int(x2d + 4 * s));
        if (!root) continue;
        Int num = p.kz * xz + *root;
        if (mpz_odd_p(num.get_mpz_t()))
          throw std::logic_error("discriminant root has the wrong parity");
        Int y = num / 2;
        if (y < 1) continue;
        hits.push_back({x, y, s});
      }
    }
    return hits;
  };

  std::vector<Hit> hits;
  long long workers = std::max(1u, std::thread::hardware_concurrency());
  if (x_bound < 4096 || workers == 1) {
    hits = scan_range(1, x_bound);
  } else {
    workers = std::min(workers, x_bound);
    long long chunk = (x_bound + workers - 1) / workers;
    std::vector<std::future<std::vector<Hit>>> parts;
    for (long long lo = 1; lo <= x_bound; lo += chunk) {
      long long hi = std::min(x_bound, lo + chunk - 1);
      parts.push_back(std::async(std::launch::async, scan_range, lo, hi));
    }
    for (auto& part : parts) {
      auto chunk_hits = part.get();
      hits.insert(hits.end(), chunk_hits.begin(), chunk_hits.end());
    }
  }

  out.reserve(hits.size());
  for (const auto& h : hits) {
    auto solved = solve_pm1(p, make_int(h.x), h.y);
    if (!solved.member || solved.solution.sign != h.sign)
      throw std::logic_error("discriminant hit is not a curve solution");
    out.push_back(solved.solution);
  }
  return out;
}

std::vector<PellSolution> enumerate_pm1(const SeqParams& p, long long x_bound) {
  std::vector<PellSolution> out;
  if (x_bound < 1) return out;
  Int bound = make_int(x_bound);
  Int a = fib(p, 1), b = fib(p, 2);
  long long n = 1;
  while (a <= bound) {
    out.push_back({a, b, n, parity_sign(n)});
    Int c = p.kz * b + a;
    a = b;
    b = c;
    ++n;
  }
  if (x_bound <= 1000000) {
    auto oracle = brute_force_pm1(p, x_bound);
    bool same = oracle.size() == out.size();
    for (std::size_t i = 0; same && i < out.size(); ++i)
      same = oracle[i].x == out[i].x && oracle[i].y == out[i].y && oracle[i].n == out[i].n &&
             oracle[i].sign == out[i].sign;
    if (!same) throw std::logic_error("enumeration disagrees with the discriminant scan");
  }
  return out;
}

SurfaceReport carlitz_surface_search(long long k, long long bound) {
  if (k < 1) throw std::domain_error("surface search needs k >= 1");
  if (bound > 500) throw std::domain_error("surface scan bound exceeds 500");
  SurfaceReport rep;
  rep.k = k;
  rep.bound = bound;

  auto triple_map = [k, bound](long long s0, long long s1) {
    std::map<std::pair<long long, long long>, long long> next;
    long long a = s0, b = s1;
    while (true) {
      long long c = k * b + a;
      if (c > bound) break;
      if (a >= 1 && b >= 1) next[{a, b}] = c;
      a = b;
      b = c;
    }
    return next;
  };
  auto fib_next = triple_map(0, 1);
  auto lucas_next = triple_map(2, k);

  auto on_surface = [k](long long x, long long y, long long z) {
    return z * z * z - k * k * k * y * y * y - x * x * x == 3 * k * x * y * z;
  };

  bool all_points_verify = true;
  for (long long z = 2; z <= bound; ++z) {
    for (long long x = 1; x < z; ++x) {
      if ((z - x) % k != 0) continue;
      long long y = (z - x) / k;
      if (y < 1) continue;
      if (!on_surface(x, y, z)) {
        all_points_verify = false;
        continue;
      }
      SurfacePoint pt;
      pt.x = x;
      pt.y = y;
      pt.z = z;
      auto fit = fib_next.find({x, y});
      pt.consecutive_fib = (fit != fib_next.end() && fit->second == z);
      auto lit = lucas_next.find({x, y});
      pt.consecutive_lucas = (lit != lucas_next.end() && lit->second == z);
      pt.coprime = std::gcd(x, std::gcd(y, z)) == 1;
      if (pt.consecutive_fib || pt.consecutive_lucas) {
        ++rep.consecutive_count;
      } else {
        ++rep.other_count;
        if (pt.coprime) ++rep.coprime_other_count;
        if (!rep.witness) rep.witness = pt;
      }
      rep.points.push_back(pt);
    }
  }

  // Cross-check on a capped window: the full triple scan must find exactly
  // the z = x + ky points.
  bool brute_matches = true;
  long long cap = std::min<long long>(bound, 60);
  std::size_t found = 0;
  for (long long z = 2; z <= cap && brute_matches; ++z)
    for (long long x = 1; x < z && brute_matches; ++x)
      for (long long y = 1; k * y < z; ++y)
        if (on_surface(x, y, z)) {
          ++found;
          if (x + k * y != z) brute_matches = false;
        }
  std::size_t expected = 0;
  for (const auto& pt : rep.points)
    if (pt.z <= cap) ++expected;
  if (found != expected) brute_matches = false;

  rep.characterization_holds = all_points_verify && brute_matches;
  rep.suspicion_refuted = rep.other_count > 0;
  return rep;
}

ScanReport square_discriminant_scan(const SeqParams& p, long long bound, bool allow_even_k) {
  if (p.k <= 1) throw std::domain_error("membership scan needs k > 1");
  if (p.k % 2 == 0 && !allow_even_k)
    throw std::domain_error("membership scan assumes k odd; pass the even-k override to explore");
  if (bound < 1) throw std::domain_error("membership scan needs bound >= 1");

  ScanReport rep;
  rep.k = p.k;
  rep.bound = bound;
  Int n2d;
  for (long long n = 1; n <= bound; ++n) {
    Int nz = make_int(n);
    n2d = p.dz * nz * nz;
    Int plus = n2d + 4;
    Int minus = n2d - 4;
    if (mpz_perfect_square_p(plus.get_mpz_t()) == 0 &&
        mpz_perfect_square_p(minus.get_mpz_t()) == 0)
      continue;
    auto cls = classify_general_fib(p, nz, allow_even_k);
    if (!cls.member) throw std::logic_error("square discriminant without a successful descent");
    rep.members.push_back(nz);
    rep.indices.push_back(cls.index);
    rep.companions.push_back(cls.companion);
  }

  std::vector<Int> expected;
  Int a = fib(p, 1), b = fib(p, 2);
  Int bz = make_int(bound);
  while (a <= bz) {
    expected.push_back(a);
    Int c = p.kz * b + a;
    a = b;
    b = c;
  }
  rep.matches_sequence = (rep.members == expected);
  return rep;
}

}  // namespace genfib
