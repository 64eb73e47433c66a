#pragma once
// Descent solvers for the Pell-type characterizations of the sequences:
// membership of n via the squareness of (k^2+4)n^2 +- 4, the curve
// y^2 - kxy - x^2 = +-1 whose positive solutions are consecutive pairs
// (F(n), F(n+1)), and the cubic surface z^3 - k^3 y^3 - x^3 = 3kxyz.

#include "genfib/sequences.hpp"

#include <optional>
#include <vector>

namespace genfib {

// Exact integer square root test. Throws std::domain_error for v < 0.
std::optional<Int> is_square(const Int& v);

struct DescentStep {
  Int x, y;
  int sign;  // value of the preserved Pell relation at this pair: +-4 or +-1
};

struct DescentTrace {
  long long k = 0;
  std::vector<DescentStep> steps;  // input pair first, base pair last
  Int terminal_x, terminal_y;
  std::optional<long long> index;  // recovered sequence index
};

struct ClassifyResult {
  bool member = false;
  long long index = 0;  // m with F(m) = n, valid when member
  Int companion;        // L(m), valid when member
  DescentTrace trace;
  bool verified_by_theorem = false;  // false when the even-k override was used
  Int disc_plus, disc_minus;         // (k^2+4) n^2 +- 4, the proof of failure
  std::optional<Int> root_plus, root_minus;
};

// Tests whether n is some F(m) by squareness of (k^2+4)n^2 +- 4 and, on a
// hit, recovers m by the descent x' = (y - kx)/2, y' = |ky - (k^2+4)x|/2
// down to the base pair (1, k). The classification theorem assumes k odd and
// k > 1; allow_even_k admits even k with verified_by_theorem = false.
// Throws std::domain_error for k <= 1, for even k without the override, and
// for n < 1; throws std::logic_error if a descent invariant breaks.
ClassifyResult classify_general_fib(const SeqParams& p, const Int& n, bool allow_even_k = false);

struct PellSolution {
  Int x, y;       // (F(n), F(n+1))
  long long n;    // index
  int sign;       // y^2 - kxy - x^2 = sign = (-1)^n
};

struct Pm1Result {
  bool member = false;
  PellSolution solution;  // valid when member
  DescentTrace trace;
  Int relation_value;  // y^2 - kxy - x^2 as given
  bool within_theorem = true;  // the k > 1 hypothesis of the index theorem
};

// Recovers the index of a solution of y^2 - kxy - x^2 = +-1 by descent:
// the +1 case steps (x, y) -> ((k^2+1)x - ky, y - kx) down to (k, k^2+1)
// giving an even index, the -1 case first swaps (x, y) -> (y, x + ky) and
// lands one lower. Throws std::domain_error for x < 1 or y < 1.
Pm1Result solve_pm1(const SeqParams& p, const Int& x, const Int& y);

// All solutions with x <= x_bound in index order, signs alternating
// (-1)^n. Cross-checked against brute_force_pm1 whenever the bound is
// within the brute-force range; a disagreement throws std::logic_error.
std::vector<PellSolution> enumerate_pm1(const SeqParams& p, long long x_bound);

// Discriminant-scan oracle: for each x <= x_bound solves the curve as a
// quadratic in y. Throws std::domain_error when x_bound exceeds 10^6.
std::vector<PellSolution> brute_force_pm1(const SeqParams& p, long long x_bound);

struct SurfacePoint {
  long long x, y, z;
  bool consecutive_fib;    // (x, y, z) = (F(n-1), F(n), F(n+1)) for some n >= 1
  bool consecutive_lucas;  // same with L
  bool coprime;            // gcd(x, y, z) == 1
};

struct SurfaceReport {
  long long k = 0, bound = 0;
  std::vector<SurfacePoint> points;  // all surface points with x, y >= 1, z <= bound
  long long consecutive_count = 0;
  long long other_count = 0;
  long long coprime_other_count = 0;
  bool characterization_holds = false;  // every point satisfies z = x + ky and vice versa
  bool suspicion_refuted = false;       // a non-consecutive point exists
  std::optional<SurfacePoint> witness;  // first non-consecutive point
};

// Enumerates the positive points of z^3 - k^3 y^3 - x^3 = 3kxyz with
// z <= bound. By the factorization of a^3 + b^3 + c^3 - 3abc the points are
// exactly z = x + ky, which the scan re-verifies on the surface equation.
// Throws std::domain_error when bound exceeds 500.
SurfaceReport carlitz_surface_search(long long k, long long bound);

struct ScanReport {
  long long k = 0, bound = 0;
  std::vector<Int> members;          // n <= bound with (k^2+4)n^2 +- 4 square
  std::vector<long long> indices;    // recovered m per member
  std::vector<Int> companions;       // L(m) per member
  bool matches_sequence = false;     // members == every F(m) <= bound
};

// Full membership scan up to bound, indexed through classify_general_fib and
// checked against the regenerated sequence. Same k restrictions as classify.
ScanReport square_discriminant_scan(const SeqParams& p, long long bound,
                                    bool allow_even_k = false);

}  // namespace genfib
