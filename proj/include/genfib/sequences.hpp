#pragma once
// Generalized Fibonacci and Lucas sequences for one integer parameter k >= 1:
//   F(1) = 1, F(2) = k,  L(0) = 2, L(1) = k,  X(n+1) = k*X(n) + X(n-1),
// extended to negative indices by F(-n) = (-1)^(n-1) F(n) and
// L(-n) = (-1)^n L(n). Includes the generalized binomial coefficients built
// from F (always integers) and from L (not always integers).

#include "genfib/quadratic.hpp"

#include <vector>

namespace genfib {

enum class Family { fib, lucas };
enum class Form { corrected, verbatim };

struct SeqParams {
  long long k;
  long long d;  // k*k + 4
  Int kz, dz;   // the same values as big integers, for mixed arithmetic
  explicit SeqParams(long long k_in);
};

// Iterative evaluation, any integer index.
Int fib(const SeqParams& p, long long n);
Int lucas(const SeqParams& p, long long n);

struct DoublingTriple {
  Int f_n, f_next, l_n;
};

// O(log n) evaluation of (F(n), F(n+1), L(n)) by index doubling, n >= 0.
DoublingTriple pair_doubling(const SeqParams& p, long long n);

// F(n) resp. L(n) as an element of Q(sqrt(k*k+4)); always a rational integer.
QuadRat closed_form(const SeqParams& p, Family fam, long long n);

struct HyperbolicSum {
  Rat value;            // the corrected binomial sum; equals target
  Int target;           // F(n+1) resp. L(n)
  Rat verbatim_value;   // the sum as printed in the uncorrected statement
  Int verbatim_target;  // F(n) resp. L(n)
  bool verbatim_holds;
};

// Binomial expansion of the closed form in powers of k/2 and (k*k+4)/4.
// Asserts the corrected reading: the sum equals F(n+1) for the Fibonacci
// family and twice the sum equals L(n) for the Lucas family. n >= 0.
HyperbolicSum explicit_hyperbolic(const SeqParams& p, Family fam, long long n);

// Triangular table of the generalized binomial coefficients taken over F.
// Every entry is computed by the product quotient and cross-checked against
// the addition recurrence
//   <n, j> = F(j-1) <n-1, j> + F(n-j+1) <n-1, j-1>;
// a disagreement throws std::logic_error. Instances are not thread-safe;
// each thread should own its table.
class FibonomialTable {
 public:
  explicit FibonomialTable(const SeqParams& p);
  const Int& at(long long n, long long j);  // n >= 0; zero outside [0, n]
  const SeqParams& params() const { return params_; }

 private:
  void extend(long long n);
  SeqParams params_;
  std::vector<Int> f_;  // F(0..)
  std::vector<std::vector<Int>> rows_;
  Int zero_;
};

Int fibonomial(const SeqParams& p, long long n, long long j);

struct RatWithIntegrality {
  Rat value;
  bool integral;
};

// The analogous coefficient taken over L; frequently non-integral.
RatWithIntegrality luconomial(const SeqParams& p, long long n, long long j);

struct OddLuconomialEntry {
  long long n, j;
  Rat value;
  bool integral;
};

// Binomial-style quotients over the odd-indexed Lucas numbers,
// prod_(i=1..j) L(2(n-j+i)-1) / prod_(i=1..j) L(2i-1), for n in [0, n_max],
// reporting integrality per entry.
std::vector<OddLuconomialEntry> odd_luconomial_probe(const SeqParams& p, long long n_max);

struct Mat2 {
  Int a00, a01, a10, a11;
};

// n-th power (n >= 1) of [[k,1],[1,0]]; asserts the entries are
// [[F(n+1),F(n)],[F(n),F(n-1)]] and that the determinant is (-1)^n.
Mat2 matrix_power(const SeqParams& p, long long n);

// Dense cache of F and L over an inclusive index window.
class SeqTable {
 public:
  SeqTable(const SeqParams& p, long long lo, long long hi);
  const SeqParams& params() const { return params_; }
  Int f(long long n) const;
  Int l(long long n) const;

 private:
  SeqParams params_;
  long long max_abs_;
  std::vector<Int> f_, l_;  // index 0..max_abs_+1
};

}  // namespace genfib
