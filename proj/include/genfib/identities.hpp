#pragma once
// Machine-checked identity catalog. Every entry carries the statement as
// printed in the source material (verbatim) and, where that form fails, a
// corrected statement; sweeps evaluate both sides exactly over k and index
// ranges and record the first failing instance of the verbatim form.
//
// Also hosts the convolution identities, the continued fraction expansion of
// F(m(t+1))/F(mt), the arctangent telescoping suite, the reciprocal sums of
// F(2^j), and the linear-algebra solver that recovers corrected right-hand
// sides from an ansatz.

#include "genfib/quadratic.hpp"
#include "genfib/sequences.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace genfib {

enum class Sym { n, m, i, j, alpha, t };
const char* sym_name(Sym s);

struct Binding {
  std::array<long long, 6> v{};
  long long get(Sym s) const { return v[static_cast<std::size_t>(s)]; }
  void set(Sym s, long long x) { v[static_cast<std::size_t>(s)] = x; }
};

struct SymRange {
  Sym sym;
  long long lo, hi;  // inclusive
};

struct SideValues {
  Rat lhs, rhs;
  bool defined = true;   // false when the form divides by zero as printed
  std::string note;
  bool holds() const { return defined && lhs == rhs; }
};

struct IdentityDef {
  std::string id;
  std::string verbatim_text;
  std::string corrected_text;  // empty when the printed form already holds
  std::vector<SymRange> ranges;
  std::vector<long long> only_k;  // empty = every k; classical entries pin k=1
  std::function<SideValues(const SeqTable&, const Binding&, Form)> eval;
  std::function<Rat(const SeqTable&, long long)> lhs_fn;  // set on solver-routed ids
  int fit_kind = 0;  // 0 none, 1 linear F-ansatz, 2 quadratic F-ansatz
  bool has_correction() const { return !corrected_text.empty(); }
};

const std::vector<IdentityDef>& identity_registry();
const IdentityDef& find_identity(const std::string& id);  // std::invalid_argument if unknown

SideValues verify_identity(const SeqParams& p, const std::string& id, const Binding& b,
                           Form form);

struct Counterexample {
  long long k = 0;
  std::vector<std::pair<std::string, long long>> binding;
  std::string lhs, rhs, note;
};

struct IdentityReport {
  std::string id;
  std::string status;  // "holds" | "holds_with_correction" | "fails_as_printed"
  long long instances = 0;
  // Failing instance closest to the canonical binding (n, m, alpha, t = 1 and
  // i, j = 0), totaling |value - canonical| over the declared symbols; ties go
  // to the earliest k and enumeration order.
  std::optional<Counterexample> verbatim_counterexample;
  std::string correction;
  bool solver_confirmed = false;  // solver-routed ids: ansatz fit succeeded for all k
  bool unexpected = false;        // the working form failed somewhere
  std::optional<Counterexample> unexpected_counterexample;
};

struct SweepOptions {
  std::vector<long long> ks = {1, 2, 3, 4, 5, 6, 7, 8};
  long long max_abs_index = 60;  // clamp on every declared index range
};

// ids empty means the whole registry. Enumeration is deterministic: k
// ascending, then the declared symbol ranges in row-major order.
std::vector<IdentityReport> sweep_identities(const std::vector<std::string>& ids,
                                             const SweepOptions& opt);

// --- correction solver ---------------------------------------------------

struct AnsatzTerm {
  std::string text;
  std::function<Rat(const SeqTable&, long long)> eval;
};

std::vector<AnsatzTerm> linear_f_ansatz();     // (-1)^n F(n), (-1)^n F(n+1)
std::vector<AnsatzTerm> quadratic_f_ansatz();  // (-1)^n F(n)^2, (-1)^n F(n)F(n-1), (-1)^n F(n-1)^2

struct CorrectionFit {
  std::vector<Rat> coefficients;  // one per ansatz term
  std::string text;
};

// Exact linear solve for coefficients making sum_i c_i t_i(n) match lhs(n) on
// the sample window, then re-verified over the verify window. Returns nullopt
// when no combination fits; throws std::invalid_argument on an empty or
// linearly dependent (underdetermined) ansatz.
std::optional<CorrectionFit> correction_solve(
    const SeqParams& p, const std::function<Rat(const SeqTable&, long long)>& lhs,
    const std::vector<AnsatzTerm>& ansatz, long long sample_lo, long long sample_hi,
    long long verify_lo, long long verify_hi);

// Solver front door for the registry entries that expose an LHS.
std::optional<CorrectionFit> fit_identity_rhs(const SeqParams& p, const std::string& id);

// --- convolutions ---------------------------------------------------------

// S_m(n): sum of products F(j_1)...F(j_m) over compositions of n into m
// positive parts, computed by iterated convolution.
Int convolution_sum(const SeqParams& p, long long m, long long n);

// Same value through the three-term recurrence on W_r = S_m(m+r):
//   r W_r = k (r+m-1) W_(r-1) + (r+2m-2) W_(r-2);
// asserts agreement with convolution_sum and integrality.
Int convolution_closed(const SeqParams& p, long long m, long long n);

// Hypergeometric-style series for S_m(n) in powers of k/2 and (k^2+4)/4.
Rat convolution_series(const SeqParams& p, long long m, long long n);

// --- continued fractions --------------------------------------------------

struct ContinuedFraction {
  std::vector<Int> quotients;  // t copies of L(m)
  int sign;                    // connecting sign: value = L(m) + sign/(L(m) + sign/(...))
  Rat value;                   // F(m(t+1))/F(mt)
  Rat reconstructed;
  long long depth;          // t
  bool depth_matches_m;     // the printed depth claim ("m times")
};

ContinuedFraction continued_fraction(const SeqParams& p, long long m, long long t);

// --- analytic checks --------------------------------------------------------

inline constexpr double kArctanTolerance = 1e-9;

struct ArctanReport {
  long long exact_checked;  // largest m with 1 + F(2m+2)F(2m) == F(2m+1)^2 verified
  bool exact_all_hold;
  long long tail_terms;
  double residual;  // |sum_(i=0..tail_terms) atan(k/F(2i+3)) - atan(1/k)|
  double tolerance;
  bool residual_within_tolerance;
};

ArctanReport arctan_suite(const SeqParams& p, long long m_max, long long tail_terms);

struct ReciprocalSumReport {
  std::vector<Rat> partial_sums;  // n = 1 .. n_max
  bool closed_form_matches_all;   // against (k+2)/k - F(2^n - 1)/F(2^n)
  QuadRat limit;                  // (k+2)/k - e^(-theta)
  QuadRat limit_alt;              // 1 + e^(-theta) coth(theta)
  bool limits_agree;
  std::string limit_decimal;  // 12 significant digits
};

ReciprocalSumReport reciprocal_sum(const SeqParams& p, long long n_max);

}  // namespace genfib
