#pragma once
// Moment sequences s_j = F(alpha)/F(alpha+j) (or the Lucas analogue), their
// Hankel matrices, the monic orthogonal polynomials of the induced moment
// functional, and the closed-form determinant and inverse expressions in
// both corrected and verbatim readings.

#include "genfib/ratmatrix.hpp"
#include "genfib/sequences.hpp"

#include <optional>
#include <vector>

namespace genfib {

std::vector<Rat> moments(Family fam, const SeqParams& p, long long alpha, std::size_t count);

class MomentHankel {
 public:
  static MomentHankel make(Family fam, const SeqParams& p, long long alpha, long long order);
  // Raw moments (size must be odd, 2*order+1); no reciprocal matrix attached.
  static MomentHankel from_moments(std::vector<Rat> ms);

  long long order() const { return order_; }
  const std::vector<Rat>& moment_list() const { return moments_; }
  RatMatrix matrix() const;             // entries s_(i+j)
  RatMatrix reciprocal_matrix() const;  // entries 1/Z(alpha+i+j) = s_(i+j)/Z(alpha)

 private:
  MomentHankel(std::vector<Rat> ms, long long order, std::optional<Rat> lead);
  std::vector<Rat> moments_;
  long long order_;
  std::optional<Rat> lead_;  // Z(alpha)
};

// Lambda(poly) with poly given by ascending coefficients.
Rat apply_functional(const std::vector<Rat>& ms, const std::vector<Rat>& poly);
std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b);

struct OrthoBasis {
  std::vector<std::vector<Rat>> coeffs;  // coeffs[j]: monic degree-j polynomial
  std::vector<Rat> norms;                // h_j = Lambda(P_j^2), all nonzero
};

// Gram-Schmidt against the moment functional. Throws
// std::domain_error("degenerate moment sequence...") when some norm h_j
// vanishes, which is exactly when a leading principal Hankel minor is zero.
OrthoBasis monic_basis(const MomentHankel& mh);

// Inverse of the moment matrix from the orthogonal basis:
//   (H^-1)_(j,l) = sum_r c_(r,j) c_(r,l) / h_r,
// with the division applied per summand.
RatMatrix kernel_inverse(const OrthoBasis& basis);

// Closed-form inverse of the reciprocal matrix [1/F(alpha+i+j)], integer
// entries by construction.
RatMatrix filbert_inverse_closed(const SeqParams& p, long long alpha, long long n);

// Closed-form determinant of [1/F(alpha+i+j)], 0 <= i,j <= n. The corrected
// form carries 1/F(alpha) and squared coefficients; the verbatim form keeps
// the printed 1/F(alpha)^n and unsquared coefficients.
Rat filbert_det_closed(const SeqParams& p, long long alpha, long long n, Form form);

// Ascending coefficients of the degree-n little q-Jacobi style polynomial:
//   c_j = (-1)^(n*j + C(j,2)) <n, j> <alpha+n+j-1, n>
// over F (integers) or over L (rationals).
std::vector<Rat> qjacobi_coeffs(Family fam, const SeqParams& p, long long alpha, long long n);

struct GramReport {
  Family family;
  long long alpha;
  RatMatrix gram;             // Lambda(p_i p_j) for degrees 0..n_max
  std::vector<Rat> diagonal;  // zeta_j
  bool off_diagonal_zero;
  long long viol_i, viol_j;  // first nonzero off-diagonal entry, -1 if none
  Rat viol_value;
  std::vector<Rat> corrected_law;  // (-1)^(alpha j) F(alpha)/F(alpha+2j), F family only
  bool corrected_law_holds;
  std::vector<Rat> verbatim_law;  // printed claim (-1)^(alpha j) Z(alpha)/Z(alpha+j)
  long long first_verbatim_failure;  // -1 if the printed claim never fails
};

// Gram matrix of the q-Jacobi polynomials under the moment functional. For
// the F family orthogonality and the corrected constant law are asserted
// (std::logic_error on violation); for the L family violations are reported,
// not asserted, since the printed closed forms fail there.
GramReport gram_report(Family fam, const SeqParams& p, long long alpha, long long n_max);

struct LucasHankelRow {
  long long n;
  Rat det_oracle;    // Bareiss determinant of [1/L(alpha+i+j)]
  Rat det_verbatim;  // printed closed form
  bool verbatim_matches;
  bool invertible;
  std::optional<RatMatrix> inverse;  // of the reciprocal matrix
  bool inverse_all_integer;
  std::vector<Rat> norms;  // monic norms of the moment matrix; empty if degenerate
};

std::vector<LucasHankelRow> lucas_hankel_report(const SeqParams& p, long long alpha,
                                                long long n_max);

}  // namespace genfib
