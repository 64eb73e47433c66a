#include "genfib/ortho.hpp"

#include <stdexcept>
#include <string>

namespace genfib {

namespace {

Int seq_value(Family fam, const SeqParams& p, long long n) {
  return fam == Family::fib ? fib(p, n) : lucas(p, n);
}

void check_alpha(long long alpha) {
  if (alpha < 1) throw std::domain_error("moment parameter alpha must be >= 1");
}

}  // namespace

std::vector<Rat> moments(Family fam, const SeqParams& p, long long alpha, std::size_t count) {
  check_alpha(alpha);
  Int lead = seq_value(fam, p, alpha);
  std::vector<Rat> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j)
    out.push_back(make_rat(lead, seq_value(fam, p, alpha + static_cast<long long>(j))));
  return out;
}

MomentHankel::MomentHankel(std::vector<Rat> ms, long long order, std::optional<Rat> lead)
    : moments_(std::move(ms)), order_(order), lead_(std::move(lead)) {}

MomentHankel MomentHankel::make(Family fam, const SeqParams& p, long long alpha,
                                long long order) {
  if (order < 0) throw std::domain_error("Hankel order must be >= 0");
  std::vector<Rat> ms = moments(fam, p, alpha, static_cast<std::size_t>(2 * order + 1));
  return MomentHankel(std::move(ms), order, Rat(seq_value(fam, p, alpha)));
}

MomentHankel MomentHankel::from_moments(std::vector<Rat> ms) {
  if (ms.empty() || ms.size() % 2 == 0)
    throw std::domain_error("raw moment list must have odd length 2*order+1");
  long long order = static_cast<long long>(ms.size() / 2);
  return MomentHankel(std::move(ms), order, std::nullopt);
}

RatMatrix MomentHankel::matrix() const {
  std::size_t n = static_cast<std::size_t>(order_) + 1;
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = moments_[i + j];
  return m;
}

RatMatrix MomentHankel::reciprocal_matrix() const {
  if (!lead_) throw std::domain_error("raw moment matrix has no reciprocal form");
  std::size_t n = static_cast<std::size_t>(order_) + 1;
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = moments_[i + j] / *lead_;
  return m;
}

Rat apply_functional(const std::vector<Rat>& ms, const std::vector<Rat>& poly) {
  if (poly.size() > ms.size())
    throw std::domain_error("moment functional needs more moments than supplied");
  Rat out(0);
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (poly[i] != 0) out += poly[i] * ms[i];
  return out;
}

std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> out(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

OrthoBasis monic_basis(const MomentHankel& mh) {
  const std::vector<Rat>& ms = mh.moment_list();
  long long order = mh.order();
  OrthoBasis basis;
  for (long long j = 0; j <= order; ++j) {
    std::vector<Rat> pj(static_cast<std::size_t>(j) + 1, Rat(0));
    pj[static_cast<std::size_t>(j)] = 1;  // x^j
    for (long long r = 0; r < j; ++r) {
      // Projection coefficient Lambda(x^j P_r) / h_r.
      std::vector<Rat> xj_pr(static_cast<std::size_t>(j + r) + 1, Rat(0));
      for (std::size_t i = 0; i < basis.coeffs[static_cast<std::size_t>(r)].size(); ++i)
        xj_pr[static_cast<std::size_t>(j) + i] = basis.coeffs[static_cast<std::size_t>(r)][i];
      Rat c = apply_functional(ms, xj_pr) / basis.norms[static_cast<std::size_t>(r)];
      if (c == 0) continue;
      const std::vector<Rat>& pr = basis.coeffs[static_cast<std::size_t>(r)];
      for (std::size_t i = 0; i < pr.size(); ++i) pj[i] -= c * pr[i];
    }
    Rat hj = apply_functional(ms, poly_mul(pj, pj));
    if (hj == 0)
      throw std::domain_error("degenerate moment sequence: h_" + std::to_string(j) +
                              " vanished");
    basis.coeffs.push_back(std::move(pj));
    basis.norms.push_back(std::move(hj));
  }
  return basis;
}

RatMatrix kernel_inverse(const OrthoBasis& basis) {
  std::size_t n = basis.coeffs.size();
  RatMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::vector<Rat>& pr = basis.coeffs[r];
    const Rat& hr = basis.norms[r];
    for (std::size_t j = 0; j < pr.size(); ++j) {
      if (pr[j] == 0) continue;
      for (std::size_t l = 0; l < pr.size(); ++l) {
        if (pr[l] == 0) continue;
        inv.at(j, l) += pr[j] * pr[l] / hr;
      }
    }
  }
  return inv;
}

RatMatrix filbert_inverse_closed(const SeqParams& p, long long alpha, long long n) {
  check_alpha(alpha);
  if (n < 0) throw std::domain_error("matrix order must be >= 0");
  FibonomialTable t(p);
  std::size_t size = static_cast<std::size_t>(n) + 1;
  RatMatrix out(size, size);
  for (long long j = 0; j <= n; ++j)
    for (long long l = 0; l <= n; ++l) {
      long long exp = (alpha + j + l) * n - j * (j - 1) / 2 - l * (l - 1) / 2;
      Int e = sign_pow(exp) * fib(p, alpha + j + l) * t.at(alpha + n + j, n - l) *
              t.at(alpha + n + l, n - j) * t.at(alpha + j + l - 1, j) *
              t.at(alpha + j + l - 1, l);
      out.at(static_cast<std::size_t>(j), static_cast<std::size_t>(l)) = Rat(e);
    }
  return out;
}

Rat filbert_det_closed(const SeqParams& p, long long alpha, long long n, Form form) {
  check_alpha(alpha);
  if (n < 0) throw std::domain_error("matrix order must be >= 0");
  FibonomialTable t(p);
  Int den = form == Form::corrected ? fib(p, alpha) : ipow(fib(p, alpha), static_cast<unsigned long>(n));
  for (long long j = 1; j <= n; ++j) {
    Int c = t.at(alpha + 2 * j - 1, j);
    den *= fib(p, alpha + 2 * j) * (form == Form::corrected ? c * c : c);
  }
  Rat det = make_rat(sign_pow(alpha * ((n * (n + 1)) / 2)), den);
  return det;
}

std::vector<Rat> qjacobi_coeffs(Family fam, const SeqParams& p, long long alpha, long long n) {
  check_alpha(alpha);
  if (n < 0) throw std::domain_error("polynomial degree must be >= 0");
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  if (fam == Family::fib) {
    FibonomialTable t(p);
    for (long long j = 0; j <= n; ++j) {
      Int c = sign_pow(n * j + j * (j - 1) / 2) * t.at(n, j) * t.at(alpha + n + j - 1, n);
      out.push_back(Rat(c));
    }
  } else {
    for (long long j = 0; j <= n; ++j) {
      Rat c = Rat(sign_pow(n * j + j * (j - 1) / 2)) * luconomial(p, n, j).value *
              luconomial(p, alpha + n + j - 1, n).value;
      out.push_back(c);
    }
  }
  return out;
}

GramReport gram_report(Family fam, const SeqParams& p, long long alpha, long long n_max) {
  check_alpha(alpha);
  if (n_max < 0) throw std::domain_error("gram report needs n_max >= 0");
  std::size_t size = static_cast<std::size_t>(n_max) + 1;
  std::vector<Rat> ms = moments(fam, p, alpha, 2 * size - 1);
  std::vector<std::vector<Rat>> polys;
  for (long long n = 0; n <= n_max; ++n) polys.push_back(qjacobi_coeffs(fam, p, alpha, n));

  GramReport rep{fam,     alpha, RatMatrix(size, size), {}, true, -1, -1, Rat(0), {},
                 false,   {},    -1};
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      rep.gram.at(i, j) = apply_functional(ms, poly_mul(polys[i], polys[j]));
  for (std::size_t i = 0; i < size; ++i) {
    rep.diagonal.push_back(rep.gram.at(i, i));
    for (std::size_t j = 0; j < size; ++j) {
      if (i == j || rep.gram.at(i, j) == 0) continue;
      if (rep.off_diagonal_zero) {
        rep.off_diagonal_zero = false;
        rep.viol_i = static_cast<long long>(i);
        rep.viol_j = static_cast<long long>(j);
        rep.viol_value = rep.gram.at(i, j);
      }
    }
  }

  Int lead = seq_value(fam, p, alpha);
  rep.corrected_law_holds = fam == Family::fib;
  for (long long j = 0; j <= n_max; ++j) {
    Rat verbatim = Rat(sign_pow(alpha * j)) * make_rat(lead, seq_value(fam, p, alpha + j));
    rep.verbatim_law.push_back(verbatim);
    if (rep.first_verbatim_failure < 0 && verbatim != rep.diagonal[static_cast<std::size_t>(j)])
      rep.first_verbatim_failure = j;
    if (fam == Family::fib) {
      Rat corrected = Rat(sign_pow(alpha * j)) * make_rat(lead, fib(p, alpha + 2 * j));
      rep.corrected_law.push_back(corrected);
      if (corrected != rep.diagonal[static_cast<std::size_t>(j)]) rep.corrected_law_holds = false;
    }
  }

  if (fam == Family::fib) {
    if (!rep.off_diagonal_zero)
      throw std::logic_error("F-family polynomials lost orthogonality at (" +
                             std::to_string(rep.viol_i) + "," + std::to_string(rep.viol_j) + ")");
    if (!rep.corrected_law_holds)
      throw std::logic_error("corrected constant law failed on the F family");
  }
  return rep;
}

std::vector<LucasHankelRow> lucas_hankel_report(const SeqParams& p, long long alpha,
                                                long long n_max) {
  check_alpha(alpha);
  std::vector<LucasHankelRow> out;
  for (long long n = 0; n <= n_max; ++n) {
    MomentHankel mh = MomentHankel::make(Family::lucas, p, alpha, n);
    RatMatrix recip = mh.reciprocal_matrix();
    LucasHankelRow row{n,  bareiss_det(recip), Rat(0), false, false, std::nullopt,
                       false, {}};
    // Printed closed form, kept verbatim: alternating sign, 1/L(alpha)^n and
    // unsquared L-binomial coefficients.
    Rat den = rat_pow(Rat(lucas(p, alpha)), n);
    for (long long j = 1; j <= n; ++j)
      den *= Rat(lucas(p, alpha + 2 * j)) * luconomial(p, alpha + 2 * j - 1, j).value;
    row.det_verbatim = Rat(sign_pow(alpha * ((n * (n + 1)) / 2))) / den;
    row.verbatim_matches = row.det_verbatim == row.det_oracle;
    if (row.det_oracle != 0) {
      row.invertible = true;
      row.inverse = exact_inverse(recip);
      row.inverse_all_integer = row.inverse->all_integer();
    }
    try {
      row.norms = monic_basis(mh).norms;
    } catch (const std::domain_error&) {
      row.norms.clear();
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace genfib
