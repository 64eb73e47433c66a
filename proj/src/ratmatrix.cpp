#include "genfib/ratmatrix.hpp"

#include <stdexcept>

namespace genfib {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw std::domain_error("matrix with zero dimension");
  data_.assign(rows * cols, Rat(0));
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw std::domain_error("matrix product shape mismatch");
  RatMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& v = at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += v * o.at(k, j);
    }
  return out;
}

bool RatMatrix::operator==(const RatMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool RatMatrix::all_integer() const {
  for (const Rat& v : data_)
    if (!is_integer(v)) return false;
  return true;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

Rat bareiss_det(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("determinant of a non-square matrix");
  std::size_t n = m.rows();
  // Lift each row to integers; det(m) = det(lifted) / prod(row scales).
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  Int scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Int rowden = 1;
    for (std::size_t j = 0; j < n; ++j) {
      Int den = rat_den(m.at(i, j));
      rowden = rowden / gcd(rowden, den) * den;
    }
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = rat_num(m.at(i, j)) * (rowden / rat_den(m.at(i, j)));
    scale *= rowden;
  }
  int sign = 1;
  Int prev = 1;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return Rat(0);
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        Int num = a[i][j] * a[c][c] - a[i][c] * a[c][j];
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        if (r != 0) throw std::logic_error("Bareiss division was not exact");
        a[i][j] = q;
      }
      a[i][c] = 0;
    }
    prev = a[c][c];
  }
  return make_rat(sign * a[n - 1][n - 1], scale);
}

RatMatrix exact_inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse of a non-square matrix");
  std::size_t n = m.rows();
  RatMatrix work = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && work.at(pivot, c) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    if (pivot != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work.at(pivot, j), work.at(c, j));
        std::swap(inv.at(pivot, j), inv.at(c, j));
      }
    Rat p = work.at(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      work.at(c, j) /= p;
      inv.at(c, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      Rat f = work.at(i, c);
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        work.at(i, j) -= f * work.at(c, j);
        inv.at(i, j) -= f * inv.at(c, j);
      }
    }
  }
  if (m * inv != RatMatrix::identity(n))
    throw std::logic_error("inverse verification failed");
  return inv;
}

}  // namespace genfib
