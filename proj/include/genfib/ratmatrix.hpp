#pragma once
// Dense matrices over the exact rationals: fraction-free Bareiss determinant
// and Gauss-Jordan inversion. Sizes here are tiny (Hankel matrices of order
// a dozen or so), so clarity wins over blocking.

#include "genfib/rational.hpp"

#include <cstddef>
#include <vector>

namespace genfib {

class RatMatrix {
 public:
  RatMatrix(std::size_t rows, std::size_t cols);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatMatrix operator*(const RatMatrix& o) const;
  bool operator==(const RatMatrix& o) const;
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  bool all_integer() const;
  bool is_symmetric() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> data_;
};

// Determinant by row-wise integer lifting followed by fraction-free Bareiss
// elimination; all intermediate divisions are exact.
Rat bareiss_det(const RatMatrix& m);

// Inverse by Gauss-Jordan with exact pivoting; the product with the input is
// checked against the identity. Throws std::domain_error("singular matrix")
// when no inverse exists.
RatMatrix exact_inverse(const RatMatrix& m);

}  // namespace genfib
