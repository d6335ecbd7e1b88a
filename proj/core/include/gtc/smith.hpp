#pragma once

// Dense integer matrices over GMP integers and their Smith normal form.

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gtc {

using Integer = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ...
struct SmithResult {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  /// Nonzero diagonal entries of D, all positive.
  std::vector<Integer> invariants;
  std::size_t rank = 0;
};

/// Pivot: smallest nonzero absolute value in the remaining block, row-major
/// tie-break. With track_transforms = false, U and V are left empty.
SmithResult smith_normal_form(const IntMatrix& m, bool track_transforms = true);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);

struct SmithCheck {
  bool product = false;
  bool unimodular = false;
  bool diagonal = false;
  bool divisibility = false;
  bool ok() const { return product && unimodular && diagonal && divisibility; }
};

/// Recomputes U*M*V, both determinants and the divisibility chain.
SmithCheck verify_smith(const IntMatrix& m, const SmithResult& r);

}  // namespace gtc
