#pragma once

#include <vector>

#include "painweyl/sym/rational_function.hpp"

namespace painweyl::sym {

/// Small dense matrix over the field of rational functions.
class RFMatrix {
 public:
  RFMatrix() = default;
  RFMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RFMatrix identity(std::size_t n);
  static RFMatrix from_integers(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  RationalFunction& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const RationalFunction& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RFMatrix transpose() const;
  RFMatrix operator*(const RFMatrix& o) const;
  RFMatrix operator-(const RFMatrix& o) const;
  RFMatrix scaled(const RationalFunction& c) const;
  bool is_zero() const;
  friend bool operator==(const RFMatrix& a, const RFMatrix& b);

  RationalFunction determinant() const;
  std::size_t rank() const;
  /// Basis of {v : M v = 0}.
  std::vector<std::vector<RationalFunction>> nullspace() const;
  /// Inverse; throws DivisionByZero if singular.
  RFMatrix inverse() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RationalFunction> data_;
};

}  // namespace painweyl::sym
