#include "painweyl/sym/matrix.hpp"

#include <sstream>

namespace painweyl::sym {

RFMatrix RFMatrix::identity(std::size_t n) {
  RFMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RationalFunction(1L);
  return m;
}

RFMatrix RFMatrix::from_integers(const std::vector<std::vector<long>>& rows) {
  RFMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < m.rows_; ++r) {
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = RationalFunction(rows[r][c]);
  }
  return m;
}

RFMatrix RFMatrix::transpose() const {
  RFMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

RFMatrix RFMatrix::operator*(const RFMatrix& o) const {
  if (cols_ != o.rows_) throw SymbolicError("matrix shape mismatch");
  RFMatrix m(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < o.cols_; ++c) {
      RationalFunction acc;
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(r, k).is_zero() || o(k, c).is_zero()) continue;
        acc += (*this)(r, k) * o(k, c);
      }
      m(r, c) = std::move(acc);
    }
  }
  return m;
}

RFMatrix RFMatrix::operator-(const RFMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw SymbolicError("matrix shape mismatch");
  RFMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
  return m;
}

RFMatrix RFMatrix::scaled(const RationalFunction& c) const {
  RFMatrix m = *this;
  for (auto& e : m.data_) e *= c;
  return m;
}

bool RFMatrix::is_zero() const {
  for (const auto& e : data_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

bool operator==(const RFMatrix& a, const RFMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i) {
    if (!(a.data_[i] == b.data_[i])) return false;
  }
  return true;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RFMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pr = row;
    while (pr < m.rows() && m(pr, col).is_zero()) ++pr;
    if (pr == m.rows()) continue;
    if (pr != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pr, c), m(row, c));
    }
    RationalFunction inv = RationalFunction(1L) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      RationalFunction f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RationalFunction RFMatrix::determinant() const {
  if (rows_ != cols_) throw SymbolicError("determinant of non-square matrix");
  if (rows_ == 1) return (*this)(0, 0);
  if (rows_ == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
  // Laplace expansion along the row with most zeros.
  std::size_t best = 0, best_zeros = 0;
  for (std::size_t r = 0; r < rows_; ++r) {
    std::size_t z = 0;
    for (std::size_t c = 0; c < cols_; ++c) z += (*this)(r, c).is_zero() ? 1 : 0;
    if (z > best_zeros) {
      best = r;
      best_zeros = z;
    }
  }
  RationalFunction acc;
  for (std::size_t c = 0; c < cols_; ++c) {
    if ((*this)(best, c).is_zero()) continue;
    RFMatrix minor(rows_ - 1, cols_ - 1);
    for (std::size_t r = 0, mr = 0; r < rows_; ++r) {
      if (r == best) continue;
      for (std::size_t cc = 0, mc = 0; cc < cols_; ++cc) {
        if (cc == c) continue;
        minor(mr, mc++) = (*this)(r, cc);
      }
      ++mr;
    }
    RationalFunction term = (*this)(best, c) * minor.determinant();
    if ((best + c) % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

std::size_t RFMatrix::rank() const {
  RFMatrix m = *this;
  return rref(m).size();
}

std::vector<std::vector<RationalFunction>> RFMatrix::nullspace() const {
  RFMatrix m = *this;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<RationalFunction>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<RationalFunction> v(cols_);
    v[free] = RationalFunction(1L);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RFMatrix RFMatrix::inverse() const {
  if (rows_ != cols_) throw SymbolicError("inverse of non-square matrix");
  RFMatrix aug(rows_, 2 * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = (*this)(r, c);
    aug(r, cols_ + r) = RationalFunction(1L);
  }
  auto pivots = rref(aug);
  if (pivots.size() < rows_ || pivots.back() >= cols_) throw DivisionByZero("singular matrix");
  RFMatrix inv(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) inv(r, c) = aug(r, cols_ + c);
  }
  return inv;
}

std::string RFMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << (*this)(r, c).to_string();
    }
  }
  os << "]";
  return os.str();
}

}  // namespace painweyl::sym
