#include "summa/entry.hpp"

#include "summa/errors.hpp"

namespace summa {

Vector zero_vector(std::size_t dim) { return Vector(dim, Scalar(0)); }

Scalar norm1(const Vector& v) {
  Scalar s(0);
  for (const auto& x : v) s += abs(x);
  return s;
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector subtract(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector scale(const Scalar& c, const Vector& v) {
  Vector r = v;
  for (auto& x : r) x *= c;
  return r;
}

std::string format_vector(const Vector& v) {
  if (v.size() == 1) return v[0].str();
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

OperatorEntry::OperatorEntry(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

OperatorEntry::OperatorEntry(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("entry data does not match m x d");
}

OperatorEntry OperatorEntry::identity(std::size_t dim, const Scalar& diagonal) {
  OperatorEntry e(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) e(i, i) = diagonal;
  return e;
}

bool OperatorEntry::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

Vector OperatorEntry::apply(const Vector& x) const {
  if (x.size() != cols_) throw DimensionMismatch("entry applied to a vector of the wrong dimension");
  Vector y = zero_vector(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& a = (*this)(i, j);
      if (!a.is_zero()) y[i] += a * x[j];
    }
  return y;
}

OperatorEntry& OperatorEntry::operator+=(const OperatorEntry& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("entry shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

OperatorEntry& OperatorEntry::operator-=(const OperatorEntry& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("entry shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

OperatorEntry& OperatorEntry::operator*=(const Scalar& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

Scalar entry_norm(const OperatorEntry& e) {
  Scalar best(0);
  for (std::size_t j = 0; j < e.cols(); ++j) {
    Scalar col(0);
    for (std::size_t i = 0; i < e.rows(); ++i) col += abs(e(i, j));
    best = j == 0 ? col : max(best, col);
  }
  return best;
}

Scalar entry_abs_sum(const OperatorEntry& e) {
  Scalar s(0);
  for (const auto& x : e.data()) s += abs(x);
  return s;
}

OperatorEntry entry_abs(const OperatorEntry& e) {
  OperatorEntry r = e;
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j < e.cols(); ++j) r(i, j) = abs(e(i, j));
  return r;
}

}  // namespace summa
