#pragma once

#include <cstddef>
#include <vector>

#include "summa/scalar.hpp"

namespace summa {

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t dim);
Scalar norm1(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector scale(const Scalar& c, const Vector& v);
std::string format_vector(const Vector& v);

/// One block A_{n,k}: an m x d grid acting from R^d to R^m, stored row-major.
class OperatorEntry {
 public:
  OperatorEntry() = default;
  OperatorEntry(std::size_t rows, std::size_t cols);
  OperatorEntry(std::size_t rows, std::size_t cols, std::vector<Scalar> data);
  static OperatorEntry identity(std::size_t dim, const Scalar& diagonal = Scalar(1));
  static OperatorEntry scalar(const Scalar& value) { return OperatorEntry(1, 1, {value}); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& data() const { return data_; }
  bool is_zero() const;

  Vector apply(const Vector& x) const;
  OperatorEntry& operator+=(const OperatorEntry& o);
  OperatorEntry& operator-=(const OperatorEntry& o);
  OperatorEntry& operator*=(const Scalar& c);
  friend OperatorEntry operator+(OperatorEntry a, const OperatorEntry& b) { return a += b; }
  friend OperatorEntry operator-(OperatorEntry a, const OperatorEntry& b) { return a -= b; }
  friend OperatorEntry operator*(const Scalar& c, OperatorEntry a) { return a *= c; }
  friend bool operator==(const OperatorEntry&, const OperatorEntry&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// max_j sum_i |a(i,j)|
Scalar entry_norm(const OperatorEntry& e);
// sum_{i,j} |a(i,j)|
Scalar entry_abs_sum(const OperatorEntry& e);
// entrywise |a(i,j)|
OperatorEntry entry_abs(const OperatorEntry& e);

}  // namespace summa
