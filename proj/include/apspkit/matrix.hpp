#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "apspkit/core.hpp"

namespace apspkit {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  T* row(std::size_t i) { return data_.data() + i * cols_; }
  const T* row(std::size_t i) const { return data_.data() + i * cols_; }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  const std::vector<T>& storage() const { return data_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using DistMatrix = Matrix<Dist>;
using IndexMatrix = Matrix<std::int32_t>;

// public constructor with the zero-dimension check; internal code uses Matrix directly
template <class T>
Matrix<T> matrix_new(std::size_t rows, std::size_t cols, const T& fill) {
  if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
  return Matrix<T>(rows, cols, fill);
}

DistMatrix minplus_identity(std::size_t n);

// pick rows / columns by index lists
template <class T>
Matrix<T> submatrix(const Matrix<T>& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix<T> s(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const T* src = m.row(rows[a]);
    T* dst = s.row(a);
    for (std::size_t b = 0; b < cols.size(); ++b) dst[b] = src[cols[b]];
  }
  return s;
}

template <class T>
Matrix<T> select_rows(const Matrix<T>& m, const std::vector<int>& rows) {
  Matrix<T> s(rows.size(), m.cols());
  for (std::size_t a = 0; a < rows.size(); ++a)
    std::copy(m.row(rows[a]), m.row(rows[a]) + m.cols(), s.row(a));
  return s;
}

struct EntryBounds {
  std::optional<Dist> max_finite_a;
  std::optional<Dist> max_finite_b;
  std::optional<std::size_t> finite_count_a;
  std::optional<std::size_t> finite_count_b;
};

// single-matrix check: every finite entry <= max and #finite <= count (when given)
bool check_bounds(const DistMatrix& m, std::optional<Dist> max_finite,
                  std::optional<std::size_t> finite_count = std::nullopt);
bool check_bounds(const DistMatrix& a, const DistMatrix& b, const EntryBounds& bounds);

std::size_t finite_count(const DistMatrix& m);
Dist max_finite(const DistMatrix& m);  // kInf when nothing is finite
Dist min_finite(const DistMatrix& m);  // kInf when nothing is finite

struct CostModel {
  // 0 means "pick sqrt(n) rounded to a level"
  std::int64_t crossover_L = 0;
  double reported_exponent = 0.0;
  // measured per-op costs for the auto engine (ns)
  double brute_ns_per_op = 1.0;
  double scaled_ns_per_digit_op = 4.0;
  bool calibrated = false;
  // analysis-only constants, never read by algorithms
  double omega = 2.371552;
  double rho = 0.5286;
};

// micro-benchmark the kernels once and fill in the per-op costs
void calibrate(CostModel& cm);
CostModel& default_cost_model();

// text format: "matrix r c", rows of tokens, INF for infinity, '#' comments
void write_matrix(std::ostream& os, const DistMatrix& m);
DistMatrix read_matrix(std::istream& is);
DistMatrix read_matrix_file(const std::string& path);

std::string dist_token(Dist x);
Dist parse_dist_token(const std::string& tok, int line);

}  // namespace apspkit
