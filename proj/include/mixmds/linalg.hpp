#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mixmds/galois.hpp"

namespace mixmds {

/// Dense row-major matrix of field elements.
class FeMatrix {
 public:
  FeMatrix() = default;
  FeMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Fe& at(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Fe at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<Fe> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Fe> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Fe> values);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fe> data_;
};

/// Reduced row echelon form in place; returns the pivot columns.
/// Any subfield closed under the operations may be used as the scalar set.
std::vector<std::size_t> rref(const Field& f, FeMatrix& a);

/// Basis of {x : A x = 0}, one vector per row.
FeMatrix nullspace(const Field& f, const FeMatrix& a);

/// Some solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Fe>> solve(const Field& f, const FeMatrix& a, std::span<const Fe> b);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<FeMatrix> inverse(const Field& f, const FeMatrix& a);

std::vector<Fe> vec_mat(const Field& f, std::span<const Fe> v, const FeMatrix& a);

}  // namespace mixmds
