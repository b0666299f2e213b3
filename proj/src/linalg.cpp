#include "mixmds/linalg.hpp"

#include <algorithm>
#include <utility>

#include "mixmds/error.hpp"

namespace mixmds {

void FeMatrix::append_row(std::span<const Fe> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw Error(Errc::BadParameters, "row length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

std::vector<std::size_t> rref(const Field& f, FeMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t sel = r;
    while (sel < a.rows() && a.at(sel, c).value == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(r, j));
    }
    Fe scale = f.inv(a.at(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a.at(r, j) = f.mul(a.at(r, j), scale);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      Fe factor = a.at(i, c);
      if (factor.value == 0) continue;
      for (std::size_t j = c; j < a.cols(); ++j) a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

FeMatrix nullspace(const Field& f, const FeMatrix& a) {
  FeMatrix work = a;
  auto pivots = rref(f, work);
  std::vector<int> pivot_row(a.cols(), -1);
  for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = static_cast<int>(i);

  FeMatrix basis(0, a.cols());
  std::vector<Fe> v(a.cols());
  for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
    if (pivot_row[free_col] >= 0) continue;
    std::fill(v.begin(), v.end(), f.zero());
    v[free_col] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(work.at(i, free_col));
    basis.append_row(v);
  }
  return basis;
}

std::optional<std::vector<Fe>> solve(const Field& f, const FeMatrix& a, std::span<const Fe> b) {
  if (b.size() != a.rows()) throw Error(Errc::BadParameters, "right-hand side length mismatch");
  FeMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  auto pivots = rref(f, aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<Fe> x(a.cols(), f.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols());
  return x;
}

std::optional<FeMatrix> inverse(const Field& f, const FeMatrix& a) {
  if (a.rows() != a.cols()) throw Error(Errc::BadParameters, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  FeMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = f.one();
  }
  auto pivots = rref(f, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  FeMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  }
  return inv;
}

std::vector<Fe> vec_mat(const Field& f, std::span<const Fe> v, const FeMatrix& a) {
  if (v.size() != a.rows()) throw Error(Errc::BadParameters, "vector/matrix shape mismatch");
  std::vector<Fe> out(a.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (v[i].value == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] = f.add(out[j], f.mul(v[i], a.at(i, j)));
  }
  return out;
}

}  // namespace mixmds
