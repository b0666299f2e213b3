#include <doctest.h>

#include "mixmds/galois.hpp"
#include "mixmds/linalg.hpp"
#include "mixmds/rng.hpp"

using namespace mixmds;

namespace {

FeMatrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, Rng& rng) {
  FeMatrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a.at(r, c) = Fe{static_cast<std::uint16_t>(rng.below(f.size()))};
  return a;
}

std::vector<Fe> mat_vec(const Field& f, const FeMatrix& a, std::span<const Fe> x) {
  std::vector<Fe> y(a.rows(), f.zero());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) y[r] = f.add(y[r], f.mul(a.at(r, c), x[c]));
  return y;
}

}  // namespace

TEST_CASE("nullspace vectors are annihilated and rank-nullity holds") {
  Rng rng(5);
  for (unsigned q : {2u, 4u, 7u, 16u}) {
    Field f = Field::make(q);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(8);
      FeMatrix a = random_matrix(f, rows, cols, rng);
      FeMatrix copy = a;
      auto pivots = rref(f, copy);
      FeMatrix ns = nullspace(f, a);
      CHECK(ns.cols() == cols);
      CHECK(ns.rows() + pivots.size() == cols);
      for (std::size_t i = 0; i < ns.rows(); ++i) {
        auto y = mat_vec(f, a, ns.row(i));
        for (Fe v : y) CHECK(v == f.zero());
      }
      FeMatrix nsc = ns;
      CHECK(rref(f, nsc).size() == ns.rows());
    }
  }
}

TEST_CASE("solve and inverse") {
  Rng rng(9);
  Field f = Field::make(16);
  for (int trial = 0; trial < 50; ++trial) {
    FeMatrix a = random_matrix(f, 4, 4, rng);
    auto inv = inverse(f, a);
    FeMatrix copy = a;
    bool full = rref(f, copy).size() == 4;
    CHECK(inv.has_value() == full);
    std::vector<Fe> x(4);
    for (auto& v : x) v = Fe{static_cast<std::uint16_t>(rng.below(16))};
    auto b = mat_vec(f, a, x);
    auto sol = solve(f, a, b);
    REQUIRE(sol.has_value());
    CHECK(mat_vec(f, a, *sol) == b);
    if (inv) {
      auto back = vec_mat(f, vec_mat(f, x, a), *inv);
      CHECK(back == x);
    }
  }
  FeMatrix z(2, 2);
  std::vector<Fe> b{f.one(), f.zero()};
  CHECK_FALSE(solve(f, z, b).has_value());
}
