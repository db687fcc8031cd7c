#pragma once

#include <rht/rational.hpp>

#include <initializer_list>
#include <random>
#include <vector>

namespace rht::testing {

inline Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  Matrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline Vector vec(std::initializer_list<Rational> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

/// Small-integer random matrix; `density` is the chance an entry is nonzero.
inline Matrix random_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols, double density = 0.6,
                            int range = 3) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> val(-range, range);
  Matrix m = Matrix::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (coin(rng) < density) m(i, j) = val(rng);
  return m;
}

/// Random matrix of a prescribed rank (product of two random factors).
inline Matrix random_rank(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols, Eigen::Index r) {
  Matrix a = random_matrix(rng, rows, r, 0.8);
  Matrix b = random_matrix(rng, r, cols, 0.8);
  return a * b;
}

inline Matrix random_invertible(std::mt19937& rng, Eigen::Index n) {
  // unit lower times unit upper
  Matrix l = Matrix::Identity(n, n), u = Matrix::Identity(n, n);
  std::uniform_int_distribution<int> val(-2, 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      l(i, j) = val(rng);
      u(j, i) = val(rng);
    }
  return l * u;
}

}  // namespace rht::testing
