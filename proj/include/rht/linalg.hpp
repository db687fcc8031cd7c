#pragma once

// Exact dense linear algebra over a field scalar (rht::Rational in practice).
// Everything here is a pure function of its arguments; nothing pivots on
// magnitude, so the routines are only meaningful for exact scalar types.

#include <rht/error.hpp>
#include <rht/rational.hpp>

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace rht {

using Index = Eigen::Index;

namespace detail {
template <class Scalar>
inline bool zero(const Scalar& x) {
  return x == Scalar(0);
}
}  // namespace detail

template <class Scalar>
struct RrefResult {
  MatrixX<Scalar> reduced;
  std::vector<Index> pivots;
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <class Scalar>
RrefResult<Scalar> rref(MatrixX<Scalar> m) {
  RrefResult<Scalar> out;
  const Index rows = m.rows();
  const Index cols = m.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = -1;
    for (Index i = r; i < rows; ++i) {
      if (!detail::zero(m(i, c))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Index j = c; j < cols; ++j) {
      if (!detail::zero(m(r, j))) m(r, j) *= inv;
    }
    for (Index i = 0; i < rows; ++i) {
      if (i == r || detail::zero(m(i, c))) continue;
      const Scalar f = m(i, c);
      for (Index j = c; j < cols; ++j) {
        if (!detail::zero(m(r, j))) m(i, j) -= f * m(r, j);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Scalar>
Index rank(const MatrixX<Scalar>& m) {
  return rref<Scalar>(m).rank();
}

/// A linear subspace of Scalar^n held in reduced column echelon form: the
/// basis matrix restricted to the pivot rows is the identity and every basis
/// column vanishes above its pivot. Equal subspaces compare equal entrywise.
template <class Scalar>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index ambient) { return Subspace(MatrixX<Scalar>(ambient, 0), {}); }

  static Subspace full(Index ambient) {
    std::vector<Index> piv(static_cast<size_t>(ambient));
    for (Index i = 0; i < ambient; ++i) piv[static_cast<size_t>(i)] = i;
    return Subspace(MatrixX<Scalar>::Identity(ambient, ambient), std::move(piv));
  }

  /// Column span of `generators` (ambient x k).
  static Subspace span(const MatrixX<Scalar>& generators) {
    const Index n = generators.rows();
    if (generators.cols() == 0) return zero(n);
    auto red = rref<Scalar>(MatrixX<Scalar>(generators.transpose()));
    MatrixX<Scalar> basis = red.reduced.topRows(red.rank()).transpose();
    return Subspace(std::move(basis), std::move(red.pivots));
  }

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const MatrixX<Scalar>& basis() const { return basis_; }
  const std::vector<Index>& pivot_rows() const { return pivots_; }

  /// Coordinates of v in the canonical basis; only meaningful for v in the subspace.
  VectorX<Scalar> coordinates(const VectorX<Scalar>& v) const {
    VectorX<Scalar> c(dim());
    for (Index k = 0; k < dim(); ++k) c(k) = v(pivots_[static_cast<size_t>(k)]);
    return c;
  }

  /// Coordinate matrix (dim x ambient) valid on vectors of the subspace.
  MatrixX<Scalar> coordinate_map() const {
    MatrixX<Scalar> c = MatrixX<Scalar>::Zero(dim(), ambient_dim());
    for (Index k = 0; k < dim(); ++k) c(k, pivots_[static_cast<size_t>(k)]) = Scalar(1);
    return c;
  }

  bool contains(const VectorX<Scalar>& v) const {
    VectorX<Scalar> residual = v - basis_ * coordinates(v);
    for (Index i = 0; i < residual.size(); ++i)
      if (!detail::zero(residual(i))) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    for (Index k = 0; k < other.dim(); ++k)
      if (!contains(VectorX<Scalar>(other.basis_.col(k)))) return false;
    return true;
  }

  bool is_full() const { return dim() == ambient_dim(); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.basis_.rows() == b.basis_.rows() && a.basis_.cols() == b.basis_.cols() &&
           a.basis_ == b.basis_;
  }

 private:
  Subspace(MatrixX<Scalar> basis, std::vector<Index> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  MatrixX<Scalar> basis_;
  std::vector<Index> pivots_;
};

using Space = Subspace<Rational>;

/// Null space of m, canonicalized.
template <class Scalar>
Subspace<Scalar> kernel(const MatrixX<Scalar>& m) {
  const Index cols = m.cols();
  if (m.rows() == 0) return Subspace<Scalar>::full(cols);
  auto red = rref<Scalar>(m);
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (Index p : red.pivots) is_pivot[static_cast<size_t>(p)] = true;
  MatrixX<Scalar> gens = MatrixX<Scalar>::Zero(cols, cols - red.rank());
  Index k = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    gens(f, k) = Scalar(1);
    for (Index r = 0; r < red.rank(); ++r) gens(red.pivots[static_cast<size_t>(r)], k) = -red.reduced(r, f);
    ++k;
  }
  return Subspace<Scalar>::span(gens);
}

template <class Scalar>
Subspace<Scalar> image(const MatrixX<Scalar>& m) {
  return Subspace<Scalar>::span(m);
}

/// One solution of m x = b, or nullopt when b is not in the column span.
template <class Scalar>
std::optional<VectorX<Scalar>> solve(const MatrixX<Scalar>& m, const VectorX<Scalar>& b) {
  if (b.size() != m.rows()) throw Error(ErrorKind::InvalidInput, "solve: shape mismatch");
  MatrixX<Scalar> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  auto red = rref<Scalar>(std::move(aug));
  VectorX<Scalar> x = VectorX<Scalar>::Zero(m.cols());
  for (Index r = 0; r < red.rank(); ++r) {
    const Index p = red.pivots[static_cast<size_t>(r)];
    if (p == m.cols()) return std::nullopt;
    x(p) = red.reduced(r, m.cols());
  }
  return x;
}

/// a * b skipping zero entries of a; exact scalars make dense products
/// expensive, and most structure maps here are sparse.
template <class Scalar>
MatrixX<Scalar> product(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidInput, "product: shape mismatch");
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(a.rows(), b.cols());
  for (Index k = 0; k < a.cols(); ++k)
    for (Index i = 0; i < a.rows(); ++i) {
      if (detail::zero(a(i, k))) continue;
      const Scalar& x = a(i, k);
      for (Index j = 0; j < b.cols(); ++j)
        if (!detail::zero(b(k, j))) out(i, j) += x * b(k, j);
    }
  return out;
}

/// Exact inverse of a square matrix; throws InvalidInput when singular.
template <class Scalar>
MatrixX<Scalar> inverse(const MatrixX<Scalar>& m) {
  const Index n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::InvalidInput, "inverse: matrix is not square");
  MatrixX<Scalar> aug(n, 2 * n);
  aug << m, MatrixX<Scalar>::Identity(n, n);
  auto red = rref<Scalar>(std::move(aug));
  if (red.rank() < n || (n > 0 && red.pivots.back() >= n)) throw Error(ErrorKind::InvalidInput, "inverse: matrix is singular");
  return red.reduced.rightCols(n);
}

template <class Scalar>
Subspace<Scalar> sum(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  MatrixX<Scalar> g(a.ambient_dim(), a.dim() + b.dim());
  g << a.basis(), b.basis();
  return Subspace<Scalar>::span(g);
}

template <class Scalar>
Subspace<Scalar> intersect(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  if (a.dim() == 0 || b.dim() == 0) return Subspace<Scalar>::zero(a.ambient_dim());
  MatrixX<Scalar> g(a.ambient_dim(), a.dim() + b.dim());
  g << a.basis(), -b.basis();
  const auto k = kernel<Scalar>(g);
  return Subspace<Scalar>::span(a.basis() * k.basis().topRows(a.dim()));
}

/// Image of a subspace under m.
template <class Scalar>
Subspace<Scalar> apply(const MatrixX<Scalar>& m, const Subspace<Scalar>& s) {
  return Subspace<Scalar>::span(m * s.basis());
}

/// {v : m v in target}.
template <class Scalar>
Subspace<Scalar> preimage(const MatrixX<Scalar>& m, const Subspace<Scalar>& target) {
  MatrixX<Scalar> g(m.rows(), m.cols() + target.dim());
  g << m, -target.basis();
  const auto k = kernel<Scalar>(g);
  return Subspace<Scalar>::span(MatrixX<Scalar>(k.basis().topRows(m.cols())));
}

/// Presentation of V/W: representatives of a basis (ambient x k) and a
/// projection (k x ambient) sending v in V to its quotient coordinates.
template <class Scalar>
struct Quotient {
  MatrixX<Scalar> representatives;
  MatrixX<Scalar> projection;
  Index dim() const { return representatives.cols(); }
};

template <class Scalar>
Quotient<Scalar> quotient_basis(const Subspace<Scalar>& v, const Subspace<Scalar>& w) {
  if (!v.contains(w)) throw Error(ErrorKind::NotSubspace, "quotient_basis: W is not contained in V");
  const Index n = v.ambient_dim();
  MatrixX<Scalar> joined(n, w.dim() + v.dim());
  joined << w.basis(), v.basis();
  const auto red = rref<Scalar>(joined);
  std::vector<Index> picked;
  for (Index p : red.pivots)
    if (p >= w.dim()) picked.push_back(p - w.dim());
  const Index k = static_cast<Index>(picked.size());
  Quotient<Scalar> q;
  q.representatives.resize(n, k);
  for (Index j = 0; j < k; ++j) q.representatives.col(j) = v.basis().col(picked[static_cast<size_t>(j)]);
  // Change of basis inside V-coordinates: [w | reps] -> identity.
  MatrixX<Scalar> in_v(v.dim(), v.dim());
  in_v << v.coordinate_map() * w.basis(), v.coordinate_map() * q.representatives;
  MatrixX<Scalar> aug(v.dim(), 2 * v.dim());
  aug << in_v, MatrixX<Scalar>::Identity(v.dim(), v.dim());
  const auto inv = rref<Scalar>(aug);
  MatrixX<Scalar> inverse = inv.reduced.rightCols(v.dim());
  q.projection = inverse.bottomRows(k) * v.coordinate_map();
  return q;
}

}  // namespace rht
