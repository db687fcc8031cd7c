#include <rht/cdga.hpp>

#include <sstream>

namespace rht {

namespace {

bool is_zero_vec(const Vector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) return false;
  return true;
}

Vector basis_vec(Index n, Index k) {
  Vector v = Vector::Zero(n);
  v(k) = 1;
  return v;
}

int sign(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

// out += c * m.col(j), touching only nonzero entries
void axpy_col(Vector& out, const Rational& c, const Matrix& m, Index j) {
  for (Index r = 0; r < m.rows(); ++r)
    if (!is_zero(m(r, j))) out(r) += c * m(r, j);
}

}  // namespace

CDGA::CDGA(Complex underlying, std::vector<std::vector<Matrix>> mult, Vector unit, std::optional<Vector> augmentation)
    : complex_(std::move(underlying)), mult_(std::move(mult)), unit_(std::move(unit)), aug_(std::move(augmentation)) {
  if (complex_.empty()) throw Error(ErrorKind::InvalidAlgebra, "algebra needs at least degree 0");
  if (complex_.lower_bound() != 0) throw Error(ErrorKind::InvalidAlgebra, "algebras live in degrees >= 0");
  const int t = top();
  if (static_cast<int>(mult_.size()) != t + 1) throw Error(ErrorKind::InvalidAlgebra, "need mult rows for i = 0..top");
  for (int i = 0; i <= t; ++i) {
    if (static_cast<int>(mult_[static_cast<size_t>(i)].size()) != t - i + 1)
      throw Error(ErrorKind::InvalidAlgebra, "need mult(i, j) exactly for i + j <= top");
    for (int j = 0; i + j <= t; ++j) {
      const Matrix& m = mult_[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (m.rows() != dim(i + j) || m.cols() != dim(i) * dim(j))
        throw Error(ErrorKind::InvalidAlgebra, "mult(" + std::to_string(i) + "," + std::to_string(j) + ") has wrong shape");
    }
  }
  if (unit_.size() != dim(0)) throw Error(ErrorKind::InvalidAlgebra, "unit must live in degree 0");
  if (aug_ && aug_->size() != dim(0)) throw Error(ErrorKind::InvalidAlgebra, "augmentation must be a functional on degree 0");
}

CDGA CDGA::ground() {
  return CDGA(Complex::concentrated(0, 1), {{Matrix::Identity(1, 1)}}, Vector::Ones(1), Vector::Ones(1));
}

CDGA CDGA::square_zero(const Complex& v) {
  if (v.empty()) return ground();
  if (v.lower_bound() < 0) throw Error(ErrorKind::InvalidInput, "square_zero: V must live in degrees >= 0");
  const int t = v.top();
  std::vector<Index> dims;
  std::vector<Matrix> d;
  for (int k = 0; k <= t; ++k) dims.push_back(v.dim(k) + (k == 0 ? 1 : 0));
  for (int k = 0; k < t; ++k) {
    Matrix m = Matrix::Zero(dims[static_cast<size_t>(k + 1)], dims[static_cast<size_t>(k)]);
    const Index r0 = (k + 1 == 0) ? 1 : 0;
    const Index c0 = (k == 0) ? 1 : 0;
    m.block(r0, c0, v.dim(k + 1), v.dim(k)) = v.d(k);
    d.push_back(m);
  }
  Complex c(0, dims, d);
  std::vector<std::vector<Matrix>> mult(static_cast<size_t>(t + 1));
  for (int i = 0; i <= t; ++i)
    for (int j = 0; i + j <= t; ++j) {
      Matrix m = Matrix::Zero(c.dim(i + j), c.dim(i) * c.dim(j));
      // 1 * e_b and e_a * 1
      if (i == 0)
        for (Index b = 0; b < c.dim(j); ++b) m(b, 0 * c.dim(j) + b) = 1;
      if (j == 0)
        for (Index a = 0; a < c.dim(i); ++a) m(a, a * c.dim(0) + 0) = 1;
      mult[static_cast<size_t>(i)].push_back(m);
    }
  Vector unit = basis_vec(c.dim(0), 0);
  return CDGA(c, mult, unit, unit);
}

CDGA CDGA::truncated_polynomial(int degree, int power) {
  if (degree <= 0 || degree % 2 != 0) throw Error(ErrorKind::InvalidInput, "polynomial generator needs positive even degree");
  if (power < 1) throw Error(ErrorKind::InvalidInput, "power must be >= 1");
  const int t = degree * (power - 1);
  std::vector<Index> dims(static_cast<size_t>(t + 1), 0);
  for (int k = 0; k < power; ++k) dims[static_cast<size_t>(k * degree)] = 1;
  Complex c = Complex::graded(0, dims);
  std::vector<std::vector<Matrix>> mult(static_cast<size_t>(t + 1));
  for (int i = 0; i <= t; ++i)
    for (int j = 0; i + j <= t; ++j) {
      Matrix m = Matrix::Zero(c.dim(i + j), c.dim(i) * c.dim(j));
      if (c.dim(i) && c.dim(j) && c.dim(i + j)) m(0, 0) = 1;
      mult[static_cast<size_t>(i)].push_back(m);
    }
  return CDGA(c, mult, Vector::Ones(1), Vector::Ones(1));
}

CDGA CDGA::exterior(int degree) {
  if (degree <= 0 || degree % 2 == 0) throw Error(ErrorKind::InvalidInput, "exterior generator needs positive odd degree");
  std::vector<Index> dims(static_cast<size_t>(degree + 1), 0);
  dims[0] = 1;
  dims[static_cast<size_t>(degree)] = 1;
  Complex c = Complex::graded(0, dims);
  std::vector<std::vector<Matrix>> mult(static_cast<size_t>(degree + 1));
  for (int i = 0; i <= degree; ++i)
    for (int j = 0; i + j <= degree; ++j) {
      Matrix m = Matrix::Zero(c.dim(i + j), c.dim(i) * c.dim(j));
      if ((i == 0 || j == 0) && c.dim(i) && c.dim(j)) m(0, 0) = 1;
      mult[static_cast<size_t>(i)].push_back(m);
    }
  return CDGA(c, mult, Vector::Ones(1), Vector::Ones(1));
}

const Matrix& CDGA::mult(int i, int j) const {
  if (i < 0 || j < 0 || i + j > top()) throw Error(ErrorKind::InvalidInput, "mult: degrees out of range");
  return mult_[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

Vector CDGA::multiply(int i, const Vector& x, int j, const Vector& y) const {
  if (i < 0 || j < 0 || i + j > top()) return Vector::Zero(dim(i + j));
  const Matrix& m = mult(i, j);
  Vector out = Vector::Zero(m.rows());
  const Index nj = dim(j);
  for (Index a = 0; a < x.size(); ++a) {
    if (is_zero(x(a))) continue;
    for (Index b = 0; b < y.size(); ++b) {
      if (is_zero(y(b))) continue;
      axpy_col(out, x(a) * y(b), m, a * nj + b);
    }
  }
  return out;
}

Vector CDGA::basis_product(int i, Index a, int j, Index b) const {
  if (i + j > top()) return Vector::Zero(0);
  return mult(i, j).col(a * dim(j) + b);
}

CDGA CDGA::with_augmentation(std::optional<Vector> aug) const { return CDGA(complex_, mult_, unit_, std::move(aug)); }

bool operator==(const CDGA& a, const CDGA& b) {
  if (!(a.complex_ == b.complex_) || a.unit_ != b.unit_ || a.aug_.has_value() != b.aug_.has_value()) return false;
  if (a.aug_ && *a.aug_ != *b.aug_) return false;
  for (size_t i = 0; i < a.mult_.size(); ++i)
    for (size_t j = 0; j < a.mult_[i].size(); ++j)
      if (a.mult_[i][j] != b.mult_[i][j]) return false;
  return true;
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << identity << " at (";
  for (size_t k = 0; k < where.size(); ++k) os << (k ? "," : "") << where[k];
  os << ")";
  return os.str();
}

ValidationReport validate(const CDGA& a) {
  ValidationReport rep;
  const int t = a.top();
  const Complex& c = a.complex();
  auto add = [&](const char* what, std::vector<int> where) { rep.violations.push_back({what, std::move(where)}); };
  std::vector<Matrix> d;
  for (int k = 0; k <= t; ++k) d.push_back(c.d(k));
  auto dk = [&](int k) -> const Matrix& { return d[static_cast<size_t>(k)]; };
  // v * e_y and e_x * v for a general v, skipping zero coefficients
  auto left = [&](int i, const Vector& v, int j, Index y) {
    Vector out = Vector::Zero(a.dim(i + j));
    const Matrix& m = a.mult(i, j);
    for (Index u = 0; u < v.size(); ++u)
      if (!is_zero(v(u))) axpy_col(out, v(u), m, u * a.dim(j) + y);
    return out;
  };
  auto right = [&](int i, Index x, int j, const Vector& v) {
    Vector out = Vector::Zero(a.dim(i + j));
    const Matrix& m = a.mult(i, j);
    for (Index u = 0; u < v.size(); ++u)
      if (!is_zero(v(u))) axpy_col(out, v(u), m, x * a.dim(j) + u);
    return out;
  };

  if (!is_zero_vec(Vector(dk(0) * a.unit()))) add("unit-closed", {0});
  for (int i = 0; i <= t; ++i)
    for (Index x = 0; x < a.dim(i); ++x) {
      const Vector ex = basis_vec(a.dim(i), x);
      if (left(0, a.unit(), i, x) != ex) add("left-unit", {i, static_cast<int>(x)});
      if (right(i, x, 0, a.unit()) != ex) add("right-unit", {i, static_cast<int>(x)});
    }
  for (int i = 0; i <= t; ++i)
    for (int j = 0; i + j <= t; ++j) {
      const Matrix& mij = a.mult(i, j);
      const Matrix& mji = a.mult(j, i);
      const Rational s(sign(i * j)), si(sign(i));
      for (Index x = 0; x < a.dim(i); ++x)
        for (Index y = 0; y < a.dim(j); ++y) {
          const Vector xy = mij.col(x * a.dim(j) + y);
          const std::vector<int> at{i, static_cast<int>(x), j, static_cast<int>(y)};
          if (xy != s * mji.col(y * a.dim(i) + x)) add("commutativity", at);
          if (i + j + 1 <= t) {
            const Vector lhs = dk(i + j) * xy;
            const Vector rhs = left(i + 1, Vector(dk(i).col(x)), j, y) + si * right(i, x, j + 1, Vector(dk(j).col(y)));
            if (lhs != rhs) add("leibniz", at);
          }
          for (int k = 0; i + j + k <= t; ++k) {
            const Matrix& mjk = a.mult(j, k);
            for (Index z = 0; z < a.dim(k); ++z) {
              const Vector l = left(i + j, xy, k, z);
              const Vector r = right(i, x, j + k, Vector(mjk.col(y * a.dim(k) + z)));
              if (l != r) add("associativity", {i, static_cast<int>(x), j, static_cast<int>(y), k, static_cast<int>(z)});
            }
          }
        }
    }
  if (a.augmentation()) {
    const Vector& e = *a.augmentation();
    if (e.dot(a.unit()) != Rational(1)) add("augmentation-unit", {0});
    for (Index x = 0; x < a.dim(0); ++x)
      for (Index y = 0; y < a.dim(0); ++y) {
        const Vector xy = a.basis_product(0, x, 0, y);
        if (e.dot(xy) != e(x) * e(y)) add("augmentation-multiplicative", {static_cast<int>(x), static_cast<int>(y)});
      }
  }
  return rep;
}

ValidationReport validate_morphism(const CDGA& s, const CDGA& t, const std::vector<Matrix>& f) {
  ValidationReport rep;
  auto comp = [&](int k) -> Matrix {
    if (k < 0 || k > s.top()) return Matrix::Zero(t.dim(k), s.dim(k));
    return f[static_cast<size_t>(k)];
  };
  if (comp(0) * s.unit() != t.unit()) rep.violations.push_back({"unit", {0}});
  for (int i = 0; i <= s.top(); ++i) {
    const Matrix fi = comp(i);
    for (int j = 0; i + j <= t.top(); ++j) {
      if (s.dim(i) == 0 || s.dim(j) == 0) continue;
      const Matrix fj = comp(j);
      // f(e_x e_y) for all pairs at once
      const Matrix lhs = i + j <= s.top() ? product<Rational>(comp(i + j), s.mult(i, j))
                                          : Matrix::Zero(t.dim(i + j), s.dim(i) * s.dim(j));
      for (Index x = 0; x < s.dim(i); ++x)
        for (Index y = 0; y < s.dim(j); ++y) {
          const Vector rhs = t.multiply(i, Vector(fi.col(x)), j, Vector(fj.col(y)));
          if (lhs.col(x * s.dim(j) + y) != rhs)
            rep.violations.push_back({"multiplicative", {i, static_cast<int>(x), j, static_cast<int>(y)}});
        }
    }
  }
  if (s.augmentation() && t.augmentation()) {
    const Vector pulled = (t.augmentation()->transpose() * comp(0)).transpose();
    if (pulled != *s.augmentation()) rep.violations.push_back({"augmentation", {0}});
  }
  return rep;
}

CDGAMorphism::CDGAMorphism(CDGA source, CDGA target, std::vector<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)) {
  map_ = ChainMap(source_.complex(), target_.complex(), components);
  const auto rep = validate_morphism(source_, target_, components);
  if (!rep.ok()) throw Error(ErrorKind::InvalidAlgebra, "not an algebra map: " + rep.violations.front().describe());
}

CDGAMorphism CDGAMorphism::identity(const CDGA& a) {
  std::vector<Matrix> f;
  for (Index n : a.complex().dims()) f.push_back(Matrix::Identity(n, n));
  return CDGAMorphism(a, a, f);
}

CDGA tensor(const CDGA& a, const CDGA& b) {
  const int t = a.top() + b.top();
  // offsets[n][i]: start of the A^i (x) B^{n-i} block inside degree n
  std::vector<std::vector<Index>> off(static_cast<size_t>(t + 1));
  std::vector<Index> dims;
  for (int n = 0; n <= t; ++n) {
    Index acc = 0;
    for (int i = 0; i <= n; ++i) {
      off[static_cast<size_t>(n)].push_back(acc);
      acc += a.dim(i) * b.dim(n - i);
    }
    dims.push_back(acc);
  }
  auto index = [&](int n, int i, Index x, Index y) { return off[static_cast<size_t>(n)][static_cast<size_t>(i)] + x * b.dim(n - i) + y; };
  std::vector<Matrix> d;
  for (int n = 0; n < t; ++n) {
    Matrix m = Matrix::Zero(dims[static_cast<size_t>(n + 1)], dims[static_cast<size_t>(n)]);
    for (int i = 0; i <= n; ++i) {
      const int j = n - i;
      const Matrix da = a.complex().d(i), db = b.complex().d(j);
      for (Index x = 0; x < a.dim(i); ++x)
        for (Index y = 0; y < b.dim(j); ++y) {
          const Index col = index(n, i, x, y);
          for (Index x2 = 0; x2 < a.dim(i + 1); ++x2)
            if (!is_zero(da(x2, x))) m(index(n + 1, i + 1, x2, y), col) += da(x2, x);
          for (Index y2 = 0; y2 < b.dim(j + 1); ++y2)
            if (!is_zero(db(y2, y))) m(index(n + 1, i, x, y2), col) += Rational(sign(i)) * db(y2, y);
        }
    }
    d.push_back(m);
  }
  Complex c(0, dims, d);
  std::vector<std::vector<Matrix>> mult(static_cast<size_t>(t + 1));
  for (int p = 0; p <= t; ++p)
    for (int q = 0; p + q <= t; ++q) {
      Matrix m = Matrix::Zero(c.dim(p + q), c.dim(p) * c.dim(q));
      for (int i = 0; i <= p; ++i)
        for (int k = 0; k <= q; ++k) {
          const int j = p - i, l = q - k;
          if (i + k > a.top() || j + l > b.top()) continue;
          const int s = sign(j * k);
          for (Index x = 0; x < a.dim(i); ++x)
            for (Index y = 0; y < b.dim(j); ++y)
              for (Index x2 = 0; x2 < a.dim(k); ++x2)
                for (Index y2 = 0; y2 < b.dim(l); ++y2) {
                  const Vector ax = a.basis_product(i, x, k, x2);
                  const Vector by = b.basis_product(j, y, l, y2);
                  const Index col = index(p, i, x, y) * c.dim(q) + index(q, k, x2, y2);
                  for (Index u = 0; u < ax.size(); ++u) {
                    if (is_zero(ax(u))) continue;
                    for (Index v = 0; v < by.size(); ++v) {
                      if (is_zero(by(v))) continue;
                      m(index(p + q, i + k, u, v), col) += Rational(s) * ax(u) * by(v);
                    }
                  }
                }
        }
      mult[static_cast<size_t>(p)].push_back(m);
    }
  Vector unit = Vector::Zero(c.dim(0));
  for (Index x = 0; x < a.dim(0); ++x)
    for (Index y = 0; y < b.dim(0); ++y) unit(index(0, 0, x, y)) = a.unit()(x) * b.unit()(y);
  std::optional<Vector> aug;
  if (a.augmented() && b.augmented()) {
    Vector e = Vector::Zero(c.dim(0));
    for (Index x = 0; x < a.dim(0); ++x)
      for (Index y = 0; y < b.dim(0); ++y) e(index(0, 0, x, y)) = (*a.augmentation())(x) * (*b.augmentation())(y);
    aug = e;
  }
  return CDGA(c, mult, unit, aug);
}

HStar h_star(const CDGA& a) {
  HStar out;
  out.groups = cohomology(a.complex());
  const Cohomology& h = out.groups;
  const int t = a.top();
  std::vector<Index> dims;
  for (int k = 0; k <= t; ++k) dims.push_back(h.dim(k));
  std::vector<std::vector<Matrix>> mult(static_cast<size_t>(t + 1));
  for (int i = 0; i <= t; ++i)
    for (int j = 0; i + j <= t; ++j) {
      const auto& gi = *h.at(i);
      const auto& gj = *h.at(j);
      const auto& gij = *h.at(i + j);
      Matrix m = Matrix::Zero(gij.dim(), gi.dim() * gj.dim());
      for (Index x = 0; x < gi.dim(); ++x)
        for (Index y = 0; y < gj.dim(); ++y) {
          const Vector p = a.multiply(i, Vector(gi.quotient.representatives.col(x)), j, Vector(gj.quotient.representatives.col(y)));
          m.col(x * gj.dim() + y) = gij.quotient.projection * p;
        }
      // cycle * boundary must be a boundary
      for (Index x = 0; x < gi.dim(); ++x)
        for (Index y = 0; y < gj.boundaries.dim(); ++y) {
          const Vector p = a.multiply(i, Vector(gi.quotient.representatives.col(x)), j, Vector(gj.boundaries.basis().col(y)));
          if (!gij.boundaries.contains(p))
            throw Error(ErrorKind::InvalidAlgebra, "product on cohomology depends on representatives in degree " +
                                                       std::to_string(i) + "+" + std::to_string(j));
        }
      mult[static_cast<size_t>(i)].push_back(m);
    }
  const auto& g0 = *h.at(0);
  Vector unit = g0.quotient.projection * a.unit();
  std::optional<Vector> aug;
  if (a.augmented()) aug = Vector((a.augmentation()->transpose() * g0.quotient.representatives).transpose());
  out.algebra = CDGA(Complex::graded(0, dims), mult, unit, aug);
  return out;
}

CDGA change_basis(const CDGA& a, const std::vector<Matrix>& p) {
  const int t = a.top();
  std::vector<Matrix> inv;
  for (const auto& m : p) inv.push_back(inverse<Rational>(m));
  std::vector<Matrix> d;
  for (int k = 0; k < t; ++k) d.push_back(p[static_cast<size_t>(k + 1)] * a.complex().d(k) * inv[static_cast<size_t>(k)]);
  Complex c(0, a.complex().dims(), d);
  std::vector<std::vector<Matrix>> mult(static_cast<size_t>(t + 1));
  for (int i = 0; i <= t; ++i)
    for (int j = 0; i + j <= t; ++j) {
      Matrix m(a.dim(i + j), a.dim(i) * a.dim(j));
      for (Index x = 0; x < a.dim(i); ++x)
        for (Index y = 0; y < a.dim(j); ++y)
          m.col(x * a.dim(j) + y) = p[static_cast<size_t>(i + j)] *
                                    a.multiply(i, Vector(inv[static_cast<size_t>(i)].col(x)), j, Vector(inv[static_cast<size_t>(j)].col(y)));
      mult[static_cast<size_t>(i)].push_back(m);
    }
  Vector unit = p[0] * a.unit();
  std::optional<Vector> aug;
  if (a.augmented()) aug = Vector((a.augmentation()->transpose() * inv[0]).transpose());
  return CDGA(c, mult, unit, aug);
}

}  // namespace rht
