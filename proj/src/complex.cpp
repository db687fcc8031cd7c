#include <rht/complex.hpp>

#include <algorithm>
#include <string>

namespace rht {

namespace {

bool all_zero(const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

}  // namespace

Complex::Complex(int lower_bound, std::vector<Index> dims, std::vector<Matrix> differentials)
    : lower_(lower_bound), dims_(std::move(dims)), d_(std::move(differentials)) {
  const size_t n = dims_.size();
  if (n == 0) {
    if (!d_.empty()) throw Error(ErrorKind::NotComplex, "differentials given for an empty complex");
    return;
  }
  if (d_.size() == n) {
    if (d_.back().rows() != 0 && !all_zero(d_.back()))
      throw Error(ErrorKind::NotComplex, "nonzero differential out of the top degree");
    d_.pop_back();
  }
  if (d_.size() + 1 != n)
    throw Error(ErrorKind::NotComplex, "expected " + std::to_string(n - 1) + " differentials, got " +
                                           std::to_string(d_.size()));
  for (size_t k = 0; k + 1 < n; ++k) {
    if (d_[k].rows() != dims_[k + 1] || d_[k].cols() != dims_[k])
      throw Error(ErrorKind::NotComplex,
                  "differential out of degree " + std::to_string(lower_ + static_cast<int>(k)) + " has shape " +
                      std::to_string(d_[k].rows()) + "x" + std::to_string(d_[k].cols()));
  }
  for (size_t k = 0; k + 2 < n; ++k) {
    if (!all_zero(Matrix(d_[k + 1] * d_[k])))
      throw Error(ErrorKind::NotComplex, "d∘d != 0 out of degree " + std::to_string(lower_ + static_cast<int>(k)));
  }
}

Complex Complex::concentrated(int degree, Index dim) { return Complex(degree, {dim}, {}); }

Complex Complex::graded(int lower_bound, std::vector<Index> dims) {
  std::vector<Matrix> d;
  for (size_t k = 0; k + 1 < dims.size(); ++k) d.push_back(Matrix::Zero(dims[k + 1], dims[k]));
  return Complex(lower_bound, std::move(dims), std::move(d));
}

Index Complex::dim(int degree) const {
  if (!in_range(degree)) return 0;
  return dims_[static_cast<size_t>(degree - lower_)];
}

Matrix Complex::d(int degree) const {
  if (degree >= lower_ && degree < top()) return d_[static_cast<size_t>(degree - lower_)];
  return Matrix::Zero(dim(degree + 1), dim(degree));
}

Index Complex::total_dim() const {
  Index s = 0;
  for (Index x : dims_) s += x;
  return s;
}

int Complex::euler_characteristic() const {
  int chi = 0;
  for (int k = lower_; k <= top(); ++k) chi += ((k % 2 == 0) ? 1 : -1) * static_cast<int>(dim(k));
  return chi;
}

bool operator==(const Complex& a, const Complex& b) {
  if (a.lower_ != b.lower_ || a.dims_ != b.dims_) return false;
  for (size_t k = 0; k < a.d_.size(); ++k)
    if (a.d_[k] != b.d_[k]) return false;
  return true;
}

ChainMap::ChainMap(Complex source, Complex target, std::vector<Matrix> components, bool check)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(components)) {
  if (f_.size() != source_.dims().size())
    throw Error(ErrorKind::NotChainMap, "expected one component per source degree");
  for (int k = source_.lower_bound(); k <= source_.top(); ++k) {
    const Matrix& m = f_[static_cast<size_t>(k - source_.lower_bound())];
    if (m.rows() != target_.dim(k) || m.cols() != source_.dim(k))
      throw Error(ErrorKind::NotChainMap, "component in degree " + std::to_string(k) + " has wrong shape");
  }
  if (check) {
    const auto bad = commutation_failures();
    if (!bad.empty())
      throw Error(ErrorKind::NotChainMap, "map does not commute with d in degree " + std::to_string(bad.front()));
  }
}

ChainMap ChainMap::identity(const Complex& c) {
  std::vector<Matrix> f;
  for (Index n : c.dims()) f.push_back(Matrix::Identity(n, n));
  return ChainMap(c, c, std::move(f), false);
}

ChainMap ChainMap::zero(const Complex& source, const Complex& target) {
  std::vector<Matrix> f;
  for (int k = source.lower_bound(); k <= source.top(); ++k) f.push_back(Matrix::Zero(target.dim(k), source.dim(k)));
  return ChainMap(source, target, std::move(f), false);
}

Matrix ChainMap::at(int degree) const {
  if (source_.in_range(degree)) return f_[static_cast<size_t>(degree - source_.lower_bound())];
  return Matrix::Zero(target_.dim(degree), source_.dim(degree));
}

std::vector<int> ChainMap::commutation_failures() const {
  std::vector<int> bad;
  const int lo = std::min(source_.lower_bound(), target_.lower_bound()) - 1;
  const int hi = std::max(source_.top(), target_.top());
  for (int k = lo; k <= hi; ++k) {
    const Matrix lhs = target_.d(k) * at(k);
    const Matrix rhs = at(k + 1) * source_.d(k);
    if (!all_zero(Matrix(lhs - rhs))) bad.push_back(k);
  }
  return bad;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  std::vector<Matrix> comps;
  const Complex& s = f.source();
  for (int k = s.lower_bound(); k <= s.top(); ++k) comps.push_back(product<Rational>(g.at(k), f.at(k)));
  return ChainMap(s, g.target(), std::move(comps), false);
}

const CohomologyGroup* Cohomology::at(int degree) const {
  const int k = degree - lower_bound;
  if (k < 0 || k >= static_cast<int>(groups.size())) return nullptr;
  return &groups[static_cast<size_t>(k)];
}

Index Cohomology::dim(int degree) const {
  const auto* g = at(degree);
  return g ? g->dim() : 0;
}

std::vector<Index> Cohomology::dims() const {
  std::vector<Index> out;
  for (const auto& g : groups) out.push_back(g.dim());
  return out;
}

Cohomology cohomology(const Complex& c) {
  Cohomology h;
  h.lower_bound = c.lower_bound();
  for (int k = c.lower_bound(); k <= c.top(); ++k) {
    CohomologyGroup g;
    g.degree = k;
    g.cycles = kernel<Rational>(c.d(k));
    g.boundaries = image<Rational>(c.d(k - 1));
    g.quotient = quotient_basis(g.cycles, g.boundaries);
    h.groups.push_back(std::move(g));
  }
  return h;
}

Matrix induced_map(const ChainMap& f, const Cohomology& hs, const Cohomology& ht, int degree) {
  const auto* s = hs.at(degree);
  const auto* t = ht.at(degree);
  const Index ds = s ? s->dim() : 0;
  const Index dt = t ? t->dim() : 0;
  if (ds == 0 || dt == 0) return Matrix::Zero(dt, ds);
  return t->quotient.projection * (f.at(degree) * s->quotient.representatives);
}

QuasiIsoReport is_quasi_iso(const ChainMap& f, std::optional<int> max_degree) {
  const Cohomology hs = cohomology(f.source());
  const Cohomology ht = cohomology(f.target());
  QuasiIsoReport r;
  r.min_degree = std::min(f.source().lower_bound(), f.target().lower_bound());
  r.max_degree = std::max(f.source().top(), f.target().top());
  if (max_degree) r.max_degree = std::min(r.max_degree, *max_degree);
  for (int k = r.min_degree; k <= r.max_degree; ++k) {
    Matrix m = induced_map(f, hs, ht, k);
    const bool iso = m.rows() == m.cols() && rank<Rational>(m) == m.rows();
    if (!iso) {
      r.quasi_iso = false;
      r.failing_degrees.push_back(k);
    }
    r.induced.push_back(std::move(m));
  }
  return r;
}

Index DoubleComplex::dim(int i, int j) const {
  const int a = i - column_lower;
  const int b = j - row_lower;
  if (a < 0 || a >= columns() || b < 0 || b >= rows()) return 0;
  return dims[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

Matrix DoubleComplex::h(int i, int j) const {
  const int a = i - column_lower;
  const int b = j - row_lower;
  if (a < 0 || a + 1 >= columns() || b < 0 || b >= rows()) return Matrix::Zero(dim(i + 1, j), dim(i, j));
  return horizontal[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

Matrix DoubleComplex::v(int i, int j) const {
  const int a = i - column_lower;
  const int b = j - row_lower;
  if (a < 0 || a >= columns() || b < 0 || b + 1 >= rows()) return Matrix::Zero(dim(i, j + 1), dim(i, j));
  return vertical[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

Complex tot(const DoubleComplex& dc, TotLayout* layout) {
  const int ci = dc.column_lower;
  const int cj = dc.row_lower;
  const int ni = dc.columns();
  const int nj = dc.rows();
  for (int i = ci; i < ci + ni; ++i) {
    for (int j = cj; j < cj + nj; ++j) {
      const Matrix h = dc.h(i, j);
      const Matrix v = dc.v(i, j);
      if (h.rows() != dc.dim(i + 1, j) || h.cols() != dc.dim(i, j) || v.rows() != dc.dim(i, j + 1) ||
          v.cols() != dc.dim(i, j))
        throw Error(ErrorKind::NotDoubleComplex, "bad map shape at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (!all_zero(Matrix(dc.h(i + 1, j) * h)) || !all_zero(Matrix(dc.v(i, j + 1) * v)))
        throw Error(ErrorKind::NotDoubleComplex, "row or column is not a complex at (" + std::to_string(i) + "," +
                                                     std::to_string(j) + ")");
      const Matrix hv = dc.h(i, j + 1) * v;
      const Matrix vh = dc.v(i + 1, j) * h;
      const bool ok = dc.signs == DoubleComplex::Signs::Twist ? all_zero(Matrix(hv - vh)) : all_zero(Matrix(hv + vh));
      if (!ok)
        throw Error(ErrorKind::NotDoubleComplex, "square at (" + std::to_string(i) + "," + std::to_string(j) +
                                                     ") fails the sign rule");
    }
  }
  if (ni == 0 || nj == 0) {
    if (layout) *layout = TotLayout{};
    return Complex::zero();
  }
  const int lo = ci + cj;
  const int hi = ci + ni - 1 + cj + nj - 1;
  TotLayout lay;
  lay.lower_bound = lo;
  std::vector<Index> dims;
  for (int n = lo; n <= hi; ++n) {
    std::vector<Index> off;
    Index acc = 0;
    for (int i = ci; i < ci + ni; ++i) {
      off.push_back(acc);
      acc += dc.dim(i, n - i);
    }
    off.push_back(acc);
    dims.push_back(acc);
    lay.offsets.push_back(std::move(off));
  }
  std::vector<Matrix> d;
  for (int n = lo; n < hi; ++n) {
    const auto& src = lay.offsets[static_cast<size_t>(n - lo)];
    const auto& dst = lay.offsets[static_cast<size_t>(n + 1 - lo)];
    Matrix m = Matrix::Zero(dims[static_cast<size_t>(n + 1 - lo)], dims[static_cast<size_t>(n - lo)]);
    for (int i = ci; i < ci + ni; ++i) {
      const int j = n - i;
      const Index sd = dc.dim(i, j);
      if (sd == 0) continue;
      const Index so = src[static_cast<size_t>(i - ci)];
      if (i + 1 < ci + ni && dc.dim(i + 1, j) > 0)
        m.block(dst[static_cast<size_t>(i + 1 - ci)], so, dc.dim(i + 1, j), sd) += dc.h(i, j);
      if (dc.dim(i, j + 1) > 0) {
        Matrix v = dc.v(i, j);
        if (dc.signs == DoubleComplex::Signs::Twist && ((i % 2) != 0)) v = -v;
        m.block(dst[static_cast<size_t>(i - ci)], so, dc.dim(i, j + 1), sd) += v;
      }
    }
    d.push_back(std::move(m));
  }
  if (layout) *layout = std::move(lay);
  return Complex(lo, std::move(dims), std::move(d));
}

}  // namespace rht
