#include <rht/filtration.hpp>

#include <algorithm>

namespace rht {

namespace {

std::string at(int p, int degree) { return "(p=" + std::to_string(p) + ", degree " + std::to_string(degree) + ")"; }

}  // namespace

FilteredComplex::FilteredComplex(Complex c, int p_min, std::vector<std::vector<Space>> steps)
    : complex_(std::move(c)), p_min_(p_min), steps_(std::move(steps)) {
  if (static_cast<Index>(steps_.size()) != static_cast<Index>(complex_.dims().size()))
    throw Error(ErrorKind::NotFiltered, "one filtration chain per degree expected");
  if (steps_.empty()) return;
  const size_t len = steps_.front().size();
  if (len == 0) throw Error(ErrorKind::NotFiltered, "empty filtration chain");
  for (size_t k = 0; k < steps_.size(); ++k) {
    const int degree = complex_.lower_bound() + static_cast<int>(k);
    const auto& chain = steps_[k];
    if (chain.size() != len) throw Error(ErrorKind::NotFiltered, "filtration chains have different lengths");
    for (size_t i = 0; i < len; ++i) {
      const int p = p_min_ + static_cast<int>(i);
      if (chain[i].ambient_dim() != complex_.dim(degree)) throw Error(ErrorKind::NotFiltered, "wrong ambient dimension at " + at(p, degree));
      if (i > 0 && !chain[i].contains(chain[i - 1])) throw Error(ErrorKind::NotFiltered, "chain is not increasing at " + at(p, degree));
    }
    if (!chain.back().is_full()) throw Error(ErrorKind::NotFiltered, "filtration is not exhaustive in degree " + std::to_string(degree));
  }
  for (int degree = complex_.lower_bound(); degree < complex_.top(); ++degree)
    for (int p = p_min_; p <= p_max(); ++p)
      if (!w(p, degree + 1).contains(apply<Rational>(complex_.d(degree), w(p, degree))))
        throw Error(ErrorKind::NotFiltered, "d does not preserve W at " + at(p, degree));
}

FilteredComplex FilteredComplex::trivial(const Complex& c, int p) {
  std::vector<std::vector<Space>> steps;
  for (Index n : c.dims()) steps.push_back({Space::full(n)});
  return FilteredComplex(c, p, steps);
}

FilteredComplex FilteredComplex::from_weights(const Complex& c, const std::vector<std::vector<int>>& weights) {
  if (weights.size() != c.dims().size()) throw Error(ErrorKind::NotFiltered, "one weight list per degree expected");
  int lo = 0, hi = 0;
  bool any = false;
  for (size_t k = 0; k < weights.size(); ++k) {
    if (static_cast<Index>(weights[k].size()) != c.dims()[k]) throw Error(ErrorKind::NotFiltered, "one weight per basis vector expected");
    for (int x : weights[k]) {
      lo = any ? std::min(lo, x) : x;
      hi = any ? std::max(hi, x) : x;
      any = true;
    }
  }
  std::vector<std::vector<Space>> steps;
  for (size_t k = 0; k < weights.size(); ++k) {
    std::vector<Space> chain;
    for (int p = lo; p <= hi; ++p) {
      std::vector<Index> picked;
      for (size_t i = 0; i < weights[k].size(); ++i)
        if (weights[k][i] <= p) picked.push_back(static_cast<Index>(i));
      Matrix g = Matrix::Zero(c.dims()[k], static_cast<Index>(picked.size()));
      for (size_t i = 0; i < picked.size(); ++i) g(picked[i], static_cast<Index>(i)) = 1;
      chain.push_back(Space::span(g));
    }
    steps.push_back(std::move(chain));
  }
  return FilteredComplex(c, lo, steps);
}

Space FilteredComplex::w(int p, int degree) const {
  const Index n = complex_.dim(degree);
  if (!complex_.in_range(degree) || p >= p_max()) return Space::full(n);
  if (p < p_min_) return Space::zero(n);
  return steps_[static_cast<size_t>(degree - complex_.lower_bound())][static_cast<size_t>(p - p_min_)];
}

std::vector<GradedPiece> graded_pieces(const FilteredComplex& fc) {
  const Complex& c = fc.complex();
  std::vector<GradedPiece> out;
  for (int p = fc.p_min(); p <= fc.p_max(); ++p) {
    GradedPiece g;
    g.p = p;
    std::vector<Index> dims;
    for (int n = c.lower_bound(); n <= c.top(); ++n) {
      g.quotients.push_back(quotient_basis(fc.w(p, n), fc.w(p - 1, n)));
      dims.push_back(g.quotients.back().dim());
    }
    std::vector<Matrix> d;
    for (int n = c.lower_bound(); n < c.top(); ++n) {
      const size_t k = static_cast<size_t>(n - c.lower_bound());
      d.push_back(g.quotients[k + 1].projection * product<Rational>(c.d(n), g.quotients[k].representatives));
    }
    g.complex = c.empty() ? Complex::zero() : Complex(c.lower_bound(), dims, d);
    out.push_back(std::move(g));
  }
  return out;
}

FilteredCDGA::FilteredCDGA(CDGA a, FilteredComplex w) : algebra_(std::move(a)), filtration_(std::move(w)) {
  const Complex& c = algebra_.complex();
  const Complex& fcx = filtration_.complex();
  if (c.dims() != fcx.dims() || c.lower_bound() != fcx.lower_bound())
    throw Error(ErrorKind::NotFiltered, "filtration lives on a different complex");
  for (int n = c.lower_bound(); n < c.top(); ++n)
    if (c.d(n) != fcx.d(n)) throw Error(ErrorKind::NotFiltered, "filtration lives on a different complex");
  const FilteredComplex& f = filtration_;
  for (int i = 0; i <= algebra_.top(); ++i)
    for (int j = 0; i + j <= algebra_.top(); ++j)
      for (int p = f.p_min(); p <= f.p_max(); ++p)
        for (int q = f.p_min(); q <= f.p_max(); ++q) {
          const Space wp = f.w(p, i), wq = f.w(q, j), target = f.w(p + q, i + j);
          if (target.is_full()) continue;
          for (Index x = 0; x < wp.dim(); ++x)
            for (Index y = 0; y < wq.dim(); ++y)
              if (!target.contains(algebra_.multiply(i, wp.basis().col(x), j, wq.basis().col(y))))
                throw Error(ErrorKind::NotFiltered, "W_" + std::to_string(p) + " W_" + std::to_string(q) + " leaves W_" +
                                                        std::to_string(p + q) + " in degrees " + std::to_string(i) +
                                                        "+" + std::to_string(j));
        }
}

// ---------------------------------------------------------------------------
// Spectral sequence

namespace {

// E_r^{p,n} for any p (zero outside the filtration range).
SpectralEntry entry(const FilteredComplex& fc, int r, int p, int n) {
  const Complex& c = fc.complex();
  const Matrix d = c.d(n), d_in = c.d(n - 1);
  const Space lands = preimage<Rational>(d, fc.w(p - r, n + 1));
  SpectralEntry e;
  e.z = intersect(fc.w(p, n), lands);
  const Space lower = intersect(fc.w(p - 1, n), lands);
  const Space from = intersect(fc.w(p + r - 1, n - 1), preimage<Rational>(d_in, fc.w(p, n)));
  e.b = sum(lower, apply<Rational>(d_in, from));
  e.quotient = quotient_basis(e.z, e.b);
  return e;
}

}  // namespace

Index SpectralPage::dim(int p, int n) const {
  if (!in_range(p, n)) return 0;
  return entries[static_cast<size_t>(n - lower)][static_cast<size_t>(p - p_min)].dim();
}

Matrix SpectralPage::differential(int p, int n) const {
  if (!in_range(p, n)) return Matrix(dim(p - r, n + 1), 0);
  return d[static_cast<size_t>(n - lower)][static_cast<size_t>(p - p_min)];
}

bool SpectralPage::differential_vanishes() const {
  for (const auto& row : d)
    for (const auto& m : row)
      for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
          if (!is_zero(m(i, j))) return false;
  return true;
}

Index SpectralPage::total(int n) const {
  Index s = 0;
  for (int p = p_min; p <= p_max; ++p) s += dim(p, n);
  return s;
}

SpectralPage spectral_page(const FilteredComplex& fc, int r) {
  if (r < 0) throw Error(ErrorKind::InvalidInput, "page index must be >= 0");
  const Complex& c = fc.complex();
  SpectralPage page;
  page.r = r;
  page.p_min = fc.p_min();
  page.p_max = fc.p_max();
  page.lower = c.lower_bound();
  page.top = c.top();
  for (int n = page.lower; n <= page.top; ++n) {
    std::vector<SpectralEntry> row;
    for (int p = page.p_min; p <= page.p_max; ++p) row.push_back(entry(fc, r, p, n));
    page.entries.push_back(std::move(row));
  }
  for (int n = page.lower; n <= page.top; ++n) {
    std::vector<Matrix> row;
    for (int p = page.p_min; p <= page.p_max; ++p) {
      const SpectralEntry& src = page.entries[static_cast<size_t>(n - page.lower)][static_cast<size_t>(p - page.p_min)];
      if (!page.in_range(p - r, n + 1)) {
        row.push_back(Matrix(0, src.dim()));
        continue;
      }
      const SpectralEntry& dst = page.entries[static_cast<size_t>(n + 1 - page.lower)][static_cast<size_t>(p - r - page.p_min)];
      row.push_back(dst.quotient.projection * product<Rational>(c.d(n), src.quotient.representatives));
    }
    page.d.push_back(std::move(row));
  }
  return page;
}

std::vector<SpectralPage> spectral_sequence(const FilteredComplex& fc, int r_max) {
  std::vector<SpectralPage> out;
  for (int r = 0; r <= r_max; ++r) out.push_back(spectral_page(fc, r));
  return out;
}

int stable_page(const FilteredComplex& fc) { return fc.p_max() - fc.p_min() + 1; }

int degeneration_page(const FilteredComplex& fc) {
  int r0 = 0;
  for (int r = 0; r < stable_page(fc); ++r)
    if (!spectral_page(fc, r).differential_vanishes()) r0 = r + 1;
  return r0;
}

ErQuasiIsoReport is_er_quasi_iso(const FilteredComplex& source, const FilteredComplex& target, const ChainMap& f,
                                 int r, std::optional<int> max_degree) {
  if (r < 0) throw Error(ErrorKind::InvalidInput, "r must be >= 0");
  const Complex& s = source.complex();
  const Complex& t = target.complex();
  if (!(f.source() == s) || !(f.target() == t)) throw Error(ErrorKind::InvalidInput, "map does not match the filtered complexes");
  const int p_lo = std::min(source.p_min(), target.p_min()), p_hi = std::max(source.p_max(), target.p_max());
  int lo = s.empty() ? t.lower_bound() : s.lower_bound(), hi = s.empty() ? t.top() : s.top();
  if (!t.empty()) {
    lo = std::min(lo, t.lower_bound());
    hi = std::max(hi, t.top());
  }
  for (int n = lo; n <= hi; ++n)
    for (int p = p_lo; p <= p_hi; ++p)
      if (!target.w(p, n).contains(apply<Rational>(f.at(n), source.w(p, n))))
        throw Error(ErrorKind::NotFiltered, "f(W_p) is not inside W'_p at " + at(p, n));
  ErQuasiIsoReport rep;
  rep.page = r + 1;
  if (max_degree) hi = std::min(hi, *max_degree);
  for (int n = lo; n <= hi; ++n)
    for (int p = p_lo; p <= p_hi; ++p) {
      const SpectralEntry a = entry(source, r + 1, p, n), b = entry(target, r + 1, p, n);
      bool iso = a.dim() == b.dim();
      if (iso && a.dim() > 0) {
        const Matrix m = b.quotient.projection * product<Rational>(f.at(n), a.quotient.representatives);
        iso = rank<Rational>(m) == a.dim();
      }
      if (!iso) {
        rep.holds = false;
        rep.failing.emplace_back(p, n);
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Cosimplicial filtrations

namespace {

void check_levels(const CosimplicialModule& a, const std::vector<FilteredComplex>& w) {
  if (static_cast<int>(w.size()) != a.truncation() + 1)
    throw Error(ErrorKind::IncompatibleFiltration, "one filtered level per cosimplicial level expected");
  for (int n = 0; n <= a.truncation(); ++n)
    if (!(w[static_cast<size_t>(n)].complex() == a.level(n)))
      throw Error(ErrorKind::IncompatibleFiltration, "filtration of level " + std::to_string(n) + " lives on another complex");
}

void check_map(const ChainMap& m, const FilteredComplex& s, const FilteredComplex& t, const std::string& name) {
  const Complex& c = s.complex();
  const int p_lo = std::min(s.p_min(), t.p_min()), p_hi = std::max(s.p_max(), t.p_max());
  for (int j = c.lower_bound(); j <= c.top(); ++j)
    for (int p = p_lo; p <= p_hi; ++p)
      if (!t.w(p, j).contains(apply<Rational>(m.at(j), s.w(p, j))))
        throw Error(ErrorKind::IncompatibleFiltration, name + " breaks W at " + at(p, j));
}

struct Rows {
  int lo = 0, hi = -1;
};

Rows row_range(const CosimplicialModule& a) {
  Rows r;
  bool any = false;
  for (int n = 0; n <= a.truncation(); ++n) {
    const Complex& l = a.level(n);
    if (l.empty()) continue;
    r.lo = any ? std::min(r.lo, l.lower_bound()) : l.lower_bound();
    r.hi = any ? std::max(r.hi, l.top()) : l.top();
    any = true;
  }
  return r;
}

// Stacks one subspace per column block into Tot^m.
Space block_sum(const std::vector<Space>& blocks, const std::vector<Index>& offsets, Index total) {
  Index cols = 0;
  for (const auto& b : blocks) cols += b.dim();
  Matrix g = Matrix::Zero(total, cols);
  Index at_col = 0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    g.block(offsets[i], at_col, blocks[i].ambient_dim(), blocks[i].dim()) = blocks[i].basis();
    at_col += blocks[i].dim();
  }
  return Space::span(g);
}

// D*W on a total complex whose column i, row j is embedded in level i via
// embed(i, j) (dim A^{i,j} x dim block).
template <class Embed>
FilteredComplex convolve(const Complex& total, const TotLayout& layout, int columns, int row_lower,
                         const std::vector<FilteredComplex>& w, Embed embed) {
  int p_lo = 0, p_hi = 0;
  for (int i = 0; i < columns; ++i) {
    const auto& f = w[static_cast<size_t>(i)];
    p_lo = i == 0 ? f.p_min() - i : std::min(p_lo, f.p_min() - i);
    p_hi = i == 0 ? f.p_max() - i : std::max(p_hi, f.p_max() - i);
  }
  std::vector<std::vector<Space>> steps;
  for (int m = total.lower_bound(); m <= total.top(); ++m) {
    const auto& off = layout.offsets[static_cast<size_t>(m - layout.lower_bound)];
    std::vector<Space> chain;
    for (int p = p_lo; p <= p_hi; ++p) {
      std::vector<Space> blocks;
      for (int i = 0; i < columns; ++i) {
        const int j = m - i;
        const Matrix e = embed(i, j);
        if (e.cols() == 0 || j < row_lower) {
          blocks.push_back(Space::zero(e.cols()));
          continue;
        }
        blocks.push_back(preimage<Rational>(e, w[static_cast<size_t>(i)].w(p + i, j)));
      }
      chain.push_back(block_sum(blocks, off, total.dim(m)));
    }
    steps.push_back(std::move(chain));
  }
  return FilteredComplex(total, p_lo, steps);
}

DoubleComplex unnormalized_double(const CosimplicialModule& a) {
  const Rows rows = row_range(a);
  DoubleComplex dc;
  dc.column_lower = 0;
  dc.row_lower = rows.lo;
  dc.signs = DoubleComplex::Signs::Twist;
  const int top = a.truncation();
  for (int n = 0; n <= top; ++n) {
    std::vector<Index> dims;
    std::vector<Matrix> vert, horiz;
    for (int j = rows.lo; j <= rows.hi; ++j) {
      dims.push_back(a.level(n).dim(j));
      if (j < rows.hi) vert.push_back(a.level(n).d(j));
      if (n < top) {
        Matrix h = Matrix::Zero(a.level(n + 1).dim(j), a.level(n).dim(j));
        for (int i = 0; i <= n + 1; ++i) {
          const Matrix m = a.coface(n + 1, i).at(j);
          if (i % 2 == 0)
            h += m;
          else
            h -= m;
        }
        horiz.push_back(h);
      }
    }
    dc.dims.push_back(dims);
    dc.vertical.push_back(vert);
    if (n < top) dc.horizontal.push_back(horiz);
  }
  return dc;
}

}  // namespace

void check_compatible(const CosimplicialModule& a, const std::vector<FilteredComplex>& w) {
  check_levels(a, w);
  const int top = a.truncation();
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i)
      check_map(a.coface(n, i), w[static_cast<size_t>(n - 1)], w[static_cast<size_t>(n)],
                "coface d" + std::to_string(i) + " into level " + std::to_string(n));
  for (int n = 0; n < top; ++n)
    for (int i = 0; i <= n; ++i)
      check_map(a.codegeneracy(n, i), w[static_cast<size_t>(n + 1)], w[static_cast<size_t>(n)],
                "codegeneracy s" + std::to_string(i) + " into level " + std::to_string(n));
}

FilteredComplex convolution(const CosimplicialModule& a, const std::vector<FilteredComplex>& w) {
  check_compatible(a, w);
  const Normalized norm = normalize(a);
  TotLayout layout;
  const Complex total = tot(norm.double_complex, &layout);
  const int row_lower = norm.double_complex.row_lower;
  const int rows = norm.double_complex.rows();
  return convolve(total, layout, a.truncation() + 1, row_lower, w, [&](int i, int j) -> Matrix {
    if (j < row_lower || j >= row_lower + rows) return Matrix(a.level(i).dim(j), 0);
    return norm.basis[static_cast<size_t>(i)][static_cast<size_t>(j - row_lower)];
  });
}

Complex tot_unnormalized(const CosimplicialModule& a) { return tot(unnormalized_double(a)); }

FilteredComplex convolution_unnormalized(const CosimplicialModule& a, const std::vector<FilteredComplex>& w) {
  check_compatible(a, w);
  const DoubleComplex dc = unnormalized_double(a);
  TotLayout layout;
  const Complex total = tot(dc, &layout);
  return convolve(total, layout, a.truncation() + 1, dc.row_lower, w,
                  [&](int i, int j) -> Matrix { return Matrix::Identity(a.level(i).dim(j), a.level(i).dim(j)); });
}

ChainMap normalized_inclusion(const CosimplicialModule& a) {
  const Normalized norm = normalize(a);
  TotLayout ln, lu;
  const Complex tn = tot(norm.double_complex, &ln);
  const Complex tu = tot(unnormalized_double(a), &lu);
  const int row_lower = norm.double_complex.row_lower;
  std::vector<Matrix> comps;
  for (int m = tn.lower_bound(); m <= tn.top(); ++m) {
    Matrix f = Matrix::Zero(tu.dim(m), tn.dim(m));
    for (int i = 0; i <= a.truncation(); ++i) {
      const int j = m - i;
      if (j < row_lower || j >= row_lower + norm.double_complex.rows()) continue;
      const Matrix& b = norm.basis[static_cast<size_t>(i)][static_cast<size_t>(j - row_lower)];
      f.block(lu.offsets[static_cast<size_t>(m - lu.lower_bound)][static_cast<size_t>(i)],
              ln.offsets[static_cast<size_t>(m - ln.lower_bound)][static_cast<size_t>(i)], b.rows(), b.cols()) = b;
    }
    comps.push_back(f);
  }
  return ChainMap(tn, tu, comps);
}

FrobeniusOperator tot_n_frobenius(const CosimplicialModule& a, const std::vector<FrobeniusOperator>& f) {
  if (static_cast<int>(f.size()) != a.truncation() + 1) throw Error(ErrorKind::InvalidInput, "one Frobenius per level expected");
  const long q = f.empty() ? 0 : f.front().q;
  for (int n = 0; n <= a.truncation(); ++n) {
    validate_frobenius(a.level(n), f[static_cast<size_t>(n)]);
    if (f[static_cast<size_t>(n)].q != q) throw Error(ErrorKind::InvalidInput, "levels use different q");
  }
  auto phi = [&](int n, int j) {
    const Complex& c = a.level(n);
    if (!c.in_range(j)) return Matrix(Matrix::Zero(0, 0));
    return f[static_cast<size_t>(n)].phi[static_cast<size_t>(j - c.lower_bound())];
  };
  auto commutes = [&](const ChainMap& m, int src, int dst, const std::string& name) {
    for (int j = m.source().lower_bound(); j <= m.source().top(); ++j)
      if (product<Rational>(m.at(j), phi(src, j)) != product<Rational>(phi(dst, j), m.at(j)))
        throw Error(ErrorKind::InvalidInput, "Frobenius does not commute with " + name);
  };
  for (int n = 1; n <= a.truncation(); ++n)
    for (int i = 0; i <= n; ++i) commutes(a.coface(n, i), n - 1, n, "coface d" + std::to_string(i) + " at level " + std::to_string(n));
  for (int n = 0; n < a.truncation(); ++n)
    for (int i = 0; i <= n; ++i)
      commutes(a.codegeneracy(n, i), n + 1, n, "codegeneracy s" + std::to_string(i) + " at level " + std::to_string(n));
  const Normalized norm = normalize(a);
  TotLayout layout;
  const Complex total = tot(norm.double_complex, &layout);
  const int row_lower = norm.double_complex.row_lower;
  FrobeniusOperator out;
  out.q = q;
  for (int m = total.lower_bound(); m <= total.top(); ++m) {
    Matrix g = Matrix::Zero(total.dim(m), total.dim(m));
    const auto& off = layout.offsets[static_cast<size_t>(m - layout.lower_bound)];
    for (int i = 0; i <= a.truncation(); ++i) {
      const int j = m - i;
      if (j < row_lower || j >= row_lower + norm.double_complex.rows()) continue;
      const Matrix& b = norm.basis[static_cast<size_t>(i)][static_cast<size_t>(j - row_lower)];
      if (b.cols() == 0) continue;
      const Space s = Space::span(b);
      g.block(off[static_cast<size_t>(i)], off[static_cast<size_t>(i)], b.cols(), b.cols()) =
          s.coordinate_map() * product<Rational>(phi(i, j), b);
    }
    out.phi.push_back(g);
  }
  return out;
}

}  // namespace rht
