#include <rht/bar.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <tuple>

namespace rht {

namespace {

int parity(int x) { return ((x % 2) + 2) % 2; }

void accumulate(BarElement& out, const Word& w, const Rational& c) {
  if (is_zero(c)) return;
  auto [it, fresh] = out.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (is_zero(it->second)) out.erase(it);
  }
}

}  // namespace

int BarComplex::degree(const Word& w) const {
  int n = 0;
  for (int id : w) n += letters_[static_cast<size_t>(id)].degree - 1;
  return n;
}

const std::vector<Word>& BarComplex::words(int n) const {
  static const std::vector<Word> none;
  if (!complex_.in_range(n)) return none;
  return words_[static_cast<size_t>(n - complex_.lower_bound())];
}

Index BarComplex::index(const Word& w) const {
  const auto it = index_.find(w);
  if (it == index_.end()) throw Error(ErrorKind::InvalidInput, "word longer than the cap or of unknown letters");
  return it->second;
}

std::vector<std::pair<int, Rational>> BarComplex::expand(int k, const Vector& v) const {
  std::vector<std::pair<int, Rational>> out;
  if (k < 0 || k > source_.top()) return out;
  const Vector c = k == 0 ? abar0_.coordinates(v) : v;
  if (k == 0 && !abar0_.contains(v)) throw Error(ErrorKind::NotAugmented, "element outside the augmentation ideal");
  for (Index i = 0; i < c.size(); ++i)
    if (!is_zero(c(i))) out.emplace_back(offset_[static_cast<size_t>(k)] + static_cast<int>(i), c(i));
  return out;
}

BarElement BarComplex::d(const BarElement& x) const {
  BarElement out;
  for (const auto& [w, coeff] : x) {
    int eps = 0;  // sum of bar degrees of the letters before position i
    for (size_t i = 0; i < w.size(); ++i) {
      const int l = w[i];
      const Rational s_int = parity(eps + 1) ? Rational(-1) : Rational(1);
      for (const auto& [id, c] : dletter_[static_cast<size_t>(l)]) {
        Word v = w;
        v[i] = id;
        accumulate(out, v, s_int * c * coeff);
      }
      eps += letters_[static_cast<size_t>(l)].degree - 1;
      if (i + 1 == w.size()) break;
      const Rational s_ext = parity(eps) ? Rational(-1) : Rational(1);
      for (const auto& [id, c] : product_[static_cast<size_t>(l)][static_cast<size_t>(w[i + 1])]) {
        Word v(w.begin(), w.begin() + static_cast<long>(i));
        v.push_back(id);
        v.insert(v.end(), w.begin() + static_cast<long>(i) + 2, w.end());
        accumulate(out, v, s_ext * c * coeff);
      }
    }
  }
  return out;
}

Vector BarComplex::to_vector(int n, const BarElement& x) const {
  Vector v = Vector::Zero(complex_.dim(n));
  for (const auto& [w, c] : x) {
    if (is_zero(c)) continue;
    if (degree(w) != n) throw Error(ErrorKind::InvalidInput, "word of the wrong degree");
    v(index(w)) += c;
  }
  return v;
}

BarElement BarComplex::from_vector(int n, const Vector& v) const {
  BarElement x;
  const auto& ws = words(n);
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) x.emplace(ws[static_cast<size_t>(i)], v(i));
  return x;
}

BarComplex bar(const CDGA& a, int word_cap) {
  if (word_cap < 0) throw Error(ErrorKind::InvalidInput, "negative word-length cap");
  if (!a.augmented()) throw Error(ErrorKind::NotAugmented, "the bar construction needs an augmentation");
  if (a.complex().lower_bound() != 0) throw Error(ErrorKind::InvalidAlgebra, "CDGA not concentrated in degrees >= 0");
  if (cohomology(a.complex()).dim(0) != 1) throw Error(ErrorKind::NotConnected, "dim H^0 != 1");

  BarComplex b;
  b.source_ = a;
  b.cap_ = word_cap;
  Matrix eps(1, a.dim(0));
  eps.row(0) = a.augmentation()->transpose();
  b.abar0_ = kernel<Rational>(eps);
  b.reduced_ = b.abar0_.dim() == 0;
  for (int k = 0; k <= a.top(); ++k) {
    b.offset_.push_back(static_cast<int>(b.letters_.size()));
    const Matrix basis = k == 0 ? b.abar0_.basis() : Matrix(Matrix::Identity(a.dim(k), a.dim(k)));
    for (Index i = 0; i < basis.cols(); ++i) b.letters_.push_back({k, i, basis.col(i)});
  }
  const size_t nl = b.letters_.size();
  b.dletter_.resize(nl);
  b.product_.assign(nl, std::vector<std::vector<std::pair<int, Rational>>>(nl));
  for (size_t l = 0; l < nl; ++l) {
    const BarLetter& x = b.letters_[l];
    if (x.degree < a.top()) b.dletter_[l] = b.expand(x.degree + 1, a.complex().d(x.degree) * x.vector);
    for (size_t r = 0; r < nl; ++r) {
      const BarLetter& y = b.letters_[r];
      if (x.degree + y.degree <= a.top())
        b.product_[l][r] = b.expand(x.degree + y.degree, a.multiply(x.degree, x.vector, y.degree, y.vector));
    }
  }

  b.min_letter_ = 0;
  if (nl > 0) {
    b.min_letter_ = b.letters_[0].degree - 1;
    for (const auto& l : b.letters_) b.min_letter_ = std::min(b.min_letter_, l.degree - 1);
  }
  const int m = b.min_letter_;
  b.exact_through_ = nl == 0 ? std::numeric_limits<int>::max() / 2 : (m >= 1 ? word_cap * m + m - 1 : -1);

  // Words by length, then lexicographically.
  std::vector<Word> all{Word{}};
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= word_cap && nl > 0; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (size_t l = 0; l < nl; ++l) {
        Word v = w;
        v.push_back(static_cast<int>(l));
        next.push_back(std::move(v));
      }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  int lo = 0, hi = 0;
  for (const Word& w : all) {
    lo = std::min(lo, b.degree(w));
    hi = std::max(hi, b.degree(w));
  }
  b.words_.assign(static_cast<size_t>(hi - lo + 1), {});
  for (const Word& w : all) {
    auto& bucket = b.words_[static_cast<size_t>(b.degree(w) - lo)];
    b.index_[w] = static_cast<Index>(bucket.size());
    bucket.push_back(w);
  }
  std::vector<Index> dims;
  for (const auto& ws : b.words_) dims.push_back(static_cast<Index>(ws.size()));
  std::vector<Matrix> diffs;
  b.complex_ = Complex::graded(lo, dims);
  for (int n = lo; n < hi; ++n) {
    Matrix dn = Matrix::Zero(dims[static_cast<size_t>(n + 1 - lo)], dims[static_cast<size_t>(n - lo)]);
    const auto& ws = b.words_[static_cast<size_t>(n - lo)];
    for (size_t j = 0; j < ws.size(); ++j)
      for (const auto& [w, c] : b.d(BarElement{{ws[j], Rational(1)}})) dn(b.index(w), static_cast<Index>(j)) = c;
    diffs.push_back(std::move(dn));
  }
  b.complex_ = Complex(lo, dims, diffs);  // checks d^2 = 0
  return b;
}

BarElement shuffle(const BarComplex& b, const BarElement& x, const BarElement& y) {
  BarElement out;
  const auto& letters = b.letters();
  auto s = [&](int id) { return letters[static_cast<size_t>(id)].degree - 1; };
  for (const auto& [u, cu] : x)
    for (const auto& [v, cv] : y) {
      Word w;
      // sign: (-1)^{s(u_i) s(v_j)} for every v_j placed before u_i
      std::function<void(size_t, size_t, int)> rec = [&](size_t i, size_t j, int sign) {
        if (i == u.size() && j == v.size()) {
          accumulate(out, w, sign > 0 ? cu * cv : -(cu * cv));
          return;
        }
        if (i < u.size()) {
          int vdeg = 0;
          for (size_t k = 0; k < j; ++k) vdeg += s(v[k]);
          w.push_back(u[i]);
          rec(i + 1, j, parity(vdeg * s(u[i])) ? -sign : sign);
          w.pop_back();
        }
        if (j < v.size()) {
          w.push_back(v[j]);
          rec(i, j + 1, sign);
          w.pop_back();
        }
      };
      rec(0, 0, 1);
    }
  return out;
}

std::map<std::pair<Word, Word>, Rational> deconcatenate(const BarElement& x) {
  std::map<std::pair<Word, Word>, Rational> out;
  for (const auto& [w, c] : x) {
    if (is_zero(c)) continue;
    for (size_t k = 0; k <= w.size(); ++k) {
      auto key = std::make_pair(Word(w.begin(), w.begin() + static_cast<long>(k)), Word(w.begin() + static_cast<long>(k), w.end()));
      out[key] += c;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

size_t max_length(const BarElement& x) {
  size_t m = 0;
  for (const auto& [w, c] : x)
    if (!is_zero(c)) m = std::max(m, w.size());
  return m;
}

ChainMap bar_map(const BarComplex& source, const BarComplex& target, const CDGAMorphism& f) {
  if (target.word_cap() < source.word_cap()) throw Error(ErrorKind::InvalidInput, "target cap below source cap");
  const auto& letters = source.letters();
  std::vector<std::vector<std::pair<int, Rational>>> image(letters.size());
  for (size_t l = 0; l < letters.size(); ++l)
    image[l] = target.expand(letters[l].degree, f.at(letters[l].degree) * letters[l].vector);
  const Complex& s = source.complex();
  const Complex& t = target.complex();
  std::vector<Matrix> comps;
  for (int n = s.lower_bound(); n <= s.top(); ++n) {
    Matrix m = Matrix::Zero(t.dim(n), s.dim(n));
    const auto& ws = source.words(n);
    for (size_t j = 0; j < ws.size(); ++j) {
      BarElement acc{{Word{}, Rational(1)}};
      for (int l : ws[j]) {
        BarElement next;
        for (const auto& [w, c] : acc)
          for (const auto& [id, c2] : image[static_cast<size_t>(l)]) {
            Word v = w;
            v.push_back(id);
            accumulate(next, v, c * c2);
          }
        acc = std::move(next);
      }
      for (const auto& [w, c] : acc) m(target.index(w), static_cast<Index>(j)) = c;
    }
    comps.push_back(std::move(m));
  }
  return ChainMap(s, t, comps);
}

BarElement HopfH0::element(Index i) const { return bar.from_vector(0, basis.col(i)); }

Vector HopfH0::coordinates(const BarElement& x) const { return coordinate_map * bar.to_vector(0, x); }

std::optional<Vector> HopfH0::product(Index i, Index j) const {
  if (length[static_cast<size_t>(i)] + length[static_cast<size_t>(j)] > bar.word_cap()) return std::nullopt;
  return coordinates(shuffle(bar, element(i), element(j)));
}

Matrix HopfH0::coproduct(Index i) const {
  const Index n = bar.complex().dim(0);
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [pq, c] : deconcatenate(element(i))) m(bar.index(pq.first), bar.index(pq.second)) += c;
  return rht::product<Rational>(rht::product<Rational>(coordinate_map, m), Matrix(coordinate_map.transpose()));
}

namespace {

using Tensor3 = std::map<std::tuple<Index, Index, Index>, Rational>;

void add(Tensor3& t, Index a, Index b, Index c, const Rational& x) {
  if (is_zero(x)) return;
  auto& slot = t[{a, b, c}];
  slot += x;
}

bool equal(const Tensor3& a, const Tensor3& b) {
  auto clean = [](const Tensor3& t) {
    Tensor3 r;
    for (const auto& [k, v] : t)
      if (!is_zero(v)) r.emplace(k, v);
    return r;
  };
  return clean(a) == clean(b);
}

}  // namespace

std::vector<std::string> HopfH0::failures() const {
  std::vector<std::string> out;
  const Index h = dim();
  const int cap = bar.word_cap();
  const Index n0 = bar.complex().dim(0);
  auto len = [&](Index i) { return length[static_cast<size_t>(i)]; };
  std::vector<Matrix> delta;
  for (Index i = 0; i < h; ++i) {
    delta.push_back(coproduct(i));
    Matrix m = Matrix::Zero(n0, n0);
    for (const auto& [pq, c] : deconcatenate(element(i))) m(bar.index(pq.first), bar.index(pq.second)) += c;
    if (rht::product<Rational>(rht::product<Rational>(basis, delta.back()), Matrix(basis.transpose())) != m)
      out.push_back("coproduct of basis element " + std::to_string(i) + " does not descend");
  }
  std::map<std::pair<Index, Index>, Vector> prod;
  for (Index i = 0; i < h; ++i)
    for (Index j = 0; j < h; ++j) {
      if (len(i) + len(j) > cap) continue;
      const BarElement x = shuffle(bar, element(i), element(j));
      const Vector v = bar.to_vector(0, x);
      const Vector c = coordinate_map * v;
      if (basis * c != v) out.push_back("product e" + std::to_string(i) + " e" + std::to_string(j) + " is not a cycle");
      prod[{i, j}] = c;
    }
  for (const auto& [ij, c] : prod)
    if (prod.at({ij.second, ij.first}) != c)
      out.push_back("commutativity fails on " + std::to_string(ij.first) + "," + std::to_string(ij.second));
  auto mul = [&](const Vector& x, Index k) {
    Vector r = Vector::Zero(h);
    for (Index i = 0; i < h; ++i)
      if (!is_zero(x(i))) r += x(i) * prod.at({i, k});
    return r;
  };
  for (Index i = 0; i < h; ++i)
    for (Index j = 0; j < h; ++j)
      for (Index k = 0; k < h; ++k) {
        if (len(i) + len(j) + len(k) > cap) continue;
        Vector lhs = mul(prod.at({i, j}), k);
        Vector rhs = Vector::Zero(h);
        const Vector& jk = prod.at({j, k});
        for (Index l = 0; l < h; ++l)
          if (!is_zero(jk(l))) rhs += jk(l) * prod.at({i, l});
        if (lhs != rhs) out.push_back("associativity fails");
      }
  for (Index i = 0; i < h; ++i) {
    Tensor3 left, right;
    const Matrix& c = delta[static_cast<size_t>(i)];
    for (Index a = 0; a < h; ++a)
      for (Index b = 0; b < h; ++b) {
        if (is_zero(c(a, b))) continue;
        const Matrix& da = delta[static_cast<size_t>(a)];
        const Matrix& db = delta[static_cast<size_t>(b)];
        for (Index x = 0; x < h; ++x)
          for (Index y = 0; y < h; ++y) {
            add(left, x, y, b, c(a, b) * da(x, y));
            add(right, a, x, y, c(a, b) * db(x, y));
          }
      }
    if (!equal(left, right)) out.push_back("coassociativity fails on " + std::to_string(i));
  }
  for (Index i = 0; i < h; ++i)
    for (Index j = 0; j < h; ++j) {
      if (len(i) + len(j) > cap) continue;
      const Vector& p = prod.at({i, j});
      Matrix lhs = Matrix::Zero(h, h);
      for (Index k = 0; k < h; ++k)
        if (!is_zero(p(k))) lhs += p(k) * delta[static_cast<size_t>(k)];
      Matrix rhs = Matrix::Zero(h, h);
      const Matrix& di = delta[static_cast<size_t>(i)];
      const Matrix& dj = delta[static_cast<size_t>(j)];
      for (Index a = 0; a < h; ++a)
        for (Index b = 0; b < h; ++b) {
          if (is_zero(di(a, b))) continue;
          for (Index c = 0; c < h; ++c)
            for (Index d = 0; d < h; ++d) {
              if (is_zero(dj(c, d))) continue;
              const Rational w = di(a, b) * dj(c, d);
              const Vector& ac = prod.at({a, c});
              const Vector& bd = prod.at({b, d});
              for (Index x = 0; x < h; ++x)
                if (!is_zero(ac(x)))
                  for (Index y = 0; y < h; ++y)
                    if (!is_zero(bd(y))) rhs(x, y) += w * ac(x) * bd(y);
            }
        }
      if (lhs != rhs) out.push_back("bialgebra identity fails on " + std::to_string(i) + "," + std::to_string(j));
    }
  return out;
}

std::vector<Index> HopfH0::primitive_dims() const {
  std::vector<Index> out;
  const Index h = dim();
  for (int l = 0; l <= bar.word_cap(); ++l) {
    Index ideal = 0;
    for (Index i = 1; i < h; ++i)
      if (length[static_cast<size_t>(i)] <= l) ++ideal;
    std::vector<Vector> cols;
    for (Index i = 1; i < h; ++i)
      for (Index j = i; j < h; ++j)
        if (length[static_cast<size_t>(i)] + length[static_cast<size_t>(j)] <= l) cols.push_back(*product(i, j));
    Matrix d(h, static_cast<Index>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) d.col(static_cast<Index>(k)) = cols[k];
    out.push_back(ideal - (cols.empty() ? 0 : rank<Rational>(d)));
  }
  return out;
}

HopfH0 h0_hopf(const BarComplex& b) {
  if (!b.reduced()) throw Error(ErrorKind::NotReduced, "H^0 Hopf structure needs A^0 = K");
  HopfH0 hopf{b, {}, {}, {}};
  const Complex& c = b.complex();
  const auto& ws = b.words(0);
  const Index n0 = c.dim(0);
  const Matrix d0 = c.top() > 0 ? c.d(0) : Matrix(Matrix::Zero(0, n0));
  std::vector<Vector> cols;
  std::vector<int> lens;
  Space prev = Space::zero(n0);
  for (int l = 0; l <= b.word_cap(); ++l) {
    Index k = 0;
    while (k < n0 && static_cast<int>(ws[static_cast<size_t>(k)].size()) <= l) ++k;
    const Space zk = kernel<Rational>(Matrix(d0.leftCols(k)));
    Matrix embedded = Matrix::Zero(n0, zk.dim());
    embedded.topRows(k) = zk.basis();
    const Space zl = Space::span(embedded);
    const auto q = quotient_basis(zl, prev);
    for (Index j = 0; j < q.dim(); ++j) {
      Vector v = q.representatives.col(j);
      if (l > 0) v(0) = 0;  // move into the augmentation ideal; [] is a cycle
      cols.push_back(v);
      lens.push_back(l);
    }
    prev = zl;
  }
  hopf.basis.resize(n0, static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) hopf.basis.col(static_cast<Index>(j)) = cols[j];
  hopf.length = lens;
  const Space s = Space::span(hopf.basis);
  const Matrix t = s.coordinate_map() * hopf.basis;
  hopf.coordinate_map = inverse<Rational>(t) * s.coordinate_map();
  return hopf;
}

std::vector<Index> Indecomposables::dims() const {
  std::vector<Index> d;
  for (const auto& q : degrees) d.push_back(q.dim());
  return d;
}

Indecomposables indecomposables(const CDGA& a) {
  if (!a.augmented()) throw Error(ErrorKind::NotAugmented, "indecomposables need an augmentation");
  std::vector<Matrix> ideal;
  for (int n = 0; n <= a.top(); ++n) {
    if (n == 0) {
      Matrix eps(1, a.dim(0));
      eps.row(0) = a.augmentation()->transpose();
      ideal.push_back(kernel<Rational>(eps).basis());
    } else {
      ideal.push_back(Matrix::Identity(a.dim(n), a.dim(n)));
    }
  }
  Indecomposables out;
  for (int n = 0; n <= a.top(); ++n) {
    std::vector<Vector> prods;
    for (int i = 0; i <= n; ++i)
      for (Index x = 0; x < ideal[static_cast<size_t>(i)].cols(); ++x)
        for (Index y = 0; y < ideal[static_cast<size_t>(n - i)].cols(); ++y)
          prods.push_back(a.multiply(i, ideal[static_cast<size_t>(i)].col(x), n - i, ideal[static_cast<size_t>(n - i)].col(y)));
    Matrix dm(a.dim(n), static_cast<Index>(prods.size()));
    for (size_t k = 0; k < prods.size(); ++k) dm.col(static_cast<Index>(k)) = prods[k];
    out.degrees.push_back(quotient_basis(Space::span(ideal[static_cast<size_t>(n)]), Space::span(dm)));
  }
  return out;
}

HomotopyGroup pi_n(const CDGA& a, int n, int word_cap) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "pi_n is extracted for n >= 2");
  const BarComplex b = bar(a, word_cap);
  if (!b.reduced()) throw Error(ErrorKind::NotReduced, "pi_n needs A^0 = K");
  const Cohomology h = cohomology(b.complex());
  HomotopyGroup g;
  g.n = n;
  const int deg = n - 1;
  const CohomologyGroup* target = h.at(deg);
  bool within = true;
  if (target == nullptr || target->dim() == 0) {
    g.dual_basis = Matrix(0, target ? target->dim() : 0);
    g.exact = deg <= b.exact_through();
    g.provenance = "H^" + std::to_string(deg) + "(B) = 0 at cap " + std::to_string(word_cap);
    return g;
  }
  auto classes = [&](int i) {
    std::vector<BarElement> reps;
    const CohomologyGroup* gi = h.at(i);
    if (gi == nullptr) return reps;
    for (Index k = 0; k < gi->dim(); ++k) {
      BarElement x = b.from_vector(i, gi->quotient.representatives.col(k));
      if (i == 0) x.erase(Word{});
      if (!x.empty()) reps.push_back(std::move(x));
    }
    return reps;
  };
  std::vector<Vector> dec;
  for (int i = 0; 2 * i <= deg; ++i) {
    const auto left = classes(i);
    const auto right = classes(deg - i);
    for (const auto& x : left)
      for (const auto& y : right) {
        const BarElement p = shuffle(b, x, y);
        if (static_cast<int>(max_length(p)) > word_cap) {
          within = false;
          continue;
        }
        dec.push_back(target->quotient.projection * b.to_vector(deg, p));
      }
  }
  Matrix dm(target->dim(), static_cast<Index>(dec.size()));
  for (size_t k = 0; k < dec.size(); ++k) dm.col(static_cast<Index>(k)) = dec[k];
  const Space annihilator = kernel<Rational>(Matrix(dm.transpose()));
  g.dual_basis = annihilator.basis().transpose();
  g.rank = annihilator.dim();
  g.exact = within && deg <= b.exact_through();
  g.provenance = "rank of (Q H^" + std::to_string(deg) + "(B))^dual at word cap " + std::to_string(word_cap) +
                 (g.exact ? ", exact" : ", not certified by the cap");
  return g;
}

}  // namespace rht
