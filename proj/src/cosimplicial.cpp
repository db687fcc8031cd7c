#include <rht/cosimplicial.hpp>

#include <algorithm>
#include <map>

namespace rht {

SimplexMap SimplexMap::identity(int n) {
  SimplexMap s{n, n, {}};
  for (int k = 0; k <= n; ++k) s.values.push_back(k);
  return s;
}

SimplexMap SimplexMap::coface(int n, int i) {
  if (n < 1 || i < 0 || i > n) throw Error(ErrorKind::InvalidInput, "coface index out of range");
  SimplexMap s{n - 1, n, {}};
  for (int k = 0; k < n; ++k) s.values.push_back(k < i ? k : k + 1);
  return s;
}

SimplexMap SimplexMap::codegeneracy(int n, int i) {
  if (n < 0 || i < 0 || i > n) throw Error(ErrorKind::InvalidInput, "codegeneracy index out of range");
  SimplexMap s{n + 1, n, {}};
  for (int k = 0; k <= n + 1; ++k) s.values.push_back(k <= i ? k : k - 1);
  return s;
}

SimplexMap SimplexMap::surjection(int n, const std::vector<int>& jumps) {
  SimplexMap s{n, static_cast<int>(jumps.size()), {0}};
  for (int j = 1; j <= n; ++j) {
    const bool jump = std::find(jumps.begin(), jumps.end(), j) != jumps.end();
    s.values.push_back(s.values.back() + (jump ? 1 : 0));
  }
  if (!s.valid()) throw Error(ErrorKind::InvalidInput, "jump set out of range");
  return s;
}

bool SimplexMap::valid() const {
  if (source < 0 || target < 0 || static_cast<int>(values.size()) != source + 1) return false;
  for (size_t k = 0; k < values.size(); ++k) {
    if (values[k] < 0 || values[k] > target) return false;
    if (k > 0 && values[k] < values[k - 1]) return false;
  }
  return true;
}

bool SimplexMap::injective() const {
  for (size_t k = 1; k < values.size(); ++k)
    if (values[k] == values[k - 1]) return false;
  return true;
}

bool SimplexMap::surjective() const {
  if (values.empty() || values.front() != 0 || values.back() != target) return false;
  for (size_t k = 1; k < values.size(); ++k)
    if (values[k] - values[k - 1] > 1) return false;
  return true;
}

std::vector<int> SimplexMap::jumps() const {
  std::vector<int> out;
  for (int j = 1; j <= source; ++j)
    if (values[static_cast<size_t>(j)] == values[static_cast<size_t>(j - 1)] + 1) out.push_back(j);
  return out;
}

SimplexMap compose(const SimplexMap& g, const SimplexMap& f) {
  if (f.target != g.source) throw Error(ErrorKind::InvalidInput, "compose: level mismatch");
  SimplexMap h{f.source, g.target, {}};
  for (int v : f.values) h.values.push_back(g.values[static_cast<size_t>(v)]);
  return h;
}

SimplexFactorization factor(const SimplexMap& theta) {
  if (!theta.valid()) throw Error(ErrorKind::InvalidInput, "not an order-preserving map");
  SimplexFactorization f;
  for (int j = 0; j < theta.source; ++j)
    if (theta.values[static_cast<size_t>(j)] == theta.values[static_cast<size_t>(j + 1)]) f.degeneracies.push_back(j);
  for (int v = 0; v <= theta.target; ++v)
    if (std::find(theta.values.begin(), theta.values.end(), v) == theta.values.end()) f.faces.push_back(v);
  f.middle = theta.source - static_cast<int>(f.degeneracies.size());
  return f;
}

std::vector<SimplexFactorization::Step> SimplexFactorization::steps(int source) const {
  std::vector<Step> out;
  int level = source;
  for (auto it = degeneracies.rbegin(); it != degeneracies.rend(); ++it) {
    --level;
    out.push_back({false, level, *it});
  }
  for (int m : faces) {
    ++level;
    out.push_back({true, level, m});
  }
  return out;
}

namespace {

std::vector<Matrix> identity_components(const Complex& c) {
  std::vector<Matrix> out;
  for (Index n : c.dims()) out.push_back(Matrix::Identity(n, n));
  return out;
}

bool same_map(const ChainMap& a, const ChainMap& b) {
  const Complex& s = a.source();
  for (int k = s.lower_bound(); k <= s.top(); ++k)
    if (a.at(k) != b.at(k)) return false;
  return true;
}

std::string gen_name(const SimplexFactorization::Step& s) {
  return std::string(s.face ? "d" : "s") + std::to_string(s.index) + "@" + std::to_string(s.level);
}

}  // namespace

CosimplicialModule::CosimplicialModule(std::vector<Complex> levels, std::vector<std::vector<ChainMap>> cofaces,
                                       std::vector<std::vector<ChainMap>> codegeneracies)
    : levels_(std::move(levels)), cofaces_(std::move(cofaces)), codegeneracies_(std::move(codegeneracies)) {
  const int n_top = truncation();
  if (n_top < 0) throw Error(ErrorKind::InvalidInput, "cosimplicial object needs level 0");
  if (static_cast<int>(cofaces_.size()) != n_top + 1 || static_cast<int>(codegeneracies_.size()) != n_top)
    throw Error(ErrorKind::InvalidInput, "expected cofaces for levels 0..N (level 0 empty) and codegeneracies for 0..N-1");
  auto check = [&](const ChainMap& f, int s, int t, const std::string& name) {
    if (!(f.source() == level(s)) || !(f.target() == level(t)))
      throw Error(ErrorKind::InvalidInput, name + " has the wrong source or target");
  };
  for (int n = 0; n <= n_top; ++n) {
    const int want = n == 0 ? 0 : n + 1;
    if (static_cast<int>(cofaces_[static_cast<size_t>(n)].size()) != want)
      throw Error(ErrorKind::InvalidInput, "level " + std::to_string(n) + " needs n+1 cofaces");
    for (int i = 0; i < want; ++i)
      check(cofaces_[static_cast<size_t>(n)][static_cast<size_t>(i)], n - 1, n, "d" + std::to_string(i) + "@" + std::to_string(n));
  }
  for (int n = 0; n < n_top; ++n) {
    if (static_cast<int>(codegeneracies_[static_cast<size_t>(n)].size()) != n + 1)
      throw Error(ErrorKind::InvalidInput, "level " + std::to_string(n) + " needs n+1 codegeneracies");
    for (int i = 0; i <= n; ++i)
      check(codegeneracies_[static_cast<size_t>(n)][static_cast<size_t>(i)], n + 1, n, "s" + std::to_string(i) + "@" + std::to_string(n));
  }
  const auto failures = identity_failures();
  if (!failures.empty()) throw Error(ErrorKind::InvalidInput, "cosimplicial identity fails: " + failures.front());
}

CosimplicialModule CosimplicialModule::from_functor(int truncation, const std::function<Complex(int)>& level,
                                                    const std::function<std::vector<Matrix>(const SimplexMap&)>& map) {
  if (truncation < 0) throw Error(ErrorKind::InvalidInput, "truncation must be >= 0");
  std::vector<Complex> levels;
  for (int n = 0; n <= truncation; ++n) levels.push_back(level(n));
  auto at = [&](int n) -> const Complex& { return levels[static_cast<size_t>(n)]; };
  std::vector<std::vector<ChainMap>> cof(static_cast<size_t>(truncation + 1)), codeg(static_cast<size_t>(truncation));
  for (int n = 1; n <= truncation; ++n)
    for (int i = 0; i <= n; ++i) cof[static_cast<size_t>(n)].emplace_back(at(n - 1), at(n), map(SimplexMap::coface(n, i)));
  for (int n = 0; n < truncation; ++n)
    for (int i = 0; i <= n; ++i)
      codeg[static_cast<size_t>(n)].emplace_back(at(n + 1), at(n), map(SimplexMap::codegeneracy(n, i)));
  return CosimplicialModule(levels, cof, codeg);
}

CosimplicialModule CosimplicialModule::constant(const Complex& c, int truncation) {
  return from_functor(
      truncation, [&](int) { return c; }, [&](const SimplexMap&) { return identity_components(c); });
}

const ChainMap& CosimplicialModule::coface(int n, int i) const {
  if (n < 1 || n > truncation() || i < 0 || i > n) throw Error(ErrorKind::InvalidInput, "coface out of range");
  return cofaces_[static_cast<size_t>(n)][static_cast<size_t>(i)];
}

const ChainMap& CosimplicialModule::codegeneracy(int n, int i) const {
  if (n < 0 || n >= truncation() || i < 0 || i > n) throw Error(ErrorKind::InvalidInput, "codegeneracy out of range");
  return codegeneracies_[static_cast<size_t>(n)][static_cast<size_t>(i)];
}

ChainMap CosimplicialModule::apply(const SimplexMap& theta) const {
  if (theta.source > truncation() || theta.target > truncation())
    throw Error(ErrorKind::TruncationTooSmall, "simplex map leaves the stored levels");
  const auto f = factor(theta);
  ChainMap out = ChainMap::identity(level(theta.source));
  for (const auto& s : f.steps(theta.source)) {
    if (s.level > truncation()) throw Error(ErrorKind::TruncationTooSmall, "factorization passes above the truncation");
    out = compose(s.face ? coface(s.level, s.index) : codegeneracy(s.level, s.index), out);
  }
  return out;
}

std::vector<std::string> CosimplicialModule::identity_failures() const {
  // Every composite of two generators must agree with the composite of its
  // normal form; these quadratic relations present the simplex category.
  std::vector<std::string> out;
  const int top = truncation();
  struct Gen {
    SimplexFactorization::Step step;
    SimplexMap map;
    int source;
  };
  std::vector<Gen> gens;
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i) gens.push_back({{true, n, i}, SimplexMap::coface(n, i), n - 1});
  for (int n = 0; n < top; ++n)
    for (int i = 0; i <= n; ++i) gens.push_back({{false, n, i}, SimplexMap::codegeneracy(n, i), n + 1});
  auto get = [&](const SimplexFactorization::Step& s) -> const ChainMap& {
    return s.face ? coface(s.level, s.index) : codegeneracy(s.level, s.index);
  };
  for (const auto& g1 : gens)
    for (const auto& g2 : gens) {
      if (g2.source != g1.step.level) continue;
      const SimplexMap theta = compose(g2.map, g1.map);
      const auto steps = factor(theta).steps(theta.source);
      if (steps.size() == 2 && steps[0].face == g1.step.face && steps[0].level == g1.step.level &&
          steps[0].index == g1.step.index && steps[1].face == g2.step.face && steps[1].index == g2.step.index)
        continue;  // already the normal form
      bool reachable = true;
      for (const auto& s : steps)
        if (s.level > top) reachable = false;
      if (!reachable) continue;
      ChainMap normal = ChainMap::identity(level(theta.source));
      for (const auto& s : steps) normal = compose(get(s), normal);
      const ChainMap direct = compose(get(g2.step), get(g1.step));
      if (!same_map(direct, normal)) {
        std::string nf;
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) nf += gen_name(*it);
        if (nf.empty()) nf = "id";
        out.push_back(gen_name(g2.step) + gen_name(g1.step) + "=" + nf);
      }
    }
  return out;
}

CosimplicialCDGA::CosimplicialCDGA(std::vector<CDGA> levels, CosimplicialModule underlying)
    : levels_(std::move(levels)), module_(std::move(underlying)) {
  if (static_cast<int>(levels_.size()) != module_.truncation() + 1)
    throw Error(ErrorKind::InvalidInput, "one algebra per level required");
  for (int n = 0; n <= module_.truncation(); ++n)
    if (!(levels_[static_cast<size_t>(n)].complex() == module_.level(n)))
      throw Error(ErrorKind::InvalidInput, "algebra and module disagree at level " + std::to_string(n));
  auto check = [&](const ChainMap& f, int s, int t, const std::string& name) {
    std::vector<Matrix> comps;
    const Complex& src = module_.level(s);
    for (int k = src.lower_bound(); k <= src.top(); ++k) comps.push_back(f.at(k));
    const auto rep = validate_morphism(level(s), level(t), comps);
    if (!rep.ok()) throw Error(ErrorKind::InvalidAlgebra, name + " is not an algebra map: " + rep.violations.front().describe());
  };
  for (int n = 1; n <= truncation(); ++n)
    for (int i = 0; i <= n; ++i) check(module_.coface(n, i), n - 1, n, "d" + std::to_string(i) + "@" + std::to_string(n));
  for (int n = 0; n < truncation(); ++n)
    for (int i = 0; i <= n; ++i)
      check(module_.codegeneracy(n, i), n + 1, n, "s" + std::to_string(i) + "@" + std::to_string(n));
}

Normalized normalize(const CosimplicialModule& c) {
  Normalized out;
  const int top = c.truncation();
  int lo = 0, hi = -1;
  bool any = false;
  for (int n = 0; n <= top; ++n) {
    const Complex& l = c.level(n);
    if (l.empty()) continue;
    lo = any ? std::min(lo, l.lower_bound()) : l.lower_bound();
    hi = any ? std::max(hi, l.top()) : l.top();
    any = true;
  }
  DoubleComplex& dc = out.double_complex;
  dc.column_lower = 0;
  dc.row_lower = lo;
  dc.signs = DoubleComplex::Signs::Twist;
  out.reliable_through = top - 1;
  if (!any) return out;
  const int rows = hi - lo + 1;
  std::vector<std::vector<Space>> spaces(static_cast<size_t>(top + 1));
  for (int n = 0; n <= top; ++n) {
    std::vector<Index> dims;
    std::vector<Matrix> bases;
    for (int r = 0; r < rows; ++r) {
      const int j = lo + r;
      const Index dim = c.level(n).dim(j);
      Space s = Space::full(dim);
      if (n > 0 && dim > 0) {
        Index total = 0;
        for (int i = 0; i < n; ++i) total += c.level(n - 1).dim(j);
        Matrix stack(total, dim);
        Index at = 0;
        for (int i = 0; i < n; ++i) {
          const Matrix m = c.codegeneracy(n - 1, i).at(j);
          stack.middleRows(at, m.rows()) = m;
          at += m.rows();
        }
        s = total == 0 ? Space::full(dim) : kernel<Rational>(stack);
      }
      dims.push_back(s.dim());
      bases.push_back(s.basis());
      spaces[static_cast<size_t>(n)].push_back(s);
    }
    dc.dims.push_back(dims);
    out.basis.push_back(bases);
  }
  for (int n = 0; n <= top; ++n) {
    std::vector<Matrix> vert;
    for (int r = 0; r + 1 < rows; ++r) {
      const int j = lo + r;
      const auto& src = spaces[static_cast<size_t>(n)][static_cast<size_t>(r)];
      const auto& dst = spaces[static_cast<size_t>(n)][static_cast<size_t>(r + 1)];
      vert.push_back(dst.coordinate_map() * c.level(n).d(j) * src.basis());
    }
    dc.vertical.push_back(vert);
    if (n == top) continue;
    std::vector<Matrix> horiz;
    for (int r = 0; r < rows; ++r) {
      const int j = lo + r;
      const auto& src = spaces[static_cast<size_t>(n)][static_cast<size_t>(r)];
      const auto& dst = spaces[static_cast<size_t>(n + 1)][static_cast<size_t>(r)];
      Matrix alt = Matrix::Zero(c.level(n + 1).dim(j), c.level(n).dim(j));
      for (int i = 0; i <= n + 1; ++i) {
        const Matrix m = c.coface(n + 1, i).at(j);
        if (i % 2 == 0)
          alt += m;
        else
          alt -= m;
      }
      const Matrix image = alt * src.basis();
      for (Index k = 0; k < image.cols(); ++k)
        if (!dst.contains(Vector(image.col(k))))
          throw Error(ErrorKind::InvalidInput, "alternating coface sum leaves the normalized subspace");
      horiz.push_back(dst.coordinate_map() * image);
    }
    dc.horizontal.push_back(horiz);
  }
  return out;
}

Complex tot_n(const CosimplicialModule& c) { return tot(normalize(c).double_complex); }

std::vector<std::vector<int>> dold_kan_summands(int n, int top) {
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= std::min(n, top); ++k) {
    // all k-subsets of {1..n} in lexicographic order
    std::vector<int> pick(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i + 1;
    while (true) {
      out.push_back(pick);
      int i = k - 1;
      while (i >= 0 && pick[static_cast<size_t>(i)] == n - k + i + 1) --i;
      if (i < 0) break;
      ++pick[static_cast<size_t>(i)];
      for (int l = i + 1; l < k; ++l) pick[static_cast<size_t>(l)] = pick[static_cast<size_t>(l - 1)] + 1;
    }
  }
  return out;
}

namespace {

struct DKLayout {
  std::vector<std::vector<int>> summands;
  std::map<std::vector<int>, Index> offset;
  Index total = 0;
};

DKLayout dk_layout(const Complex& c, int n) {
  DKLayout l;
  const int top = c.empty() ? -1 : c.top();
  l.summands = dold_kan_summands(n, std::max(top, 0));
  for (const auto& s : l.summands) {
    l.offset[s] = l.total;
    l.total += c.dim(static_cast<int>(s.size()));
  }
  return l;
}

// Denormalization structure map for theta : [n] -> [m].
Matrix dk_map(const Complex& c, const SimplexMap& theta) {
  const DKLayout src = dk_layout(c, theta.source);
  const DKLayout dst = dk_layout(c, theta.target);
  Matrix out = Matrix::Zero(dst.total, src.total);
  for (const auto& t : dst.summands) {
    const int k = static_cast<int>(t.size());
    if (c.dim(k) == 0) continue;
    const SimplexMap u = compose(SimplexMap::surjection(theta.target, t), theta);
    // u = eps o eta with eta onto its image
    std::vector<int> image = u.values;
    image.erase(std::unique(image.begin(), image.end()), image.end());
    const int j = static_cast<int>(image.size()) - 1;
    SimplexMap eta{u.source, j, {}};
    for (int v : u.values) eta.values.push_back(static_cast<int>(std::find(image.begin(), image.end(), v) - image.begin()));
    const std::vector<int> s = eta.jumps();
    auto it = src.offset.find(s);
    if (it == src.offset.end()) continue;
    const Index r0 = dst.offset.at(t), c0 = it->second;
    if (j == k) {
      out.block(r0, c0, c.dim(k), c.dim(j)) = Matrix::Identity(c.dim(k), c.dim(j));
    } else if (j + 1 == k && image.front() == 1) {
      out.block(r0, c0, c.dim(k), c.dim(j)) = c.d(j);
    }
  }
  return out;
}

// (-1)^{#{(s, t) : s in S, t in T, s > t}}
int shuffle_sign(const std::vector<int>& s, const std::vector<int>& t) {
  int inv = 0;
  for (int a : s)
    for (int b : t)
      if (a > b) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

CosimplicialModule dold_kan_D(const Complex& c, int truncation) {
  if (!c.empty() && c.lower_bound() < 0) throw Error(ErrorKind::InvalidInput, "dold_kan_D needs a complex in degrees >= 0");
  const int top = c.empty() ? 0 : c.top();
  if (truncation < top) throw Error(ErrorKind::TruncationTooSmall, "truncation below the top degree loses data");
  return CosimplicialModule::from_functor(
      truncation, [&](int n) { return Complex::concentrated(0, dk_layout(c, n).total); },
      [&](const SimplexMap& theta) { return std::vector<Matrix>{dk_map(c, theta)}; });
}

CosimplicialCDGA dold_kan_D(const CDGA& a, int truncation) {
  CosimplicialModule module = dold_kan_D(a.complex(), truncation);
  std::vector<CDGA> levels;
  for (int n = 0; n <= truncation; ++n) {
    const DKLayout l = dk_layout(a.complex(), n);
    Matrix m = Matrix::Zero(l.total, l.total * l.total);
    for (const auto& s : l.summands)
      for (const auto& t : l.summands) {
        std::vector<int> u;
        std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(u));
        if (u.size() != s.size() + t.size()) continue;
        const int p = static_cast<int>(s.size()), q = static_cast<int>(t.size());
        if (p + q > a.top()) continue;
        const Rational sg(shuffle_sign(s, t));
        const Matrix& ab = a.mult(p, q);
        const Index os = l.offset.at(s), ot = l.offset.at(t), ou = l.offset.at(u);
        for (Index x = 0; x < a.dim(p); ++x)
          for (Index y = 0; y < a.dim(q); ++y)
            for (Index z = 0; z < a.dim(p + q); ++z)
              if (!is_zero(ab(z, x * a.dim(q) + y))) m(ou + z, (os + x) * l.total + ot + y) = sg * ab(z, x * a.dim(q) + y);
      }
    Vector unit = Vector::Zero(l.total);
    unit.head(a.dim(0)) = a.unit();
    std::optional<Vector> aug;
    if (a.augmented()) {
      Vector e = Vector::Zero(l.total);
      e.head(a.dim(0)) = *a.augmentation();
      aug = e;
    }
    levels.emplace_back(Complex::concentrated(0, l.total), std::vector<std::vector<Matrix>>{{m}}, unit, aug);
  }
  return CosimplicialCDGA(levels, module);
}

}  // namespace rht
