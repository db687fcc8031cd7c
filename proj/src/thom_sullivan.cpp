#include <rht/thom_sullivan.hpp>

#include <bit>
#include <sstream>

namespace rht {

int FormTerm::poly_degree() const {
  int s = 0;
  for (int e : exps) s += e;
  return s;
}

int FormTerm::form_degree() const { return std::popcount(mask); }

PolyForm PolyForm::constant(int level, const Rational& c) {
  PolyForm f(level);
  f.add(FormTerm{std::vector<int>(static_cast<size_t>(level), 0), 0}, c);
  return f;
}

PolyForm PolyForm::coordinate(int level, int i) {
  if (i < 0 || i > level) throw Error(ErrorKind::InvalidInput, "coordinate index out of range");
  if (i > 0) {
    FormTerm t{std::vector<int>(static_cast<size_t>(level), 0), 0};
    t.exps[static_cast<size_t>(i - 1)] = 1;
    return term(level, t);
  }
  PolyForm f = constant(level, Rational(1));
  for (int j = 1; j <= level; ++j) f -= coordinate(level, j);
  return f;
}

PolyForm PolyForm::differential(int level, int i) {
  if (i < 0 || i > level) throw Error(ErrorKind::InvalidInput, "differential index out of range");
  if (i > 0) return term(level, FormTerm{std::vector<int>(static_cast<size_t>(level), 0), 1u << (i - 1)});
  PolyForm f(level);
  for (int j = 1; j <= level; ++j) f -= differential(level, j);
  return f;
}

PolyForm PolyForm::term(int level, FormTerm t, const Rational& c) {
  if (static_cast<int>(t.exps.size()) != level || (level < 32 && (t.mask >> level) != 0))
    throw Error(ErrorKind::InvalidInput, "form term does not live on this simplex");
  PolyForm f(level);
  f.add(t, c);
  return f;
}

int PolyForm::weight() const {
  int w = -1;
  for (const auto& [t, c] : terms_) w = std::max(w, t.weight());
  return w;
}

int PolyForm::form_degree() const {
  int k = -1;
  for (const auto& [t, c] : terms_) {
    if (k >= 0 && t.form_degree() != k) return -1;
    k = t.form_degree();
  }
  return k;
}

void PolyForm::add(const FormTerm& t, const Rational& c) {
  if (rht::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (rht::is_zero(it->second)) terms_.erase(it);
  }
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
  if (o.level_ != level_) throw Error(ErrorKind::InvalidInput, "adding forms on different simplices");
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
  if (o.level_ != level_) throw Error(ErrorKind::InvalidInput, "subtracting forms on different simplices");
  for (const auto& [t, c] : o.terms_) add(t, -c);
  return *this;
}

PolyForm operator*(const Rational& c, const PolyForm& f) {
  PolyForm out(f.level_);
  if (rht::is_zero(c)) return out;
  for (const auto& [t, v] : f.terms_) out.terms_.emplace(t, c * v);
  return out;
}

std::string PolyForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rht::to_string(c);
    for (size_t i = 0; i < t.exps.size(); ++i)
      if (t.exps[i] > 0) os << "*t" << i + 1 << (t.exps[i] > 1 ? "^" + std::to_string(t.exps[i]) : "");
    for (int i = 0; i < level_; ++i)
      if (t.mask & (1u << i)) os << "*dt" << i + 1;
  }
  return os.str();
}

namespace {

// sign of dt_I ^ dt_J relative to dt_{I u J}; 0 if they overlap
int wedge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int inv = 0;
  for (unsigned bb = b; bb; bb &= bb - 1) {
    const int j = std::countr_zero(bb);
    inv += std::popcount(a >> (j + 1));  // elements of a greater than j
  }
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

PolyForm poly_d(const PolyForm& f) {
  PolyForm out(f.level());
  for (const auto& [t, c] : f.terms()) {
    for (int j = 0; j < f.level(); ++j) {
      const int e = t.exps[static_cast<size_t>(j)];
      if (e == 0 || (t.mask & (1u << j))) continue;
      FormTerm n = t;
      n.exps[static_cast<size_t>(j)] -= 1;
      n.mask |= 1u << j;
      // dt_j moves in front of the dt_i with i < j already present
      const int s = std::popcount(t.mask & ((1u << j) - 1)) % 2 == 0 ? 1 : -1;
      out.add(n, Rational(s * e) * c);
    }
  }
  return out;
}

PolyForm poly_mul(const PolyForm& f, const PolyForm& g) {
  if (f.level() != g.level()) throw Error(ErrorKind::InvalidInput, "multiplying forms on different simplices");
  PolyForm out(f.level());
  for (const auto& [a, x] : f.terms())
    for (const auto& [b, y] : g.terms()) {
      const int s = wedge_sign(a.mask, b.mask);
      if (s == 0) continue;
      FormTerm t{a.exps, a.mask | b.mask};
      for (size_t i = 0; i < t.exps.size(); ++i) t.exps[i] += b.exps[i];
      out.add(t, Rational(s) * x * y);
    }
  return out;
}

PolyForm pullback(const SimplexMap& theta, const PolyForm& f) {
  if (f.level() != theta.target) throw Error(ErrorKind::InvalidInput, "pullback: form lives on the wrong simplex");
  const int m = theta.source, n = theta.target;
  std::vector<PolyForm> coord(static_cast<size_t>(n + 1), PolyForm(m)), diff(static_cast<size_t>(n + 1), PolyForm(m));
  for (int k = 0; k <= m; ++k) {
    const int j = theta.values[static_cast<size_t>(k)];
    coord[static_cast<size_t>(j)] += PolyForm::coordinate(m, k);
    diff[static_cast<size_t>(j)] += PolyForm::differential(m, k);
  }
  PolyForm out(m);
  for (const auto& [t, c] : f.terms()) {
    PolyForm acc = PolyForm::constant(m, c);
    for (int j = 1; j <= n; ++j)
      for (int e = 0; e < t.exps[static_cast<size_t>(j - 1)]; ++e) acc = poly_mul(acc, coord[static_cast<size_t>(j)]);
    for (int j = 1; j <= n; ++j)
      if (t.mask & (1u << (j - 1))) acc = poly_mul(acc, diff[static_cast<size_t>(j)]);
    out += acc;
  }
  return out;
}

namespace {

void monomials(int n, int max_deg, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= max_deg; ++e) {
    cur[static_cast<size_t>(pos)] = e;
    monomials(n, max_deg - e, cur, pos + 1, out);
  }
  cur[static_cast<size_t>(pos)] = 0;
}

Index binom(Index n, Index k) {
  if (k < 0 || k > n) return 0;
  Index r = 1;
  for (Index i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<FormTerm> omega_basis(int n, int k, int w) {
  std::vector<FormTerm> out;
  if (k < 0 || k > n || w < k) return out;
  std::vector<std::vector<int>> mons;
  std::vector<int> cur(static_cast<size_t>(n), 0);
  monomials(n, w - k, cur, 0, mons);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    for (const auto& e : mons) out.push_back(FormTerm{e, mask});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Index omega_count(int n, int k, int w) {
  if (k < 0 || k > n || w < k) return 0;
  return binom(n, k) * binom(w - k + n, n);
}

Rational integrate(const PolyForm& f) {
  const int n = f.level();
  const unsigned full = n == 0 ? 0u : ((1u << n) - 1);
  Rational total(0);
  for (const auto& [t, c] : f.terms()) {
    if (t.mask != full) continue;
    Rational num(1);
    for (int e : t.exps) num *= Rational(factorial(e));
    total += c * num / Rational(factorial(n + t.poly_degree()));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Thom-Sullivan

namespace {

// flat index of (degree l, index a) inside a level complex
Index flat_offset(const Complex& c, int l) {
  Index off = 0;
  for (int j = c.lower_bound(); j < l; ++j) off += c.dim(j);
  return off;
}

struct Generator {
  SimplexMap map;
  ChainMap level_map;  // A(theta) : level p -> level q
};

std::vector<Generator> generators(const CosimplicialModule& m) {
  std::vector<Generator> out;
  const int top = m.truncation();
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i) out.push_back({SimplexMap::coface(n, i), m.coface(n, i)});
  for (int n = 0; n < top; ++n)
    for (int i = 0; i <= n; ++i) out.push_back({SimplexMap::codegeneracy(n, i), m.codegeneracy(n, i)});
  return out;
}

ThPiece build_piece(const CosimplicialModule& a, const std::vector<Generator>& gens, int k, int l, int w) {
  ThPiece piece;
  piece.k = k;
  piece.l = l;
  const int top = a.truncation();
  std::vector<std::vector<FormTerm>> basis(static_cast<size_t>(top + 1));
  for (int n = 0; n <= top; ++n) basis[static_cast<size_t>(n)] = omega_basis(n, k, w);
  // higher levels first: they are the most constrained, so they take the pivots
  for (int n = top; n >= 0; --n)
    for (const auto& f : basis[static_cast<size_t>(n)])
      for (Index x = 0; x < a.level(n).dim(l); ++x) {
        piece.index.emplace(std::make_tuple(n, f, x), static_cast<Index>(piece.unknowns.size()));
        piece.unknowns.push_back({n, f, x});
      }
  std::vector<SparseRow> rows;
  for (const auto& g : gens) {
    const int p = g.map.source, q = g.map.target;
    if (p < k) continue;  // no k-forms on the source simplex
    const Matrix am = g.level_map.at(l);  // A^{q,l} x A^{p,l}
    std::map<std::pair<FormTerm, Index>, std::vector<std::pair<Index, Rational>>> eqs;
    // (theta^* (x) 1) x_q
    for (const auto& f : basis[static_cast<size_t>(q)]) {
      const PolyForm pb = pullback(g.map, PolyForm::term(q, f));
      for (Index x = 0; x < a.level(q).dim(l); ++x) {
        const Index u = piece.index.at(std::make_tuple(q, f, x));
        for (const auto& [t, c] : pb.terms()) eqs[{t, x}].emplace_back(u, c);
      }
    }
    // -(1 (x) A(theta)) x_p
    for (const auto& f : basis[static_cast<size_t>(p)])
      for (Index y = 0; y < a.level(p).dim(l); ++y) {
        const Index u = piece.index.at(std::make_tuple(p, f, y));
        for (Index x = 0; x < am.rows(); ++x)
          if (!is_zero(am(x, y))) eqs[{f, x}].emplace_back(u, -am(x, y));
      }
    for (auto& [key, entries] : eqs) {
      SparseRow r = make_sparse_row(std::move(entries));
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  piece.kernel = sparse_kernel(rows, static_cast<Index>(piece.unknowns.size()));
  return piece;
}

// Unknown-coordinate vector of piece -> family element contribution.
void add_piece_to_family(const ThomSullivan& t, const ThPiece& p, const Vector& u, ThElement& x) {
  const CosimplicialModule& a = t.source().module();
  for (size_t i = 0; i < p.unknowns.size(); ++i) {
    const Rational& v = u(static_cast<Index>(i));
    if (is_zero(v)) continue;
    const auto& un = p.unknowns[i];
    const Index flat = flat_offset(a.level(un.level), p.l) + un.a;
    x.family[static_cast<size_t>(un.level)][static_cast<size_t>(flat)] += PolyForm::term(un.level, un.form, v);
  }
}

ThElement zero_element(const CosimplicialCDGA& a, int m) {
  ThElement x;
  x.degree = m;
  for (int n = 0; n <= a.truncation(); ++n)
    x.family.emplace_back(static_cast<size_t>(a.module().level(n).total_dim()), PolyForm(n));
  return x;
}

// degree of the flat basis index inside a level complex
int flat_degree(const Complex& c, Index flat, Index* local = nullptr) {
  Index off = 0;
  for (int j = c.lower_bound(); j <= c.top(); ++j) {
    if (flat < off + c.dim(j)) {
      if (local) *local = flat - off;
      return j;
    }
    off += c.dim(j);
  }
  throw Error(ErrorKind::InvalidInput, "flat index out of range");
}

}  // namespace

Index ThomSullivan::offset(int m, size_t p) const {
  Index off = 0;
  for (size_t i = 0; i < p; ++i) off += pieces(m)[i].dim();
  return off;
}

ThomSullivan th(const CosimplicialCDGA& a, int degree_cap, int weight_cap) {
  if (degree_cap < 0) throw Error(ErrorKind::InvalidInput, "degree cap must be >= 0");
  if (weight_cap < degree_cap + 2)
    throw Error(ErrorKind::InvalidInput, "weight cap must be at least degree cap + 2");
  if (a.truncation() < degree_cap + 1)
    throw Error(ErrorKind::TruncationTooSmall, "Th through degree " + std::to_string(degree_cap) + " needs levels 0.." +
                                                   std::to_string(degree_cap + 1));
  ThomSullivan t;
  t.source_ = a;
  t.degree_cap_ = degree_cap;
  t.weight_cap_ = weight_cap;
  const CosimplicialModule& mod = a.module();
  const auto gens = generators(mod);
  const int top_m = degree_cap + 1;
  for (int m = 0; m <= top_m; ++m) {
    std::vector<ThPiece> ps;
    for (int k = 0; k <= std::min(m, mod.truncation()); ++k) ps.push_back(build_piece(mod, gens, k, m - k, weight_cap));
    t.pieces_.push_back(std::move(ps));
  }
  // Differential: d(f (x) a) = df (x) a + (-1)^k f (x) da, assembled on
  // unknown coordinates and read back through the free columns.
  std::vector<Index> dims;
  std::vector<Matrix> diffs;
  for (int m = 0; m <= top_m; ++m) {
    Index dim = 0;
    for (const auto& p : t.pieces(m)) dim += p.dim();
    dims.push_back(dim);
  }
  for (int m = 0; m < top_m; ++m) {
    Matrix d = Matrix::Zero(dims[static_cast<size_t>(m + 1)], dims[static_cast<size_t>(m)]);
    const auto& src = t.pieces(m);
    const auto& dst = t.pieces(m + 1);
    for (size_t ps = 0; ps < src.size(); ++ps) {
      const ThPiece& p = src[ps];
      for (Index col = 0; col < p.dim(); ++col) {
        const Vector u = p.kernel.basis.col(col);
        for (size_t pd = 0; pd < dst.size(); ++pd) {
          const ThPiece& q = dst[pd];
          const bool form_step = q.k == p.k + 1;
          const bool alg_step = q.k == p.k && q.l == p.l + 1;
          if (!form_step && !alg_step) continue;
          Vector v = Vector::Zero(static_cast<Index>(q.unknowns.size()));
          for (size_t i = 0; i < p.unknowns.size(); ++i) {
            const Rational& c = u(static_cast<Index>(i));
            if (is_zero(c)) continue;
            const auto& un = p.unknowns[i];
            if (form_step) {
              const PolyForm df = poly_d(PolyForm::term(un.level, un.form));
              for (const auto& [term, coef] : df.terms()) v(q.index.at(std::make_tuple(un.level, term, un.a))) += c * coef;
            } else {
              const Matrix da = mod.level(un.level).d(p.l);
              const Rational s(p.k % 2 == 0 ? 1 : -1);
              for (Index b = 0; b < da.rows(); ++b)
                if (!is_zero(da(b, un.a))) v(q.index.at(std::make_tuple(un.level, un.form, b))) += s * c * da(b, un.a);
            }
          }
          d.block(t.offset(m + 1, pd), t.offset(m, ps) + col, q.dim(), 1) += q.kernel.coordinates(v);
        }
      }
    }
    diffs.push_back(d);
  }
  t.complex_ = Complex(0, dims, diffs);
  return t;
}

ThElement th_element(const ThomSullivan& t, int m, const Vector& coords) {
  if (m < 0 || m > t.degree_cap() + 1) throw Error(ErrorKind::InvalidInput, "degree outside the computed range");
  if (coords.size() != t.complex().dim(m)) throw Error(ErrorKind::InvalidInput, "coordinate vector has the wrong size");
  ThElement x = zero_element(t.source(), m);
  for (size_t p = 0; p < t.pieces(m).size(); ++p) {
    const ThPiece& piece = t.pieces(m)[p];
    if (piece.dim() == 0) continue;
    const Vector u = piece.kernel.basis * coords.segment(t.offset(m, p), piece.dim());
    add_piece_to_family(t, piece, u, x);
  }
  return x;
}

Vector th_coordinates(const ThomSullivan& t, const ThElement& x) {
  const int m = x.degree;
  if (m < 0 || m > t.degree_cap() + 1) throw Error(ErrorKind::InvalidInput, "degree outside the computed range");
  const CosimplicialModule& a = t.source().module();
  Vector out = Vector::Zero(t.complex().dim(m));
  for (size_t p = 0; p < t.pieces(m).size(); ++p) {
    const ThPiece& piece = t.pieces(m)[p];
    Vector u = Vector::Zero(static_cast<Index>(piece.unknowns.size()));
    for (int n = 0; n <= a.truncation(); ++n) {
      const Complex& lv = a.level(n);
      for (Index x_a = 0; x_a < lv.dim(piece.l); ++x_a) {
        const PolyForm& f = x.family[static_cast<size_t>(n)][static_cast<size_t>(flat_offset(lv, piece.l) + x_a)];
        for (const auto& [term, c] : f.terms()) {
          if (term.form_degree() != piece.k) continue;
          auto it = piece.index.find(std::make_tuple(n, term, x_a));
          if (it == piece.index.end()) throw Error(ErrorKind::InvalidInput, "element exceeds the weight cap");
          u(it->second) = c;
        }
      }
    }
    const Vector coords = piece.kernel.coordinates(u);
    if (piece.kernel.basis * coords != u) throw Error(ErrorKind::InvalidInput, "element is not a compatible family");
    out.segment(t.offset(m, p), piece.dim()) = coords;
  }
  return out;
}

ThElement th_d(const CosimplicialCDGA& a, const ThElement& x) {
  ThElement y = zero_element(a, x.degree + 1);
  for (int n = 0; n <= a.truncation(); ++n) {
    const Complex& lv = a.module().level(n);
    for (size_t i = 0; i < x.family[static_cast<size_t>(n)].size(); ++i) {
      const PolyForm& f = x.family[static_cast<size_t>(n)][i];
      if (f.is_zero()) continue;
      Index local = 0;
      const int l = flat_degree(lv, static_cast<Index>(i), &local);
      y.family[static_cast<size_t>(n)][i] += poly_d(f);
      const int k = x.degree - l;
      const Matrix da = lv.d(l);
      for (Index b = 0; b < da.rows(); ++b)
        if (!is_zero(da(b, local)))
          y.family[static_cast<size_t>(n)][static_cast<size_t>(flat_offset(lv, l + 1) + b)] +=
              Rational(k % 2 == 0 ? 1 : -1) * da(b, local) * f;
    }
  }
  return y;
}

ThElement th_multiply(const CosimplicialCDGA& a, const ThElement& x, const ThElement& y) {
  ThElement z = zero_element(a, x.degree + y.degree);
  for (int n = 0; n <= a.truncation(); ++n) {
    const CDGA& alg = a.level(n);
    const Complex& lv = alg.complex();
    const auto& xs = x.family[static_cast<size_t>(n)];
    const auto& ys = y.family[static_cast<size_t>(n)];
    for (size_t i = 0; i < xs.size(); ++i) {
      if (xs[i].is_zero()) continue;
      Index ia = 0;
      const int li = flat_degree(lv, static_cast<Index>(i), &ia);
      for (size_t j = 0; j < ys.size(); ++j) {
        if (ys[j].is_zero()) continue;
        Index jb = 0;
        const int lj = flat_degree(lv, static_cast<Index>(j), &jb);
        if (li + lj > alg.top()) continue;
        // (f (x) a)(g (x) b) = (-1)^{|a||g|} fg (x) ab
        const int kg = y.degree - lj;
        const PolyForm fg = poly_mul(xs[i], ys[j]);
        const Rational s((li * kg) % 2 == 0 ? 1 : -1);
        const Vector ab = alg.basis_product(li, ia, lj, jb);
        for (Index c = 0; c < ab.size(); ++c)
          if (!is_zero(ab(c)))
            z.family[static_cast<size_t>(n)][static_cast<size_t>(flat_offset(lv, li + lj) + c)] += (s * ab(c)) * fg;
      }
    }
  }
  return z;
}

std::vector<std::string> compatibility_failures(const CosimplicialCDGA& a, const ThElement& x) {
  std::vector<std::string> out;
  for (const auto& g : generators(a.module())) {
    const int p = g.map.source, q = g.map.target;
    const Complex& lp = a.module().level(p);
    const Complex& lq = a.module().level(q);
    bool ok = true;
    for (int l = lq.lower_bound(); l <= lq.top() && ok; ++l) {
      const Matrix am = g.level_map.at(l);
      for (Index xq = 0; xq < lq.dim(l) && ok; ++xq) {
        PolyForm lhs = pullback(g.map, x.family[static_cast<size_t>(q)][static_cast<size_t>(flat_offset(lq, l) + xq)]);
        PolyForm rhs(p);
        for (Index y = 0; y < lp.dim(l); ++y)
          if (!is_zero(am(xq, y)))
            rhs += am(xq, y) * x.family[static_cast<size_t>(p)][static_cast<size_t>(flat_offset(lp, l) + y)];
        if (!(lhs == rhs)) ok = false;
      }
    }
    if (!ok) {
      const bool face = g.map.source < g.map.target;
      int idx = 0;
      for (int v = 0; v <= g.map.target; ++v)
        if (face && std::find(g.map.values.begin(), g.map.values.end(), v) == g.map.values.end()) idx = v;
      if (!face)
        for (int j = 0; j < g.map.source; ++j)
          if (g.map.values[static_cast<size_t>(j)] == g.map.values[static_cast<size_t>(j + 1)]) idx = j;
      out.push_back(std::string(face ? "d" : "s") + std::to_string(idx) + "@" + std::to_string(face ? q : q));
    }
  }
  return out;
}

namespace {

struct TotData {
  Normalized norm;
  TotLayout layout;
  Complex tot;
  std::vector<std::vector<Space>> spaces;  // [n][l - row_lower]
};

TotData tot_data(const CosimplicialModule& a) {
  TotData d;
  d.norm = normalize(a);
  d.tot = tot(d.norm.double_complex, &d.layout);
  for (const auto& col : d.norm.basis) {
    std::vector<Space> s;
    for (const auto& b : col) s.push_back(Space::span(b));
    d.spaces.push_back(std::move(s));
  }
  return d;
}

Vector integrate_with(const ThomSullivan& t, const TotData& td, const ThElement& x) {
  const CosimplicialModule& a = t.source().module();
  const int m = x.degree;
  Vector out = Vector::Zero(td.tot.dim(m));
  const int row_lower = td.norm.double_complex.row_lower;
  for (int n = 0; n <= a.truncation(); ++n) {
    const int l = m - n;
    const Complex& lv = a.level(n);
    if (lv.dim(l) == 0) continue;
    Vector v(lv.dim(l));
    for (Index i = 0; i < lv.dim(l); ++i) v(i) = integrate(x.family[static_cast<size_t>(n)][static_cast<size_t>(flat_offset(lv, l) + i)]);
    bool all_zero = true;
    for (Index i = 0; i < v.size(); ++i)
      if (!is_zero(v(i))) all_zero = false;
    if (all_zero) continue;
    const Space& s = td.spaces[static_cast<size_t>(n)][static_cast<size_t>(l - row_lower)];
    if (!s.contains(v)) throw Error(ErrorKind::InvalidInput, "integral leaves the normalized subcomplex");
    const Index off = td.layout.offsets[static_cast<size_t>(m - td.layout.lower_bound)][static_cast<size_t>(n)];
    out.segment(off, s.dim()) = s.coordinates(v);
  }
  return out;
}

}  // namespace

Vector integrate(const ThomSullivan& t, const ThElement& x) { return integrate_with(t, tot_data(t.source().module()), x); }

IntegrationMap integration_map(const ThomSullivan& t) {
  const TotData td = tot_data(t.source().module());
  IntegrationMap out;
  out.tot = td.tot;
  std::vector<Matrix> comps;
  const int top_m = t.degree_cap() + 1;
  for (int m = 0; m <= top_m; ++m) {
    Matrix f(td.tot.dim(m), t.complex().dim(m));
    for (Index c = 0; c < t.complex().dim(m); ++c) {
      Vector e = Vector::Zero(t.complex().dim(m));
      e(c) = 1;
      f.col(c) = integrate_with(t, td, th_element(t, m, e));
    }
    comps.push_back(f);
  }
  out.map = ChainMap(t.complex(), td.tot, comps, false);
  for (int m = 0; m <= t.degree_cap(); ++m)
    if (product<Rational>(td.tot.d(m), comps[static_cast<size_t>(m)]) !=
        product<Rational>(comps[static_cast<size_t>(m + 1)], t.complex().d(m)))
      out.chain_failures.push_back(m);
  return out;
}

ChainMap evaluation_at_vertex(const ThomSullivan& t) {
  const Complex& a0 = t.source().module().level(0);
  const int top_m = t.degree_cap() + 1;
  std::vector<Index> dims;
  std::vector<Matrix> d;
  for (int m = 0; m <= top_m; ++m) dims.push_back(a0.dim(m));
  for (int m = 0; m < top_m; ++m) d.push_back(a0.d(m));
  const Complex target(0, dims, d);
  std::vector<Matrix> comps;
  for (int m = 0; m <= top_m; ++m) {
    Matrix f(a0.dim(m), t.complex().dim(m));
    for (Index c = 0; c < t.complex().dim(m); ++c) {
      Vector e = Vector::Zero(t.complex().dim(m));
      e(c) = 1;
      const ThElement x = th_element(t, m, e);
      for (Index i = 0; i < a0.dim(m); ++i) {
        const PolyForm& p = x.family[0][static_cast<size_t>(flat_offset(a0, m) + i)];
        auto it = p.terms().find(FormTerm{{}, 0});
        f(i, c) = it == p.terms().end() ? Rational(0) : it->second;
      }
    }
    comps.push_back(f);
  }
  return ChainMap(t.complex(), target, comps, false);
}

CDGA de_rham_algebra(int n, int w) {
  if (n < 0 || w < 0) throw Error(ErrorKind::InvalidInput, "de_rham_algebra needs n, w >= 0");
  std::vector<std::vector<FormTerm>> basis;
  std::vector<std::map<FormTerm, Index>> index;
  std::vector<Index> dims;
  for (int k = 0; k <= n; ++k) {
    basis.push_back(omega_basis(n, k, w));
    std::map<FormTerm, Index> idx;
    for (size_t i = 0; i < basis.back().size(); ++i) idx.emplace(basis.back()[i], static_cast<Index>(i));
    index.push_back(std::move(idx));
    dims.push_back(static_cast<Index>(basis.back().size()));
  }
  auto coords = [&](int k, const PolyForm& f) {
    Vector v = Vector::Zero(dims[static_cast<size_t>(k)]);
    for (const auto& [t, c] : f.terms()) {
      auto it = index[static_cast<size_t>(k)].find(t);
      if (it != index[static_cast<size_t>(k)].end()) v(it->second) = c;  // weight > w is dropped
    }
    return v;
  };
  std::vector<Matrix> d;
  for (int k = 0; k < n; ++k) {
    Matrix m(dims[static_cast<size_t>(k + 1)], dims[static_cast<size_t>(k)]);
    for (Index i = 0; i < dims[static_cast<size_t>(k)]; ++i)
      m.col(i) = coords(k + 1, poly_d(PolyForm::term(n, basis[static_cast<size_t>(k)][static_cast<size_t>(i)])));
    d.push_back(m);
  }
  const Complex c(0, dims, d);
  std::vector<std::vector<Matrix>> mult(static_cast<size_t>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      Matrix m(dims[static_cast<size_t>(i + j)], dims[static_cast<size_t>(i)] * dims[static_cast<size_t>(j)]);
      for (Index x = 0; x < dims[static_cast<size_t>(i)]; ++x)
        for (Index y = 0; y < dims[static_cast<size_t>(j)]; ++y)
          m.col(x * dims[static_cast<size_t>(j)] + y) =
              coords(i + j, poly_mul(PolyForm::term(n, basis[static_cast<size_t>(i)][static_cast<size_t>(x)]),
                                     PolyForm::term(n, basis[static_cast<size_t>(j)][static_cast<size_t>(y)])));
      mult[static_cast<size_t>(i)].push_back(m);
    }
  Vector unit = coords(0, PolyForm::constant(n, Rational(1)));
  return CDGA(c, mult, unit, unit);
}

}  // namespace rht
