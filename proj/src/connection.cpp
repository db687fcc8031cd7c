#include <rht/connection.hpp>

#include <rht/filtration.hpp>
#include <rht/linalg.hpp>
#include <rht/polysys.hpp>

#include <sstream>

namespace rht {

Laurent::Laurent(const Rational& c) { add_term(0, c); }

Laurent Laurent::monomial(const Rational& c, int exponent) {
  Laurent l;
  l.add_term(exponent, c);
  return l;
}

Rational Laurent::coeff(int exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Laurent::add_term(int exponent, const Rational& c) {
  if (rht::is_zero(c)) return;
  auto [it, fresh] = terms_.emplace(exponent, c);
  if (!fresh) {
    it->second += c;
    if (rht::is_zero(it->second)) terms_.erase(it);
  }
}

Laurent Laurent::derivative() const {
  Laurent r;
  for (const auto& [e, c] : terms_) r.add_term(e - 1, c * e);
  return r;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator-() const {
  Laurent r;
  for (const auto& [e, c] : terms_) r.add_term(e, -c);
  return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (const auto& [e, c] : terms_)
    for (const auto& [f, d] : o.terms_) r.add_term(e + f, c * d);
  return r;
}

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) s << (c < 0 ? " - " : " + ");
    else if (c < 0) s << "-";
    first = false;
    const Rational a = c < 0 ? Rational(-c) : c;
    if (e == 0) {
      s << a;
      continue;
    }
    if (a != 1) s << a << "*";
    s << "t";
    if (e != 1) s << "^" << e;
  }
  return s.str();
}

namespace {

LaurentVector zeros(Index r) { return LaurentVector(static_cast<size_t>(r)); }

std::string vec_string(const LaurentVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

}  // namespace

LaurentVector ConnectionAlgebra::basis_vector(Index i) const {
  LaurentVector v = zeros(rank);
  v[static_cast<size_t>(i)] = Laurent(1);
  return v;
}

LaurentVector ConnectionAlgebra::multiply(const LaurentVector& a, const LaurentVector& b) const {
  LaurentVector r = zeros(rank);
  for (Index i = 0; i < rank; ++i)
    for (Index j = 0; j < rank; ++j) {
      const Laurent ab = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
      if (ab.is_zero()) continue;
      for (Index k = 0; k < rank; ++k)
        r[static_cast<size_t>(k)] = r[static_cast<size_t>(k)] + ab * mult[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)];
    }
  return r;
}

LaurentVector ConnectionAlgebra::nabla(const LaurentVector& a) const {
  LaurentVector r = zeros(rank);
  for (Index k = 0; k < rank; ++k) {
    Laurent x = a[static_cast<size_t>(k)].derivative();
    for (Index j = 0; j < rank; ++j) x = x + gamma[static_cast<size_t>(k)][static_cast<size_t>(j)] * a[static_cast<size_t>(j)];
    r[static_cast<size_t>(k)] = x;
  }
  return r;
}

ConnectionAlgebra ConnectionAlgebra::trivial() {
  ConnectionAlgebra a;
  a.rank = 1;
  a.labels = {"1"};
  a.mult = {{{Laurent(1)}}};
  a.unit = {Laurent(1)};
  a.gamma = {{Laurent()}};
  return a;
}

ConnectionAlgebra ConnectionAlgebra::split() {
  ConnectionAlgebra a;
  a.rank = 2;
  a.labels = {"e0", "e1"};
  a.mult = {{{Laurent(1), Laurent()}, {Laurent(), Laurent(1)}}, {{Laurent(), Laurent(1)}, {Laurent(1), Laurent()}}};
  a.unit = {Laurent(1), Laurent()};
  a.gamma = {{Laurent(), Laurent()}, {Laurent(), Laurent()}};
  return a;
}

ConnectionAlgebra ConnectionAlgebra::square_root_cover() {
  ConnectionAlgebra a;
  a.rank = 2;
  a.labels = {"e0", "e1"};
  a.mult = {{{Laurent(1), Laurent()}, {Laurent(), Laurent(1)}},
            {{Laurent(), Laurent(1)}, {Laurent::monomial(Rational(1), 1), Laurent()}}};
  a.unit = {Laurent(1), Laurent()};
  a.gamma = {{Laurent(), Laurent()}, {Laurent(), Laurent::monomial(Rational(1, 2), -1)}};
  return a;
}

ConnectionReport validate(const ConnectionAlgebra& a) {
  ConnectionReport rep;
  const Index r = a.rank;
  const size_t n = static_cast<size_t>(r);
  if (a.labels.size() != n && !a.labels.empty()) rep.violations.push_back("label count differs from the rank");
  bool shapes = a.unit.size() == n && a.mult.size() == n && a.gamma.size() == n;
  for (size_t i = 0; shapes && i < n; ++i) {
    shapes = a.mult[i].size() == n && a.gamma[i].size() == n;
    for (size_t j = 0; shapes && j < n; ++j) shapes = a.mult[i][j].size() == n;
  }
  if (!shapes) {
    rep.violations.push_back("structure tensors do not match the rank");
    return rep;
  }
  auto e = [&](Index i) { return a.basis_vector(i); };
  auto name = [&](Index i) { return a.labels.empty() ? "e" + std::to_string(i) : a.labels[static_cast<size_t>(i)]; };
  for (Index i = 0; i < r; ++i) {
    if (a.multiply(a.unit, e(i)) != e(i)) rep.violations.push_back("unit law fails on " + name(i));
    for (Index j = 0; j < r; ++j) {
      const LaurentVector ij = a.multiply(e(i), e(j));
      if (ij != a.multiply(e(j), e(i))) rep.violations.push_back("commutativity fails on " + name(i) + "," + name(j));
      for (Index k = 0; k < r; ++k)
        if (a.multiply(ij, e(k)) != a.multiply(e(i), a.multiply(e(j), e(k))))
          rep.violations.push_back("associativity fails on " + name(i) + "," + name(j) + "," + name(k));
      LaurentVector rhs = a.multiply(a.nabla(e(i)), e(j));
      const LaurentVector other = a.multiply(e(i), a.nabla(e(j)));
      for (size_t k = 0; k < n; ++k) rhs[k] = rhs[k] + other[k];
      if (a.nabla(ij) != rhs)
        rep.violations.push_back("Leibniz fails on " + name(i) + "," + name(j) + ": " + vec_string(a.nabla(ij)) + " vs " +
                                 vec_string(rhs));
    }
  }
  if (a.nabla(a.unit) != zeros(r)) rep.violations.push_back("the unit is not horizontal");
  return rep;
}

const char* certificate_name(SectionCertificate c) {
  switch (c) {
    case SectionCertificate::Found: return "found";
    case SectionCertificate::NoneLinear: return "none_linear";
    case SectionCertificate::NoneInWindow: return "none_in_window";
    case SectionCertificate::Unknown: return "unknown";
  }
  return "?";
}

bool is_section(const ConnectionAlgebra& a, const LaurentVector& s) {
  auto apply = [&](const LaurentVector& v) {
    Laurent x;
    for (size_t k = 0; k < v.size(); ++k) x = x + v[k] * s[k];
    return x;
  };
  if (apply(a.unit) != Laurent(1)) return false;
  for (Index i = 0; i < a.rank; ++i) {
    const LaurentVector ei = a.basis_vector(i);
    if (s[static_cast<size_t>(i)].derivative() != apply(a.nabla(ei))) return false;
    for (Index j = 0; j < a.rank; ++j)
      if (apply(a.multiply(ei, a.basis_vector(j))) != s[static_cast<size_t>(i)] * s[static_cast<size_t>(j)]) return false;
  }
  return true;
}

namespace {

/// Unit and horizontality constraints on the coefficients c[k][i], i in [-w, w],
/// unknown index k * (2w + 1) + (i + w).
struct LinearStage {
  Matrix a;
  Vector b;
};

LinearStage linear_stage(const ConnectionAlgebra& ca, int w) {
  const Index r = ca.rank;
  const int width = 2 * w + 1;
  const Index nu = r * width;
  auto var = [&](Index k, int i) { return k * width + (i + w); };
  std::map<std::pair<int, int>, Vector> rows;  // (equation family, exponent)
  std::map<std::pair<int, int>, Rational> rhs;
  auto row = [&](int fam, int e) -> Vector& {
    auto it = rows.find({fam, e});
    if (it == rows.end()) it = rows.emplace(std::make_pair(fam, e), Vector::Zero(nu)).first;
    return it->second;
  };
  // unit: sum_k u_k s_k = 1
  row(-1, 0);
  rhs[{-1, 0}] = 1;
  for (Index k = 0; k < r; ++k)
    for (const auto& [eu, cu] : ca.unit[static_cast<size_t>(k)].terms())
      for (int i = -w; i <= w; ++i) row(-1, eu + i)(var(k, i)) += cu;
  // horizontality: s_k' = sum_j gamma[j][k] s_j
  for (Index k = 0; k < r; ++k) {
    const int fam = static_cast<int>(k);
    for (int i = -w; i <= w; ++i)
      if (i != 0) row(fam, i - 1)(var(k, i)) += Rational(i);
    for (Index j = 0; j < r; ++j)
      for (const auto& [eg, cg] : ca.gamma[static_cast<size_t>(j)][static_cast<size_t>(k)].terms())
        for (int i = -w; i <= w; ++i) row(fam, eg + i)(var(j, i)) -= cg;
  }
  LinearStage st{Matrix(static_cast<Index>(rows.size()), nu), Vector::Zero(static_cast<Index>(rows.size()))};
  Index n = 0;
  for (const auto& [key, v] : rows) {
    st.a.row(n) = v.transpose();
    const auto it = rhs.find(key);
    if (it != rhs.end()) st.b(n) = it->second;
    ++n;
  }
  return st;
}

/// Integer exponents at which the exponent-diagonal horizontality equations
/// have nonzero solutions: integer eigenvalues of the t^{-1} part of gamma.
std::optional<std::vector<Rational>> diagonal_exponents(const ConnectionAlgebra& ca) {
  for (const auto& u : ca.unit)
    for (const auto& [e, c] : u.terms())
      if (e != 0) return std::nullopt;
  Matrix g = Matrix::Zero(ca.rank, ca.rank);
  for (Index k = 0; k < ca.rank; ++k)
    for (Index j = 0; j < ca.rank; ++j)
      for (const auto& [e, c] : ca.gamma[static_cast<size_t>(k)][static_cast<size_t>(j)].terms()) {
        if (e != -1) return std::nullopt;
        g(k, j) = c;
      }
  std::vector<Rational> out;
  for (const Rational& x : rational_roots(characteristic_polynomial(g)))
    if (boost::multiprecision::denominator(x) == 1) out.push_back(x);
  return out;
}

LaurentVector images(const Vector& c, Index r, int w) {
  LaurentVector s(static_cast<size_t>(r));
  const int width = 2 * w + 1;
  for (Index k = 0; k < r; ++k)
    for (int i = -w; i <= w; ++i) s[static_cast<size_t>(k)].add_term(i, c(k * width + i + w));
  return s;
}

}  // namespace

SectionResult section_check(const ConnectionAlgebra& ca, int window, int enumeration_bound) {
  if (window < 0) throw Error(ErrorKind::InvalidInput, "negative support window");
  const ConnectionReport rep = validate(ca);
  if (!rep.ok()) throw Error(ErrorKind::InvalidAlgebra, rep.violations.front());
  SectionResult res;
  res.window = window;
  const auto exps = diagonal_exponents(ca);
  if (exps) {
    res.window_independent = true;
    for (const Rational& e : *exps)
      if (e > window || e < -window) res.window_independent = false;
  }
  const LinearStage st = linear_stage(ca, window);
  const auto particular = solve<Rational>(st.a, st.b);
  if (!particular) {
    res.linear_dim = -1;
    res.certificate = res.window_independent ? SectionCertificate::NoneLinear : SectionCertificate::NoneInWindow;
    return res;
  }
  const Space null = kernel<Rational>(st.a);
  res.linear_dim = null.dim();
  const int k = static_cast<int>(null.dim());
  if (k > enumeration_bound)
    throw Error(ErrorKind::EnumerationBoundExceeded, "linear solution space has " + std::to_string(k) +
                                                         " parameters, above the bound " + std::to_string(enumeration_bound));
  // s_j = sum_i (c0 + N lambda)_{j,i} t^i with polynomial coefficients in lambda.
  const Index r = ca.rank;
  const int width = 2 * window + 1;
  std::vector<std::map<int, Poly>> s(static_cast<size_t>(r));
  for (Index j = 0; j < r; ++j)
    for (int i = -window; i <= window; ++i) {
      const Index v = j * width + i + window;
      Poly p = Poly::constant(k, (*particular)(v));
      for (int q = 0; q < k; ++q) p = p + Poly::variable(k, q) * null.basis()(v, q);
      if (!p.is_zero()) s[static_cast<size_t>(j)].emplace(i, p);
    }
  std::vector<Poly> eqs;
  for (Index i = 0; i < r; ++i)
    for (Index j = i; j < r; ++j) {
      std::map<int, Poly> diff;
      auto add = [&](int e, const Poly& p) {
        auto it = diff.find(e);
        if (it == diff.end()) diff.emplace(e, p);
        else it->second = it->second + p;
      };
      for (const auto& [ea, pa] : s[static_cast<size_t>(i)])
        for (const auto& [eb, pb] : s[static_cast<size_t>(j)]) add(ea + eb, pa * pb);
      for (Index m = 0; m < r; ++m)
        for (const auto& [em, cm] : ca.mult[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(m)].terms())
          for (const auto& [es, ps] : s[static_cast<size_t>(m)]) add(em + es, ps * (-cm));
      for (const auto& [e, p] : diff)
        if (!p.is_zero()) eqs.push_back(p);
    }
  const auto sols = rational_solutions(eqs, k);
  if (!sols) {
    res.certificate = SectionCertificate::Unknown;
    return res;
  }
  for (const auto& lambda : *sols) {
    Vector c = *particular;
    for (int q = 0; q < k; ++q) c += null.basis().col(q) * lambda[static_cast<size_t>(q)];
    LaurentVector sec = images(c, r, window);
    if (!is_section(ca, sec)) throw Error(ErrorKind::InvalidInput, "internal: a solved section fails verification");
    res.sections.push_back(std::move(sec));
  }
  if (!res.sections.empty())
    res.certificate = SectionCertificate::Found;
  else if (k == 0 && res.window_independent)
    res.certificate = SectionCertificate::NoneLinear;
  else
    res.certificate = SectionCertificate::NoneInWindow;
  return res;
}

bool cohomology_section_check(const ConnectionAlgebra& ca, int window) {
  const LinearStage st = linear_stage(ca, window);
  return solve<Rational>(st.a, st.b).has_value();
}

}  // namespace rht
