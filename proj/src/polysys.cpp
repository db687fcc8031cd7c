#include <rht/polysys.hpp>

#include <algorithm>
#include <set>

namespace rht {

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Monomial(static_cast<size_t>(nvars), 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  Poly p(nvars);
  Monomial m(static_cast<size_t>(nvars), 0);
  m[static_cast<size_t>(i)] = 1;
  p.add_term(m, Rational(1));
  return p;
}

bool Poly::is_constant() const {
  for (const auto& [m, c] : terms_)
    for (int e : m)
      if (e != 0) return false;
  return true;
}

bool Poly::univariate_in(int i) const {
  for (const auto& [m, c] : terms_)
    for (int k = 0; k < nvars_; ++k)
      if (k != i && m[static_cast<size_t>(k)] != 0) return false;
  return true;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (rht::is_zero(c)) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (rht::is_zero(it->second)) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::times_term(const Monomial& m, const Rational& c) const {
  Poly r(nvars_);
  for (const auto& [mm, cc] : terms_) {
    Monomial e = mm;
    for (size_t k = 0; k < e.size(); ++k) e[k] += m[k];
    r.add_term(e, cc * c);
  }
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(nvars_);
  for (const auto& [m, c] : o.terms_) r = r + times_term(m, c);
  return r;
}

Poly Poly::operator*(const Rational& c) const { return times_term(Monomial(static_cast<size_t>(nvars_), 0), c); }

Poly Poly::monic() const { return is_zero() ? *this : *this * (Rational(1) / lead_coeff()); }

Poly Poly::substitute(int i, const Rational& value) const {
  Poly r(nvars_ - 1);
  for (const auto& [m, c] : terms_) {
    Rational v(1);
    for (int k = 0; k < m[static_cast<size_t>(i)]; ++k) v *= value;
    Monomial e = m;
    e.erase(e.begin() + i);
    r.add_term(e, c * v);
  }
  return r;
}

namespace {

bool divides(const Monomial& a, const Monomial& b) {
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial q = b;
  for (size_t k = 0; k < q.size(); ++k) q[k] -= a[k];
  return q;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial l = a;
  for (size_t k = 0; k < l.size(); ++k) l[k] = std::max(a[k], b[k]);
  return l;
}

Poly s_polynomial(const Poly& f, const Poly& g) {
  const Monomial l = lcm(f.lead(), g.lead());
  return f.times_term(quotient(l, f.lead()), Rational(1) / f.lead_coeff()) -
         g.times_term(quotient(l, g.lead()), Rational(1) / g.lead_coeff());
}

std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  if (n > Integer(1000000000000LL))
    throw Error(ErrorKind::EnumerationBoundExceeded, "rational-root search on a coefficient above 10^12");
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

}  // namespace

Poly reduce(const Poly& p, const std::vector<Poly>& g) {
  Poly rest = p;
  Poly out(p.nvars());
  while (!rest.is_zero()) {
    const Monomial lm = rest.lead();
    const Rational lc = rest.lead_coeff();
    bool reduced = false;
    for (const Poly& h : g) {
      if (h.is_zero() || !divides(h.lead(), lm)) continue;
      rest = rest - h.times_term(quotient(lm, h.lead()), lc / h.lead_coeff());
      reduced = true;
      break;
    }
    if (!reduced) {
      out.add_term(lm, lc);
      rest.add_term(lm, -lc);
    }
  }
  return out;
}

std::vector<Poly> groebner_basis(std::vector<Poly> polys) {
  std::vector<Poly> g;
  for (Poly& p : polys)
    if (!p.is_zero()) g.push_back(p.monic());
  std::set<std::pair<size_t, size_t>> pairs;
  for (size_t j = 0; j < g.size(); ++j)
    for (size_t i = 0; i < j; ++i) pairs.emplace(i, j);
  while (!pairs.empty()) {
    const auto [i, j] = *pairs.begin();
    pairs.erase(pairs.begin());
    // Buchberger's first criterion: coprime leading monomials reduce to zero.
    const Monomial& a = g[i].lead();
    const Monomial& b = g[j].lead();
    bool coprime = true;
    for (size_t k = 0; k < a.size(); ++k)
      if (a[k] > 0 && b[k] > 0) coprime = false;
    if (coprime) continue;
    const Poly r = reduce(s_polynomial(g[i], g[j]), g);
    if (r.is_zero()) continue;
    g.push_back(r.monic());
    for (size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace(k, g.size() - 1);
  }
  // Minimalize then interreduce.
  std::vector<Poly> minimal;
  for (size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j || !divides(g[j].lead(), g[i].lead())) continue;
      redundant = g[j].lead() != g[i].lead() || j < i;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<Poly> out;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    out.push_back(reduce(minimal[i], others).monic());
  }
  std::sort(out.begin(), out.end(), [](const Poly& x, const Poly& y) { return x.lead() < y.lead(); });
  return out;
}

std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
  std::vector<Rational> c = coeffs;
  while (!c.empty() && rht::is_zero(c.back())) c.pop_back();
  if (c.size() <= 1) {
    if (c.empty()) throw Error(ErrorKind::InvalidInput, "roots of the zero polynomial");
    return {};
  }
  std::vector<Rational> roots;
  size_t low = 0;
  while (rht::is_zero(c[low])) ++low;
  if (low > 0) roots.emplace_back(0);
  c.erase(c.begin(), c.begin() + static_cast<long>(low));
  if (c.size() == 1) return roots;
  Integer den = 1;
  for (const auto& x : c) den = boost::multiprecision::lcm(den, Integer(boost::multiprecision::denominator(x)));
  std::vector<Integer> z;
  for (const auto& x : c) z.push_back(Integer(boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x))));
  auto eval = [&](const Rational& r) {
    Rational v(0);
    for (size_t k = c.size(); k-- > 0;) v = v * r + c[k];
    return v;
  };
  std::set<Rational> found;
  for (const Integer& p : divisors(z.front()))
    for (const Integer& q : divisors(z.back()))
      for (int sign : {1, -1}) {
        const Rational r = Rational(Integer(sign) * p) / Rational(q);
        if (!found.count(r) && rht::is_zero(eval(r))) found.insert(r);
      }
  roots.insert(roots.end(), found.begin(), found.end());
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::optional<std::vector<std::vector<Rational>>> rational_solutions(const std::vector<Poly>& polys, int nvars) {
  std::vector<std::vector<Rational>> out;
  if (nvars == 0) {
    for (const Poly& p : polys)
      if (!p.is_zero()) return out;
    out.emplace_back();
    return out;
  }
  const std::vector<Poly> g = groebner_basis(polys);
  if (g.empty()) return std::nullopt;  // no equations: every value is a solution
  if (g.size() == 1 && g.front().is_constant()) return out;
  const int last = nvars - 1;
  const Poly* uni = nullptr;
  for (const Poly& p : g)
    if (p.univariate_in(last)) {
      uni = &p;
      break;
    }
  if (uni == nullptr) return std::nullopt;
  std::vector<Rational> coeffs;
  for (const auto& [m, c] : uni->terms()) {
    const size_t e = static_cast<size_t>(m[static_cast<size_t>(last)]);
    if (coeffs.size() <= e) coeffs.resize(e + 1, Rational(0));
    coeffs[e] = c;
  }
  for (const Rational& r : rational_roots(coeffs)) {
    std::vector<Poly> sub;
    for (const Poly& p : g) sub.push_back(p.substitute(last, r));
    const auto rest = rational_solutions(sub, nvars - 1);
    if (!rest) return std::nullopt;
    for (auto s : *rest) {
      s.push_back(r);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace rht
