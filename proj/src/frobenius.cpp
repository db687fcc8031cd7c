#include <rht/filtration.hpp>

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>

namespace rht {

bool is_prime_power(long q) {
  if (q < 2) return false;
  for (long p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    while (q % p == 0) q /= p;
    return q == 1;
  }
  return true;
}

void validate_frobenius(const Complex& c, const FrobeniusOperator& f) {
  if (!is_prime_power(f.q)) throw Error(ErrorKind::InvalidInput, "q = " + std::to_string(f.q) + " is not a prime power");
  if (f.phi.size() != c.dims().size()) throw Error(ErrorKind::InvalidInput, "one Frobenius matrix per degree expected");
  for (int n = c.lower_bound(); n <= c.top(); ++n) {
    const Matrix& m = f.phi[static_cast<size_t>(n - c.lower_bound())];
    if (m.rows() != c.dim(n) || m.cols() != c.dim(n))
      throw Error(ErrorKind::InvalidInput, "Frobenius has the wrong shape in degree " + std::to_string(n));
    if (rank<Rational>(m) != c.dim(n)) throw Error(ErrorKind::InvalidInput, "Frobenius is not invertible in degree " + std::to_string(n));
    if (n < c.top() && product<Rational>(c.d(n), m) != product<Rational>(f.phi[static_cast<size_t>(n + 1 - c.lower_bound())], c.d(n)))
      throw Error(ErrorKind::InvalidInput, "Frobenius does not commute with d in degree " + std::to_string(n));
  }
}

void validate_frobenius(const CDGA& a, const FrobeniusOperator& f) {
  validate_frobenius(a.complex(), f);
  if (a.dim(0) > 0 && f.phi[0] * a.unit() != a.unit()) throw Error(ErrorKind::InvalidAlgebra, "Frobenius does not fix the unit");
  for (int i = 0; i <= a.top(); ++i)
    for (int j = 0; i + j <= a.top(); ++j)
      for (Index x = 0; x < a.dim(i); ++x)
        for (Index y = 0; y < a.dim(j); ++y) {
          const Vector lhs = f.phi[static_cast<size_t>(i + j)] * a.basis_product(i, x, j, y);
          const Vector rhs = a.multiply(i, f.phi[static_cast<size_t>(i)].col(x), j, f.phi[static_cast<size_t>(j)].col(y));
          if (lhs != rhs)
            throw Error(ErrorKind::InvalidAlgebra, "Frobenius is not multiplicative on degrees " + std::to_string(i) + "," +
                                                       std::to_string(j));
        }
}

const char* purity_name(Purity p) {
  switch (p) {
    case Purity::Pure: return "pure";
    case Purity::Impure: return "impure";
    case Purity::Undecided: return "undecided";
  }
  return "?";
}

std::vector<Rational> characteristic_polynomial(const Matrix& a) {
  const Index n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::InvalidInput, "characteristic polynomial of a non-square matrix");
  std::vector<Rational> c(static_cast<size_t>(n + 1));
  c[static_cast<size_t>(n)] = 1;
  Matrix m = Matrix::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    m = product<Rational>(a, m);
    for (Index i = 0; i < n; ++i) m(i, i) += c[static_cast<size_t>(n - k + 1)];
    const Matrix am = product<Rational>(a, m);
    Rational tr(0);
    for (Index i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<size_t>(n - k)] = -tr / Rational(k);
  }
  return c;
}

namespace {

Rational power(const Rational& x, int e) {
  Rational r(1);
  const Rational b = e >= 0 ? x : Rational(1) / x;
  for (int i = 0; i < std::abs(e); ++i) r *= b;
  return r;
}

using Real = boost::multiprecision::mpfr_float;

struct Cx {
  Real re, im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx operator/(const Cx& a, const Cx& b) {
  const Real n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
Real modulus(const Cx& a) { return sqrt(a.re * a.re + a.im * a.im); }

Real to_real(const Rational& x) {
  return Real(boost::multiprecision::numerator(x).str()) / Real(boost::multiprecision::denominator(x).str());
}

// Aberth-Ehrlich simultaneous iteration on a monic polynomial.
std::vector<Cx> roots(const std::vector<Rational>& coeffs, unsigned bits) {
  const size_t d = coeffs.size() - 1;
  std::vector<Real> c;
  for (const auto& x : coeffs) c.push_back(to_real(x));
  Real radius = 0;
  for (size_t i = 0; i < d; ++i) radius = std::max(radius, Real(abs(c[i])));
  radius = 1 + radius;
  std::vector<Cx> z(d);
  const Real pi = boost::multiprecision::acos(Real(-1));
  for (size_t k = 0; k < d; ++k) {
    const Real angle = 2 * Real(pi) * Real(k) / Real(d) + Real("0.4");
    z[k] = {radius * cos(angle) / 2, radius * sin(angle) / 2};
  }
  const Real eps = pow(Real(2), -static_cast<int>(bits) + 8);
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst = 0;
    for (size_t k = 0; k < d; ++k) {
      Cx p{c[d], 0}, dp{0, 0};
      for (size_t i = d; i-- > 0;) {
        dp = dp * z[k] + p;
        p = p * z[k] + Cx{c[i], 0};
      }
      if (modulus(p) == 0) continue;
      const Cx ratio = p / dp;
      Cx s{0, 0};
      for (size_t j = 0; j < d; ++j)
        if (j != k) s = s + Cx{1, 0} / (z[k] - z[j]);
      const Cx w = ratio / (Cx{1, 0} - ratio * s);
      z[k] = z[k] - w;
      worst = std::max(worst, Real(modulus(w)));
    }
    if (worst < eps) break;
  }
  return z;
}

bool nilpotent(const Matrix& m) {
  Matrix p = m;
  for (Index i = 1; i < m.rows(); ++i) p = product<Rational>(p, m);
  for (Index i = 0; i < p.rows(); ++i)
    for (Index j = 0; j < p.cols(); ++j)
      if (!is_zero(p(i, j))) return false;
  return true;
}

}  // namespace

PurityReport purity_check(const Matrix& phi, long q, int w, unsigned precision_bits) {
  if (!is_prime_power(q)) throw Error(ErrorKind::InvalidInput, "q = " + std::to_string(q) + " is not a prime power");
  PurityReport rep;
  rep.charpoly = characteristic_polynomial(phi);
  const Index d = phi.rows();
  if (d == 0) {
    rep.reason = "zero space";
    return rep;
  }
  const Rational qw = power(Rational(q), w);
  // Tate type: every eigenvalue squares to q^w
  Matrix m = product<Rational>(phi, phi);
  for (Index i = 0; i < d; ++i) m(i, i) -= qw;
  if (nilpotent(m)) {
    rep.reason = "eigenvalues are +-q^(w/2)";
    return rep;
  }
  // Weil numbers of weight w are closed under x -> q^w / x.
  const auto& p = rep.charpoly;
  const Rational c = p[0];
  bool fe = c * c == power(qw, static_cast<int>(d));
  for (Index j = 0; fe && j <= d; ++j)
    if (p[static_cast<size_t>(d - j)] * power(qw, static_cast<int>(d - j)) != c * p[static_cast<size_t>(j)]) fe = false;
  if (!fe) {
    rep.verdict = Purity::Impure;
    rep.reason = "functional equation x^d P(q^w/x) = c P(x) fails";
    return rep;
  }
  rep.verdict = Purity::Undecided;
  rep.reason = "functional equation holds but eigenvalues are not of Tate type";
  const unsigned digits = std::max(20u, static_cast<unsigned>(precision_bits * 0.30103) + 5);
  const unsigned saved = Real::default_precision();
  Real::default_precision(digits);
  for (const Cx& z : roots(p, precision_bits)) rep.moduli.push_back(modulus(z).str(std::min(digits - 5, 30u)));
  std::sort(rep.moduli.begin(), rep.moduli.end());
  Real::default_precision(saved);
  return rep;
}

namespace {

MixednessReport check(const FilteredComplex& fc, const FrobeniusOperator& f, unsigned bits) {
  const Complex& c = fc.complex();
  validate_frobenius(c, f);
  for (int n = c.lower_bound(); n <= c.top(); ++n)
    for (int p = fc.p_min(); p < fc.p_max(); ++p)
      if (!fc.w(p, n).contains(apply<Rational>(f.phi[static_cast<size_t>(n - c.lower_bound())], fc.w(p, n))))
        throw Error(ErrorKind::NotFiltered, "Frobenius does not preserve W_" + std::to_string(p) + " in degree " + std::to_string(n));
  MixednessReport rep;
  for (const GradedPiece& g : graded_pieces(fc)) {
    if (g.complex.empty()) continue;
    std::vector<Matrix> comps;
    for (int n = c.lower_bound(); n <= c.top(); ++n) {
      const auto& qt = g.quotients[static_cast<size_t>(n - c.lower_bound())];
      comps.push_back(qt.projection * product<Rational>(f.phi[static_cast<size_t>(n - c.lower_bound())], qt.representatives));
    }
    const ChainMap phi(g.complex, g.complex, comps);
    const Cohomology h = cohomology(g.complex);
    for (int n = c.lower_bound(); n <= c.top(); ++n) {
      if (h.dim(n) == 0) continue;
      MixednessSlot s;
      s.p = g.p;
      s.degree = n;
      s.weight = n + g.p;
      s.dim = h.dim(n);
      s.purity = purity_check(induced_map(phi, h, h, n), f.q, s.weight, bits);
      if (s.purity.verdict == Purity::Impure)
        rep.verdict = Purity::Impure;
      else if (s.purity.verdict == Purity::Undecided && rep.verdict == Purity::Pure)
        rep.verdict = Purity::Undecided;
      rep.slots.push_back(std::move(s));
    }
  }
  return rep;
}

}  // namespace

MixednessReport mixedness_check(const FilteredComplex& fc, const FrobeniusOperator& f, unsigned precision_bits) {
  return check(fc, f, precision_bits);
}

MixednessReport mixedness_check(const FilteredCDGA& a, const FrobeniusOperator& f, unsigned precision_bits) {
  validate_frobenius(a.algebra(), f);
  return check(a.filtration(), f, precision_bits);
}

}  // namespace rht
