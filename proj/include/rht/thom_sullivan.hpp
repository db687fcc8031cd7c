#pragma once

#include <rht/cosimplicial.hpp>
#include <rht/sparse.hpp>

#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace rht {

/// t_1^{a_1} ... t_n^{a_n} dt_I on the algebraic n-simplex, in the chart
/// t_0 = 1 - (t_1 + ... + t_n). Bit i-1 of `mask` selects dt_i; the wedge is
/// taken in increasing index order.
struct FormTerm {
  std::vector<int> exps;
  unsigned mask = 0;

  int poly_degree() const;
  int form_degree() const;
  int weight() const { return poly_degree() + form_degree(); }
  auto operator<=>(const FormTerm&) const = default;
};

/// Polynomial differential form on the algebraic n-simplex.
class PolyForm {
 public:
  explicit PolyForm(int level = 0) : level_(level) {}

  static PolyForm constant(int level, const Rational& c);
  /// Barycentric coordinate t_i, i = 0..level (t_0 through the chart).
  static PolyForm coordinate(int level, int i);
  /// dt_i, i = 0..level (dt_0 = -(dt_1 + ... + dt_n)).
  static PolyForm differential(int level, int i);
  static PolyForm term(int level, FormTerm t, const Rational& c = Rational(1));

  int level() const { return level_; }
  const std::map<FormTerm, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest weight of a term; -1 for the zero form.
  int weight() const;
  /// Common form degree, or -1 if zero or inhomogeneous.
  int form_degree() const;

  void add(const FormTerm& t, const Rational& c);
  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator-=(const PolyForm& o);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(const Rational& c, const PolyForm& f);
  friend bool operator==(const PolyForm& a, const PolyForm& b) { return a.level_ == b.level_ && a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  int level_ = 0;
  std::map<FormTerm, Rational> terms_;
};

PolyForm poly_d(const PolyForm& f);
PolyForm poly_mul(const PolyForm& f, const PolyForm& g);
/// theta^* : forms on [theta.target] -> forms on [theta.source].
PolyForm pullback(const SimplexMap& theta, const PolyForm& f);

/// Monomial basis of the weight <= w part of k-forms on the n-simplex, in
/// FormTerm order. Size C(n,k) * C(w-k+n, n).
std::vector<FormTerm> omega_basis(int n, int k, int w);
Index omega_count(int n, int k, int w);

/// Integral over the n-simplex of the top-degree part of f:
/// int t^a dt_1...dt_n = a_1! ... a_n! / (n + |a|)!.
Rational integrate(const PolyForm& f);

/// Element of Th: for each level n <= N, coefficients in polynomial forms
/// of the basis vectors of level n (flat index over all internal degrees).
struct ThElement {
  int degree = 0;
  std::vector<std::vector<PolyForm>> family;  // family[n][flat basis index]
};

/// One bigraded piece Th^{k,l}: compatible families of k-forms with values
/// in internal degree l.
struct ThPiece {
  struct Unknown {
    int level;
    FormTerm form;
    Index a;  // basis index inside level(level) in degree l
  };
  int k = 0;
  int l = 0;
  std::vector<Unknown> unknowns;
  std::map<std::tuple<int, FormTerm, Index>, Index> index;
  SparseKernel kernel;
  Index dim() const { return kernel.dim(); }
};

/// Thom-Sullivan cochains truncated by degree and weight: the end over the
/// simplex category (levels <= N) of weight-<=w polynomial forms tensored
/// with the levels. Exposed as a complex in degrees 0..M+1; cohomology is
/// meaningful through degree M. Products exist family-wise (th_multiply)
/// but raise weight, so the capped pieces are not closed under them.
class ThomSullivan {
 public:
  const CosimplicialCDGA& source() const { return source_; }
  int degree_cap() const { return degree_cap_; }
  int weight_cap() const { return weight_cap_; }
  const Complex& complex() const { return complex_; }
  /// Pieces of degree m, by increasing form degree.
  const std::vector<ThPiece>& pieces(int m) const { return pieces_.at(static_cast<size_t>(m)); }
  /// Offset of pieces(m)[p] inside Th^m.
  Index offset(int m, size_t p) const;

  friend ThomSullivan th(const CosimplicialCDGA& a, int degree_cap, int weight_cap);

 private:
  CosimplicialCDGA source_;
  int degree_cap_ = 0;
  int weight_cap_ = 0;
  std::vector<std::vector<ThPiece>> pieces_;
  Complex complex_;
};

/// Throws TruncationTooSmall unless N >= M + 1, and InvalidInput unless
/// w >= M + 2.
ThomSullivan th(const CosimplicialCDGA& a, int degree_cap, int weight_cap);

/// Element with the given coordinates in Th^m.
ThElement th_element(const ThomSullivan& t, int m, const Vector& coords);
/// Coordinates of a compatible element inside the capped Th^m; throws
/// InvalidInput if it is not there.
Vector th_coordinates(const ThomSullivan& t, const ThElement& x);

ThElement th_d(const CosimplicialCDGA& a, const ThElement& x);
ThElement th_multiply(const CosimplicialCDGA& a, const ThElement& x, const ThElement& y);
/// Generators theta at which (theta^* (x) 1) x_q != (1 (x) A(theta)) x_p.
std::vector<std::string> compatibility_failures(const CosimplicialCDGA& a, const ThElement& x);

/// Image of x in Tot_N^m (coordinates of tot(normalize(a)) in its layout).
Vector integrate(const ThomSullivan& t, const ThElement& x);

struct IntegrationMap {
  Complex tot;            // Tot_N of the source
  ChainMap map;           // Th -> Tot_N, degrees 0..M+1
  std::vector<int> chain_failures;  // degrees m <= M with d f != f d
  bool is_chain_map() const { return chain_failures.empty(); }
};

IntegrationMap integration_map(const ThomSullivan& t);

/// x |-> x_0, a chain map Th -> level 0 (degrees 0..M+1).
ChainMap evaluation_at_vertex(const ThomSullivan& t);

/// Polynomial de Rham algebra of the n-simplex modulo weight > w (a
/// genuine truncated CDGA; product terms above the cap are dropped).
CDGA de_rham_algebra(int n, int w);

}  // namespace rht
