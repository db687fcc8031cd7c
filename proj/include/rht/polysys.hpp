#pragma once

// Small polynomial systems over Q: lex Groebner bases (Buchberger) and the
// rational points of zero-dimensional systems.

#include <rht/error.hpp>
#include <rht/rational.hpp>

#include <map>
#include <optional>
#include <vector>

namespace rht {

/// Exponent vector; std::vector's ordering is lex with x0 > x1 > ...
using Monomial = std::vector<int>;

class Poly {
 public:
  explicit Poly(int nvars = 0) : nvars_(nvars) {}
  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Leading monomial/coefficient in lex order; the polynomial must be nonzero.
  const Monomial& lead() const { return terms_.rbegin()->first; }
  const Rational& lead_coeff() const { return terms_.rbegin()->second; }
  /// Whether only variable i occurs.
  bool univariate_in(int i) const;

  void add_term(const Monomial& m, const Rational& c);
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly times_term(const Monomial& m, const Rational& c) const;
  Poly monic() const;
  /// Substitute x_i = value; the result has one variable fewer.
  Poly substitute(int i, const Rational& value) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

 private:
  int nvars_;
  std::map<Monomial, Rational> terms_;
};

/// Full reduction of p modulo g.
Poly reduce(const Poly& p, const std::vector<Poly>& g);

/// Reduced lex Groebner basis (monic, sorted by leading monomial).
std::vector<Poly> groebner_basis(std::vector<Poly> polys);

/// Rational roots of a univariate polynomial given by coefficients low -> high.
std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs);

/// All rational points of the system, or nullopt when the complex solution
/// set is positive-dimensional (so it cannot be enumerated).
std::optional<std::vector<std::vector<Rational>>> rational_solutions(const std::vector<Poly>& polys, int nvars);

}  // namespace rht
