#pragma once

// Finite-rank algebras with connection over the Laurent polynomials K[t, 1/t]
// (a surrogate for overconvergent functions on the punctured line) and the
// search for multiplicative horizontal sections.

#include <rht/error.hpp>
#include <rht/linalg.hpp>

#include <map>
#include <string>
#include <vector>

namespace rht {

class Laurent {
 public:
  Laurent() = default;
  Laurent(const Rational& c);  // NOLINT: constants convert implicitly
  Laurent(long c) : Laurent(Rational(c)) {}  // NOLINT
  static Laurent monomial(const Rational& c, int exponent);

  /// exponent -> coefficient; never stores zeros.
  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(int exponent) const;
  int min_exponent() const { return terms_.begin()->first; }
  int max_exponent() const { return terms_.rbegin()->first; }
  /// d/dt.
  Laurent derivative() const;
  std::string to_string() const;

  void add_term(int exponent, const Rational& c);
  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  bool operator==(const Laurent& o) const { return terms_ == o.terms_; }
  bool operator!=(const Laurent& o) const { return terms_ != o.terms_; }

 private:
  std::map<int, Rational> terms_;
};

using LaurentVector = std::vector<Laurent>;

/// Free module with basis e_0..e_{r-1}, a commutative product
/// e_i e_j = sum_k mult[i][j][k] e_k, a unit, and a connection
/// nabla(sum f_j e_j) = sum_k (f_k' + sum_j gamma[k][j] f_j) e_k dt.
struct ConnectionAlgebra {
  Index rank = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<LaurentVector>> mult;
  LaurentVector unit;
  std::vector<LaurentVector> gamma;

  LaurentVector multiply(const LaurentVector& a, const LaurentVector& b) const;
  /// Coefficient of dt in nabla(a).
  LaurentVector nabla(const LaurentVector& a) const;
  LaurentVector basis_vector(Index i) const;

  /// O with the trivial connection.
  static ConnectionAlgebra trivial();
  /// O x O, written in the basis (1,1), (1,-1), with the trivial connection.
  static ConnectionAlgebra split();
  /// Push-forward of O along x -> x^2 on the punctured line: basis 1, x with
  /// x^2 = t and nabla(x) = x dt / 2t.
  static ConnectionAlgebra square_root_cover();
};

struct ConnectionReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Commutativity, associativity, unit laws, Leibniz for nabla and nabla(1) = 0,
/// all as identities of Laurent polynomials on basis elements.
ConnectionReport validate(const ConnectionAlgebra& a);

enum class SectionCertificate { Found, NoneLinear, NoneInWindow, Unknown };
const char* certificate_name(SectionCertificate c);

struct SectionResult {
  /// Each section lists the images of the basis elements.
  std::vector<LaurentVector> sections;
  SectionCertificate certificate = SectionCertificate::Unknown;
  int window = 0;
  /// Dimension of the affine solution set of the linear (unit + horizontality)
  /// constraints; -1 when it is empty.
  Index linear_dim = -1;
  /// Linear constraints are exponent-diagonal (gamma in K t^{-1}, constant
  /// unit) and every integer exponent they allow lies inside the window, so
  /// the answer is the same for every larger window.
  bool window_independent = false;
};

/// Unital, multiplicative, horizontal maps to O with images supported in
/// [-window, window]. Throws EnumerationBoundExceeded when the linear solution
/// space has more than enumeration_bound parameters.
SectionResult section_check(const ConnectionAlgebra& a, int window, int enumeration_bound = 4);

/// Whether a horizontal module map to O splitting the unit exists (no
/// multiplicativity), with images supported in [-window, window].
bool cohomology_section_check(const ConnectionAlgebra& a, int window = 2);

/// Whether `images` is a unital horizontal algebra map.
bool is_section(const ConnectionAlgebra& a, const LaurentVector& images);

}  // namespace rht
