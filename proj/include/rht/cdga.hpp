#pragma once

#include <rht/complex.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rht {

/// Unital graded-commutative dga with finite-dimensional pieces in degrees
/// 0..top. The product is stored as basis tensors: mult(i, j) is a
/// dim(i+j) x (dim(i) * dim(j)) matrix whose column a * dim(j) + b holds
/// e_a * e_b. Products landing above top are zero, so the algebra is the
/// quotient A / A^{>top} of whatever it models.
class CDGA {
 public:
  CDGA() = default;
  /// `mult[i][j]` must be supplied for every i + j <= top. The constructor
  /// checks shapes only; use validate() for the algebraic identities.
  CDGA(Complex underlying, std::vector<std::vector<Matrix>> mult, Vector unit,
       std::optional<Vector> augmentation = std::nullopt);

  /// The ground field in degree 0.
  static CDGA ground();
  /// K (+) V with V * V = 0; V is a complex in degrees >= 0, listed first
  /// in degree 0 after the unit. The augmentation kills V.
  static CDGA square_zero(const Complex& v);
  /// K[x]/(x^{power}) with |x| = degree (even), d = 0, augmented.
  static CDGA truncated_polynomial(int degree, int power);
  /// Exterior algebra on one odd generator.
  static CDGA exterior(int degree);

  const Complex& complex() const { return complex_; }
  int top() const { return complex_.top(); }
  Index dim(int degree) const { return complex_.dim(degree); }
  const Matrix& mult(int i, int j) const;
  const std::vector<std::vector<Matrix>>& mult_tensors() const { return mult_; }
  const Vector& unit() const { return unit_; }
  const std::optional<Vector>& augmentation() const { return aug_; }
  bool augmented() const { return aug_.has_value(); }

  /// x * y for x of degree i, y of degree j; a zero vector of size
  /// dim(i + j) (possibly 0) when the product is truncated away.
  Vector multiply(int i, const Vector& x, int j, const Vector& y) const;
  /// Basis product e_a * e_b.
  Vector basis_product(int i, Index a, int j, Index b) const;

  /// Same algebra with a different augmentation.
  CDGA with_augmentation(std::optional<Vector> aug) const;

  friend bool operator==(const CDGA& a, const CDGA& b);

 private:
  Complex complex_;
  std::vector<std::vector<Matrix>> mult_;
  Vector unit_;
  std::optional<Vector> aug_;
};

struct Violation {
  std::string identity;   // "leibniz", "commutativity", ...
  std::vector<int> where; // degrees and basis indices, identity-specific order
  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks Leibniz, graded commutativity, associativity, unit laws and the
/// augmentation on all basis pairs/triples within the degree bound.
ValidationReport validate(const CDGA& a);

/// Strict multiplicative chain map.
class CDGAMorphism {
 public:
  CDGAMorphism() = default;
  CDGAMorphism(CDGA source, CDGA target, std::vector<Matrix> components);

  static CDGAMorphism identity(const CDGA& a);

  const CDGA& source() const { return source_; }
  const CDGA& target() const { return target_; }
  const ChainMap& chain_map() const { return map_; }
  Matrix at(int degree) const { return map_.at(degree); }

 private:
  CDGA source_;
  CDGA target_;
  ChainMap map_;
};

/// Violations of multiplicativity, unit and augmentation for a candidate
/// morphism. Products of degree above the target's top are ignored.
ValidationReport validate_morphism(const CDGA& source, const CDGA& target, const std::vector<Matrix>& components);

/// Graded tensor product with Koszul signs. Degree-n basis: blocks for
/// i = 0..n ascending, inside a block index a * dim_b(n - i) + b.
CDGA tensor(const CDGA& a, const CDGA& b);

struct HStar {
  CDGA algebra;       // zero differential
  Cohomology groups;  // representatives used for the product
};

/// Cohomology algebra. Throws InvalidAlgebra if the induced product depends
/// on the chosen representatives (which only happens for invalid input).
HStar h_star(const CDGA& a);

/// Transport every structure along degreewise invertible matrices p (new
/// basis = p * old coordinates).
CDGA change_basis(const CDGA& a, const std::vector<Matrix>& p);

}  // namespace rht
