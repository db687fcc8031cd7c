#pragma once

// Reduced bar construction of an augmented CDGA, truncated by word length,
// with the shuffle product, deconcatenation coproduct, the Hopf algebra H^0
// and the homotopy-group extractors.

#include <rht/cdga.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rht {

/// Letter ids index a basis of the augmentation ideal, degree by degree.
using Word = std::vector<int>;
/// Finite linear combination of words.
using BarElement = std::map<Word, Rational>;

struct BarLetter {
  int degree;     // degree in A; the bar degree is degree - 1
  Index index;    // position in the basis of the augmentation ideal in that degree
  Vector vector;  // the element of A
};

class BarComplex {
 public:
  const CDGA& source() const { return source_; }
  int word_cap() const { return cap_; }
  const Complex& complex() const { return complex_; }
  const std::vector<BarLetter>& letters() const { return letters_; }

  /// Bar degree of a word: sum of (|a_i| - 1).
  int degree(const Word& w) const;
  /// Basis of B^n (the words of that degree and length <= cap), by length then lexicographically.
  const std::vector<Word>& words(int n) const;
  Index index(const Word& w) const;

  /// Word-level differential (internal + external).
  BarElement d(const BarElement& x) const;
  Vector to_vector(int n, const BarElement& x) const;
  BarElement from_vector(int n, const Vector& v) const;
  /// Coordinates of an element of the augmentation ideal in degree k on the letters.
  std::vector<std::pair<int, Rational>> expand(int k, const Vector& v) const;

  /// H^i of the capped complex equals H^i(B) for i <= exact_through. When
  /// letters have bar degree >= m >= 1, words of degree i have length <= i/m,
  /// so this is L*m + m - 1; -1 when some letter has bar degree <= 0 (then
  /// H^0 of the capped complex is the length-<= L piece of H^0(B) if A^0 = K).
  int exact_through() const { return exact_through_; }
  /// Smallest bar degree of a letter (0 if there are none).
  int min_letter_degree() const { return min_letter_; }
  /// Whether the augmentation ideal vanishes in degree 0.
  bool reduced() const { return reduced_; }

  friend BarComplex bar(const CDGA& a, int word_cap);

 private:
  CDGA source_;
  int cap_ = 0;
  Complex complex_;
  std::vector<BarLetter> letters_;
  std::vector<int> offset_;  // first letter id per A-degree
  Space abar0_;
  std::vector<std::vector<std::pair<int, Rational>>> dletter_;
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> product_;
  std::vector<std::vector<Word>> words_;  // [n - lower]
  std::map<Word, Index> index_;
  int exact_through_ = -1;
  int min_letter_ = 0;
  bool reduced_ = true;
};

/// Throws NotAugmented without an augmentation and NotConnected unless
/// dim H^0(a) = 1.
BarComplex bar(const CDGA& a, int word_cap);

/// Signed shuffle product (letters carry their bar degrees).
BarElement shuffle(const BarComplex& b, const BarElement& x, const BarElement& y);
/// Deconcatenation: sum of (prefix, suffix) pairs.
std::map<std::pair<Word, Word>, Rational> deconcatenate(const BarElement& x);
size_t max_length(const BarElement& x);

/// B(f) for an augmented CDGA map, as a chain map of the capped complexes.
ChainMap bar_map(const BarComplex& source, const BarComplex& target, const CDGAMorphism& f);

/// H^0(B) with shuffle product and deconcatenation coproduct. The basis is
/// adapted to the word-length filtration: basis element 0 is the empty word
/// and lengths are nondecreasing. Requires a reduced source (NotReduced).
struct HopfH0 {
  BarComplex bar;
  Matrix basis;                // columns: cycles in B^0
  std::vector<int> length;     // filtration level of each basis element
  Matrix coordinate_map;       // h x dim B^0, valid on cycles

  Index dim() const { return basis.cols(); }
  BarElement element(Index i) const;
  Vector coordinates(const BarElement& x) const;
  /// e_i e_j when length(i) + length(j) <= cap.
  std::optional<Vector> product(Index i, Index j) const;
  /// Delta e_i = sum C(j,k) e_j (x) e_k.
  Matrix coproduct(Index i) const;
  /// Violations of commutativity, associativity, coassociativity and the
  /// bialgebra identity within the cap, and of the structure descending to H^0.
  std::vector<std::string> failures() const;
  /// dim Q_{<= l} = (I / I^2) restricted to length <= l, for l = 0..cap: the
  /// dimension of the Lie algebra of pi_1 (the primitives of the dual) up to length l.
  std::vector<Index> primitive_dims() const;
};

HopfH0 h0_hopf(const BarComplex& b);

/// Graded indecomposables of an augmented algebra: Q^n = Abar^n / (Abar Abar)^n.
struct Indecomposables {
  std::vector<Quotient<Rational>> degrees;  // per degree 0..top, inside A^n
  std::vector<Index> dims() const;
};

Indecomposables indecomposables(const CDGA& a);

/// pi_n = (Q H^{n-1}(B))^vee as a dual basis of functionals on H^{n-1}.
struct HomotopyGroup {
  int n = 0;
  Index rank = 0;
  Matrix dual_basis;   // rank x dim H^{n-1}(B), in cohomology coordinates
  bool exact = false;  // n - 1 within exact_through and all products within the cap
  std::string provenance;
};

HomotopyGroup pi_n(const CDGA& a, int n, int word_cap);

}  // namespace rht
