#pragma once

#include <rht/cdga.hpp>
#include <rht/complex.hpp>

#include <functional>
#include <string>
#include <vector>

namespace rht {

/// Order-preserving map [source] -> [target].
struct SimplexMap {
  int source = 0;
  int target = 0;
  std::vector<int> values;  // values[k] = image of k

  static SimplexMap identity(int n);
  /// delta_i : [n-1] -> [n], skipping i.
  static SimplexMap coface(int n, int i);
  /// sigma_i : [n+1] -> [n], hitting i twice.
  static SimplexMap codegeneracy(int n, int i);
  /// Surjection [n] -> [k] with s(j) = s(j-1) + 1 exactly for j in `jumps`.
  static SimplexMap surjection(int n, const std::vector<int>& jumps);

  bool valid() const;
  bool injective() const;
  bool surjective() const;
  /// {j in 1..source : values[j] = values[j-1] + 1} (meaningful for surjections).
  std::vector<int> jumps() const;

  friend bool operator==(const SimplexMap&, const SimplexMap&) = default;
};

/// g after f.
SimplexMap compose(const SimplexMap& g, const SimplexMap& f);

/// theta = faces o degeneracies. `degeneracies` are ascending j's with
/// theta(j) = theta(j+1); `faces` are the ascending missed values. As a
/// composite: sigma_{j_1} o ... o sigma_{j_t} applied first (rightmost
/// first), then delta_{m_1}, ..., delta_{m_s} in that order.
struct SimplexFactorization {
  std::vector<int> degeneracies;
  std::vector<int> faces;
  int middle = 0;  // the level [k] between the two halves

  /// Generators in application order: (is_face, level of the target, index).
  struct Step {
    bool face;
    int level;
    int index;
  };
  std::vector<Step> steps(int source) const;
};

SimplexFactorization factor(const SimplexMap& theta);

/// Cosimplicial object of complexes, truncated at level N and stored via
/// generators. cofaces[n][i] : level n-1 -> level n (n = 1..N, i = 0..n);
/// codegeneracies[n][i] : level n+1 -> level n (n = 0..N-1, i = 0..n).
class CosimplicialModule {
 public:
  CosimplicialModule() = default;
  /// cofaces[0] is empty. Throws InvalidInput on shape errors or failed
  /// cosimplicial identities.
  CosimplicialModule(std::vector<Complex> levels, std::vector<std::vector<ChainMap>> cofaces,
                     std::vector<std::vector<ChainMap>> codegeneracies);

  /// Builds the generators by evaluating `map(theta)` (a component list per
  /// degree of level(theta.source)) on every coface and codegeneracy.
  static CosimplicialModule from_functor(int truncation, const std::function<Complex(int)>& level,
                                         const std::function<std::vector<Matrix>(const SimplexMap&)>& map);
  /// Every level C, every structure map the identity.
  static CosimplicialModule constant(const Complex& c, int truncation);

  int truncation() const { return static_cast<int>(levels_.size()) - 1; }
  const Complex& level(int n) const { return levels_.at(static_cast<size_t>(n)); }
  const ChainMap& coface(int n, int i) const;
  const ChainMap& codegeneracy(int n, int i) const;

  /// Structure map of an arbitrary SimplexMap, via its factorization.
  ChainMap apply(const SimplexMap& theta) const;

  /// Identity failures on generators, e.g. "d3d1=d1d2 at level 3".
  std::vector<std::string> identity_failures() const;

 private:
  std::vector<Complex> levels_;
  std::vector<std::vector<ChainMap>> cofaces_;
  std::vector<std::vector<ChainMap>> codegeneracies_;
};

/// Cosimplicial CDGA: a cosimplicial module whose levels are algebras and
/// whose structure maps are algebra maps (checked on construction).
class CosimplicialCDGA {
 public:
  CosimplicialCDGA() = default;
  CosimplicialCDGA(std::vector<CDGA> levels, CosimplicialModule underlying);

  int truncation() const { return module_.truncation(); }
  const CDGA& level(int n) const { return levels_.at(static_cast<size_t>(n)); }
  const CosimplicialModule& module() const { return module_; }

 private:
  std::vector<CDGA> levels_;
  CosimplicialModule module_;
};

/// Normalized double complex: column n is N^n = intersection of ker sigma_i
/// at level n, with horizontal map sum (-1)^i delta_i and vertical map the
/// level's differential. Column N has no outgoing horizontal map, so the
/// total complex is exact only in degrees < truncation (plus whatever the
/// caller knows about higher levels vanishing).
struct Normalized {
  DoubleComplex double_complex;
  /// basis[n][j - row_lower]: columns span N^n inside level n, degree j.
  std::vector<std::vector<Matrix>> basis;
  int reliable_through = 0;
};

Normalized normalize(const CosimplicialModule& c);

/// tot of the normalized double complex (vertical maps twisted by (-1)^n).
Complex tot_n(const CosimplicialModule& c);

/// Denormalization of a complex in degrees 0..top: level n is the sum over
/// surjections [n] -> [k] (indexed by jump sets, listed by k then
/// lexicographically) of C^k. Throws TruncationTooSmall if truncation < top.
CosimplicialModule dold_kan_D(const Complex& c, int truncation);

/// Denormalization of an algebra: every level is a commutative algebra in
/// degree 0 with (a e_S)(b e_T) = shuffle_sign(S, T) ab e_{S u T} for
/// disjoint jump sets and 0 otherwise.
CosimplicialCDGA dold_kan_D(const CDGA& a, int truncation);

/// Summand layout of dold_kan_D at level n: jump sets in storage order.
std::vector<std::vector<int>> dold_kan_summands(int n, int top);

}  // namespace rht
