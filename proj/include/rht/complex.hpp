#pragma once

#include <rht/linalg.hpp>

#include <optional>
#include <vector>

namespace rht {

/// Bounded cochain complex of finite-dimensional spaces. Degrees run from
/// lower_bound() to top(); d(k) maps degree k to degree k + 1.
class Complex {
 public:
  Complex() = default;
  /// differentials[k] maps degree lower_bound + k to the next degree; a
  /// missing final differential is the zero map out of the top degree.
  Complex(int lower_bound, std::vector<Index> dims, std::vector<Matrix> differentials);

  static Complex zero() { return Complex(0, {}, {}); }
  /// Single space in one degree, zero differential.
  static Complex concentrated(int degree, Index dim);
  /// Zero differentials everywhere.
  static Complex graded(int lower_bound, std::vector<Index> dims);

  int lower_bound() const { return lower_; }
  int top() const { return lower_ + static_cast<int>(dims_.size()) - 1; }
  bool empty() const { return dims_.empty(); }
  bool in_range(int degree) const { return degree >= lower_ && degree <= top(); }

  /// Dimension in any degree (0 outside the stored range).
  Index dim(int degree) const;
  /// Differential out of `degree` as a dim(degree+1) x dim(degree) matrix.
  Matrix d(int degree) const;

  const std::vector<Index>& dims() const { return dims_; }
  const std::vector<Matrix>& differentials() const { return d_; }

  Index total_dim() const;
  int euler_characteristic() const;

  friend bool operator==(const Complex& a, const Complex& b);

 private:
  int lower_ = 0;
  std::vector<Index> dims_;
  std::vector<Matrix> d_;
};

/// Degreewise linear map commuting with differentials.
class ChainMap {
 public:
  ChainMap() = default;
  /// components[k] is the map in degree source.lower_bound() + k.
  ChainMap(Complex source, Complex target, std::vector<Matrix> components, bool check = true);

  static ChainMap identity(const Complex& c);
  static ChainMap zero(const Complex& source, const Complex& target);

  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }
  Matrix at(int degree) const;

  /// Degrees where d f != f d.
  std::vector<int> commutation_failures() const;

 private:
  Complex source_;
  Complex target_;
  std::vector<Matrix> f_;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);

struct CohomologyGroup {
  int degree = 0;
  Space cycles;
  Space boundaries;
  Quotient<Rational> quotient;  // representatives and projection on cycles
  Index dim() const { return quotient.dim(); }
};

struct Cohomology {
  int lower_bound = 0;
  std::vector<CohomologyGroup> groups;

  const CohomologyGroup* at(int degree) const;
  Index dim(int degree) const;
  std::vector<Index> dims() const;
};

Cohomology cohomology(const Complex& c);

/// Map induced on H^degree.
Matrix induced_map(const ChainMap& f, const Cohomology& hs, const Cohomology& ht, int degree);

struct QuasiIsoReport {
  bool quasi_iso = true;
  int min_degree = 0;
  int max_degree = -1;
  std::vector<Matrix> induced;     // one per degree in [min_degree, max_degree]
  std::vector<int> failing_degrees;
};

/// Tests whether H(f) is an isomorphism in every degree of the union range,
/// or only up to max_degree when one is given.
QuasiIsoReport is_quasi_iso(const ChainMap& f, std::optional<int> max_degree = std::nullopt);

/// Grid of spaces C^{i,j}, i horizontal (columns), j vertical. Horizontal
/// maps raise i, vertical maps raise j.
struct DoubleComplex {
  enum class Signs {
    /// Squares commute; tot twists the vertical map by (-1)^i.
    Twist,
    /// Squares already anticommute; tot adds the maps unchanged.
    AsGiven,
  };

  int column_lower = 0;
  int row_lower = 0;
  std::vector<std::vector<Index>> dims;          // dims[i][j]
  std::vector<std::vector<Matrix>> horizontal;   // [i][j]: (i,j) -> (i+1,j)
  std::vector<std::vector<Matrix>> vertical;     // [i][j]: (i,j) -> (i,j+1)
  Signs signs = Signs::Twist;

  int columns() const { return static_cast<int>(dims.size()); }
  int rows() const { return dims.empty() ? 0 : static_cast<int>(dims.front().size()); }
  Index dim(int i, int j) const;
  Matrix h(int i, int j) const;
  Matrix v(int i, int j) const;
};

/// Offsets of the summands of Tot^n, ordered by column.
struct TotLayout {
  int lower_bound = 0;
  /// offsets[n - lower_bound][i - column_lower] (row j = n - i).
  std::vector<std::vector<Index>> offsets;
};

Complex tot(const DoubleComplex& dc, TotLayout* layout = nullptr);

}  // namespace rht
