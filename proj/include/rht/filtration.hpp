#pragma once

// Increasing filtrations W_p by subcomplexes, their spectral sequences,
// Frobenius operators and weight (mixedness) certification.
//
// Conventions: W_p grows with p. E_r^{p,n} is the page entry in filtration
// index p and total degree n, and d_r : E_r^{p,n} -> E_r^{p-r,n+1}. A
// filtered Frobenius complex is mixed when H^n(Gr_p) is pure of weight n + p.

#include <rht/cdga.hpp>
#include <rht/cosimplicial.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rht {

class FilteredComplex {
 public:
  FilteredComplex() = default;
  /// steps[k][p - p_min] spans W_p in degree lower_bound + k; the last step
  /// of every degree must be the whole space. Throws NotFiltered unless the
  /// chain increases and d(W_p) lies in W_p.
  FilteredComplex(Complex c, int p_min, std::vector<std::vector<Space>> steps);

  /// W_p = everything for p >= p, zero below.
  static FilteredComplex trivial(const Complex& c, int p = 0);
  /// W_p spanned by the basis vectors of weight <= p; weights[k] lists the
  /// weights of degree lower_bound + k.
  static FilteredComplex from_weights(const Complex& c, const std::vector<std::vector<int>>& weights);

  const Complex& complex() const { return complex_; }
  int p_min() const { return p_min_; }
  int p_max() const { return p_min_ + length() - 1; }
  /// W_p in `degree`: zero below p_min, everything from p_max on.
  Space w(int p, int degree) const;

 private:
  int length() const { return steps_.empty() ? 1 : static_cast<int>(steps_.front().size()); }
  Complex complex_;
  int p_min_ = 0;
  std::vector<std::vector<Space>> steps_;
};

/// Gr_p = W_p / W_{p-1} with the induced differential, p = p_min..p_max.
struct GradedPiece {
  int p = 0;
  Complex complex;
  std::vector<Quotient<Rational>> quotients;  // per degree, W_p / W_{p-1}
};

std::vector<GradedPiece> graded_pieces(const FilteredComplex& fc);

/// Multiplicative filtration on a CDGA: W_p W_q inside W_{p+q}.
class FilteredCDGA {
 public:
  FilteredCDGA(CDGA a, FilteredComplex w);
  const CDGA& algebra() const { return algebra_; }
  const FilteredComplex& filtration() const { return filtration_; }

 private:
  CDGA algebra_;
  FilteredComplex filtration_;
};

// ---------------------------------------------------------------------------
// Spectral sequence

struct SpectralEntry {
  Space z;  // Z_r^p = {x in W_p : dx in W_{p-r}}
  Space b;  // Z_{r-1}^{p-1} + (W_p cap d W_{p+r-1})
  Quotient<Rational> quotient;
  Index dim() const { return quotient.dim(); }
};

struct SpectralPage {
  int r = 0;
  int p_min = 0, p_max = -1;
  int lower = 0, top = -1;
  std::vector<std::vector<SpectralEntry>> entries;  // [n - lower][p - p_min]
  std::vector<std::vector<Matrix>> d;               // d_r out of (p, n), same indexing

  bool in_range(int p, int n) const { return p >= p_min && p <= p_max && n >= lower && n <= top; }
  Index dim(int p, int n) const;
  /// d_r : E_r^{p,n} -> E_r^{p-r,n+1} (an empty-shaped matrix when either side is out of range).
  Matrix differential(int p, int n) const;
  bool differential_vanishes() const;
  /// Sum over p of dim E_r^{p,n}.
  Index total(int n) const;
};

SpectralPage spectral_page(const FilteredComplex& fc, int r);
/// Pages 0..r_max.
std::vector<SpectralPage> spectral_sequence(const FilteredComplex& fc, int r_max);
/// First page index past which every d_r vanishes (pages beyond the filtration length are stable).
int stable_page(const FilteredComplex& fc);
/// Smallest r0 such that d_r = 0 for every r >= r0.
int degeneration_page(const FilteredComplex& fc);

struct ErQuasiIsoReport {
  bool holds = true;
  int page = 0;  // r + 1
  std::vector<std::pair<int, int>> failing;  // (p, n)
};

/// Whether f induces isomorphisms on every E_{r+1}^{p,n} (degrees n <= max_degree when given).
/// Throws NotFiltered if f(W_p) is not inside W'_p.
ErQuasiIsoReport is_er_quasi_iso(const FilteredComplex& source, const FilteredComplex& target, const ChainMap& f,
                                 int r, std::optional<int> max_degree = std::nullopt);

// ---------------------------------------------------------------------------
// Frobenius and purity

/// Linear q-power Frobenius: one invertible matrix per degree commuting with d.
struct FrobeniusOperator {
  long q = 0;
  std::vector<Matrix> phi;  // phi[k] acts on degree lower_bound + k
};

bool is_prime_power(long q);
/// Throws InvalidInput unless q is a prime power and every phi is invertible
/// and commutes with d.
void validate_frobenius(const Complex& c, const FrobeniusOperator& f);
/// Additionally multiplicative and unit preserving (InvalidAlgebra otherwise).
void validate_frobenius(const CDGA& a, const FrobeniusOperator& f);

enum class Purity { Pure, Impure, Undecided };
const char* purity_name(Purity p);

struct PurityReport {
  Purity verdict = Purity::Pure;
  std::vector<Rational> charpoly;  // monic, coefficients from x^0 upwards
  std::string reason;
  /// Numerical root moduli (only for undecided verdicts), as decimal strings.
  std::vector<std::string> moduli;
};

/// Characteristic polynomial by Faddeev-LeVerrier.
std::vector<Rational> characteristic_polynomial(const Matrix& m);

/// Pure: every eigenvalue is +-q^{w/2} (decided exactly). Impure: the Weil
/// functional equation x^d P(q^w/x) = c P(x), c^2 = q^{wd}, fails. Otherwise
/// undecided, with root moduli estimated at `precision_bits`.
PurityReport purity_check(const Matrix& phi, long q, int w, unsigned precision_bits = 128);

struct MixednessSlot {
  int p = 0;
  int degree = 0;
  int weight = 0;
  Index dim = 0;
  PurityReport purity;
};

struct MixednessReport {
  std::vector<MixednessSlot> slots;  // nonzero H^n(Gr_p) only
  Purity verdict = Purity::Pure;     // Pure = mixed
  bool mixed() const { return verdict == Purity::Pure; }
};

/// Throws NotFiltered if phi does not preserve W.
MixednessReport mixedness_check(const FilteredComplex& fc, const FrobeniusOperator& f, unsigned precision_bits = 128);
MixednessReport mixedness_check(const FilteredCDGA& a, const FrobeniusOperator& f, unsigned precision_bits = 128);

// ---------------------------------------------------------------------------
// Cosimplicial filtrations

/// Levels of the cosimplicial object, each filtered; the structure maps must
/// preserve W (IncompatibleFiltration otherwise).
void check_compatible(const CosimplicialModule& a, const std::vector<FilteredComplex>& w);

/// D*W on Tot_N (the layout of tot_n): F_p = sum_i N^i cap W_{p+i}.
/// Gr_p is then the direct sum of Gr^W_{p+i} N^i shifted into column i.
FilteredComplex convolution(const CosimplicialModule& a, const std::vector<FilteredComplex>& w);

/// Un-normalized total complex: columns are the levels, horizontal map
/// sum (-1)^i delta_i. Exact only below the truncation.
Complex tot_unnormalized(const CosimplicialModule& a);
/// D*W on tot_unnormalized.
FilteredComplex convolution_unnormalized(const CosimplicialModule& a, const std::vector<FilteredComplex>& w);
/// Tot_N -> Tot, the inclusion of normalized cochains.
ChainMap normalized_inclusion(const CosimplicialModule& a);

/// Frobenius on Tot_N induced by levelwise operators commuting with the
/// structure maps (InvalidInput otherwise).
FrobeniusOperator tot_n_frobenius(const CosimplicialModule& a, const std::vector<FrobeniusOperator>& f);

}  // namespace rht
