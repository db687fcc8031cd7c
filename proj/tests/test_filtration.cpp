#include <rht/filtration.hpp>

#include <gtest/gtest.h>

#include "filtered_objects.hpp"

using namespace rht;
using namespace rht::testing;

namespace {

Space span_of(std::initializer_list<std::initializer_list<int>> cols, Index ambient) {
  Matrix g(ambient, static_cast<Index>(cols.size()));
  Index j = 0;
  for (const auto& c : cols) {
    Index i = 0;
    for (int x : c) g(i++, j) = x;
    ++j;
  }
  return Space::span(g);
}

// Inclusion of the first complex into the assembled sum (prefix in every degree).
ChainMap prefix_inclusion(const Complex& s, const Complex& t) {
  std::vector<Matrix> comps;
  for (int k = s.lower_bound(); k <= s.top(); ++k) {
    Matrix m = Matrix::Zero(t.dim(k), s.dim(k));
    m.topRows(s.dim(k)) = Matrix::Identity(s.dim(k), s.dim(k));
    comps.push_back(m);
  }
  return ChainMap(s, t, comps);
}

// dim H^j of (W_p cap N) / (W_{p-1} cap N) at one level, by ranks only.
Index graded_normalized_betti(const CosimplicialModule& a, const FilteredComplex& w, int level, int p, int j) {
  auto normalized = [&](int deg) {
    const Index dim = a.level(level).dim(deg);
    if (level == 0 || dim == 0) return Space::full(dim);
    Matrix stack(0, dim);
    for (int i = 0; i < level; ++i) {
      const Matrix m = a.codegeneracy(level - 1, i).at(deg);
      Matrix grown(stack.rows() + m.rows(), dim);
      grown << stack, m;
      stack = grown;
    }
    return kernel<Rational>(stack);
  };
  auto piece = [&](int q, int deg) { return intersect(w.w(q, deg), normalized(deg)); };
  auto rank_out = [&](int deg) {
    const Space low = piece(p - 1, deg + 1);
    return sum(apply<Rational>(a.level(level).d(deg), piece(p, deg)), low).dim() - low.dim();
  };
  const Index gr = piece(p, j).dim() - piece(p - 1, j).dim();
  return gr - rank_out(j) - rank_out(j - 1);
}

}  // namespace

TEST(Filtration, GradedPiecesExamples) {
  const Complex c(0, {2, 1}, {mat({{1, -1}})});
  const auto trivial = graded_pieces(FilteredComplex::trivial(c));
  ASSERT_EQ(trivial.size(), 1u);
  EXPECT_EQ(trivial[0].complex.dims(), c.dims());

  const Complex flat = Complex::graded(0, {2});
  const auto flag = graded_pieces(FilteredComplex(flat, 0, {{span_of({{1, 0}}, 2), Space::full(2)}}));
  ASSERT_EQ(flag.size(), 2u);
  EXPECT_EQ(flag[0].complex.dims(), (std::vector<Index>{1}));
  EXPECT_EQ(flag[1].complex.dims(), (std::vector<Index>{1}));

  const FilteredComplex two(c, 0, {{span_of({{1, 1}}, 2), Space::full(2)}, {Space::zero(1), Space::full(1)}});
  const auto pieces = graded_pieces(two);
  EXPECT_EQ(cohomology(pieces[0].complex).dim(0), 1);
  for (int n = 0; n <= 1; ++n) EXPECT_EQ(pieces[0].complex.dim(n) + pieces[1].complex.dim(n), c.dim(n));
}

TEST(Filtration, InvalidChainsAreRejected) {
  const Complex c(0, {1, 1}, {mat({{1}})});
  // W_0 contains x but not dx
  EXPECT_THROW(FilteredComplex(c, 0, {{Space::full(1), Space::full(1)}, {Space::zero(1), Space::full(1)}}), Error);
  // decreasing chain
  EXPECT_THROW(FilteredComplex(Complex::graded(0, {1}), 0, {{Space::full(1), Space::zero(1)}}), Error);
  // not exhaustive
  EXPECT_THROW(FilteredComplex(Complex::graded(0, {1}), 0, {{Space::zero(1)}}), Error);
}

TEST(Filtration, MultiplicativityIsChecked) {
  // K[x]/x^3, |x| = 2: W_p spanned by monomials of weight <= p
  const CDGA a = CDGA::truncated_polynomial(2, 3);
  const FilteredComplex good = FilteredComplex::from_weights(a.complex(), {{0}, {}, {1}, {}, {2}});
  EXPECT_NO_THROW(FilteredCDGA(a, good));
  const FilteredComplex bad = FilteredComplex::from_weights(a.complex(), {{0}, {}, {1}, {}, {1}});
  EXPECT_NO_THROW(FilteredCDGA(a, bad));  // x^2 in W_1 is still fine
  const FilteredComplex worse = FilteredComplex::from_weights(a.complex(), {{0}, {}, {0}, {}, {1}});
  EXPECT_THROW(FilteredCDGA(a, worse), Error);
}

TEST(Spectral, TrivialFiltrationDegeneratesAtE1) {
  const Complex c(0, {2, 1}, {mat({{1, -1}})});
  const FilteredComplex f = FilteredComplex::trivial(c);
  const SpectralPage e0 = spectral_page(f, 0), e1 = spectral_page(f, 1);
  EXPECT_EQ(e0.dim(0, 0), 2);
  EXPECT_EQ(e0.dim(0, 1), 1);
  EXPECT_EQ(e1.dim(0, 0), 1);
  EXPECT_EQ(e1.dim(0, 1), 0);
  EXPECT_EQ(degeneration_page(f), 1);
}

TEST(Spectral, NonzeroD1) {
  // x in degree 0 of weight 1, dx = y of weight 0
  const Complex c(0, {1, 1}, {mat({{1}})});
  const FilteredComplex f = FilteredComplex::from_weights(c, {{1}, {0}});
  const SpectralPage e1 = spectral_page(f, 1), e2 = spectral_page(f, 2);
  EXPECT_EQ(e1.dim(1, 0), 1);
  EXPECT_EQ(e1.dim(0, 1), 1);
  EXPECT_FALSE(e1.differential_vanishes());
  EXPECT_EQ(e2.total(0) + e2.total(1), 0);
  EXPECT_TRUE(e2.differential_vanishes());
  EXPECT_EQ(degeneration_page(f), 2);
}

TEST(Spectral, DirectSummandDegeneratesAtE1) {
  // K -> K in weight 0 plus K -> K in weight 1, split
  const Complex c(0, {2, 2}, {mat({{1, 0}, {0, 1}})});
  const FilteredComplex f = FilteredComplex::from_weights(c, {{0, 1}, {0, 1}});
  EXPECT_LE(degeneration_page(f), 1);
}

TEST(Spectral, PropertyPagesAreConsistent) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const FilteredComplex f = random_filtered_complex(rng, 2 + trial % 2, 3, 2 + trial % 3, trial % 3 - 1);
    const Cohomology h = cohomology(f.complex());
    const int stable = stable_page(f);
    const auto pages = spectral_sequence(f, stable + 1);
    for (int r = 0; r <= stable; ++r) {
      const SpectralPage& e = pages[static_cast<size_t>(r)];
      const SpectralPage& next = pages[static_cast<size_t>(r + 1)];
      for (int n = e.lower; n <= e.top; ++n)
        for (int p = e.p_min; p <= e.p_max; ++p) {
          const Matrix out = e.differential(p, n);
          const Matrix in = e.differential(p + r, n - 1);
          // d_r d_r = 0
          if (e.in_range(p - r, n + 1)) {
            const Matrix twice = product<Rational>(e.differential(p - r, n + 1), out);
            for (Index i = 0; i < twice.size(); ++i) EXPECT_TRUE(is_zero(twice(i)));
          }
          // E_{r+1} = H(E_r, d_r)
          const Index ker = e.dim(p, n) - (out.rows() ? rank<Rational>(out) : 0);
          const Index im = in.cols() && in.rows() ? rank<Rational>(in) : 0;
          EXPECT_EQ(next.dim(p, n), ker - im) << trial << " r=" << r << " p=" << p << " n=" << n;
        }
      if (r >= stable) EXPECT_TRUE(e.differential_vanishes());
    }
    for (int n = f.complex().lower_bound(); n <= f.complex().top(); ++n)
      EXPECT_EQ(pages.back().total(n), h.dim(n)) << trial;
  }
}

TEST(ErQuasiIso, IdentityAndFilteredMaps) {
  std::mt19937 rng(32);
  const FilteredComplex f = random_filtered_complex(rng, 2, 3);
  for (int r = 0; r <= 2; ++r) EXPECT_TRUE(is_er_quasi_iso(f, f, ChainMap::identity(f.complex()), r).holds);
  // a map that breaks the filtration
  const Complex c = Complex::graded(0, {2});
  const FilteredComplex w = FilteredComplex::from_weights(c, {{0, 1}});
  const ChainMap swap(c, c, {mat({{0, 1}, {1, 0}})});
  EXPECT_THROW(is_er_quasi_iso(w, w, swap, 0), Error);
}

TEST(ErQuasiIso, MixedInclusionIsE1ButNotE0) {
  const long q = 4;
  const std::vector<MixedPiece> base{{0, 0, 0}, {0, 1, 1}};
  std::vector<MixedPiece> bigger = base;
  bigger.push_back({1, 0, 1});  // acyclic, but visible on E_1
  const MixedComplex a = assemble_mixed(base, 2, q), b = assemble_mixed(bigger, 2, q);
  const ChainMap inc = prefix_inclusion(a.filtered.complex(), b.filtered.complex());
  EXPECT_TRUE(is_quasi_iso(inc).quasi_iso);
  EXPECT_FALSE(is_er_quasi_iso(a.filtered, b.filtered, inc, 0).holds);
  EXPECT_TRUE(is_er_quasi_iso(a.filtered, b.filtered, inc, 1).holds);
}

TEST(ErQuasiIso, TotToTotNComparison) {
  // The inclusion Tot_N -> Tot respects D*W, is a quasi-isomorphism below
  // the truncation, and is an E_1- (not E_0-) quasi-isomorphism: Gr of D*W
  // separates columns, and the degenerate part of each column has
  // cohomology of its own.
  std::mt19937 rng(33);
  for (int kind = 0; kind < 3; ++kind) {
    const FilteredCosimplicial a = random_filtered_cosimplicial(rng, 3, kind);
    const FilteredComplex fn = convolution(a.module, a.levels);
    const FilteredComplex fu = convolution_unnormalized(a.module, a.levels);
    const ChainMap inc = normalized_inclusion(a.module);
    const int reliable = a.module.truncation() - 1;
    EXPECT_TRUE(is_quasi_iso(inc, reliable).quasi_iso) << kind;
    EXPECT_TRUE(is_er_quasi_iso(fn, fu, inc, 1, reliable - 1).holds) << kind;
  }
  // constant K: column 1 of Tot is K, killed only by d_1
  const CosimplicialModule k = CosimplicialModule::constant(Complex::concentrated(0, 1), 3);
  const std::vector<FilteredComplex> triv(4, FilteredComplex::trivial(Complex::concentrated(0, 1)));
  const ChainMap inc = normalized_inclusion(k);
  EXPECT_FALSE(is_er_quasi_iso(convolution(k, triv), convolution_unnormalized(k, triv), inc, 0, 1).holds);
  EXPECT_TRUE(is_er_quasi_iso(convolution(k, triv), convolution_unnormalized(k, triv), inc, 1, 1).holds);
}

TEST(Purity, Examples) {
  EXPECT_EQ(purity_check(mat({{4}}), 4, 2).verdict, Purity::Pure);
  EXPECT_EQ(purity_check(mat({{1}}), 4, 0).verdict, Purity::Pure);
  EXPECT_EQ(purity_check(mat({{1, 0}, {0, 4}}), 4, 0).verdict, Purity::Impure);
  EXPECT_EQ(purity_check(mat({{1, 0}, {0, 4}}), 4, 2).verdict, Purity::Impure);
  // +-sqrt(q) for odd weight
  EXPECT_EQ(purity_check(mat({{0, 2}, {1, 0}}), 2, 1).verdict, Purity::Pure);
  EXPECT_EQ(purity_check(mat({{-3}}), 9, 1).verdict, Purity::Pure);
  EXPECT_EQ(purity_check(Matrix(0, 0), 2, 5).verdict, Purity::Pure);
  EXPECT_THROW(purity_check(mat({{1}}), 6, 0), Error);
}

TEST(Purity, NonTateWeilNumberIsUndecided) {
  // x^2 - x + 2: roots (1 +- sqrt(-7))/2 of absolute value sqrt 2
  const Matrix companion = mat({{0, -2}, {1, 1}});
  const PurityReport low = purity_check(companion, 2, 1, 64);
  const PurityReport high = purity_check(companion, 2, 1, 256);
  EXPECT_EQ(low.verdict, Purity::Undecided);
  EXPECT_EQ(high.verdict, Purity::Undecided);
  ASSERT_EQ(high.moduli.size(), 2u);
  EXPECT_EQ(high.moduli[0].substr(0, 12), "1.4142135623");
  EXPECT_EQ(high.charpoly, (std::vector<Rational>{2, -1, 1}));
}

TEST(Purity, CharacteristicPolynomial) {
  EXPECT_EQ(characteristic_polynomial(mat({{2, 1}, {0, 3}})), (std::vector<Rational>{6, -5, 1}));
  EXPECT_EQ(characteristic_polynomial(mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})), (std::vector<Rational>{-1, 0, 0, 1}));
  EXPECT_TRUE(is_prime_power(2) && is_prime_power(9) && is_prime_power(32) && !is_prime_power(12) && !is_prime_power(1));
}

TEST(Mixedness, GroundFieldIsStronglyMixed) {
  const CDGA k = CDGA::ground();
  const FilteredCDGA a(k, FilteredComplex::trivial(k.complex()));
  const MixednessReport r = mixedness_check(a, FrobeniusOperator{3, {mat({{1}})}});
  EXPECT_TRUE(r.mixed());
  ASSERT_EQ(r.slots.size(), 1u);
  EXPECT_EQ(r.slots[0].weight, 0);
}

TEST(Mixedness, CurveLikeInstance) {
  // H^0 of weight 0 and a rank-2 H^1 in Gr_0, which should have weight 1
  const Complex c = Complex::graded(0, {1, 2});
  const FilteredComplex w = FilteredComplex::trivial(c);
  const MixednessReport good = mixedness_check(w, FrobeniusOperator{4, {mat({{1}}), mat({{0, 4}, {1, 0}})}});
  EXPECT_TRUE(good.mixed());
  // eigenvalue q (weight 2) in the weight-1 slot
  const MixednessReport bad = mixedness_check(w, FrobeniusOperator{4, {mat({{1}}), mat({{4, 0}, {0, 4}})}});
  EXPECT_EQ(bad.verdict, Purity::Impure);
  ASSERT_EQ(bad.slots.size(), 2u);
  EXPECT_EQ(bad.slots[1].p, 0);
  EXPECT_EQ(bad.slots[1].degree, 1);
  EXPECT_EQ(bad.slots[1].weight, 1);
  EXPECT_EQ(bad.slots[1].purity.verdict, Purity::Impure);
}

TEST(Mixedness, FrobeniusMustPreserveTheFiltration) {
  const Complex c = Complex::graded(0, {2});
  const FilteredComplex w = FilteredComplex::from_weights(c, {{0, 1}});
  EXPECT_THROW(mixedness_check(w, FrobeniusOperator{2, {mat({{0, 1}, {1, 0}})}}), Error);
  EXPECT_THROW(mixedness_check(w, FrobeniusOperator{6, {mat({{1, 0}, {0, 1}})}}), Error);
}

TEST(Mixedness, PropertyMixedComplexesDegenerateAtE2AndQuasiIsosAreE1) {
  std::mt19937 rng(34);
  const long q = 4;
  for (int trial = 0; trial < 15; ++trial) {
    const int top = 2 + trial % 2;
    const auto pieces = random_mixed_pieces(rng, top, 3 + trial % 3);
    const MixedComplex m = assemble_mixed(pieces, top, q);
    auto [t, g] = twist_mixed(rng, m);
    EXPECT_TRUE(mixedness_check(t.filtered, t.frobenius).mixed()) << trial;
    EXPECT_LE(degeneration_page(t.filtered), 2) << trial;
    // m -> m (+) acyclic, then twisted
    auto extra = pieces;
    extra.push_back({1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % top), 1});
    const MixedComplex big = assemble_mixed(extra, top, q);
    auto [tb, gb] = twist_mixed(rng, big);
    const ChainMap f = compose(gb, prefix_inclusion(m.filtered.complex(), big.filtered.complex()));
    EXPECT_TRUE(mixedness_check(tb.filtered, tb.frobenius).mixed());
    EXPECT_TRUE(is_quasi_iso(f).quasi_iso);
    EXPECT_TRUE(is_er_quasi_iso(m.filtered, tb.filtered, f, 1).holds) << trial;
    EXPECT_TRUE(is_er_quasi_iso(m.filtered, t.filtered, g, 0).holds) << trial;
  }
}

TEST(Convolution, TrivialInnerIsShiftedSimplicialDegree) {
  const FilteredComplex c = FilteredComplex::trivial(Complex(0, {1, 1}, {mat({{1}})}));
  const FilteredCosimplicial a = filtered_dold_kan(c, 2);
  const FilteredComplex f = convolution(a.module, a.levels);
  // F_p = columns i >= -p
  const Normalized norm = normalize(a.module);
  TotLayout layout;
  const Complex t = tot(norm.double_complex, &layout);
  for (int m = t.lower_bound(); m <= t.top(); ++m)
    for (int p = -2; p <= 0; ++p) {
      Index expect = 0;
      for (int i = -p; i <= 2; ++i) expect += norm.double_complex.dim(i, m - i);
      EXPECT_EQ(f.w(p, m).dim(), expect) << m << " " << p;
    }
}

TEST(Convolution, SingleLevelIsTheInnerFiltration) {
  std::mt19937 rng(35);
  const FilteredComplex c = random_filtered_complex(rng, 2, 2);
  const FilteredCosimplicial a{CosimplicialModule::constant(c.complex(), 0), {c}};
  const FilteredComplex f = convolution(a.module, a.levels);
  for (int n = 0; n <= 2; ++n)
    for (int p = c.p_min() - 1; p <= c.p_max(); ++p) EXPECT_EQ(f.w(p, n), c.w(p, n));
}

TEST(Convolution, IncompatibleFiltrationIsRejected) {
  // functions on the interval: weight 0 on one endpoint only is not preserved
  const CosimplicialModule m = cochains_module(Complex::concentrated(0, 1), SimplicialSet::Interval, 1);
  std::vector<FilteredComplex> w;
  w.push_back(FilteredComplex::from_weights(m.level(0), {{0, 1}}));
  w.push_back(FilteredComplex::from_weights(m.level(1), {{0, 0, 0}}));
  try {
    convolution(m, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompatibleFiltration);
  }
}

TEST(Convolution, PropertyDimensionIdentity) {
  std::mt19937 rng(36);
  for (int trial = 0; trial < 12; ++trial) {
    const FilteredCosimplicial a = random_filtered_cosimplicial(rng, 2 + trial % 2, trial % 3);
    const FilteredComplex f = convolution(a.module, a.levels);
    const auto pieces = graded_pieces(f);
    for (const auto& g : pieces) {
      const Cohomology h = cohomology(g.complex);
      for (int n = f.complex().lower_bound(); n <= f.complex().top(); ++n) {
        Index rhs = 0;
        for (int i = 0; i <= a.module.truncation(); ++i) rhs += graded_normalized_betti(a.module, a.levels[static_cast<size_t>(i)], i, g.p + i, n - i);
        EXPECT_EQ(h.dim(n), rhs) << trial << " p=" << g.p << " n=" << n;
      }
    }
  }
}

TEST(Convolution, StronglyMixedLevelsGiveMixedTotN) {
  std::mt19937 rng(37);
  const long q = 9;
  for (int trial = 0; trial < 4; ++trial) {
    const MixedComplex m = twist_mixed(rng, assemble_mixed(random_mixed_pieces(rng, 2, 3), 2, q)).first;
    const SimplicialSet x = trial % 2 ? SimplicialSet::Circle : SimplicialSet::Interval;
    const FilteredCosimplicial a = filtered_cochains(m.filtered, x, 3);
    std::vector<FrobeniusOperator> phis;
    for (int n = 0; n <= 3; ++n) {
      FrobeniusOperator f{q, {}};
      for (const auto& p : m.frobenius.phi) f.phi.push_back(tensor_identity(p, simplices(x, n)));
      phis.push_back(f);
      EXPECT_TRUE(mixedness_check(a.levels[static_cast<size_t>(n)], f).mixed());
    }
    const MixednessReport r = mixedness_check(convolution(a.module, a.levels), tot_n_frobenius(a.module, phis));
    EXPECT_TRUE(r.mixed()) << trial;
  }
}
