#include <rht/thom_sullivan.hpp>

#include <gtest/gtest.h>

#include "random_objects.hpp"

using namespace rht;
using namespace rht::testing;

namespace {

FormTerm ft(std::vector<int> exps, unsigned mask) { return FormTerm{std::move(exps), mask}; }

PolyForm random_form(std::mt19937& rng, int n, int k, int w) {
  PolyForm f(n);
  std::uniform_int_distribution<int> val(-3, 3);
  for (const auto& t : omega_basis(n, k, w))
    if (rng() % 2) f.add(t, Rational(val(rng)));
  return f;
}

PolyForm random_mixed_form(std::mt19937& rng, int n, int w) {
  PolyForm f(n);
  for (int k = 0; k <= n; ++k) f += random_form(rng, n, k, w);
  return f;
}

bool same(const ThElement& x, const ThElement& y) { return x.degree == y.degree && x.family == y.family; }

ThElement add(ThElement x, const ThElement& y) {
  for (size_t n = 0; n < x.family.size(); ++n)
    for (size_t i = 0; i < x.family[n].size(); ++i) x.family[n][i] += y.family[n][i];
  return x;
}

Vector random_coords(std::mt19937& rng, Index n) {
  std::uniform_int_distribution<int> val(-2, 2);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = val(rng);
  return v;
}

}  // namespace

TEST(Forms, OmegaBasisExamples) {
  EXPECT_EQ(omega_basis(0, 0, 3), (std::vector<FormTerm>{ft({}, 0)}));
  EXPECT_EQ(omega_basis(1, 1, 2), (std::vector<FormTerm>{ft({0}, 1), ft({1}, 1)}));
  EXPECT_EQ(omega_basis(2, 2, 2), (std::vector<FormTerm>{ft({0, 0}, 3)}));
  EXPECT_TRUE(omega_basis(2, 2, 1).empty());
  for (int n = 0; n <= 3; ++n)
    for (int k = 0; k <= n; ++k)
      for (int w = 0; w <= 4; ++w) {
        const auto b = omega_basis(n, k, w);
        EXPECT_EQ(static_cast<Index>(b.size()), omega_count(n, k, w));
        for (const auto& t : b) {
          EXPECT_EQ(t.form_degree(), k);
          EXPECT_LE(t.weight(), w);
        }
      }
}

TEST(Forms, DifferentialAndProductExamples) {
  const PolyForm t1 = PolyForm::coordinate(2, 1), t2 = PolyForm::coordinate(2, 2);
  const PolyForm dt1 = PolyForm::differential(2, 1), dt2 = PolyForm::differential(2, 2);
  EXPECT_EQ(poly_d(t1), dt1);
  EXPECT_EQ(poly_d(poly_mul(t1, t2)), poly_mul(t2, dt1) + poly_mul(t1, dt2));
  EXPECT_EQ(poly_mul(dt2, dt1), Rational(-1) * poly_mul(dt1, dt2));
  EXPECT_TRUE(poly_mul(dt1, dt1).is_zero());
  // t_0 + t_1 + t_2 = 1 and dt_0 + dt_1 + dt_2 = 0
  EXPECT_EQ(PolyForm::coordinate(2, 0) + t1 + t2, PolyForm::constant(2, Rational(1)));
  EXPECT_TRUE((PolyForm::differential(2, 0) + dt1 + dt2).is_zero());
  EXPECT_EQ(poly_mul(t2, dt1).to_string(), "1*t2*dt1");
}

TEST(Forms, PropertyDifferentialSquaresToZeroAndLeibniz) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const PolyForm f = random_form(rng, n, trial % (n + 1), 3);
    const PolyForm g = random_mixed_form(rng, n, 2);
    EXPECT_TRUE(poly_d(poly_d(f)).is_zero());
    const int k = trial % (n + 1);
    const Rational s(k % 2 == 0 ? 1 : -1);
    EXPECT_EQ(poly_d(poly_mul(f, g)), poly_mul(poly_d(f), g) + s * poly_mul(f, poly_d(g)));
    // graded commutativity
    for (int l = 0; l <= n; ++l) {
      const PolyForm h = random_form(rng, n, l, 2);
      EXPECT_EQ(poly_mul(f, h), Rational((k * l) % 2 == 0 ? 1 : -1) * poly_mul(h, f));
    }
  }
}

TEST(Forms, PullbackExamples) {
  // faces of the 1-simplex: delta_0 misses vertex 0, so t_1 |-> 1
  EXPECT_EQ(pullback(SimplexMap::coface(1, 0), PolyForm::coordinate(1, 1)), PolyForm::constant(0, Rational(1)));
  EXPECT_TRUE(pullback(SimplexMap::coface(1, 1), PolyForm::coordinate(1, 1)).is_zero());
  EXPECT_TRUE(pullback(SimplexMap::coface(1, 0), PolyForm::differential(1, 1)).is_zero());
  // sigma_0 : [2] -> [1] identifies vertices 0 and 1, so t_1 |-> t_2
  EXPECT_EQ(pullback(SimplexMap::codegeneracy(1, 0), PolyForm::coordinate(1, 1)), PolyForm::coordinate(2, 2));
  // sigma_0 : [1] -> [0] pulls constants back to constants
  EXPECT_EQ(pullback(SimplexMap::codegeneracy(0, 0), PolyForm::constant(0, Rational(5))),
            PolyForm::constant(1, Rational(5)));
}

TEST(Forms, PropertyPullbackIsFunctorialAndMultiplicative) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    // g o f : [1] -> [2] -> [3] built from random generators
    const int i = static_cast<int>(rng() % 3), j = static_cast<int>(rng() % 4);
    const SimplexMap f = trial % 2 ? SimplexMap::coface(2, i) : SimplexMap::codegeneracy(2, static_cast<int>(rng() % 3));
    const SimplexMap g = SimplexMap::coface(3, j);
    const PolyForm w = random_mixed_form(rng, 3, 2), v = random_mixed_form(rng, 3, 2);
    EXPECT_EQ(pullback(compose(g, f), w), pullback(f, pullback(g, w)));
    EXPECT_EQ(pullback(g, poly_mul(w, v)), poly_mul(pullback(g, w), pullback(g, v)));
    EXPECT_EQ(pullback(g, poly_d(w)), poly_d(pullback(g, w)));
  }
}

TEST(Forms, IntegralExamples) {
  EXPECT_EQ(integrate(PolyForm::differential(1, 1)), Rational(1));
  EXPECT_EQ(integrate(poly_mul(PolyForm::coordinate(1, 1), PolyForm::differential(1, 1))), Rational(1, 2));
  EXPECT_EQ(integrate(poly_mul(PolyForm::differential(2, 1), PolyForm::differential(2, 2))), Rational(1, 2));
  EXPECT_EQ(integrate(PolyForm::constant(0, Rational(7))), Rational(7));
  // lower-degree parts do not contribute
  EXPECT_EQ(integrate(PolyForm::coordinate(2, 1)), Rational(0));
}

TEST(Forms, PropertyStokes) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const PolyForm w = random_form(rng, n, n - 1, 4);
    Rational boundary(0);
    for (int i = 0; i <= n; ++i)
      boundary += Rational(i % 2 == 0 ? 1 : -1) * integrate(pullback(SimplexMap::coface(n, i), w));
    EXPECT_EQ(integrate(poly_d(w)), boundary);
  }
}

TEST(Forms, DeRhamAlgebraIsAcyclic) {
  for (int n = 1; n <= 2; ++n) {
    const CDGA a = de_rham_algebra(n, 3);
    EXPECT_TRUE(validate(a).ok()) << n;
    const HStar h = h_star(a);
    EXPECT_EQ(h.groups.dim(0), 1);
    for (int k = 1; k <= n; ++k) EXPECT_EQ(h.groups.dim(k), 0);
  }
}

TEST(ThomSullivan, CapsAreChecked) {
  const auto k = constant_cosimplicial(CDGA::ground(), 2);
  EXPECT_THROW(th(k, 2, 4), Error);  // needs levels 0..3
  EXPECT_THROW(th(k, 1, 2), Error);  // weight cap too small
  try {
    th(k, 2, 4);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TruncationTooSmall);
  }
}

TEST(ThomSullivan, ConstantGroundField) {
  const auto t = th(constant_cosimplicial(CDGA::ground(), 2), 1, 3);
  const Cohomology h = cohomology(t.complex());
  EXPECT_EQ(h.dim(0), 1);
  EXPECT_EQ(h.dim(1), 0);
  EXPECT_TRUE(is_quasi_iso(evaluation_at_vertex(t), 1).quasi_iso);
  const IntegrationMap f = integration_map(t);
  EXPECT_TRUE(f.is_chain_map());
  EXPECT_TRUE(is_quasi_iso(f.map, 1).quasi_iso);
}

TEST(ThomSullivan, ZeroCochainsAreTheEqualizer) {
  // internal degree 0 only: H^0(Th) = {a in A^0 : d0 a = d1 a}
  for (auto x : {SimplicialSet::Interval, SimplicialSet::Circle}) {
    const auto a = cochains_with_coefficients(CDGA::ground(), x, 2);
    const auto t = th(a, 1, 3);
    Matrix eq(a.module().level(1).dim(0), a.module().level(0).dim(0));
    eq = a.module().coface(1, 0).at(0) - a.module().coface(1, 1).at(0);
    EXPECT_EQ(cohomology(t.complex()).dim(0), kernel<Rational>(eq).dim());
  }
}

TEST(ThomSullivan, CircleCohomology) {
  const auto t = th(cochains_with_coefficients(CDGA::ground(), SimplicialSet::Circle, 2), 1, 3);
  const Cohomology h = cohomology(t.complex());
  EXPECT_EQ(h.dim(0), 1);
  EXPECT_EQ(h.dim(1), 1);
  const IntegrationMap f = integration_map(t);
  EXPECT_TRUE(f.is_chain_map());
  EXPECT_TRUE(is_quasi_iso(f.map, 1).quasi_iso);
}

TEST(ThomSullivan, PropertyIntegrationIsQuasiIso) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    const auto a = random_cosimplicial_cdga(rng, 2, trial % 4);
    const auto t = th(a, 1, 3);
    const IntegrationMap f = integration_map(t);
    EXPECT_TRUE(f.is_chain_map()) << trial;
    EXPECT_TRUE(is_quasi_iso(f.map, 1).quasi_iso) << trial;
  }
}

TEST(ThomSullivan, PropertyElementsAreCompatibleAndDifferentialAgrees) {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_cosimplicial_cdga(rng, 2, trial % 4);
    const auto t = th(a, 1, 3);
    for (int m = 0; m <= 1; ++m) {
      const Vector c = random_coords(rng, t.complex().dim(m));
      const ThElement x = th_element(t, m, c);
      EXPECT_TRUE(compatibility_failures(a, x).empty());
      EXPECT_EQ(th_coordinates(t, x), c);
      EXPECT_EQ(th_coordinates(t, th_d(a, x)), product<Rational>(t.complex().d(m), c)) << trial << " " << m;
    }
  }
}

TEST(ThomSullivan, PropertyFamilyProductLaws) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_cosimplicial_cdga(rng, 2, trial % 4);
    const auto t = th(a, 1, 3);
    const ThElement x = th_element(t, 0, random_coords(rng, t.complex().dim(0)));
    const ThElement y = th_element(t, 0, random_coords(rng, t.complex().dim(0)));
    const ThElement z = th_element(t, 1, random_coords(rng, t.complex().dim(1)));
    EXPECT_TRUE(compatibility_failures(a, th_multiply(a, x, z)).empty());
    EXPECT_TRUE(same(th_multiply(a, x, y), th_multiply(a, y, x)));
    EXPECT_TRUE(same(th_d(a, th_multiply(a, x, y)), add(th_multiply(a, th_d(a, x), y), th_multiply(a, x, th_d(a, y)))));
  }
}

TEST(ThomSullivan, PropertyWeightStability) {
  std::mt19937 rng(24);
  for (int trial = 0; trial < 4; ++trial) {
    const auto a = random_cosimplicial_cdga(rng, 2, trial % 4);
    const auto small = th(a, 1, 3), big = th(a, 1, 4);
    // the smaller cap includes into the larger one as a quasi-isomorphism
    std::vector<Matrix> comps;
    for (int m = 0; m <= 2; ++m) {
      Matrix f(big.complex().dim(m), small.complex().dim(m));
      for (Index c = 0; c < small.complex().dim(m); ++c) {
        Vector e = Vector::Zero(small.complex().dim(m));
        e(c) = 1;
        f.col(c) = th_coordinates(big, th_element(small, m, e));
      }
      comps.push_back(f);
    }
    const ChainMap inc(small.complex(), big.complex(), comps, false);
    EXPECT_TRUE(is_quasi_iso(inc, 1).quasi_iso) << trial;
  }
}
