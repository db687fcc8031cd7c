#include <rht/cosimplicial.hpp>

#include <gtest/gtest.h>

#include "random_objects.hpp"

using namespace rht;
using namespace rht::testing;

namespace {

std::vector<SimplexMap> all_maps(int m, int n) {
  std::vector<SimplexMap> out;
  std::vector<int> v(static_cast<size_t>(m + 1), 0);
  while (true) {
    out.push_back({m, n, v});
    int k = m;
    while (k >= 0 && v[static_cast<size_t>(k)] == n) --k;
    if (k < 0) break;
    const int val = v[static_cast<size_t>(k)] + 1;
    for (int l = k; l <= m; ++l) v[static_cast<size_t>(l)] = val;
  }
  return out;
}

SimplexMap random_map(std::mt19937& rng, int m, int n) {
  std::uniform_int_distribution<int> pick(0, n);
  std::vector<int> v;
  for (int k = 0; k <= m; ++k) v.push_back(pick(rng));
  std::sort(v.begin(), v.end());
  return {m, n, v};
}

// Free module on the vertices of the simplex: e_j |-> e_theta(j).
Matrix vertex_map(const SimplexMap& t) {
  Matrix m = Matrix::Zero(t.target + 1, t.source + 1);
  for (int j = 0; j <= t.source; ++j) m(t.values[static_cast<size_t>(j)], j) = 1;
  return m;
}

CosimplicialModule vertices(int truncation) {
  return CosimplicialModule::from_functor(
      truncation, [](int n) { return Complex::concentrated(0, n + 1); },
      [](const SimplexMap& t) { return std::vector<Matrix>{vertex_map(t)}; });
}

// Cech nerve of a two-set cover of a point: level n = functions on {0,1}^{n+1}.
Matrix cech_map(const SimplexMap& t) {
  const Index rows = Index(1) << (t.target + 1), cols = Index(1) << (t.source + 1);
  Matrix m = Matrix::Zero(rows, cols);
  for (Index tau = 0; tau < rows; ++tau) {
    Index sigma = 0;
    for (int j = 0; j <= t.source; ++j)
      if ((tau >> t.values[static_cast<size_t>(j)]) & 1) sigma |= Index(1) << j;
    m(tau, sigma) = 1;
  }
  return m;
}

std::vector<Index> column_dims(const Normalized& n) {
  std::vector<Index> out;
  for (const auto& col : n.double_complex.dims) {
    Index s = 0;
    for (Index d : col) s += d;
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(SimplexMap, GeneratorsAndFactorization) {
  EXPECT_EQ(SimplexMap::coface(2, 1).values, (std::vector<int>{0, 2}));
  EXPECT_EQ(SimplexMap::codegeneracy(1, 0).values, (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(SimplexMap::surjection(3, {1, 3}).values, (std::vector<int>{0, 1, 1, 2}));
  EXPECT_EQ(SimplexMap::surjection(3, {1, 3}).jumps(), (std::vector<int>{1, 3}));
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      for (const auto& theta : all_maps(m, n)) {
        ASSERT_TRUE(theta.valid());
        SimplexMap acc = SimplexMap::identity(m);
        for (const auto& s : factor(theta).steps(m))
          acc = compose(s.face ? SimplexMap::coface(s.level, s.index) : SimplexMap::codegeneracy(s.level, s.index), acc);
        EXPECT_EQ(acc, theta);
      }
  EXPECT_EQ(all_maps(2, 2).size(), 10u);
}

TEST(Cosimplicial, BrokenIdentityIsRejected) {
  const auto good = vertices(2);
  std::vector<Complex> levels{good.level(0), good.level(1), good.level(2)};
  std::vector<std::vector<ChainMap>> cof(3), codeg(2);
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i <= n; ++i) cof[static_cast<size_t>(n)].push_back(good.coface(n, i));
  for (int n = 0; n < 2; ++n)
    for (int i = 0; i <= n; ++i) codeg[static_cast<size_t>(n)].push_back(good.codegeneracy(n, i));
  EXPECT_NO_THROW(CosimplicialModule(levels, cof, codeg));
  cof[2][0] = cof[2][1];
  EXPECT_THROW(CosimplicialModule(levels, cof, codeg), Error);
}

TEST(Cosimplicial, ApplyIsFunctorial) {
  std::mt19937 rng(5);
  const auto v = vertices(4);
  const auto d = dold_kan_D(Complex(0, {1, 2, 1}, {mat({{1}, {-1}}), mat({{1, 1}})}), 4);
  std::uniform_int_distribution<int> lvl(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const int a = lvl(rng), b = lvl(rng), c = lvl(rng);
    const SimplexMap f = random_map(rng, a, b), g = random_map(rng, b, c);
    const SimplexMap gf = compose(g, f);
    EXPECT_EQ(v.apply(gf).at(0), vertex_map(gf));
    EXPECT_EQ(v.apply(gf).at(0), v.apply(g).at(0) * v.apply(f).at(0));
    EXPECT_EQ(d.apply(gf).at(0), d.apply(g).at(0) * d.apply(f).at(0));
  }
}

TEST(Normalize, Examples) {
  const Complex c(0, {1, 2}, {mat({{1}, {1}})});
  const auto k = CosimplicialModule::constant(c, 3);
  EXPECT_EQ(column_dims(normalize(k)), (std::vector<Index>{3, 0, 0, 0}));
  const Complex tk = tot_n(k);
  for (int deg = -1; deg <= 4; ++deg) EXPECT_EQ(tk.dim(deg), c.dim(deg)) << deg;
  EXPECT_EQ(tk.d(0), c.d(0));

  EXPECT_EQ(column_dims(normalize(vertices(3))), (std::vector<Index>{1, 1, 0, 0}));

  const auto z = CosimplicialModule::constant(Complex::zero(), 2);
  EXPECT_EQ(tot_n(z).total_dim(), 0);
}

TEST(TotN, CechCoverOfPoint) {
  const int n = 4;
  const auto cech = CosimplicialModule::from_functor(
      n, [](int l) { return Complex::concentrated(0, Index(1) << (l + 1)); },
      [](const SimplexMap& t) { return std::vector<Matrix>{cech_map(t)}; });
  const auto norm = normalize(cech);
  const Cohomology h = cohomology(tot(norm.double_complex));
  EXPECT_EQ(h.dim(0), 1);
  for (int k = 1; k <= norm.reliable_through; ++k) EXPECT_EQ(h.dim(k), 0) << k;
}

TEST(DoldKan, ModuleExamples) {
  const auto d1 = dold_kan_D(Complex::concentrated(1, 1), 3);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(d1.level(n).total_dim(), n);
  EXPECT_THROW(dold_kan_D(Complex::concentrated(3, 1), 2), Error);

  const auto dk = dold_kan_D(CDGA::ground(), 3);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(dk.level(n), CDGA::ground());
  EXPECT_EQ(dold_kan_summands(3, 2),
            (std::vector<std::vector<int>>{{}, {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}}));
}

TEST(DoldKan, AlgebraLevelsValid) {
  const CDGA ee = tensor(CDGA::exterior(1), CDGA::exterior(1));
  const auto d = dold_kan_D(ee, 3);
  for (int n = 0; n <= 3; ++n) EXPECT_TRUE(validate(d.level(n)).ok()) << n;
  const CDGA cone = CDGA::square_zero(Complex(1, {1, 1}, {mat({{1}})}));
  const auto dc = dold_kan_D(cone, 3);
  for (int n = 0; n <= 3; ++n) EXPECT_TRUE(validate(dc.level(n)).ok()) << n;
}

TEST(DoldKan, PropertyNormalizationInvertsDenormalization) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const CDGA a = random_cdga(rng, 1 + trial % 3, 3, false);
    const int trunc = a.top() + trial % 2;
    const auto d = dold_kan_D(a, trunc);
    const Normalized norm = normalize(d.module());
    // N^n sits in the identity summand: project onto it
    std::vector<Matrix> comps;
    for (int n = 0; n <= trunc; ++n) {
      const auto layout = dold_kan_summands(n, a.top());
      Index off = 0;
      for (const auto& s : layout) {
        if (static_cast<int>(s.size()) == n) break;
        off += a.dim(static_cast<int>(s.size()));
      }
      const Matrix& b = norm.basis[static_cast<size_t>(n)][0];
      ASSERT_EQ(b.cols(), a.dim(n)) << "trial " << trial << " level " << n;
      const Matrix p = b.middleRows(off, a.dim(n));
      ASSERT_EQ(rank<Rational>(p), a.dim(n));
      comps.push_back(p);
    }
    const Complex tn = tot(norm.double_complex);
    std::vector<Matrix> in_a;
    for (int n = 0; n <= a.top(); ++n) in_a.push_back(comps[static_cast<size_t>(n)]);
    Complex a_ext = a.complex();
    if (trunc > a.top()) {
      std::vector<Index> dims = a.complex().dims();
      dims.push_back(0);
      auto diffs = a.complex().differentials();
      diffs.resize(dims.size() - 2, Matrix());
      diffs.push_back(Matrix::Zero(0, a.dim(a.top())));
      a_ext = Complex(0, dims, diffs);
      in_a.push_back(Matrix::Zero(0, 0));
    }
    const ChainMap iso(tn, a_ext, in_a);
    EXPECT_TRUE(is_quasi_iso(iso).quasi_iso);
    EXPECT_EQ(cohomology(tn).dims(), cohomology(a_ext).dims());
  }
}
