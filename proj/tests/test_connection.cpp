#include <rht/connection.hpp>
#include <rht/polysys.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "test_util.hpp"

using namespace rht;
using namespace rht::testing;

namespace {

Laurent t(int e, const Rational& c = 1) { return Laurent::monomial(c, e); }

/// O^n with idempotent basis and trivial connection.
ConnectionAlgebra idempotents(Index n) {
  ConnectionAlgebra a;
  a.rank = n;
  a.mult.assign(static_cast<size_t>(n), std::vector<LaurentVector>(static_cast<size_t>(n), LaurentVector(static_cast<size_t>(n))));
  a.gamma.assign(static_cast<size_t>(n), LaurentVector(static_cast<size_t>(n)));
  a.unit.assign(static_cast<size_t>(n), Laurent(1));
  for (Index i = 0; i < n; ++i) a.mult[static_cast<size_t>(i)][static_cast<size_t>(i)][static_cast<size_t>(i)] = Laurent(1);
  return a;
}

/// Rank 2 with e1^2 = c t^m e0 and nabla e1 = g e1.
ConnectionAlgebra quadratic(const Laurent& square, const Laurent& g) {
  ConnectionAlgebra a = ConnectionAlgebra::square_root_cover();
  a.mult[1][1] = {square, Laurent()};
  a.gamma[1][1] = g;
  return a;
}

/// New basis f_i = sum_j p(j, i) e_j with p constant.
ConnectionAlgebra change_basis(const ConnectionAlgebra& a, const Matrix& p) {
  const Matrix q = inverse<Rational>(p);
  const Index r = a.rank;
  auto to_new = [&](const LaurentVector& v) {
    LaurentVector w(static_cast<size_t>(r));
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < r; ++j) w[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] + v[static_cast<size_t>(j)] * Laurent(q(i, j));
    return w;
  };
  auto f = [&](Index i) {
    LaurentVector v(static_cast<size_t>(r));
    for (Index j = 0; j < r; ++j) v[static_cast<size_t>(j)] = Laurent(p(j, i));
    return v;
  };
  ConnectionAlgebra b = a;
  b.labels.clear();
  b.unit = to_new(a.unit);
  for (Index i = 0; i < r; ++i) {
    const LaurentVector ni = to_new(a.nabla(f(i)));
    for (Index k = 0; k < r; ++k) b.gamma[static_cast<size_t>(k)][static_cast<size_t>(i)] = ni[static_cast<size_t>(k)];
    for (Index j = 0; j < r; ++j) b.mult[static_cast<size_t>(i)][static_cast<size_t>(j)] = to_new(a.multiply(f(i), f(j)));
  }
  return b;
}

std::set<std::string> section_strings(const SectionResult& r) {
  std::set<std::string> out;
  for (const auto& s : r.sections) {
    std::string x;
    for (const auto& l : s) x += l.to_string() + ";";
    out.insert(x);
  }
  return out;
}

}  // namespace

TEST(Laurent, Arithmetic) {
  const Laurent x = t(1) + t(-1);
  EXPECT_EQ(x * x, t(2) + Laurent(2) + t(-2));
  EXPECT_EQ(x.derivative(), Laurent(1) - t(-2));
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ((t(-1, Rational(1, 2)) - t(3, 2)).to_string(), "1/2*t^-1 - 2*t^3");
  EXPECT_EQ(Laurent(7).coeff(0), 7);
}

TEST(ConnectionAlgebra, ValidExamples) {
  EXPECT_TRUE(validate(ConnectionAlgebra::trivial()).ok());
  EXPECT_TRUE(validate(ConnectionAlgebra::split()).ok());
  EXPECT_TRUE(validate(ConnectionAlgebra::square_root_cover()).ok());
  // basis 1, 1/x: e1^2 = e0 / t and nabla e1 = -e1 dt / 2t
  EXPECT_TRUE(validate(quadratic(t(-1), t(-1, Rational(-1, 2)))).ok());
  EXPECT_TRUE(validate(idempotents(3)).ok());
}

TEST(ConnectionAlgebra, LeibnizIsChecked) {
  // e1^2 = e0 together with nabla e1 = -e1 dt / 2t is not a connection on the algebra.
  const ConnectionReport rep = validate(quadratic(Laurent(1), t(-1, Rational(-1, 2))));
  ASSERT_FALSE(rep.ok());
  EXPECT_NE(rep.violations.front().find("Leibniz"), std::string::npos);
  ConnectionAlgebra bad = ConnectionAlgebra::split();
  bad.mult[0][1] = {Laurent(), Laurent(2)};
  EXPECT_FALSE(validate(bad).ok());
}

TEST(Sections, SquareRootCoverHasNone) {
  for (int w = 0; w <= 4; ++w) {
    const SectionResult r = section_check(ConnectionAlgebra::square_root_cover(), w);
    EXPECT_TRUE(r.sections.empty());
    EXPECT_EQ(r.certificate, SectionCertificate::NoneLinear) << w;
    EXPECT_EQ(r.linear_dim, 0);
    EXPECT_TRUE(r.window_independent);
  }
  EXPECT_EQ(section_check(quadratic(t(-1), t(-1, Rational(-1, 2))), 3).certificate, SectionCertificate::NoneLinear);
  EXPECT_TRUE(cohomology_section_check(ConnectionAlgebra::square_root_cover()));
}

TEST(Sections, SplitAndTrivial) {
  const SectionResult split = section_check(ConnectionAlgebra::split(), 2);
  EXPECT_EQ(split.certificate, SectionCertificate::Found);
  EXPECT_EQ(section_strings(split), (std::set<std::string>{"1;1;", "1;-1;"}));
  const SectionResult one = section_check(ConnectionAlgebra::trivial(), 2);
  ASSERT_EQ(one.sections.size(), 1u);
  EXPECT_EQ(one.sections.front(), LaurentVector{Laurent(1)});
  EXPECT_TRUE(cohomology_section_check(ConnectionAlgebra::split()));
  EXPECT_TRUE(cohomology_section_check(ConnectionAlgebra::trivial()));
  EXPECT_EQ(section_check(idempotents(3), 1).sections.size(), 3u);
}

TEST(Sections, WindowMonotonicity) {
  // x^2 = t^2, nabla x = x dt / t: sections x -> +-t need the window to reach 1.
  const ConnectionAlgebra a = quadratic(t(2), t(-1));
  ASSERT_TRUE(validate(a).ok());
  const SectionResult w0 = section_check(a, 0);
  EXPECT_EQ(w0.certificate, SectionCertificate::NoneInWindow);
  EXPECT_FALSE(w0.window_independent);
  std::set<std::string> previous;
  for (int w = 1; w <= 3; ++w) {
    const SectionResult r = section_check(a, w);
    EXPECT_TRUE(r.window_independent);
    const auto now = section_strings(r);
    EXPECT_EQ(now, (std::set<std::string>{"1;t;", "1;-t;"}));
    EXPECT_TRUE(std::includes(now.begin(), now.end(), previous.begin(), previous.end()));
    previous = now;
  }
}

TEST(Sections, EnumerationBound) {
  try {
    section_check(idempotents(5), 0, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EnumerationBoundExceeded);
  }
  EXPECT_EQ(section_check(idempotents(5), 0, 4).sections.size(), 5u);
}

TEST(Sections, PropertyConstantBasisChangeKeepsSections) {
  std::mt19937 rng(91);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + trial % 2;
    const ConnectionAlgebra base = trial % 3 == 0 ? ConnectionAlgebra::square_root_cover() : idempotents(n);
    const ConnectionAlgebra a = change_basis(base, random_invertible(rng, base.rank));
    ASSERT_TRUE(validate(a).ok()) << trial;
    const SectionResult r = section_check(a, 1);
    EXPECT_EQ(r.sections.size(), section_check(base, 1).sections.size()) << trial;
    for (const auto& s : r.sections) EXPECT_TRUE(is_section(a, s));
    EXPECT_TRUE(cohomology_section_check(a));
  }
}

TEST(PolySys, GroebnerExamples) {
  const Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1), one = Poly::constant(2, 1);
  // x^2 + y^2 - 1, x - y  ->  {x - y, y^2 - 1/2}
  const auto g = groebner_basis({x * x + y * y - one, x - y});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], y * y - one * Rational(1, 2));
  EXPECT_EQ(g[1], x - y);
  EXPECT_EQ(groebner_basis({x * y - one, x * y}).size(), 1u);
  EXPECT_TRUE(rational_solutions({x * x + y * y - one, x - y}, 2)->empty());
  EXPECT_FALSE(rational_solutions({x * y}, 2).has_value());
  EXPECT_EQ(rational_roots({Rational(-2), Rational(1), Rational(1)}), (std::vector<Rational>{-2, 1}));
  EXPECT_EQ(rational_roots({Rational(0), Rational(-1, 4), Rational(0), Rational(1)}),
            (std::vector<Rational>{Rational(-1, 2), 0, Rational(1, 2)}));
}

TEST(PolySys, PropertySolutionsMatchGridSearch) {
  std::mt19937 rng(92);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::vector<Rational> grid;
  for (int p = -6; p <= 6; ++p)
    for (int q = 1; q <= 3; ++q) grid.push_back(Rational(p, q));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1), one = Poly::constant(2, 1);
    // Plant a root at (a, b) so that systems are often consistent.
    const Rational a = coef(rng), b = coef(rng);
    const Poly xa = x - one * a, yb = y - one * b;
    const Poly f = xa * (x * coef(rng) + y * coef(rng) + one * coef(rng)) + yb * Rational(coef(rng));
    const Poly g = yb * (x * coef(rng) + y * coef(rng) + one * coef(rng)) + xa * (x * Rational(coef(rng)));
    const auto sols = rational_solutions({f, g}, 2);
    if (!sols) continue;
    ++checked;
    auto value = [](const Poly& p, const Rational& u, const Rational& v) {
      return p.substitute(1, v).substitute(0, u);
    };
    std::set<std::pair<Rational, Rational>> found;
    for (const auto& s : *sols) {
      EXPECT_TRUE(value(f, s[0], s[1]).is_zero());
      EXPECT_TRUE(value(g, s[0], s[1]).is_zero());
      found.emplace(s[0], s[1]);
    }
    EXPECT_TRUE(found.count({a, b}));
    for (const Rational& u : grid)
      for (const Rational& v : grid)
        if (value(f, u, v).is_zero() && value(g, u, v).is_zero()) EXPECT_TRUE(found.count({u, v})) << trial;
  }
  EXPECT_GE(checked, 20);
}
