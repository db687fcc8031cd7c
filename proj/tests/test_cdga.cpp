#include <rht/cdga.hpp>

#include <gtest/gtest.h>

#include "random_objects.hpp"

using namespace rht;
using namespace rht::testing;

namespace {

std::vector<Index> convolve(const std::vector<Index>& a, const std::vector<Index>& b) {
  std::vector<Index> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST(CDGA, GroundAndExterior) {
  EXPECT_TRUE(validate(CDGA::ground()).ok());
  const CDGA e = CDGA::exterior(1);
  EXPECT_TRUE(validate(e).ok());
  EXPECT_EQ(e.mult(1, 0), mat({{1}}));

  // x * x = x is forbidden by graded commutativity
  auto mult = e.mult_tensors();
  std::vector<std::vector<Matrix>> two(2);
  two[0] = {mat({{1}}), mat({{1}})};
  two[1] = {mat({{1}})};
  CDGA bad(Complex::graded(0, {1, 1}), two, vec({1}));
  EXPECT_TRUE(validate(bad).ok());  // top = 1: x*x lands in degree 2, truncated
  CDGA wide(Complex::graded(0, {1, 1, 1}),
            {{mat({{1}}), mat({{1}}), mat({{1}})}, {mat({{1}}), mat({{1}})}, {mat({{1}})}}, vec({1}));
  const auto rep = validate(wide);
  ASSERT_FALSE(rep.ok());
  bool comm = false;
  for (const auto& v : rep.violations)
    if (v.identity == "commutativity" && v.where == std::vector<int>{1, 0, 1, 0}) comm = true;
  EXPECT_TRUE(comm);
}

TEST(CDGA, BrokenLeibnizIsLocated) {
  // K (+) K x (+) K dx with |x| = 1, square-zero; then perturb x * 1 in degree 1.
  Complex v(1, {1, 1}, {mat({{1}})});
  const CDGA a = CDGA::square_zero(v);
  ASSERT_TRUE(validate(a).ok());
  // make 1 * x = 2x: breaks unit law and Leibniz for the pair (1, x)
  auto m = a.mult_tensors();
  m[0][1](0, 0) = 2;
  const CDGA broken(a.complex(), m, a.unit(), a.augmentation());
  const auto rep = validate(broken);
  ASSERT_FALSE(rep.ok());
  bool leibniz = false, unit = false;
  for (const auto& viol : rep.violations) {
    if (viol.identity == "leibniz" && viol.where == std::vector<int>{0, 0, 1, 0}) leibniz = true;
    if (viol.identity == "left-unit" && viol.where == std::vector<int>{1, 0}) unit = true;
  }
  EXPECT_TRUE(leibniz);
  EXPECT_TRUE(unit);
  EXPECT_EQ(rep.violations.front().describe().find("("), rep.violations.front().identity.size() + 4);
}

TEST(CDGA, AugmentationChecks) {
  const CDGA a = CDGA::exterior(1).with_augmentation(vec({2}));
  const auto rep = validate(a);
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.violations.front().identity, "augmentation-unit");
}

TEST(CDGA, ShapeErrors) {
  EXPECT_THROW(CDGA(Complex::graded(0, {1, 1}), {{mat({{1}})}}, vec({1})), Error);
  EXPECT_THROW(CDGA(Complex::graded(1, {1}), {{mat({{1}})}}, vec({1})), Error);
  EXPECT_THROW(CDGA::exterior(2), Error);
  EXPECT_THROW(CDGA::truncated_polynomial(1, 2), Error);
}

TEST(Tensor, Examples) {
  const CDGA e = CDGA::exterior(1);
  EXPECT_EQ(tensor(e, CDGA::ground()), e);
  EXPECT_EQ(tensor(CDGA::ground(), e), e);

  const CDGA xy = tensor(e, e);
  EXPECT_EQ(xy.complex().dims(), (std::vector<Index>{1, 2, 1}));
  ASSERT_TRUE(validate(xy).ok());
  // degree 1 basis: block i=0 is 1 (x) y, block i=1 is x (x) 1
  const Vector y_times_x = xy.basis_product(1, 0, 1, 1);
  const Vector x_times_y = xy.basis_product(1, 1, 1, 0);
  EXPECT_EQ(x_times_y, vec({1}));
  EXPECT_EQ(y_times_x, vec({-1}));
  EXPECT_EQ(xy.basis_product(1, 0, 1, 0), vec({0}));
}

TEST(Tensor, PropertyValidAndDimensionConvolution) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const CDGA a = random_cdga(rng, 1 + trial % 2, 2, trial % 2 == 0);
    const CDGA b = random_cdga(rng, 1 + (trial / 2) % 2, 2, false);
    ASSERT_TRUE(validate(a).ok());
    ASSERT_TRUE(validate(b).ok());
    const CDGA t = tensor(a, b);
    EXPECT_TRUE(validate(t).ok()) << "trial " << trial;
    EXPECT_EQ(t.complex().dims(), convolve(a.complex().dims(), b.complex().dims()));
  }
}

TEST(Morphism, IdentityAndFailures) {
  const CDGA e = CDGA::exterior(1);
  EXPECT_NO_THROW(CDGAMorphism::identity(e));
  // K -> exterior(1) sending 1 to 2 is not unital
  EXPECT_THROW(CDGAMorphism(CDGA::ground(), e, {mat({{2}})}), Error);
  // exterior(1) -> K (augmentation) is an algebra map
  EXPECT_NO_THROW(CDGAMorphism(e, CDGA::ground(), {mat({{1}}), Matrix::Zero(0, 1)}));
}

TEST(HStar, Examples) {
  // acyclic in positive degrees: K (+) (K x --> K dx)
  const CDGA cone = CDGA::square_zero(Complex(1, {1, 1}, {mat({{1}})}));
  const HStar h = h_star(cone);
  EXPECT_EQ(h.algebra.complex().dims(), (std::vector<Index>{1, 0, 0}));
  EXPECT_TRUE(validate(h.algebra).ok());
  EXPECT_EQ(h.algebra.unit(), vec({1}));

  // zero differential: H* is the algebra itself
  const CDGA p = CDGA::truncated_polynomial(2, 3);
  EXPECT_EQ(h_star(p).algebra, p);
  const CDGA ee = tensor(CDGA::exterior(1), CDGA::exterior(1));
  EXPECT_EQ(h_star(ee).algebra, ee);
}

TEST(HStar, PropertyIdempotentAndRepresentativeIndependent) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const CDGA a = random_cdga(rng, 2 + trial % 2, 3);
    const HStar h = h_star(a);
    ASSERT_TRUE(validate(h.algebra).ok());

    // H*(H*(a)) -> H*(a) through the chosen representatives is an algebra iso
    const HStar hh = h_star(h.algebra);
    std::vector<Matrix> comps;
    for (int k = 0; k <= a.top(); ++k) {
      const Matrix r = hh.groups.at(k)->quotient.representatives;
      ASSERT_EQ(r.rows(), r.cols());
      ASSERT_EQ(rank<Rational>(r), r.rows());
      comps.push_back(r);
    }
    EXPECT_TRUE(validate_morphism(hh.algebra, h.algebra, comps).ok());

    // second representative system: reps * G + boundaries * R
    std::vector<Matrix> g, reps;
    for (int k = 0; k <= a.top(); ++k) {
      const auto& grp = *h.groups.at(k);
      const Matrix gk = random_invertible(rng, grp.dim());
      Matrix alt = grp.quotient.representatives * gk;
      if (grp.boundaries.dim() > 0) alt += grp.boundaries.basis() * random_matrix(rng, grp.boundaries.dim(), grp.dim());
      g.push_back(gk);
      reps.push_back(alt);
    }
    std::vector<Matrix> ginv;
    for (const auto& m : g) ginv.push_back(inverse<Rational>(m));
    const CDGA expected = change_basis(h.algebra, ginv);
    for (int i = 0; i <= a.top(); ++i)
      for (int j = 0; i + j <= a.top(); ++j) {
        const auto& gij = *h.groups.at(i + j);
        Matrix m(gij.dim(), h.groups.at(i)->dim() * h.groups.at(j)->dim());
        for (Index x = 0; x < h.groups.at(i)->dim(); ++x)
          for (Index y = 0; y < h.groups.at(j)->dim(); ++y) {
            const Vector prod = a.multiply(i, Vector(reps[static_cast<size_t>(i)].col(x)), j,
                                           Vector(reps[static_cast<size_t>(j)].col(y)));
            ASSERT_TRUE(gij.cycles.contains(prod));
            m.col(x * h.groups.at(j)->dim() + y) = ginv[static_cast<size_t>(i + j)] * gij.quotient.projection * prod;
          }
        EXPECT_EQ(m, expected.mult(i, j)) << "trial " << trial << " degrees " << i << "," << j;
      }
  }
}
