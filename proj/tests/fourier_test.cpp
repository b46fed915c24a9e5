#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "simplexlab/counting.hpp"
#include "simplexlab/experiments.hpp"
#include "simplexlab/fourier.hpp"

using namespace simplexlab;

namespace {

ComplexGrid random_grid(const FieldParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  ComplexGrid f(p);
  for (auto& v : f.values) v = Complex(u(rng), u(rng));
  return f;
}

double max_diff(const ComplexGrid& a, const ComplexGrid& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace

TEST(Character, Homomorphism) {
  Character chi(7);
  EXPECT_NEAR(std::abs(chi(0) - Complex(1, 0)), 0, 1e-12);
  for (int a = -10; a < 10; ++a) {
    for (int b = -10; b < 10; ++b) EXPECT_NEAR(std::abs(chi(a) * chi(b) - chi(a + b)), 0, 1e-12);
  }
}

TEST(Transform, ConstantAndDelta) {
  FieldParams p(5, 2);
  ComplexGrid one(p), delta(p);
  for (auto& v : one.values) v = 1;
  delta[0] = 1;
  auto a = transform(one), b = transform(delta);
  EXPECT_NEAR(std::abs(a[0] - Complex(1, 0)), 0, 1e-12);
  for (std::uint32_t m = 1; m < p.size(); ++m) EXPECT_NEAR(std::abs(a[m]), 0, 1e-12);
  for (std::uint32_t m = 0; m < p.size(); ++m) EXPECT_NEAR(std::abs(b[m] - Complex(1.0 / 25, 0)), 0, 1e-12);
  auto c = inverse_transform(delta);
  for (std::uint32_t m = 0; m < p.size(); ++m) EXPECT_NEAR(std::abs(c[m] - Complex(1, 0)), 0, 1e-12);
}

TEST(Transform, MatchesDirectSum) {
  std::mt19937_64 rng(5);
  for (auto [q, d] : {std::pair{3u, 2}, std::pair{5u, 1}, std::pair{7u, 2}}) {
    FieldParams p(q, d);
    auto f = random_grid(p, rng);
    auto want = oracle::dft(p, f.values);
    auto got = transform(f);
    for (std::uint32_t m = 0; m < p.size(); ++m) EXPECT_NEAR(std::abs(got[m] - want[m]), 0, 1e-10);
  }
}

TEST(Transform, RoundTrip) {
  std::mt19937_64 rng(6);
  FieldParams p(3, 2);
  ComplexGrid ind(p);
  for (int i = 0; i < 5; ++i) ind[std::uint32_t(rng() % p.size())] = 1;
  EXPECT_LE(max_diff(inverse_transform(transform(ind)), ind), 1e-9);
  FieldParams p7(7, 2);
  ComplexGrid sph(p7);
  for (const auto& x : sphere(p7, 3).points) sph.at(x) = 1;
  EXPECT_LE(max_diff(inverse_transform(transform(sph)), sph), 1e-9);
  auto f = random_grid(p7, rng);
  EXPECT_LE(max_diff(inverse_transform(transform(f)), f), 1e-9);
}

TEST(Parseval, ExactCasesAndRandomGrids) {
  FieldParams p(5, 2);
  ComplexGrid delta(p), one(p);
  delta[0] = 1;
  for (auto& v : one.values) v = 1;
  EXPECT_NEAR(parseval_defect(delta), 0, 1e-15);
  EXPECT_NEAR(parseval_defect(one), 0, 1e-12);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    FieldParams pi(std::vector<std::uint32_t>{3, 5, 7}[i % 3], 1 + i % 2);
    auto f = random_grid(pi, rng);
    EXPECT_LE(parseval_defect(f), 1e-9 * f.l2_squared() / double(pi.size()));
  }
}

TEST(Parseval, TreeGrid) {
  FieldParams p(7, 2);
  PointSet e = sample_dense(p, 1, 2, 9);
  auto f = f_tree(e, path_tree(2), {1, 2});
  auto g = to_complex(p, f.counts);
  EXPECT_LE(parseval_defect(g), 1e-9 * g.l2_squared());
}

TEST(SphereNorms, ZeroAndOne) {
  FieldParams p(3, 2);
  ComplexGrid zero(p), one(p);
  auto z = sphere_restricted_norms(zero, 1);
  EXPECT_EQ(z.l2, 0);
  EXPECT_EQ(z.l4_of_transform, 0);
  EXPECT_EQ(z.ratio(3), 0);
  for (auto& v : one.values) v = 1;
  auto r = sphere_restricted_norms(one, 1);
  EXPECT_NEAR(r.l2, 2.0, 1e-12);  // four points on the unit circle of F_3^2
  EXPECT_TRUE(r.in_hypothesis);
  EXPECT_GT(r.ratio(3), 0);
}

TEST(SphereNorms, BoundedAcrossQ) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::uint32_t q : {3u, 7u, 11u}) {
    FieldParams p(q, 2);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      ComplexGrid h(p);
      for (auto& v : h.values) v = u(rng);
      worst = std::max(worst, sphere_restricted_norms(h, 1).ratio(q));
    }
    EXPECT_LE(worst, 8.0) << "q=" << q;
  }
}
