#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "harmonics/series.hpp"

using namespace harmonics;

namespace {

bool close(cx a, cx b, double tol) { return std::abs(a - b) <= tol; }

CoeffSeq random_coeffs(std::mt19937_64& rng, int degree, int support_max) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoeffSeq a(degree);
  for (int n = 0; n <= support_max; ++n) a.set(n, cx{u(rng), u(rng)});
  return a;
}

}  // namespace

TEST_CASE("cauchy product of the all-ones sequences") {
  const int deg = 12;
  const CoeffSeq a = CoeffSeq::geometric(deg);
  const CoeffSeq c = cauchy_product(a, a);
  // independent double-sum oracle: c_n = sum_{j=0}^n 1*1
  for (int n = 0; n <= deg; ++n) {
    double expect = 0.0;
    for (int j = 0; j <= n; ++j) expect += 1.0;
    CHECK(close(c.coeff(n), cx{expect, 0.0}, 1e-14));
    CHECK(expect == double(n + 1));
  }
}

TEST_CASE("cauchy product identity element") {
  std::mt19937_64 rng(7);
  CoeffSeq one(10);
  one.set(0, cx{1.0, 0.0});
  const CoeffSeq b = random_coeffs(rng, 10, 10);
  const CoeffSeq c = cauchy_product(one, b);
  for (int n = 0; n <= 10; ++n) CHECK(c.coeff(n) == b.coeff(n));
}

TEST_CASE("exp coefficients multiply to 2^n/n!") {
  const CoeffSeq e = CoeffSeq::exponential(14);
  const CoeffSeq c = cauchy_product(e, e);
  double fact = 1.0;
  for (int n = 0; n <= 14; ++n) {
    if (n > 0) fact *= double(n);
    CHECK(close(c.coeff(n), cx{std::pow(2.0, n) / fact, 0.0}, 1e-12));
  }
}

TEST_CASE("cauchy product is commutative and bilinear") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int iter = 0; iter < 50; ++iter) {
    const CoeffSeq a = random_coeffs(rng, 12, 12);
    const CoeffSeq b = random_coeffs(rng, 12, 12);
    const CoeffSeq c = random_coeffs(rng, 12, 12);
    const cx s{u(rng), u(rng)};
    const CoeffSeq ab = cauchy_product(a, b);
    const CoeffSeq ba = cauchy_product(b, a);
    for (int n = 0; n <= 12; ++n) CHECK(close(ab.coeff(n), ba.coeff(n), 1e-13));

    // a*(s b + c) = s (a*b) + a*c on the retained window
    CoeffSeq sbc(12);
    for (int n = 0; n <= 12; ++n) sbc.set(n, s * b.coeff(n) + c.coeff(n));
    const CoeffSeq lhs = cauchy_product(a, sbc);
    const CoeffSeq ac = cauchy_product(a, c);
    for (int n = 0; n <= 12; ++n)
      CHECK(close(lhs.coeff(n), s * ab.coeff(n) + ac.coeff(n), 1e-12));
  }
}

TEST_CASE("l1 submultiplicativity for all three product variants") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int iter = 0; iter < 40; ++iter) {
    const CoeffSeq a = random_coeffs(rng, 10, 10);
    const CoeffSeq b = random_coeffs(rng, 10, 10);
    CHECK(cauchy_product(a, b).l1_norm() <= a.l1_norm() * b.l1_norm() + 1e-12);

    LaurentSeq la(5), lb(5);
    for (int n = -5; n <= 5; ++n) {
      la.set(n, cx{u(rng), u(rng)});
      lb.set(n, cx{u(rng), u(rng)});
    }
    CHECK(laurent_cauchy_product(la, lb).l1_norm() <=
          la.l1_norm() * lb.l1_norm() + 1e-12);

    MultiSeq ma(2), mb(2);
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j) {
        ma.set({i, j}, cx{u(rng), u(rng)});
        mb.set({i, j}, cx{u(rng), u(rng)});
      }
    CHECK(multi_cauchy_product(ma, mb).l1_norm() <=
          ma.l1_norm() * mb.l1_norm() + 1e-12);
  }
}

TEST_CASE("laurent products: deltas convolve by index addition") {
  const LaurentSeq d1 = LaurentSeq::delta(1);
  const LaurentSeq dm1 = LaurentSeq::delta(-1);
  const LaurentSeq c = laurent_cauchy_product(d1, dm1);
  // single-term convolution oracle: only j=1 pairs with -1 at n=0
  CHECK(c.coeff(0) == cx{1.0, 0.0});
  CHECK(c.l1_norm() == 1.0);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LaurentSeq b(4);
  for (int n = -4; n <= 4; ++n) b.set(n, cx{u(rng), u(rng)});
  const LaurentSeq id = LaurentSeq::delta(0);
  const LaurentSeq c2 = laurent_cauchy_product(id, b);
  for (int n = -4; n <= 4; ++n) CHECK(c2.coeff(n) == b.coeff(n));
}

TEST_CASE("multi-index cauchy product") {
  // enumeration oracle: count ordered pairs alpha + beta = (1,1) inside the
  // declared support
  const auto pairs_to = [](const MultiSeq& s, int g1, int g2) {
    double count = 0.0;
    for (const auto& [alpha, va] : s.entries())
      for (const auto& [beta, vb] : s.entries())
        if (alpha[0] + beta[0] == g1 && alpha[1] + beta[1] == g2) count += 1.0;
    return count;
  };

  MultiSeq box(2);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) box.set({i, j}, cx{1.0, 0.0});
  CHECK(pairs_to(box, 1, 1) == 4.0);
  CHECK(multi_cauchy_product(box, box).coeff({1, 1}) == cx{4.0, 0.0});

  // dropping the (1,1) corner leaves the two cross pairs
  MultiSeq simplex(2);
  simplex.set({0, 0}, cx{1.0, 0.0});
  simplex.set({0, 1}, cx{1.0, 0.0});
  simplex.set({1, 0}, cx{1.0, 0.0});
  CHECK(pairs_to(simplex, 1, 1) == 2.0);
  const MultiSeq c = multi_cauchy_product(simplex, simplex);
  CHECK(c.coeff({1, 1}) == cx{2.0, 0.0});
  MultiSeq a = box;

  MultiSeq delta(2);
  delta.set({0, 0}, cx{1.0, 0.0});
  const MultiSeq c2 = multi_cauchy_product(delta, a);
  for (const auto& [alpha, v] : a.entries()) CHECK(c2.coeff(alpha) == v);

  MultiSeq wrong(3);
  CHECK_THROWS_AS(multi_cauchy_product(a, wrong), std::invalid_argument);
}

TEST_CASE("product evaluation distributes for finite-support inputs") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int iter = 0; iter < 20; ++iter) {
    // support only up to half the declared degree, so the product is complete
    const CoeffSeq a = random_coeffs(rng, 20, 10);
    const CoeffSeq b = random_coeffs(rng, 20, 10);
    const CoeffSeq c = cauchy_product(a, b);
    const cx z{u(rng), u(rng)};
    CHECK(close(eval_series(c, z, 1.0),
                eval_series(a, z, 1.0) * eval_series(b, z, 1.0), 1e-12));

    MultiSeq ma(2), mb(2);
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j) {
        ma.set({i, j}, cx{u(rng), u(rng)});
        mb.set({i, j}, cx{u(rng), u(rng)});
      }
    const MultiSeq mc = multi_cauchy_product(ma, mb);
    const std::vector<cx> zs{cx{u(rng), u(rng)}, cx{u(rng), u(rng)}};
    CHECK(close(eval_series(mc, zs, 1.0),
                eval_series(ma, zs, 1.0) * eval_series(mb, zs, 1.0), 1e-12));
  }
}

TEST_CASE("series evaluation") {
  const CoeffSeq g = CoeffSeq::geometric(64);
  CHECK(close(eval_series(g, cx{0.5, 0.0}, 1e-12), cx{2.0, 0.0}, 1e-12));
  CHECK(eval_series(g, cx{0.0, 0.0}, 1.0) == cx{1.0, 0.0});

  // 20-term partial sum oracle for exp at 1
  double expect = 0.0, fact = 1.0;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) fact *= double(n);
    expect += 1.0 / fact;
  }
  const CoeffSeq e = CoeffSeq::exponential(20);
  CHECK(close(eval_series(e, cx{1.0, 0.0}, 1.0), cx{expect, 0.0}, 1e-15));
  CHECK(std::fabs(expect - std::exp(1.0)) < 1e-15);

  // declared tail exceeding the tolerance is reported
  CoeffSeq short_geo = CoeffSeq::geometric(8);
  CHECK_THROWS_AS(eval_series(short_geo, cx{0.9, 0.0}, 1e-12), std::domain_error);

  CHECK_THROWS_AS(geometric_sum_value(cx{1.0, 0.0}), std::domain_error);
  CHECK(close(geometric_sum_value(cx{0.5, 0.0}), cx{2.0, 0.0}, 1e-15));

  LaurentSeq l(2);
  l.set(-1, cx{1.0, 0.0});
  CHECK_THROWS_AS(eval_series(l, cx{0.0, 0.0}, 1.0), std::domain_error);
}

TEST_CASE("differentiation") {
  const CoeffSeq e = CoeffSeq::exponential(16);
  const CoeffSeq de = differentiate(e);
  for (int n = 0; n <= 15; ++n) CHECK(close(de.coeff(n), e.coeff(n), 1e-16));

  CoeffSeq constant(5);
  constant.set(0, cx{4.0, 1.0});
  const CoeffSeq dc = differentiate(constant);
  for (int n = 0; n <= dc.degree(); ++n) CHECK(dc.coeff(n) == cx{0.0, 0.0});

  // hand differentiation of the geometric series: (n+1) z^n
  const CoeffSeq dg = differentiate(CoeffSeq::geometric(10));
  for (int n = 0; n <= 9; ++n) CHECK(dg.coeff(n) == cx{double(n + 1), 0.0});
}

TEST_CASE("radius estimation") {
  CHECK(std::fabs(radius_estimate(CoeffSeq::geometric(24)) - 1.0) <= 0.1);
  CHECK(radius_estimate(CoeffSeq::exponential(40)) >= 10.0);

  CoeffSeq pow2(20);
  for (int n = 0; n <= 20; ++n) pow2.set(n, cx{std::pow(2.0, n), 0.0});
  // root-test oracle: |2^n|^{1/n} = 2 for every n, radius 1/2
  CHECK(std::fabs(radius_estimate(pow2) - 0.5) <= 0.05);

  CHECK_THROWS_AS(radius_estimate(CoeffSeq::geometric(5)), std::invalid_argument);
}

TEST_CASE("series exponential") {
  CHECK(exp_value(cx{0.0, 0.0}) == cx{1.0, 0.0});
  CHECK(close(exp_value(cx{0.0, 2.0 * std::numbers::pi}), cx{1.0, 0.0}, 1e-10));
  CHECK(close(exp_value(cx{1.0, 0.0}), cx{std::exp(1.0), 0.0}, 1e-14));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int iter = 0; iter < 50; ++iter) {
    const double t = u(rng);
    CHECK(std::fabs(std::abs(exp_value(cx{0.0, t})) - 1.0) < 1e-13);

    const cx z{u(rng), u(rng)}, w{u(rng), u(rng)};
    CHECK(close(exp_value(z + w), exp_value(z) * exp_value(w), 1e-10));
    CHECK(std::fabs(std::abs(exp_value(z)) - exp_value(cx{z.real(), 0.0}).real()) <
          1e-10);
  }
}

TEST_CASE("all-ones multi series sums to a product of geometric partial sums") {
  // over the box {0..l}^2 the sum of z^alpha factors exactly
  MultiSeq ones(2);
  const int l = 5;
  for (int i = 0; i <= l; ++i)
    for (int j = 0; j <= l; ++j) ones.set({i, j}, cx{1.0, 0.0});
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int iter = 0; iter < 20; ++iter) {
    const std::vector<cx> z{cx{u(rng), u(rng)} * 0.6, cx{u(rng), u(rng)} * 0.6};
    cx product{1.0, 0.0};
    for (const cx& zj : z) {
      cx partial{0.0, 0.0}, p{1.0, 0.0};
      for (int n = 0; n <= l; ++n) {
        partial += p;
        p *= zj;
      }
      product *= partial;
    }
    CHECK(close(eval_series(ones, z, 1.0), product, 1e-12));
  }
}
