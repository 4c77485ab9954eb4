#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "harmonics/line.hpp"

using namespace harmonics;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool close(cx a, cx b, double tol) { return std::abs(a - b) <= tol; }

/// Shifted gaussian with a scanned envelope (test-local construction).
LineFunction shifted_gaussian(double a, double shift) {
  double C = 0.0;
  for (int i = 0; i <= 4096; ++i) {
    const double x = -12.0 + 24.0 * i / 4096.0;
    C = std::max(C, (1.0 + std::pow(std::fabs(x), 8.0)) *
                        std::exp(-a * (x - shift) * (x - shift)));
  }
  LineFunction f(
      [a, shift](double x) {
        return cx{std::exp(-a * (x - shift) * (x - shift)), 0.0};
      },
      Envelope{1.0001 * C, 8.0}, Smoothness::schwartz_like);
  return f;
}

}  // namespace

TEST_CASE("quadspec validation") {
  QuadSpec q;
  q.panel = -1.0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  CHECK_NOTHROW(QuadSpec{}.validate());
}

TEST_CASE("gaussian masses") {
  QuadSpec q = QuadSpec::with_tol(1e-10);
  for (double a : {0.25, 1.0, kPi, 4.0}) {
    const cx v = integrate_line_function(gaussian_line(a), q);
    CHECK(close(v, cx{std::sqrt(kPi / a), 0.0}, 1e-9));
  }
}

TEST_CASE("abel kernel closed forms and masses") {
  CHECK(abel_kernel(1.0, 0.0) == 1.0);
  CHECK(std::fabs(abel_kernel(2.0, -3.0) - std::exp(-6.0)) < 1e-16);
  CHECK(abel_kernel_hat(1.0, 0.0) == 2.0);

  QuadSpec q = QuadSpec::with_tol(1e-9);
  for (double eta : {0.5, 1.0, 2.0}) {
    // space side: Int exp(-eta|x|) = 2/eta
    const cx m = integrate_line_function(abel_line(eta), q);
    CHECK(close(m, cx{2.0 / eta, 0.0}, 1e-9));
    // frequency side: Int 2 eta/(xi^2+eta^2) = 2 pi, independent of eta
    LineFunction hat([eta](double xi) { return cx{abel_kernel_hat(eta, xi), 0.0}; },
                     Envelope{2.0 * std::max(eta, 1.0 / eta), 2.0});
    const cx mass = integrate_line_function(hat, q);
    CHECK(close(mass, cx{kTwoPi, 0.0}, 1e-8));
  }
}

TEST_CASE("line poisson kernel") {
  CHECK(std::fabs(poisson_kernel_line(1.0, 0.0) - 1.0 / kPi) < 1e-17);
  QuadSpec q = QuadSpec::with_tol(1e-10);
  for (double t : {0.5, 1.0, 2.0}) {
    const cx mass = integrate_line_function(poisson_line(t), q);
    CHECK(close(mass, cx{1.0, 0.0}, 1e-9));
  }
  // concentration: sup over |y| >= delta vanishes as t -> 0
  const double delta = 0.5;
  double prev = 1e9;
  for (double t : {0.5, 0.1, 0.02, 0.004}) {
    const double sup = poisson_kernel_line(t, delta);  // decreasing in |y|
    CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("fourier transform basics") {
  QuadSpec q = QuadSpec::with_tol(1e-9);
  CHECK(close(fourier_transform(abel_line(1.0), 0.0, q), cx{2.0, 0.0}, 1e-8));
  CHECK(close(fourier_transform(gaussian_line(1.0), 0.0, q),
              cx{std::sqrt(kPi), 0.0}, 1e-9));

  // gaussian_hat oracle at xi = 2: sqrt(pi) e^{-1}
  CHECK(close(gaussian_hat(1.0, 2.0), cx{std::sqrt(kPi) * std::exp(-1.0), 0.0},
              1e-15));
  CHECK(close(fourier_transform(gaussian_line(1.0), 2.0, q), gaussian_hat(1.0, 2.0),
              1e-9));
  // normalization instance: Int exp(-pi x^2) = 1
  CHECK(close(gaussian_hat(kPi, 0.0), cx{1.0, 0.0}, 1e-15));
  // self-duality scale at a = 1/4: hat = 2 sqrt(pi) G_1
  for (double xi : {0.0, 0.5, 2.0})
    CHECK(close(gaussian_hat(0.25, xi),
                2.0 * std::sqrt(kPi) * cx{std::exp(-xi * xi), 0.0}, 1e-13));
}

TEST_CASE("transform of a translate picks up a phase") {
  QuadSpec q = QuadSpec::with_tol(1e-9);
  std::mt19937_64 rng(401);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int iter = 0; iter < 4; ++iter) {
    const double y = u(rng), xi = 3.0 * u(rng);
    const LineFunction fy = shifted_gaussian(1.0, y);
    const cx lhs = fourier_transform(fy, xi, q);
    const cx rhs = gaussian_hat(1.0, xi) * std::polar(1.0, -xi * y);
    CHECK(close(lhs, rhs, 1e-8));
  }
}

TEST_CASE("transform bound and lipschitz continuity") {
  QuadSpec q = QuadSpec::with_tol(1e-9);
  const LineFunction g = gaussian_line(1.0);
  const double mass = std::sqrt(kPi);
  const double moment = first_moment(g, q);  // Int |x| e^{-x^2} = 1
  CHECK(std::fabs(moment - 1.0) < 1e-6);
  std::mt19937_64 rng(409);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int iter = 0; iter < 6; ++iter) {
    const double x1 = u(rng), x2 = u(rng);
    const cx f1 = fourier_transform(g, x1, q);
    const cx f2 = fourier_transform(g, x2, q);
    CHECK(std::abs(f1) <= mass + 1e-8);
    CHECK(std::abs(f1 - f2) <= (moment + 1e-6) * std::fabs(x1 - x2) + 1e-8);
  }
}

TEST_CASE("indicator transform") {
  CHECK(close(indicator_hat(-1.5, 2.0, 0.0), cx{3.5, 0.0}, 1e-15));
  // simplification oracle for [-1,1]: 2 sin(xi)/xi
  for (double xi : {0.1, 1.0, kPi / 2.0, kPi, 9.0}) {
    CHECK(close(indicator_hat(-1.0, 1.0, xi), cx{2.0 * std::sin(xi) / xi, 0.0},
                1e-13));
  }
  CHECK(std::abs(indicator_hat(-1.0, 1.0, kPi)) < 1e-13);
  std::mt19937_64 rng(419);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int iter = 0; iter < 100; ++iter)
    CHECK(std::abs(indicator_hat(-1.0, 1.0, u(rng))) <= 2.0 + 1e-14);
  // transform matches quadrature on the induced line function
  QuadSpec q = QuadSpec::with_tol(1e-9);
  const LineFunction ind = indicator_line(-1.0, 1.0);
  for (double xi : {0.0, 2.0})
    CHECK(close(fourier_transform(ind, xi, q), indicator_hat(-1.0, 1.0, xi), 1e-6));
}

TEST_CASE("step approximation") {
  QuadSpec q = QuadSpec::with_tol(1e-9);
  const LineFunction g = gaussian_line(1.0);
  const StepFunction s = step_approximate(g, 1e-2, q);
  // independent L1 error check on a fine Riemann grid
  double err = 0.0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    const double x = -20.0 + 40.0 * (i + 0.5) / n;
    err += std::abs(cx{std::exp(-x * x), 0.0} - s.eval(x)) * (40.0 / n);
  }
  CHECK(err < 1e-2);
  // sup-norm transform gap inherits the L1 error
  for (double xi : {0.3, 4.0})
    CHECK(std::abs(fourier_transform(g, xi, q) - s.transform(xi)) < 1e-2);

  // a step input reproduces itself up to the requested budget
  const StepFunction base({-1.0, 0.0, 1.0}, {cx{1.0, 0.0}, cx{-2.0, 0.0}});
  const StepFunction again = step_approximate(base.as_line_function(), 1e-3, q);
  double err2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -2.0 + 4.0 * (i + 0.5) / n;
    err2 += std::abs(base.eval(x) - again.eval(x)) * (4.0 / n);
  }
  CHECK(err2 < 1e-3);
}

TEST_CASE("riemann-lebesgue via step approximation") {
  QuadSpec q = QuadSpec::with_tol(1e-9);
  const LineFunction g = gaussian_line(1.0);
  const StepFunction s = step_approximate(g, 1e-2, q);
  for (double xi : {10.0, 50.0, 100.0}) {
    const cx ghat = fourier_transform(g, xi, q);
    CHECK(std::abs(ghat) <= 1e-2 + std::abs(s.transform(xi)) + 1e-8);
  }
  CHECK(std::abs(fourier_transform(g, 10.0, q)) < 1e-8);
  CHECK(std::abs(fourier_transform(g, 100.0, q)) < 1e-8);
}

TEST_CASE("plancherel identities") {
  QuadSpec q = QuadSpec::with_tol(1e-8);
  CHECK(plancherel_defect(gaussian_line(1.0), q) < 1e-7);
  // closed forms on both sides: Int|G_1|^2 = sqrt(pi/2), Int|G_1 hat|^2 = pi sqrt(2 pi)
  CHECK(std::fabs(std::sqrt(kPi / 2.0) * kTwoPi - kPi * std::sqrt(kTwoPi)) < 1e-12);

  const cx polar = plancherel_pairing_defect(gaussian_line(1.0), gaussian_line(2.0), q);
  CHECK(std::abs(polar) < 1e-6);
}

TEST_CASE("derivative/transform exchange identities") {
  QuadSpec q = QuadSpec::with_tol(1e-9);
  const LineFunction g = gaussian_line(1.0);
  CHECK(schwartz_relation_defect(g, 1, 0.0, q) < 1e-8);  // odd moment vanishes
  CHECK(schwartz_relation_defect(g, 1, 1.0, q) < 1e-6);
  CHECK(schwartz_relation_defect(g, 2, 0.5, q) < 1e-5);
}

TEST_CASE("abel inversion approaches the point value") {
  QuadSpec q = QuadSpec::with_tol(1e-8);
  const LineFunction g = gaussian_line(1.0);
  // Poisson-side oracle in closed form: P_eta * G_1(0) = e^{eta^2} erfc(eta)
  for (double eta : {0.5, 0.1, 0.02}) {
    const cx v = abel_invert(g, 0.0, eta, q);
    const double oracle = std::exp(eta * eta) * std::erfc(eta);
    CHECK(close(v, cx{oracle, 0.0}, 2e-6));
  }
  CHECK(std::abs(abel_invert(g, 0.0, 0.02, q)) >
        std::abs(abel_invert(g, 0.0, 0.1, q)));

  // A_1 at the smooth points x = +-1, eta = 1e-3
  const LineFunction a1 = abel_line(1.0);
  for (double x : {-1.0, 1.0}) {
    const cx v = abel_invert(a1, x, 1e-3, q);
    CHECK(std::abs(v - cx{std::exp(-1.0), 0.0}) < 1e-3);
  }

  // vanishing at a point far from the support mass
  const LineFunction ind = indicator_line(0.0, 1.0);
  CHECK(std::abs(abel_invert(ind, -5.0, 1e-3, q)) < 1e-3);
}

TEST_CASE("abel inversion: frequency and poisson routes agree") {
  QuadSpec q = QuadSpec::with_tol(1e-6);
  const LineFunction g = gaussian_line(1.0);
  const LineFunction a1 = abel_line(1.0);
  for (double eta : {0.1, 1e-3}) {
    for (double x : {0.0, 1.0}) {
      const cx side_space_g = abel_invert(g, x, eta, q);
      const cx side_freq_g = abel_invert_freq(g, x, eta, q);
      CHECK(close(side_space_g, side_freq_g, 2e-6));
      const cx side_space_a = abel_invert(a1, x, eta, q);
      const cx side_freq_a = abel_invert_freq(a1, x, eta, q);
      CHECK(close(side_space_a, side_freq_a, 2e-6));
    }
  }
}

TEST_CASE("summability kernels generalize abel inversion") {
  QuadSpec q = QuadSpec::with_tol(1e-7);
  const LineFunction g = gaussian_line(1.0);

  // Phi = G_1 has Phi(0) = 1; recovery at the peak
  const cx rec = summability_invert(g, gaussian_line(1.0), 1e-2, 0.0, q);
  CHECK(std::abs(rec - cx{1.0, 0.0}) < 1e-3);

  // Phi(xi) = e^{-|xi|} reproduces the abel route exactly
  const LineFunction abel_weight = abel_line(1.0);
  for (double eta : {0.3, 0.05}) {
    const cx via_phi = summability_invert(g, abel_weight, eta, 0.5, q);
    const cx via_abel = abel_invert(g, 0.5, eta, q);
    CHECK(close(via_phi, via_abel, 1e-6));
  }

  // localization at a shifted point
  const LineFunction shifted = shifted_gaussian(1.0, 2.0);
  const cx loc = summability_invert(shifted, gaussian_line(1.0), 1e-2, 2.0, q);
  CHECK(std::abs(loc - cx{1.0, 0.0}) < 1e-3);

  // frequency route agrees
  const cx freq = summability_invert_freq(g, gaussian_line(1.0), 1e-2, 0.0, q);
  CHECK(close(rec, freq, 2e-6));

  LineFunction not_normalized([](double x) { return cx{2.0 * std::exp(-x * x), 0.0}; },
                              Envelope{2.0, 2.0});
  CHECK_THROWS_AS(summability_invert(g, not_normalized, 0.1, 0.0, q),
                  std::invalid_argument);
}

TEST_CASE("generalized transform of bounded functions") {
  QuadSpec q = QuadSpec::with_tol(1e-8);
  const LineFunction phi = gaussian_line(1.0);

  const double a = 1.5;
  LineFunction wave([a](double x) { return std::polar(1.0, a * x); },
                    Envelope{1.0, 0.0});
  const cx lf = generalized_transform(wave, phi, q);
  CHECK(close(lf, kTwoPi * cx{std::exp(-a * a), 0.0}, 1e-6));

  LineFunction zero([](double) { return cx{0.0, 0.0}; }, Envelope{0.0, 0.0});
  CHECK(std::abs(generalized_transform(zero, phi, q)) < 1e-12);

  // integrable f: L_f(phi) = Int fhat phi (dual quadrature oracle)
  const LineFunction a1 = abel_line(1.0);
  const cx lhs = generalized_transform(a1, phi, q);
  LineFunction dual(
      [](double xi) {
        return cx{abel_kernel_hat(1.0, xi) * std::exp(-xi * xi), 0.0};
      },
      Envelope{2.0, 2.0});
  const cx rhs = integrate_line_function(dual, q);
  CHECK(close(lhs, rhs, 2e-6));
}

TEST_CASE("principal-value sign transform") {
  QuadSpec q = QuadSpec::with_tol(1e-9);
  CHECK(std::abs(sign_pv_transform(gaussian_line(1.0), q)) < 1e-9);

  // phi(xi) = xi e^{-xi^2}: subtracted form reduces to 2i Int e^{-xi^2}
  double C = 0.0;
  for (int i = 0; i <= 4096; ++i) {
    const double x = 12.0 * i / 4096.0;
    C = std::max(C, (1.0 + std::pow(x, 6.0)) * std::fabs(x) * std::exp(-x * x));
  }
  LineFunction odd_phi([](double x) { return cx{x * std::exp(-x * x), 0.0}; },
                       Envelope{1.0001 * C, 6.0}, Smoothness::schwartz_like);
  odd_phi.exp_rate = 0.5;
  odd_phi.exp_scale = 2.0;
  const cx v = sign_pv_transform(odd_phi, q);
  CHECK(close(v, cx{0.0, 2.0 * std::sqrt(kPi)}, 1e-6));
  CHECK(std::fabs(v.real()) < 1e-12);  // purely imaginary for real phi

  // cutoff route approaches the subtracted form as eps -> 0
  double prev_gap = 1e9;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double gap = std::abs(sign_pv_cutoff(odd_phi, eps, q) - v);
    CHECK(gap <= 5.0 * eps);
    CHECK(gap < prev_gap + 1e-14);
    prev_gap = gap;
  }

  // eta-regularized route: O(eta^2) gap for a cubic odd test function
  double C3 = 0.0;
  for (int i = 0; i <= 4096; ++i) {
    const double x = 12.0 * i / 4096.0;
    C3 = std::max(C3, (1.0 + std::pow(x, 6.0)) * std::fabs(x * x * x) *
                          std::exp(-x * x));
  }
  LineFunction cubic([](double x) { return cx{x * x * x * std::exp(-x * x), 0.0}; },
                     Envelope{1.0001 * C3, 6.0}, Smoothness::schwartz_like);
  cubic.exp_rate = 0.5;
  cubic.exp_scale = 4.0;
  const cx sub = sign_pv_transform(cubic, q);
  CHECK(close(sub, cx{0.0, std::sqrt(kPi)}, 1e-7));  // 2i Int xi^2 e^{-xi^2} over R
  const cx eta_route = sign_pv_eta(cubic, 1e-3, q);
  CHECK(std::abs(eta_route - sub) < 1e-4);
}

TEST_CASE("line convolution") {
  QuadSpec q = QuadSpec::with_tol(1e-9);
  // gaussian semigroup oracle: G_a * G_b(0) = sqrt(pi/(a+b))
  CHECK(close(convolve_line(gaussian_line(1.0), gaussian_line(1.0), 0.0, q),
              cx{std::sqrt(kPi / 2.0), 0.0}, 1e-8));
  CHECK(close(convolve_line(gaussian_line(1.0), gaussian_line(2.0), 0.0, q),
              cx{std::sqrt(kPi / 3.0), 0.0}, 1e-8));

  std::mt19937_64 rng(431);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int iter = 0; iter < 4; ++iter) {
    const double x = u(rng);
    const cx ab = convolve_line(gaussian_line(1.0), abel_line(1.0), x, q);
    const cx ba = convolve_line(abel_line(1.0), gaussian_line(1.0), x, q);
    CHECK(close(ab, ba, 2e-8));
  }

  // smoothing by a concentrating Poisson kernel converges at first order
  for (double eta : {0.2, 0.05}) {
    const cx smoothed = convolve_line(gaussian_line(1.0), poisson_line(eta), 0.0, q);
    CHECK(std::abs(smoothed - cx{1.0, 0.0}) <= 2.0 * eta);
  }

  CHECK_THROWS_AS(convolve_line(sign_line(), sign_line(), 0.0, q),
                  std::invalid_argument);
}

TEST_CASE("declared envelopes are enforced during sampling") {
  LineFunction lying([](double x) { return cx{std::exp(-x * x), 0.0}; },
                     Envelope{0.05, 8.0});
  QuadSpec q = QuadSpec::with_tol(1e-6);
  CHECK_THROWS_AS(fourier_transform(lying, 0.0, q), EnvelopeViolation);
}

TEST_CASE("operations are safe under concurrent callers") {
  QuadSpec q = QuadSpec::with_tol(1e-7);
  const LineFunction g = gaussian_line(1.0);
  std::vector<cx> results(8);
  std::vector<std::thread> workers;
  for (int t = 0; t < 8; ++t)
    workers.emplace_back([&, t] {
      if (t % 2 == 0)
        results[size_t(t)] = fourier_transform(g, 0.5 * t, q);
      else
        results[size_t(t)] = cx{plancherel_defect(g, q), 0.0};
    });
  for (auto& w : workers) w.join();
  for (int t = 0; t < 8; t += 2)
    CHECK(std::abs(results[size_t(t)] - gaussian_hat(1.0, 0.5 * t)) < 1e-6);
  for (int t = 1; t < 8; t += 2) CHECK(std::abs(results[size_t(t)]) < 1e-6);
}
