#include "verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "harmonics/almost_periodic.hpp"
#include "harmonics/circle.hpp"
#include "harmonics/expr.hpp"
#include "harmonics/io.hpp"
#include "harmonics/line.hpp"
#include "harmonics/measures.hpp"
#include "harmonics/metric.hpp"
#include "harmonics/sequences.hpp"
#include "harmonics/series.hpp"

namespace {

using namespace harmonics;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Battery {
  std::ostream& out;
  std::uint64_t seed;
  int failures = 0;

  void group(const char* name, const std::function<bool(std::mt19937_64&)>& body) {
    std::mt19937_64 rng(seed);
    bool ok = false;
    std::string note;
    try {
      ok = body(rng);
    } catch (const std::exception& e) {
      note = e.what();
      ok = false;
    }
    if (ok) {
      out << "PASS " << name << "\n";
    } else {
      ++failures;
      out << "FAIL " << name;
      if (!note.empty()) out << " (" << note << ")";
      out << "\n";
    }
  }
};

bool near(cx a, cx b, double tol) { return std::abs(a - b) <= tol; }

TrigPoly random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigPoly p(1);
  for (int l = -degree; l <= degree; ++l) p.set({l}, cx{u(rng), u(rng)});
  return p;
}

}  // namespace

int run_verify(std::uint64_t seed, std::ostream& out) {
  Battery b{out, seed};

  b.group("series/cauchy-products", [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const CoeffSeq ones = CoeffSeq::geometric(12);
    const CoeffSeq sq = cauchy_product(ones, ones);
    for (int n = 0; n <= 12; ++n)
      if (!near(sq.coeff(n), cx{double(n + 1), 0.0}, 1e-13)) return false;
    for (int iter = 0; iter < 20; ++iter) {
      CoeffSeq a(10), c(10);
      for (int n = 0; n <= 10; ++n) {
        a.set(n, cx{u(rng), u(rng)});
        c.set(n, cx{u(rng), u(rng)});
      }
      const CoeffSeq ac = cauchy_product(a, c);
      const CoeffSeq ca = cauchy_product(c, a);
      for (int n = 0; n <= 10; ++n)
        if (!near(ac.coeff(n), ca.coeff(n), 1e-13)) return false;
      if (ac.l1_norm() > a.l1_norm() * c.l1_norm() + 1e-12) return false;
    }
    return true;
  });

  b.group("series/evaluation-and-radius", [](std::mt19937_64&) {
    if (!near(eval_series(CoeffSeq::geometric(64), cx{0.5, 0.0}, 1e-12),
              cx{2.0, 0.0}, 1e-12))
      return false;
    if (std::fabs(radius_estimate(CoeffSeq::geometric(24)) - 1.0) > 0.1) return false;
    if (radius_estimate(CoeffSeq::exponential(40)) < 10.0) return false;
    const CoeffSeq de = differentiate(CoeffSeq::exponential(16));
    for (int n = 0; n <= 15; ++n)
      if (!near(de.coeff(n), CoeffSeq::exponential(16).coeff(n), 1e-16)) return false;
    return true;
  });

  b.group("series/exponential", [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    if (exp_value(cx{0.0, 0.0}) != cx{1.0, 0.0}) return false;
    if (!near(exp_value(cx{0.0, kTwoPi}), cx{1.0, 0.0}, 1e-10)) return false;
    for (int iter = 0; iter < 25; ++iter) {
      const cx z{u(rng), u(rng)}, w{u(rng), u(rng)};
      if (!near(exp_value(z + w), exp_value(z) * exp_value(w), 1e-10)) return false;
      if (std::fabs(std::abs(exp_value(cx{0.0, u(rng)})) - 1.0) > 1e-12) return false;
    }
    return true;
  });

  b.group("circle/orthonormality", [](std::mt19937_64&) {
    for (int k : {-15, 0, 9, 15}) {
      const CircleGrid g = CircleGrid::sample(1, 64, [k](std::span<const double> th) {
        return std::polar(1.0, k * th[0]);
      });
      for (int l : {-15, 0, 9, 15}) {
        const cx want = (l == k) ? cx{1.0, 0.0} : cx{0.0, 0.0};
        if (std::abs(fourier_coefficient(g, {l}) - want) > 1e-13) return false;
      }
    }
    return true;
  });

  b.group("circle/parseval", [](std::mt19937_64& rng) {
    const TrigPoly p = random_poly(rng, 10);
    const CircleGrid g = CircleGrid::sample(p, 64);
    if (std::fabs(parseval_defect(g, 10)) > 1e-12) return false;
    for (int N : {0, 4, 8})
      if (parseval_defect(g, N) < -1e-10) return false;
    return true;
  });

  b.group("circle/convolution-theorem", [](std::mt19937_64& rng) {
    const TrigPoly pf = random_poly(rng, 8);
    const TrigPoly pg = random_poly(rng, 8);
    const CircleGrid f = CircleGrid::sample(pf, 64);
    const CircleGrid g = CircleGrid::sample(pg, 64);
    const CircleGrid fg = convolve_circle(f, g);
    for (int l = -8; l <= 8; ++l) {
      const cx want = fourier_coefficient(f, {l}) * fourier_coefficient(g, {l});
      if (std::abs(fourier_coefficient(fg, {l}) - want) > 1e-11) return false;
    }
    return true;
  });

  b.group("circle/poisson-kernel", [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    const cx z = std::polar(0.62, u(rng));
    double mass = 0.0;
    for (int k = 0; k < 256; ++k) {
      const cx w = std::polar(1.0, kTwoPi * k / 256.0);
      const double val = poisson_kernel_disk(z, w);
      if (val <= 0.0) return false;
      mass += kTwoPi / 256.0 * val;
    }
    return std::fabs(mass - 1.0) < 1e-10;
  });

  b.group("circle/boundary-recovery", [](std::mt19937_64&) {
    const CircleGrid s = CircleGrid::sample(1, 64, [](std::span<const double> th) {
      return cx{std::exp(std::cos(th[0])), 0.0};
    });
    double prev = 1e9;
    for (double r : {0.9, 0.99, 0.999}) {
      double sup = 0.0;
      for (int k = 0; k < 64; ++k) {
        const double t = kTwoPi * k / 64.0;
        sup = std::max(sup, std::abs(abel_extend(s, DiskPoint({std::polar(r, t)})) -
                                     cx{std::exp(std::cos(t)), 0.0}));
      }
      if (sup >= prev) return false;
      prev = sup;
    }
    return prev < 1e-2;
  });

  b.group("circle/max-principle", [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int iter = 0; iter < 10; ++iter) {
      TrigPoly p(1);
      p.set({0}, cx{u(rng), 0.0});
      for (int l = 1; l <= 6; ++l) {
        const cx c{u(rng), u(rng)};
        p.set({l}, c);
        p.set({-l}, std::conj(c));
      }
      const CircleGrid g = CircleGrid::sample(p, 64);
      const MaxPrincipleReport rep = max_principle_check(g, 0.95, 10, 40);
      if (rep.interior_max > rep.boundary_max + 1e-9) return false;
    }
    return true;
  });

  b.group("line/kernel-masses", [](std::mt19937_64&) {
    QuadSpec q = QuadSpec::with_tol(1e-9);
    for (double eta : {0.5, 2.0}) {
      LineFunction hat([eta](double xi) { return cx{abel_kernel_hat(eta, xi), 0.0}; },
                       Envelope{2.0 * std::max(eta, 1.0 / eta), 2.0});
      if (!near(integrate_line_function(hat, q), cx{kTwoPi, 0.0}, 1e-8)) return false;
      if (!near(integrate_line_function(abel_line(eta), q), cx{2.0 / eta, 0.0}, 1e-8))
        return false;
    }
    return near(integrate_line_function(poisson_line(0.7), q), cx{1.0, 0.0}, 1e-9);
  });

  b.group("line/gaussian-transform", [](std::mt19937_64&) {
    QuadSpec q = QuadSpec::with_tol(1e-9);
    for (double a : {0.25, 1.0, kPi}) {
      const LineFunction g = gaussian_line(a);
      for (double xi : {0.0, 1.0, 5.0}) {
        if (!near(fourier_transform(g, xi, q), gaussian_hat(a, xi), 1e-8))
          return false;
      }
    }
    return true;
  });

  b.group("line/plancherel", [](std::mt19937_64&) {
    return plancherel_defect(gaussian_line(1.0), QuadSpec::with_tol(1e-8)) < 1e-7;
  });

  b.group("line/inversion-routes", [](std::mt19937_64&) {
    QuadSpec q = QuadSpec::with_tol(1e-6);
    const LineFunction g = gaussian_line(1.0);
    const cx a = abel_invert(g, 0.5, 0.05, q);
    const cx bb = abel_invert_freq(g, 0.5, 0.05, q);
    return near(a, bb, 2e-6);
  });

  b.group("line/pv-sign-transform", [](std::mt19937_64&) {
    QuadSpec q = QuadSpec::with_tol(1e-9);
    if (std::abs(sign_pv_transform(gaussian_line(1.0), q)) > 1e-9) return false;
    LineFunction odd_phi([](double x) { return cx{x * std::exp(-x * x), 0.0}; },
                         Envelope{2.6, 6.0}, Smoothness::schwartz_like);
    odd_phi.exp_rate = 0.5;
    odd_phi.exp_scale = 2.0;
    return near(sign_pv_transform(odd_phi, q), cx{0.0, 2.0 * std::sqrt(kPi)}, 1e-6);
  });

  b.group("sequences/holder-bessel", [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto fam = [&](int span) {
      IndexedFamily a(1);
      for (int i = -span; i <= span; ++i) a.set({i}, cx{u(rng), u(rng)});
      return a;
    };
    const OrthonormalSet set({IndexedFamily::unit(1, {0}), IndexedFamily::unit(1, {1})});
    for (int iter = 0; iter < 100; ++iter) {
      const IndexedFamily a = fam(5), c = fam(5);
      const HolderReport h = holder_check(a, c, 2.0, 2.0, 1.0);
      if (h.lhs > h.rhs + 1e-10) return false;
      const double p = 0.5;
      const IndexedFamily s = add(a, c);
      if (std::pow(lp_norm(s, p), p) >
          std::pow(lp_norm(a, p), p) + std::pow(lp_norm(c, p), p) + 1e-12)
        return false;
      if (lp_norm(a, 3.0) > lp_norm(a, 1.5) * (1.0 + 1e-12)) return false;
      if (bessel_defect(a, set) < -1e-10) return false;
    }
    return true;
  });

  b.group("almost-periodic/means", [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> freq(0.1, 10.0);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    for (int iter = 0; iter < 50; ++iter) {
      TrigSum f;
      f.add_term(0.0, cx{amp(rng), amp(rng)});
      for (int i = 0; i < 5; ++i) f.add_term(freq(rng), cx{amp(rng), amp(rng)});
      const double L = 1e3 + 1e4 * (amp(rng) + 1.0);
      if (std::abs(invariant_mean_averaged(f, L) - invariant_mean(f)) >
          invariant_mean_error_bound(f, L) + 1e-15)
        return false;
      const double energy = ap_inner_product(f, f).real();
      if (double(spectrum(f, 0.25).size()) > energy / 0.0625 + 1e-12) return false;
    }
    TrigSum e2;
    e2.add_term(2.0, cx{1.0, 0.0});
    return invariant_mean(e2) == cx{0.0, 0.0};
  });

  b.group("measures/convolution", [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    std::uniform_real_distribution<double> w(-1.0, 1.0);
    MeasureT mu(1), nu(1);
    for (int i = 0; i < 3; ++i) {
      mu.atoms.push_back(MeasureT::Atom{{u(rng)}, cx{w(rng), w(rng)}});
      nu.atoms.push_back(MeasureT::Atom{{u(rng)}, cx{w(rng), w(rng)}});
    }
    const MeasureT conv = convolve_measures(mu, nu);
    for (int l = -8; l <= 8; ++l) {
      const cx want =
          fourier_coefficient_measure(mu, {l}) * fourier_coefficient_measure(nu, {l});
      if (std::abs(fourier_coefficient_measure(conv, {l}) - want) > 1e-12)
        return false;
    }
    if (measure_norm(conv) > measure_norm(mu) * measure_norm(nu) + 1e-10)
      return false;
    const MeasureT id = MeasureT::dirac({0.0});
    const MeasureT same = convolve_measures(id, mu);
    for (size_t i = 0; i < mu.atoms.size(); ++i)
      if (same.atoms[i].weight != mu.atoms[i].weight ||
          same.atoms[i].theta != mu.atoms[i].theta)
        return false;
    return true;
  });

  b.group("metric/regularization", [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int iter = 0; iter < 20; ++iter) {
      std::vector<std::vector<double>> pts(12);
      for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
      const FiniteMetricSpace m = FiniteMetricSpace::from_points(pts);
      std::vector<double> f(12);
      for (double& v : f) v = 2.0 * u(rng);
      const double j = 1.0 + iter * 0.25;
      const auto fj = lipschitz_regularize(f, m, j);
      double fmin = f[0];
      for (double v : f) fmin = std::min(fmin, v);
      for (size_t i = 0; i < f.size(); ++i)
        if (fj[i] > f[i] + 1e-12 || fj[i] < fmin - 1e-12) return false;
      if (!check_lipschitz(fj, m, j, 1.0).holds) return false;
    }
    return true;
  });

  b.group("metric/ultrametric", [](std::mt19937_64& rng) {
    std::uniform_int_distribution<int> sym(0, 1);
    std::uniform_int_distribution<size_t> len(1, 12);
    const auto word = [&] {
      std::vector<int> v(len(rng));
      for (int& s : v) s = sym(rng);
      return SymbolSequence(v);
    };
    for (int iter = 0; iter < 300; ++iter) {
      const SymbolSequence a = word(), bseq = word(), c = word();
      const double rho = 0.5;
      const double dab = ultrametric_distance(a, bseq, rho);
      const double dbc = ultrametric_distance(bseq, c, rho);
      if (ultrametric_distance(a, c, rho) > std::max(dab, dbc)) return false;
      const double d2 = ultrametric_distance(a, bseq, rho * rho);
      if (std::fabs(d2 - dab * dab) > 1e-12) return false;
      if (!snowflake_check(dab, dbc, 0.5)) return false;
    }
    return true;
  });

  b.group("parser/fixpoint-and-fuzz", [](std::mt19937_64& rng) {
    for (const char* text : {"exp(-x^2)", "1/(1+x^2)", "2*x + sin(x)", "-x^3 - -2"}) {
      const ExprPtr first = parse(text);
      if (!tree_equal(*first, *parse(print(*first)))) return false;
    }
    std::uniform_int_distribution<int> len(0, 48);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int iter = 0; iter < 20000; ++iter) {
      std::string s(size_t(len(rng)), '\0');
      for (char& ch : s) ch = char(byte(rng));
      try {
        parse(s);
      } catch (const ParseError&) {
      }
    }
    return true;
  });

  b.group("io/round-trips", [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CoeffSeq a(6);
    for (int n = 0; n <= 6; ++n) a.set(n, cx{u(rng), u(rng)});
    const CoeffSeq a2 = io::coeffseq_from_json(io::to_json(a));
    for (int n = 0; n <= 6; ++n)
      if (a2.coeff(n) != a.coeff(n)) return false;
    TrigSum f;
    f.add_term(0.0, cx{u(rng), 0.0});
    f.add_term(1.5, cx{u(rng), u(rng)});
    const TrigSum f2 = io::trigsum_from_json(io::to_json(f));
    if (f2.terms().size() != f.terms().size()) return false;
    for (size_t i = 0; i < f.terms().size(); ++i)
      if (f2.terms()[i].amp != f.terms()[i].amp) return false;
    return true;
  });

  out << (b.failures == 0 ? "VERIFY OK" : "VERIFY FAILED") << " (" << b.failures
      << " failing groups)\n";
  return b.failures;
}
