#include "harmonics/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace harmonics {

double Envelope::at(double x) const {
  if (order == 0.0) return bound;
  return bound / (1.0 + std::pow(std::fabs(x), order));
}

double Envelope::tail_mass(double radius) const {
  if (order <= 1.0) return std::numeric_limits<double>::infinity();
  const double r = std::max(radius, 1.0);
  // ∫_{|x|>R} C/(1+|x|^l) dx <= 2C R^{1-l}/(l-1)
  return 2.0 * bound * std::pow(r, 1.0 - order) / (order - 1.0);
}

void QuadSpec::validate() const {
  if (!(panel > 0.0) || !(cutoff > 0.0) || !(tol > 0.0))
    throw std::invalid_argument("QuadSpec: panel, cutoff and tol must be positive");
}

QuadSpec QuadSpec::with_tol(double tau) {
  QuadSpec q;
  q.tol = tau;
  return q;
}

namespace {

double spec_bound_at(const IntegrandSpec& s, double x) {
  double b = s.envelope.at(x);
  if (s.exp_rate) b = std::min(b, s.exp_scale * std::exp(-*s.exp_rate * std::fabs(x)));
  return b;
}

double spec_tail_mass(const IntegrandSpec& s, double radius) {
  double m = s.envelope.tail_mass(radius);
  if (s.exp_rate && *s.exp_rate > 0.0)
    m = std::min(m, 2.0 * s.exp_scale / *s.exp_rate * std::exp(-*s.exp_rate * radius));
  return m;
}

struct Simpson {
  const std::function<cx(double)>& f;
  int max_depth;
  long evals = 0;

  cx recurse(double a, double b, cx fa, cx fm, cx fb, cx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const cx flm = f(lm), frm = f(rm);
    evals += 2;
    const double h6 = (b - a) / 12.0;
    const cx left = h6 * (fa + 4.0 * flm + fm);
    const cx right = h6 * (fm + 4.0 * frm + fb);
    const cx delta = left + right - whole;
    if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
      return left + right + delta / 15.0;
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  cx panel(double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const cx fa = f(a), fm = f(m), fb = f(b);
    evals += 3;
    const cx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, tol, 0);
  }
};

}  // namespace

cx integrate_interval(const std::function<cx(double)>& f, double a, double b,
                      double tol, double seed_panel, int max_depth) {
  if (!(b > a)) return cx{0.0, 0.0};
  if (!(tol > 0.0) || !(seed_panel > 0.0))
    throw std::invalid_argument("integrate_interval: tol and seed_panel must be positive");
  const double width = b - a;
  long n = std::lround(std::ceil(width / seed_panel));
  n = std::clamp(n, 1L, 1L << 21);
  Simpson s{f, max_depth};
  cx total{0.0, 0.0};
  cx comp{0.0, 0.0};  // Kahan carry
  for (long i = 0; i < n; ++i) {
    const double x0 = a + width * double(i) / double(n);
    const double x1 = a + width * double(i + 1) / double(n);
    const cx v = s.panel(x0, x1, tol / double(n));
    const cx y = v - comp;
    const cx t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  return total;
}

double tail_radius(const IntegrandSpec& spec, double budget) {
  if (spec.support_radius) return *spec.support_radius;
  double r = 1.0;
  for (int i = 0; i < 2048; ++i) {
    if (spec_tail_mass(spec, r) <= budget) return r;
    r *= 1.5;
  }
  throw QuadratureError(
      "integrate_line: declared decay cannot meet the tail budget "
      "(need order > 1, bounded support, or an exponential factor)");
}

cx integrate_line(const std::function<cx(double)>& f, const QuadSpec& q,
                  const IntegrandSpec& spec) {
  q.validate();
  const double tail_budget = 0.5 * q.tol;
  const double quad_budget = 0.5 * q.tol;
  const double R = tail_radius(spec, tail_budget);

  // Block edges: dyadic shells plus feature neighbourhoods.
  std::vector<double> edges{-R, 0.0, R};
  for (double s = 1.0; s < R; s *= 2.0) {
    edges.push_back(s);
    edges.push_back(-s);
  }
  for (const Feature& ft : spec.features) {
    const double w = 8.0 * std::max(ft.scale, 1e-300);
    for (double e : {ft.center - w, ft.center, ft.center + w})
      if (e > -R && e < R) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double x, double y) { return std::fabs(x - y) < 1e-12; }),
              edges.end());

  const double tol_block = quad_budget / double(edges.size() - 1);
  cx total{0.0, 0.0};
  cx comp{0.0, 0.0};
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    const double width = b - a;
    const double inner = (a >= 0.0) ? a : (b <= 0.0 ? -b : 0.0);
    // Drop blocks whose declared mass fits in their share of the budget.
    if (width * spec_bound_at(spec, inner) <= tol_block) continue;

    double h = q.panel * std::max(1.0, inner / 8.0);
    if (spec.osc_freq > 0.0) h = std::min(h, 0.78 / spec.osc_freq);
    for (const Feature& ft : spec.features) {
      const double w = 8.0 * std::max(ft.scale, 1e-300);
      if (a < ft.center + w && b > ft.center - w) h = std::min(h, 0.5 * ft.scale);
    }
    h = std::max(h, width / double(1L << 20));
    const cx v = integrate_interval(f, a, b, tol_block, h);
    const cx y = v - comp;
    const cx t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  return total;
}

}  // namespace harmonics
