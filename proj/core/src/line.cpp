#include "harmonics/line.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace harmonics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Deterministic scan for sup_{0<=x<=hi} g(x), with a small safety margin.
double sup_scan(const std::function<double(double)>& g, double hi, int n = 8192) {
  double m = 0.0;
  for (int i = 0; i <= n; ++i) m = std::max(m, g(hi * double(i) / double(n)));
  return m * 1.0001;
}

Envelope product_envelope(const Envelope& a, const Envelope& b) {
  // C1/(1+|x|^p) * C2/(1+|x|^q) <= C1 C2/(1+|x|^{p+q})
  return Envelope{a.bound * b.bound, a.order + b.order};
}

/// Envelope of |x|^k f(x) given the envelope of f (order must exceed k).
Envelope power_weighted(const Envelope& e, int k) {
  return Envelope{2.0 * e.bound, std::max(e.order - double(k), 0.0)};
}

struct TransformCache {
  const LineFunction& f;
  QuadSpec q;
  mutable std::map<double, cx> memo;
  mutable std::mutex guard;

  cx at(double xi) const {
    {
      std::lock_guard<std::mutex> lock(guard);
      auto it = memo.find(xi);
      if (it != memo.end()) return it->second;
    }
    const cx v = f.transform_closed ? f.transform_closed(xi)
                                    : fourier_transform(f, xi, q);
    std::lock_guard<std::mutex> lock(guard);
    memo.emplace(xi, v);
    return v;
  }
};

/// Upper bound on Int |f| from the declared decay.
double l1_bound(const LineFunction& f) {
  const Envelope& e = f.envelope();
  if (f.support_radius) return 2.0 * e.bound * (*f.support_radius + 1.0);
  if (e.order > 1.0) return 2.0 * e.bound + e.tail_mass(1.0);
  if (f.exp_rate && *f.exp_rate > 0.0)
    return std::min(2.0 * f.exp_scale / *f.exp_rate,
                    2.0 * e.bound / *f.exp_rate + 2.0 * f.exp_scale / *f.exp_rate);
  throw std::invalid_argument("operation needs an integrable envelope (order >= 2)");
}

/// Dyadic one-sided integral of a decaying integrand over [start, infinity).
cx integrate_halfline(const std::function<cx(double)>& f, double start,
                      const IntegrandSpec& spec, double tol) {
  const double R = std::max(tail_radius(spec, 0.5 * tol), start);
  std::vector<double> edges{start};
  for (double s = std::max(start, 1.0); s < R; s *= 2.0)
    if (s > start) edges.push_back(s);
  edges.push_back(R);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const double tol_block = 0.5 * tol / double(edges.size());
  cx total{0.0, 0.0};
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    double bound = spec.envelope.at(a);
    if (spec.exp_rate)
      bound = std::min(bound, spec.exp_scale * std::exp(-*spec.exp_rate * a));
    if ((b - a) * bound <= tol_block) continue;
    double h = 0.125 * std::max(1.0, a / 8.0);
    if (spec.osc_freq > 0.0) h = std::min(h, 0.78 / spec.osc_freq);
    for (const Feature& ft : spec.features)
      if (a < ft.center + 8.0 * ft.scale && b > ft.center - 8.0 * ft.scale)
        h = std::min(h, 0.5 * ft.scale);
    total += integrate_interval(f, a, b, tol_block, h);
  }
  return total;
}

}  // namespace

EnvelopeViolation::EnvelopeViolation(double x, double v, double allowed)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "envelope violated at x = " << x << ": |f(x)| = " << v
           << " exceeds declared bound " << allowed;
        return os.str();
      }()),
      witness(x),
      value(v),
      allowed(allowed) {}

LineFunction::LineFunction(std::function<cx(double)> eval, Envelope envelope,
                           Smoothness tag)
    : eval_(std::move(eval)), env_(envelope), tag_(tag) {
  if (!eval_) throw std::invalid_argument("LineFunction: null evaluation handle");
  if (env_.bound < 0.0 || env_.order < 0.0)
    throw std::invalid_argument("LineFunction: envelope needs C >= 0, l >= 0");
}

cx LineFunction::operator()(double x) const {
  const cx v = eval_(x);
  const double allowed = env_.at(x) * (1.0 + 1e-9) + 1e-300;
  if (std::abs(v) > allowed) throw EnvelopeViolation(x, std::abs(v), allowed);
  return v;
}

IntegrandSpec LineFunction::integrand_spec(double osc_freq) const {
  IntegrandSpec s;
  s.envelope = env_;
  s.osc_freq = osc_freq;
  s.support_radius = support_radius;
  s.exp_rate = exp_rate;
  s.exp_scale = exp_scale;
  return s;
}

LineFunction gaussian_line(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("gaussian_line: a must be positive");
  const double hi = 6.0 + 4.0 / std::sqrt(a);
  const double C = sup_scan(
      [a](double x) { return (1.0 + std::pow(x, 8.0)) * std::exp(-a * x * x); }, hi);
  LineFunction f([a](double x) { return cx{std::exp(-a * x * x), 0.0}; },
                 Envelope{C, 8.0}, Smoothness::schwartz_like);
  f.exp_rate = a;
  f.exp_scale = std::exp(std::min(a, 300.0));
  f.transform_closed = [a](double xi) { return gaussian_hat(a, xi); };
  const double s = std::sqrt(kPi / a);
  f.transform_envelope = Envelope{
      sup_scan([a, s](double x) {
        return (1.0 + std::pow(x, 8.0)) * s * std::exp(-x * x / (4.0 * a));
      }, 6.0 + 8.0 * std::sqrt(a)),
      8.0};
  f.transform_exp_rate = 1.0 / (4.0 * a);
  f.transform_exp_scale = s * std::exp(std::min(1.0 / (4.0 * a), 300.0));
  f.derivative1 = [a](double x) { return cx{-2.0 * a * x * std::exp(-a * x * x), 0.0}; };
  f.derivative2 = [a](double x) {
    return cx{(4.0 * a * a * x * x - 2.0 * a) * std::exp(-a * x * x), 0.0};
  };
  return f;
}

LineFunction abel_line(double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("abel_line: eta must be positive");
  const double hi = 4.0 + 8.0 / eta;
  const double C = sup_scan(
      [eta](double x) { return (1.0 + std::pow(x, 4.0)) * std::exp(-eta * x); }, hi);
  LineFunction f([eta](double x) { return cx{std::exp(-eta * std::fabs(x)), 0.0}; },
                 Envelope{C, 4.0}, Smoothness::continuous);
  f.exp_rate = eta;
  f.exp_scale = 1.0;
  f.transform_closed = [eta](double xi) { return cx{abel_kernel_hat(eta, xi), 0.0}; };
  f.transform_envelope = Envelope{2.0 * std::max(eta, 1.0 / eta), 2.0};
  return f;
}

LineFunction poisson_line(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("poisson_line: t must be positive");
  LineFunction f([t](double x) { return cx{poisson_kernel_line(t, x), 0.0}; },
                 Envelope{std::max(t, 1.0 / t) / kPi, 2.0}, Smoothness::continuous);
  f.transform_closed = [t](double xi) {
    return cx{std::exp(-t * std::fabs(xi)), 0.0};
  };
  f.transform_envelope = Envelope{sup_scan(
      [t](double u) { return (1.0 + u * u) * std::exp(-t * u); }, 4.0 + 8.0 / t), 2.0};
  f.transform_exp_rate = t;
  f.transform_exp_scale = 1.0;
  return f;
}

LineFunction indicator_line(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("indicator_line: needs a < b");
  LineFunction f(
      [a, b](double x) {
        return cx{(x >= a && x <= b) ? 1.0 : 0.0, 0.0};
      },
      Envelope{1.0, 0.0}, Smoothness::piecewise);
  f.support_radius = std::max(std::fabs(a), std::fabs(b));
  f.transform_closed = [a, b](double xi) { return indicator_hat(a, b, xi); };
  f.transform_envelope = Envelope{b - a + 2.0, 1.0};
  return f;
}

LineFunction sign_line() {
  return LineFunction(
      [](double x) {
        return cx{x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0), 0.0};
      },
      Envelope{1.0, 0.0}, Smoothness::piecewise);
}

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<cx> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size())
    throw std::invalid_argument("StepFunction: need k+1 breakpoints for k values");
  for (size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]))
      throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing");
}

cx StepFunction::eval(double x) const {
  if (x < breaks_.front() || x >= breaks_.back()) return cx{0.0, 0.0};
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  const size_t idx = size_t(it - breaks_.begin()) - 1;
  return values_[std::min(idx, values_.size() - 1)];
}

double StepFunction::l1_norm() const {
  double s = 0.0;
  for (size_t i = 0; i < values_.size(); ++i)
    s += std::abs(values_[i]) * (breaks_[i + 1] - breaks_[i]);
  return s;
}

cx StepFunction::transform(double xi) const {
  cx s{0.0, 0.0};
  for (size_t i = 0; i < values_.size(); ++i)
    s += values_[i] * indicator_hat(breaks_[i], breaks_[i + 1], xi);
  return s;
}

LineFunction StepFunction::as_line_function() const {
  double m = 0.0;
  for (const cx& v : values_) m = std::max(m, std::abs(v));
  StepFunction copy = *this;
  LineFunction f([copy](double x) { return copy.eval(x); }, Envelope{m, 0.0},
                 Smoothness::piecewise);
  f.support_radius = std::max(std::fabs(breaks_.front()), std::fabs(breaks_.back()));
  return f;
}

cx fourier_transform(const LineFunction& f, double xi, const QuadSpec& q) {
  IntegrandSpec spec = f.integrand_spec(std::fabs(xi));
  return integrate_line(
      [&f, xi](double x) { return f(x) * std::polar(1.0, -xi * x); }, q, spec);
}

cx integrate_line_function(const LineFunction& f, const QuadSpec& q) {
  IntegrandSpec spec = f.integrand_spec(0.0);
  return integrate_line([&f](double x) { return f(x); }, q, spec);
}

double abel_kernel(double eta, double x) {
  if (!(eta > 0.0)) throw std::invalid_argument("abel_kernel: eta must be positive");
  return std::exp(-eta * std::fabs(x));
}

double abel_kernel_hat(double eta, double xi) {
  if (!(eta > 0.0)) throw std::invalid_argument("abel_kernel_hat: eta must be positive");
  return 2.0 * eta / (xi * xi + eta * eta);
}

double poisson_kernel_line(double t, double y) {
  if (!(t > 0.0)) throw std::invalid_argument("poisson_kernel_line: t must be positive");
  return t / (kPi * (y * y + t * t));
}

cx abel_invert(const LineFunction& f, double x, double eta, const QuadSpec& q) {
  if (!(eta > 0.0)) throw std::invalid_argument("abel_invert: eta must be positive");
  IntegrandSpec spec = f.integrand_spec(0.0);
  const double sup_kernel = 1.0 / (kPi * eta);
  spec.envelope.bound *= sup_kernel;
  spec.exp_scale *= sup_kernel;
  spec.features.push_back(Feature{x, eta});
  spec.features.push_back(Feature{x, 1.0});
  return integrate_line(
      [&f, x, eta](double y) { return f(y) * poisson_kernel_line(eta, x - y); }, q,
      spec);
}

cx abel_invert_freq(const LineFunction& f, double x, double eta, const QuadSpec& q) {
  if (!(eta > 0.0)) throw std::invalid_argument("abel_invert_freq: eta must be positive");
  QuadSpec inner = q;
  inner.tol = std::max(q.tol * eta, 1e-12);
  TransformCache hat{f, inner};

  IntegrandSpec spec;
  const double b1 = l1_bound(f);
  if (f.transform_envelope) {
    spec.envelope = *f.transform_envelope;
  } else {
    spec.envelope = Envelope{b1, 0.0};
  }
  spec.envelope.bound /= kTwoPi;
  spec.exp_rate = eta + f.transform_exp_rate.value_or(0.0);
  spec.exp_scale =
      (f.transform_exp_rate ? f.transform_exp_scale : b1) / kTwoPi;
  spec.osc_freq = std::fabs(x);
  spec.features.push_back(Feature{0.0, std::min(1.0, 1.0 / eta)});
  return integrate_line(
      [&hat, x, eta](double xi) {
        return hat.at(xi) * std::exp(-eta * std::fabs(xi)) *
               std::polar(1.0, xi * x) / kTwoPi;
      },
      q, spec);
}

cx gaussian_hat(double a, double xi) {
  if (!(a > 0.0)) throw std::invalid_argument("gaussian_hat: a must be positive");
  return cx{std::sqrt(kPi / a) * std::exp(-xi * xi / (4.0 * a)), 0.0};
}

cx indicator_hat(double a, double b, double xi) {
  if (!(a < b)) throw std::invalid_argument("indicator_hat: needs a < b");
  const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
  if (std::fabs(xi) * scale < 1e-4) {
    // series of Int_a^b e^{-i xi x} dx around xi = 0
    const double d1 = b - a;
    const double d2 = (b * b - a * a) / 2.0;
    const double d3 = (b * b * b - a * a * a) / 6.0;
    const double d4 = (b * b * b * b - a * a * a * a) / 24.0;
    return cx{d1 - xi * xi * d3, -xi * d2 + xi * xi * xi * d4};
  }
  const cx i{0.0, 1.0};
  return (i / xi) * (std::polar(1.0, -xi * b) - std::polar(1.0, -xi * a));
}

StepFunction step_approximate(const LineFunction& f, double eps, const QuadSpec& q) {
  if (!(eps > 0.0)) throw std::invalid_argument("step_approximate: eps must be positive");
  IntegrandSpec spec = f.integrand_spec(0.0);
  const double R = tail_radius(spec, 0.25 * eps);

  for (int n = 64; n <= (1 << 20); n *= 2) {
    std::vector<double> breaks(size_t(n) + 1);
    std::vector<cx> vals(static_cast<size_t>(n));
    for (int i = 0; i <= n; ++i) breaks[size_t(i)] = -R + 2.0 * R * double(i) / double(n);
    for (int i = 0; i < n; ++i)
      vals[size_t(i)] = f(0.5 * (breaks[size_t(i)] + breaks[size_t(i) + 1]));
    StepFunction s(breaks, vals);
    // L1 error: per-piece quadrature plus the dropped tail mass.
    double err = spec.envelope.tail_mass(R);
    if (f.support_radius && R >= *f.support_radius) err = 0.0;
    for (int i = 0; i < n && err < eps; ++i) {
      const cx v = vals[size_t(i)];
      err += std::abs(integrate_interval(
          [&f, v](double x) { return cx{std::abs(f(x) - v), 0.0}; },
          breaks[size_t(i)], breaks[size_t(i) + 1], eps / double(8 * n),
          (breaks[size_t(i) + 1] - breaks[size_t(i)]) / 4.0));
    }
    if (err < 0.9 * eps) return s;
  }
  throw QuadratureError("step_approximate: could not reach the requested L1 error");
}

namespace {

/// Int g over the line where only a qualitative decay is known: symmetric
/// dyadic sweep that stops once blocks stay below budget (Schwartz-like use).
cx integrate_expanding(const std::function<cx(double)>& g, double tol_block,
                       double seed_panel, double max_radius) {
  cx total{0.0, 0.0};
  for (double sgn : {1.0, -1.0}) {
    double a = 0.0, b = 1.0;
    int quiet = 0;
    while (a < max_radius && quiet < 2) {
      const double lo = sgn > 0 ? a : -b;
      const double hi = sgn > 0 ? b : -a;
      const cx v = integrate_interval(g, lo, hi, tol_block,
                                      std::min(seed_panel, (hi - lo) / 8.0));
      total += v;
      quiet = (std::abs(v) < tol_block) ? quiet + 1 : 0;
      a = b;
      b *= 2.0;
    }
  }
  return total;
}

}  // namespace

namespace {

cx pairing_defect_impl(const LineFunction& phi1, const LineFunction& phi2,
                       const QuadSpec& q, bool even_spectrum) {
  if (phi1.envelope().order < 3.0 || phi2.envelope().order < 3.0)
    throw std::invalid_argument("plancherel: needs envelope order >= 3");
  QuadSpec inner = q;
  inner.tol = q.tol * 0.1;
  // The identity is between the numeric transform and the space side, so the
  // registered closed forms are deliberately not used here.
  LineFunction f1 = phi1, f2 = phi2;
  f1.transform_closed = nullptr;
  f2.transform_closed = nullptr;
  TransformCache h1{f1, inner}, h2{f2, inner};

  const auto spectral = [&](double xi) { return h1.at(xi) * std::conj(h2.at(xi)); };
  cx freq;
  if (even_spectrum) {
    // real input: |phihat(-xi)| = |phihat(xi)|, one half-line suffices
    freq = 2.0 * integrate_expanding(
                     [&](double xi) { return xi < 0.0 ? cx{0.0, 0.0} : spectral(xi); },
                     q.tol / 4.0, 0.25, 4096.0);
  } else {
    freq = integrate_expanding(spectral, q.tol / 8.0, 0.25, 4096.0);
  }

  IntegrandSpec spec = phi1.integrand_spec(0.0);
  spec.envelope = product_envelope(phi1.envelope(), phi2.envelope());
  spec.exp_scale = phi1.exp_scale * phi2.envelope().bound;
  QuadSpec side = q;
  side.tol = q.tol * 0.1;
  const cx space = integrate_line(
      [&](double x) { return phi1(x) * std::conj(phi2(x)); }, side, spec);

  return freq - kTwoPi * space;
}

}  // namespace

cx plancherel_pairing_defect(const LineFunction& phi1, const LineFunction& phi2,
                             const QuadSpec& q) {
  return pairing_defect_impl(phi1, phi2, q, false);
}

double plancherel_defect(const LineFunction& phi, const QuadSpec& q) {
  bool real_valued = true;
  for (int i = -16; i <= 16; ++i)
    if (phi(double(i) * 0.45).imag() != 0.0) real_valued = false;
  return std::abs(pairing_defect_impl(phi, phi, q, real_valued));
}

double schwartz_relation_defect(const LineFunction& f, int order, double xi,
                                const QuadSpec& q) {
  if (order < 1 || order > 2)
    throw std::invalid_argument("schwartz_relation_defect: order must be 1 or 2");
  if (f.tag() != Smoothness::schwartz_like)
    throw std::invalid_argument("schwartz_relation_defect: needs a schwartz-like input");
  QuadSpec inner = q;
  inner.tol = std::min(q.tol, 1e-12);
  LineFunction fn = f;
  fn.transform_closed = nullptr;  // the identity is about the numeric transform
  TransformCache hat{fn, inner};

  const double h = 1e-3;
  // d^order fhat / dxi^order by 5-point central differences.
  cx dhat;
  if (order == 1) {
    dhat = (-hat.at(xi + 2.0 * h) + 8.0 * hat.at(xi + h) - 8.0 * hat.at(xi - h) +
            hat.at(xi - 2.0 * h)) /
           (12.0 * h);
  } else {
    dhat = (-hat.at(xi + 2.0 * h) + 16.0 * hat.at(xi + h) - 30.0 * hat.at(xi) +
            16.0 * hat.at(xi - h) - hat.at(xi - 2.0 * h)) /
           (12.0 * h * h);
  }

  // F[x^order f](xi)
  IntegrandSpec moment_spec = f.integrand_spec(std::fabs(xi));
  moment_spec.envelope = power_weighted(f.envelope(), order);
  if (f.exp_rate) {
    moment_spec.exp_rate = 0.5 * *f.exp_rate;
    const double r = *f.exp_rate;
    moment_spec.exp_scale =
        f.exp_scale * std::pow(2.0 * order / (std::numbers::e * r), double(order));
  }
  const cx moment = integrate_line(
      [&f, order, xi](double x) {
        return std::pow(x, order) * f(x) * std::polar(1.0, -xi * x);
      },
      inner, moment_spec);
  const cx mi{0.0, -1.0};  // (-i)^order
  const cx lhs_gap = dhat - std::pow(mi, order) * moment;

  // F[f^(order)](xi)
  std::function<cx(double)> deriv;
  if (order == 1 && f.derivative1) deriv = f.derivative1;
  if (order == 2 && f.derivative2) deriv = f.derivative2;
  IntegrandSpec dspec = f.integrand_spec(std::fabs(xi));
  if (!deriv) {
    const double hd = 1e-3;
    const LineFunction base = f;
    if (order == 1)
      deriv = [base, hd](double x) {
        return (-base(x + 2.0 * hd) + 8.0 * base(x + hd) - 8.0 * base(x - hd) +
                base(x - 2.0 * hd)) /
               (12.0 * hd);
      };
    else
      deriv = [base, hd](double x) {
        return (-base(x + 2.0 * hd) + 16.0 * base(x + hd) - 30.0 * base(x) +
                16.0 * base(x - hd) - base(x - 2.0 * hd)) /
               (12.0 * hd * hd);
      };
    dspec.envelope.bound *= 6.0 / std::pow(1e-3, double(order));
    dspec.exp_scale *= 6.0 / std::pow(1e-3, double(order));
  } else {
    const double ord = f.envelope().order;
    dspec.envelope = Envelope{
        sup_scan(
            [&deriv, ord](double x) {
              return (1.0 + std::pow(x, ord)) * std::abs(deriv(x));
            },
            12.0, 2048),
        ord};
    dspec.exp_rate.reset();
  }
  const cx dtrans = integrate_line(
      [&deriv, xi](double x) { return deriv(x) * std::polar(1.0, -xi * x); }, inner,
      dspec);
  // with the e^{-i xi x} kernel, F[f'] = i xi fhat, so xi^l fhat = (-i)^l F[f^(l)]
  const cx rhs_gap = std::pow(xi, order) * hat.at(xi) - std::pow(mi, order) * dtrans;

  return std::max(std::abs(lhs_gap), std::abs(rhs_gap));
}

cx summability_invert(const LineFunction& f, const LineFunction& Phi, double eta,
                      double x, const QuadSpec& q) {
  if (!(eta > 0.0))
    throw std::invalid_argument("summability_invert: eta must be positive");
  if (std::abs(Phi(0.0) - cx{1.0, 0.0}) > 1e-12)
    throw std::invalid_argument("summability_invert: Phi(0) must equal 1");
  QuadSpec inner = q;
  inner.tol = std::max(kPi * eta * q.tol / std::max(l1_bound(f), 1.0), 1e-12);
  TransformCache phi{Phi, inner};
  const double mass_phi = l1_bound(Phi);  // sup |phihat| <= Int |Phi|

  IntegrandSpec spec = f.integrand_spec(0.0);
  const double sup_kernel = mass_phi / (kTwoPi * eta);
  spec.envelope.bound *= sup_kernel;
  spec.exp_scale *= sup_kernel;
  spec.features.push_back(Feature{x, eta});
  spec.features.push_back(Feature{x, 1.0});
  return integrate_line(
      [&](double y) {
        return f(y) * phi.at((y - x) / eta) / (kTwoPi * eta);
      },
      q, spec);
}

cx summability_invert_freq(const LineFunction& f, const LineFunction& Phi,
                           double eta, double x, const QuadSpec& q) {
  if (!(eta > 0.0))
    throw std::invalid_argument("summability_invert_freq: eta must be positive");
  if (std::abs(Phi(0.0) - cx{1.0, 0.0}) > 1e-12)
    throw std::invalid_argument("summability_invert_freq: Phi(0) must equal 1");
  QuadSpec inner = q;
  inner.tol = std::max(q.tol * 1e-2, 1e-12);
  TransformCache hat{f, inner};
  const double b1 = l1_bound(f);

  IntegrandSpec spec;
  if (f.transform_envelope)
    spec.envelope = *f.transform_envelope;
  else
    spec.envelope = Envelope{b1, 0.0};
  // decay of Phi(eta xi) in xi
  const Envelope pe = Phi.envelope();
  if (pe.order > 0.0 && eta <= 1.0) {
    spec.envelope = product_envelope(
        spec.envelope, Envelope{pe.bound / std::pow(eta, pe.order), pe.order});
  }
  spec.envelope.bound /= kTwoPi;
  if (Phi.exp_rate) {
    spec.exp_rate = eta * *Phi.exp_rate;
    spec.exp_scale = b1 * Phi.exp_scale / kTwoPi;
  }
  spec.osc_freq = std::fabs(x);
  return integrate_line(
      [&](double xi) {
        return hat.at(xi) * Phi(eta * xi) * std::polar(1.0, xi * x) / kTwoPi;
      },
      q, spec);
}

cx generalized_transform(const LineFunction& f, const LineFunction& phi,
                         const QuadSpec& q) {
  if (phi.envelope().order < 2.0 && !phi.support_radius && !phi.exp_rate)
    throw std::invalid_argument("generalized_transform: phi must be integrable");
  if (!phi.transform_closed && !phi.transform_envelope)
    throw std::invalid_argument(
        "generalized_transform: phi must carry a transform envelope");
  QuadSpec inner = q;
  inner.tol = q.tol * 1e-2;
  TransformCache phihat{phi, inner};

  IntegrandSpec spec;
  spec.envelope = product_envelope(
      phi.transform_envelope.value_or(Envelope{l1_bound(phi), 0.0}), f.envelope());
  if (phi.transform_exp_rate) {
    spec.exp_rate = *phi.transform_exp_rate;
    spec.exp_scale = phi.transform_exp_scale * f.envelope().bound;
  }
  return integrate_line([&](double x) { return f(x) * phihat.at(x); }, q, spec);
}

namespace {

/// (phi(xi) - phi(-xi)) evaluated with the removable point handled.
std::function<cx(double)> odd_difference(const LineFunction& phi) {
  return [&phi](double xi) {
    const double t = std::max(std::fabs(xi), 1e-7);
    return phi(t) - phi(-t);
  };
}

}  // namespace

cx sign_pv_transform(const LineFunction& phi, const QuadSpec& q) {
  auto odd = odd_difference(phi);
  const cx head = integrate_interval(
      [&odd](double xi) { return odd(xi) / std::max(xi, 1e-7); }, 0.0, 1.0,
      q.tol / 8.0, 0.0625);

  IntegrandSpec spec;
  spec.envelope = Envelope{4.0 * phi.envelope().bound, phi.envelope().order + 1.0};
  if (phi.exp_rate) {
    spec.exp_rate = phi.exp_rate;
    spec.exp_scale = 2.0 * phi.exp_scale;
  }
  const cx tail = integrate_halfline(
      [&odd](double xi) { return odd(xi) / xi; }, 1.0, spec, q.tol / 4.0);
  return cx{0.0, 2.0} * (head + tail);
}

cx sign_pv_cutoff(const LineFunction& phi, double eps, const QuadSpec& q) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("sign_pv_cutoff: needs 0 < eps < 1");
  auto odd = odd_difference(phi);
  const cx head = integrate_interval(
      [&odd](double xi) { return odd(xi) / xi; }, eps, 1.0, q.tol / 8.0, 0.0625);
  IntegrandSpec spec;
  spec.envelope = Envelope{4.0 * phi.envelope().bound, phi.envelope().order + 1.0};
  if (phi.exp_rate) {
    spec.exp_rate = phi.exp_rate;
    spec.exp_scale = 2.0 * phi.exp_scale;
  }
  const cx tail = integrate_halfline(
      [&odd](double xi) { return odd(xi) / xi; }, 1.0, spec, q.tol / 4.0);
  return cx{0.0, 2.0} * (head + tail);
}

cx sign_pv_eta(const LineFunction& phi, double eta, const QuadSpec& q) {
  if (!(eta > 0.0)) throw std::invalid_argument("sign_pv_eta: eta must be positive");
  auto odd = odd_difference(phi);
  const auto g = [&odd, eta](double xi) {
    return xi * odd(xi) / (eta * eta + xi * xi);
  };
  const cx head =
      integrate_interval(g, 0.0, 1.0, q.tol / 8.0, std::min(0.0625, 0.5 * eta));
  IntegrandSpec spec;
  spec.envelope = Envelope{4.0 * phi.envelope().bound, phi.envelope().order + 1.0};
  if (phi.exp_rate) {
    spec.exp_rate = phi.exp_rate;
    spec.exp_scale = 2.0 * phi.exp_scale;
  }
  const cx tail = integrate_halfline(g, 1.0, spec, q.tol / 4.0);
  return cx{0.0, 2.0} * (head + tail);
}

cx convolve_line(const LineFunction& f, const LineFunction& g, double x,
                 const QuadSpec& q) {
  const auto integrable = [](const LineFunction& u) {
    return u.envelope().order >= 2.0 || u.support_radius.has_value() ||
           (u.exp_rate && *u.exp_rate > 0.0);
  };
  // Int f(y) g(x-y) dy = Int g(u) f(x-u) du, so integrate against the
  // integrable factor.
  const LineFunction* a = &f;
  const LineFunction* b = &g;
  if (!integrable(*a)) std::swap(a, b);
  if (!integrable(*a))
    throw std::invalid_argument("convolve_line: neither factor is integrable");

  IntegrandSpec spec = a->integrand_spec(0.0);
  spec.envelope.bound *= b->envelope().bound;
  spec.exp_scale *= b->envelope().bound;
  spec.features.push_back(Feature{0.0, 1.0});
  spec.features.push_back(Feature{x, 1.0});
  const LineFunction& fa = *a;
  const LineFunction& fb = *b;
  return integrate_line(
      [&fa, &fb, x](double y) { return fa(y) * fb(x - y); }, q, spec);
}

double first_moment(const LineFunction& f, const QuadSpec& q) {
  IntegrandSpec spec = f.integrand_spec(0.0);
  spec.envelope = power_weighted(f.envelope(), 1);
  if (f.exp_rate) {
    spec.exp_rate = 0.5 * *f.exp_rate;
    spec.exp_scale = f.exp_scale * 2.0 / (std::numbers::e * *f.exp_rate);
  }
  const cx v = integrate_line(
      [&f](double x) { return cx{std::fabs(x) * std::abs(f(x)), 0.0}; }, q, spec);
  return v.real();
}

}  // namespace harmonics
