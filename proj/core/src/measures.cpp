#include "harmonics/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace harmonics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int pow2_at_least(int n) {
  int m = 16;
  while (m < n) m *= 2;
  return m;
}

/// Grid resolution that resolves a band-limited density exactly.
int grid_for(const std::optional<TrigPoly>& density, int requested) {
  int need = 16;
  if (density) need = std::max(need, 2 * density->max_degree() + 2);
  return pow2_at_least(std::max(requested, need));
}

template <typename F>
void for_each_grid_point(int dim, int m, F&& body) {
  std::vector<int> k(dim, 0);
  std::vector<double> theta(dim, 0.0);
  for (;;) {
    for (int j = 0; j < dim; ++j) theta[j] = kTwoPi * k[j] / double(m);
    body(theta);
    int axis = dim - 1;
    while (axis >= 0) {
      if (++k[axis] < m) break;
      k[axis] = 0;
      --axis;
    }
    if (axis < 0) return;
  }
}

}  // namespace

MeasureT MeasureT::dirac(std::vector<double> theta, cx weight) {
  MeasureT mu(int(theta.size()));
  mu.atoms.push_back(Atom{std::move(theta), weight});
  return mu;
}

MeasureT MeasureT::with_density(TrigPoly f) {
  MeasureT mu(f.dim());
  mu.density = std::move(f);
  return mu;
}

MeasureR MeasureR::dirac(double x, cx weight) {
  MeasureR mu;
  mu.atoms.push_back(Atom{x, weight});
  return mu;
}

MeasureR MeasureR::with_density(LineFunction f) {
  if (f.envelope().order < 2.0 && !f.support_radius && !f.exp_rate)
    throw std::invalid_argument("MeasureR: density must be integrable");
  MeasureR mu;
  mu.density = std::move(f);
  return mu;
}

cx apply(const MeasureT& mu, const std::function<cx(std::span<const double>)>& phi,
         int grid_m) {
  cx s{0.0, 0.0};
  for (const auto& a : mu.atoms) s += a.weight * phi(a.theta);
  if (mu.density) {
    const int m = grid_for(mu.density, grid_m);
    cx acc{0.0, 0.0};
    size_t count = 0;
    for_each_grid_point(mu.dim, m, [&](std::span<const double> theta) {
      acc += mu.density->eval(theta) * phi(theta);
      ++count;
    });
    s += acc / double(count);
  }
  return s;
}

cx apply(const MeasureR& mu, const std::function<cx(double)>& phi,
         const QuadSpec& q) {
  cx s{0.0, 0.0};
  for (const auto& a : mu.atoms) s += a.weight * phi(a.x);
  if (mu.density) {
    const LineFunction& d = *mu.density;
    IntegrandSpec spec = d.integrand_spec(0.0);
    // phi is only assumed bounded; its magnitude scales the declared decay.
    double sup_phi = 1.0;
    for (int i = -64; i <= 64; ++i)
      sup_phi = std::max(sup_phi, std::abs(phi(double(i) / 4.0)));
    spec.envelope.bound *= sup_phi;
    spec.exp_scale *= sup_phi;
    s += integrate_line([&](double x) { return d(x) * phi(x); }, q, spec);
  }
  return s;
}

double measure_norm(const MeasureT& mu, int grid_m) {
  double s = 0.0;
  for (const auto& a : mu.atoms) s += std::abs(a.weight);
  if (mu.density) {
    const int m = grid_for(mu.density, grid_m);
    double acc = 0.0;
    size_t count = 0;
    for_each_grid_point(mu.dim, m, [&](std::span<const double> theta) {
      acc += std::abs(mu.density->eval(theta));
      ++count;
    });
    s += acc / double(count);
  }
  return s;
}

double measure_norm(const MeasureR& mu, const QuadSpec& q) {
  double s = 0.0;
  for (const auto& a : mu.atoms) s += std::abs(a.weight);
  if (mu.density) {
    const LineFunction& d = *mu.density;
    IntegrandSpec spec = d.integrand_spec(0.0);
    s += integrate_line([&](double x) { return cx{std::abs(d(x)), 0.0}; }, q, spec)
             .real();
  }
  return s;
}

cx fourier_coefficient_measure(const MeasureT& mu, const std::vector<int>& alpha) {
  if (int(alpha.size()) != mu.dim)
    throw std::invalid_argument("fourier_coefficient_measure: index dimension mismatch");
  cx s{0.0, 0.0};
  for (const auto& a : mu.atoms) {
    double phase = 0.0;
    for (int j = 0; j < mu.dim; ++j) phase += alpha[j] * a.theta[j];
    s += a.weight * std::polar(1.0, -phase);
  }
  if (mu.density) s += mu.density->coeff(alpha);
  return s;
}

cx fourier_transform_measure(const MeasureR& mu, double xi, const QuadSpec& q) {
  cx s{0.0, 0.0};
  for (const auto& a : mu.atoms) s += a.weight * std::polar(1.0, -xi * a.x);
  if (mu.density) s += fourier_transform(*mu.density, xi, q);
  return s;
}

ProductMeasureT::ProductMeasureT(MeasureT mu, MeasureT nu)
    : mu_(std::move(mu)), nu_(std::move(nu)) {}

cx ProductMeasureT::operator()(
    const std::function<cx(std::span<const double>, std::span<const double>)>& f,
    int grid_m) const {
  const auto outer = [&](std::span<const double> z) {
    std::vector<double> zc(z.begin(), z.end());
    return apply(
        nu_, [&f, &zc](std::span<const double> w) { return f(zc, w); }, grid_m);
  };
  return apply(mu_, outer, grid_m);
}

double ProductMeasureT::norm(int grid_m) const {
  return measure_norm(mu_, grid_m) * measure_norm(nu_, grid_m);
}

ProductMeasureR::ProductMeasureR(MeasureR mu, MeasureR nu)
    : mu_(std::move(mu)), nu_(std::move(nu)) {}

cx ProductMeasureR::operator()(const std::function<cx(double, double)>& f,
                               const QuadSpec& q) const {
  const auto outer = [&](double x) {
    return apply(nu_, [&f, x](double y) { return f(x, y); }, q);
  };
  return apply(mu_, outer, q);
}

double ProductMeasureR::norm(const QuadSpec& q) const {
  return measure_norm(mu_, q) * measure_norm(nu_, q);
}

ProductMeasureT product_measure(const MeasureT& mu, const MeasureT& nu) {
  if (mu.dim != nu.dim)
    throw std::invalid_argument("product_measure: mixed dimensions");
  return ProductMeasureT(mu, nu);
}

ProductMeasureR product_measure(const MeasureR& mu, const MeasureR& nu) {
  return ProductMeasureR(mu, nu);
}

MeasureT convolve_measures(const MeasureT& mu, const MeasureT& nu, const QuadSpec&) {
  if (mu.dim != nu.dim)
    throw std::invalid_argument("convolve_measures: mixed dimensions");
  MeasureT out(mu.dim);
  for (const auto& a : mu.atoms)
    for (const auto& b : nu.atoms) {
      MeasureT::Atom c;
      c.theta.resize(size_t(mu.dim));
      for (int j = 0; j < mu.dim; ++j) c.theta[size_t(j)] = a.theta[size_t(j)] + b.theta[size_t(j)];
      c.weight = a.weight * b.weight;
      out.atoms.push_back(std::move(c));
    }
  TrigPoly dens(mu.dim);
  bool have = false;
  if (mu.density && nu.density) {
    for (const auto& [alpha, v] : mu.density->coeffs()) {
      const cx w = nu.density->coeff(alpha);
      if (w != cx{0.0, 0.0}) dens.set(alpha, dens.coeff(alpha) + v * w);
    }
    have = true;
  }
  if (nu.density)
    for (const auto& a : mu.atoms) {
      dens = add(dens, scale(a.weight, translate(*nu.density, a.theta)));
      have = true;
    }
  if (mu.density)
    for (const auto& b : nu.atoms) {
      dens = add(dens, scale(b.weight, translate(*mu.density, b.theta)));
      have = true;
    }
  if (have) out.density = std::move(dens);
  return out;
}

namespace {

/// Envelope of a sum of shifted copies of d, shift magnitudes <= s.
Envelope shifted_envelope(const Envelope& e, double s, double total_weight) {
  const double grow = std::pow(2.0, e.order) * (1.0 + std::pow(s, e.order));
  return Envelope{e.bound * grow * total_weight, e.order};
}

}  // namespace

MeasureR convolve_measures(const MeasureR& mu, const MeasureR& nu, const QuadSpec& q) {
  MeasureR out;
  for (const auto& a : mu.atoms)
    for (const auto& b : nu.atoms)
      out.atoms.push_back(MeasureR::Atom{a.x + b.x, a.weight * b.weight});

  std::vector<LineFunction> parts;
  const auto translated_sum = [&](const std::vector<MeasureR::Atom>& atoms,
                                  const LineFunction& d) {
    double wsum = 0.0, smax = 0.0;
    for (const auto& a : atoms) {
      wsum += std::abs(a.weight);
      smax = std::max(smax, std::fabs(a.x));
    }
    const Envelope env = shifted_envelope(d.envelope(), smax, std::max(wsum, 1e-300));
    LineFunction h(
        [atoms, d](double x) {
          cx s{0.0, 0.0};
          for (const auto& a : atoms) s += a.weight * d(x - a.x);
          return s;
        },
        env, d.tag());
    if (d.support_radius) h.support_radius = *d.support_radius + smax;
    parts.push_back(std::move(h));
  };

  if (mu.density && nu.density) {
    const LineFunction f = *mu.density;
    const LineFunction g = *nu.density;
    const double order = std::min(f.envelope().order, g.envelope().order);
    const double bf = 2.0 * f.envelope().bound + f.envelope().tail_mass(1.0);
    const double bg = 2.0 * g.envelope().bound + g.envelope().tail_mass(1.0);
    const Envelope env{
        (g.envelope().bound * bf + f.envelope().bound * bg) * std::pow(2.0, order),
        order};
    QuadSpec iq = q;
    iq.tol = std::min(q.tol, 1e-10);
    LineFunction h([f, g, iq](double x) { return convolve_line(f, g, x, iq); }, env,
                   Smoothness::continuous);
    if (f.support_radius && g.support_radius)
      h.support_radius = *f.support_radius + *g.support_radius;
    parts.push_back(std::move(h));
  }
  if (nu.density && !mu.atoms.empty()) translated_sum(mu.atoms, *nu.density);
  if (mu.density && !nu.atoms.empty()) translated_sum(nu.atoms, *mu.density);

  if (!parts.empty()) {
    if (parts.size() == 1) {
      out.density = parts.front();
    } else {
      Envelope env{0.0, parts.front().envelope().order};
      for (const auto& p : parts) {
        env.order = std::min(env.order, p.envelope().order);
      }
      for (const auto& p : parts) env.bound += p.envelope().bound;
      LineFunction h(
          [parts](double x) {
            cx s{0.0, 0.0};
            for (const auto& p : parts) s += p(x);
            return s;
          },
          env, Smoothness::continuous);
      bool all_support = true;
      double srad = 0.0;
      for (const auto& p : parts) {
        if (!p.support_radius) all_support = false;
        else srad = std::max(srad, *p.support_radius);
      }
      if (all_support) h.support_radius = srad;
      out.density = std::move(h);
    }
  }
  return out;
}

std::function<cx(std::span<const double>)> convolve_measure_function(
    const MeasureT& mu, const std::function<cx(std::span<const double>)>& h,
    int grid_m) {
  const MeasureT m = mu;
  return [m, h, grid_m](std::span<const double> z) {
    std::vector<double> shifted(z.size());
    const auto hz = [&](std::span<const double> w) {
      for (size_t j = 0; j < z.size(); ++j) shifted[j] = z[j] - w[j];
      return h(shifted);
    };
    return apply(m, hz, grid_m);
  };
}

LineFunction convolve_measure_function(const MeasureR& mu, const LineFunction& h,
                                       const QuadSpec& q) {
  const MeasureR m = mu;
  const double norm = measure_norm(mu, q);
  const Envelope env{norm * h.envelope().bound * 1.0001 + 1e-300, 0.0};
  return LineFunction(
      [m, h, q](double x) {
        const auto hx = [&h, x](double u) { return h(x - u); };
        return apply(m, hx, q);
      },
      env, Smoothness::continuous);
}

cx abel_recover(const MeasureT& mu,
                const std::function<cx(std::span<const double>)>& f,
                std::span<const double> r, int grid_m) {
  if (int(r.size()) != mu.dim)
    throw std::invalid_argument("abel_recover: radius vector dimension mismatch");
  for (double rj : r)
    if (!(rj > 0.0) || !(rj < 1.0))
      throw std::invalid_argument("abel_recover: radii must lie in (0,1)");

  // mu applied to (2pi)^n P_n(r∘zeta, ·): closed form on atoms, Abel-weighted
  // coefficient sum on the density.
  const auto smoothed = [&](std::span<const double> zeta) {
    cx s{0.0, 0.0};
    for (const auto& a : mu.atoms) {
      double kernel = 1.0;
      for (int j = 0; j < mu.dim; ++j) {
        const cx zj = std::polar(r[j], zeta[j]);
        const cx wj = std::polar(1.0, a.theta[j]);
        kernel *= (1.0 - r[j] * r[j]) / std::norm(zj - wj);
      }
      s += a.weight * kernel;
    }
    if (mu.density)
      for (const auto& [alpha, v] : mu.density->coeffs()) {
        double damp = 1.0;
        double phase = 0.0;
        for (int j = 0; j < mu.dim; ++j) {
          damp *= std::pow(r[j], std::abs(alpha[j]));
          phase += alpha[j] * zeta[j];
        }
        s += v * damp * std::polar(1.0, phase);
      }
    return s;
  };

  // The kernel concentrates at scale 1-r; the grid must resolve it.
  double rmax = 0.0;
  for (double rj : r) rmax = std::max(rmax, rj);
  const int need = int(std::ceil(16.0 / std::max(1e-6, 1.0 - rmax)));
  const int cap = mu.dim == 1 ? 65536 : 1024;
  const int m = grid_for(mu.density, std::min(std::max(grid_m, need), cap));
  cx acc{0.0, 0.0};
  size_t count = 0;
  for_each_grid_point(mu.dim, m, [&](std::span<const double> zeta) {
    acc += smoothed(zeta) * f(zeta);
    ++count;
  });
  return acc / double(count);
}

cx abel_recover(const MeasureR& mu, const LineFunction& phi, double eta,
                const QuadSpec& q) {
  if (!(eta > 0.0)) throw std::invalid_argument("abel_recover: eta must be positive");
  QuadSpec inner = q;
  inner.tol = std::min(q.tol, 1e-9);
  const MeasureR m = mu;
  const double norm = measure_norm(mu, q);

  const auto smoothed = [&m, eta, &inner](double x) {
    cx s{0.0, 0.0};
    for (const auto& a : m.atoms) s += a.weight * poisson_kernel_line(eta, x - a.x);
    if (m.density) s += abel_invert(*m.density, x, eta, inner);
    return s;
  };

  IntegrandSpec spec = phi.integrand_spec(0.0);
  spec.envelope.bound *= norm / (std::numbers::pi * eta);
  spec.exp_scale *= norm / (std::numbers::pi * eta);
  for (const auto& a : mu.atoms) spec.features.push_back(Feature{a.x, eta});
  return integrate_line([&](double x) { return smoothed(x) * phi(x); }, q, spec);
}

}  // namespace harmonics
