#include "harmonics/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace harmonics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

/// Iterates over all grid multi-indices k in [0, m)^n.
template <typename F>
void for_each_index(int dim, int m, F&& body) {
  std::vector<int> k(dim, 0);
  for (;;) {
    body(k);
    int axis = dim - 1;
    while (axis >= 0) {
      if (++k[axis] < m) break;
      k[axis] = 0;
      --axis;
    }
    if (axis < 0) return;
  }
}

/// Iterates over all alpha in the box [-N, N]^n.
template <typename F>
void for_each_box(int dim, int N, F&& body) {
  std::vector<int> a(dim, -N);
  for (;;) {
    body(a);
    int axis = dim - 1;
    while (axis >= 0) {
      if (++a[axis] <= N) break;
      a[axis] = -N;
      --axis;
    }
    if (axis < 0) return;
  }
}

cx polyharmonic_power(std::span<const cx> z, const std::vector<int>& alpha) {
  cx p{1.0, 0.0};
  for (size_t j = 0; j < z.size(); ++j) {
    const int a = alpha[j];
    if (a >= 0)
      p *= std::pow(z[j], a);
    else
      p *= std::pow(std::conj(z[j]), -a);
  }
  return p;
}

}  // namespace

TrigPoly::TrigPoly(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("TrigPoly: dimension must be >= 1");
}

cx TrigPoly::coeff(const std::vector<int>& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? cx{0.0, 0.0} : it->second;
}

void TrigPoly::set(const std::vector<int>& alpha, cx value) {
  if (int(alpha.size()) != dim_)
    throw std::invalid_argument("TrigPoly::set: index dimension mismatch");
  if (value == cx{0.0, 0.0})
    coeffs_.erase(alpha);
  else
    coeffs_[alpha] = value;
}

cx TrigPoly::eval(std::span<const double> theta) const {
  if (int(theta.size()) != dim_)
    throw std::invalid_argument("TrigPoly::eval: point dimension mismatch");
  cx s{0.0, 0.0};
  for (const auto& [alpha, v] : coeffs_) {
    double phase = 0.0;
    for (int j = 0; j < dim_; ++j) phase += alpha[j] * theta[j];
    s += v * std::polar(1.0, phase);
  }
  return s;
}

int TrigPoly::max_degree() const {
  int d = 0;
  for (const auto& [alpha, v] : coeffs_)
    for (int a : alpha) d = std::max(d, std::abs(a));
  return d;
}

double TrigPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& [alpha, v] : coeffs_) s += std::abs(v);
  return s;
}

TrigPoly add(const TrigPoly& a, const TrigPoly& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("add: dimension mismatch");
  TrigPoly c = a;
  for (const auto& [alpha, v] : b.coeffs()) c.set(alpha, c.coeff(alpha) + v);
  return c;
}

TrigPoly scale(cx s, const TrigPoly& a) {
  TrigPoly c(a.dim());
  for (const auto& [alpha, v] : a.coeffs()) c.set(alpha, s * v);
  return c;
}

TrigPoly translate(const TrigPoly& a, std::span<const double> theta0) {
  if (int(theta0.size()) != a.dim())
    throw std::invalid_argument("translate: dimension mismatch");
  TrigPoly c(a.dim());
  for (const auto& [alpha, v] : a.coeffs()) {
    double phase = 0.0;
    for (int j = 0; j < a.dim(); ++j) phase += alpha[j] * theta0[j];
    c.set(alpha, v * std::polar(1.0, -phase));
  }
  return c;
}

CircleGrid::CircleGrid(int dim, int m, std::vector<cx> values)
    : dim_(dim), m_(m), values_(std::move(values)) {
  if (dim < 1) throw std::invalid_argument("CircleGrid: dimension must be >= 1");
  if (m < 16 || !power_of_two(m))
    throw std::invalid_argument("CircleGrid: samples per axis must be a power of two >= 16");
  size_t want = 1;
  for (int j = 0; j < dim; ++j) want *= size_t(m);
  if (values_.size() != want)
    throw std::invalid_argument("CircleGrid: value array length must be m^n");
}

cx& CircleGrid::value(std::span<const int> k) {
  size_t idx = 0;
  for (int j = 0; j < dim_; ++j) {
    int kj = k[j] % m_;
    if (kj < 0) kj += m_;
    idx = idx * size_t(m_) + size_t(kj);
  }
  return values_[idx];
}

cx CircleGrid::value(std::span<const int> k) const {
  return const_cast<CircleGrid*>(this)->value(k);
}

CircleGrid CircleGrid::sample(int dim, int m,
                              const std::function<cx(std::span<const double>)>& f) {
  size_t total = 1;
  for (int j = 0; j < dim; ++j) total *= size_t(m);
  std::vector<cx> vals(total);
  std::vector<double> theta(dim);
  size_t pos = 0;
  for_each_index(dim, m, [&](const std::vector<int>& k) {
    for (int j = 0; j < dim; ++j) theta[j] = kTwoPi * k[j] / double(m);
    vals[pos++] = f(theta);
  });
  return CircleGrid(dim, m, std::move(vals));
}

CircleGrid CircleGrid::sample(const TrigPoly& p, int m) {
  if (2 * p.max_degree() >= m)
    throw std::invalid_argument("CircleGrid::sample: polynomial degree must be < m/2");
  return sample(p.dim(), m,
                [&](std::span<const double> th) { return p.eval(th); });
}

cx fourier_coefficient(const CircleGrid& f, const std::vector<int>& alpha) {
  if (int(alpha.size()) != f.dim())
    throw std::invalid_argument("fourier_coefficient: index dimension mismatch");
  const int m = f.samples_per_axis();
  for (int a : alpha)
    if (2 * std::abs(a) >= m)
      throw std::invalid_argument("fourier_coefficient: |alpha_j| >= m/2 is aliased");
  // Per-axis twiddle tables e^{-2pi i k a / m}.
  std::vector<std::vector<cx>> tw(f.dim(), std::vector<cx>(m));
  for (int j = 0; j < f.dim(); ++j)
    for (int k = 0; k < m; ++k)
      tw[j][k] = std::polar(1.0, -kTwoPi * double(k) * double(alpha[j]) / double(m));
  cx sum{0.0, 0.0};
  size_t pos = 0;
  const auto& vals = f.values();
  for_each_index(f.dim(), m, [&](const std::vector<int>& k) {
    cx w{1.0, 0.0};
    for (int j = 0; j < f.dim(); ++j) w *= tw[j][k[j]];
    sum += vals[pos++] * w;
  });
  return sum / double(vals.size());
}

TrigPoly partial_sum(const CircleGrid& f, int degree) {
  const int m = f.samples_per_axis();
  if (2 * degree >= m)
    throw std::invalid_argument("partial_sum: degree must be < m/2");
  TrigPoly p(f.dim());
  for_each_box(f.dim(), degree, [&](const std::vector<int>& alpha) {
    const cx a = fourier_coefficient(f, alpha);
    if (std::abs(a) > 0.0) p.set(alpha, a);
  });
  return p;
}

double poisson_kernel_disk(cx z, cx w) {
  if (!(std::abs(z) < 1.0))
    throw std::invalid_argument("poisson_kernel_disk: needs |z| < 1");
  if (std::fabs(std::abs(w) - 1.0) > 1e-9)
    throw std::invalid_argument("poisson_kernel_disk: needs |w| = 1");
  return (1.0 - std::norm(z)) / (kTwoPi * std::norm(z - w));
}

DiskPoint::DiskPoint(std::vector<cx> z) : z_(std::move(z)) {
  if (z_.empty()) throw std::invalid_argument("DiskPoint: dimension must be >= 1");
  for (const cx& c : z_)
    if (!(std::abs(c) < 1.0))
      throw std::invalid_argument("DiskPoint: needs |z_j| < 1 on every axis");
}

double poisson_kernel_polydisk(const DiskPoint& z, std::span<const cx> w) {
  if (int(w.size()) != z.dim())
    throw std::invalid_argument("poisson_kernel_polydisk: dimension mismatch");
  double p = 1.0;
  for (int j = 0; j < z.dim(); ++j) p *= poisson_kernel_disk(z.coords()[j], w[j]);
  return p;
}

cx abel_extend(const CircleGrid& f, const DiskPoint& z) {
  if (z.dim() != f.dim())
    throw std::invalid_argument("abel_extend: dimension mismatch");
  const int m = f.samples_per_axis();
  // Grid data is band-limited, so the coefficient series is a finite sum that
  // stays exact arbitrarily close to the boundary (the damping factors only
  // shrink).  Kernel quadrature would need ~1/(1-|z|) samples instead.
  const int N = m / 2 - 1;
  cx sum{0.0, 0.0};
  for_each_box(f.dim(), N, [&](const std::vector<int>& alpha) {
    const cx a = fourier_coefficient(f, alpha);
    if (std::abs(a) > 0.0) sum += a * polyharmonic_power(z.coords(), alpha);
  });
  return sum;
}

double parseval_defect(const CircleGrid& f, int degree) {
  const int m = f.samples_per_axis();
  if (2 * degree >= m)
    throw std::invalid_argument("parseval_defect: degree must be < m/2");
  double mass = 0.0;
  for (const cx& v : f.values()) mass += std::norm(v);
  mass /= double(f.values().size());
  double captured = 0.0;
  for_each_box(f.dim(), degree, [&](const std::vector<int>& alpha) {
    captured += std::norm(fourier_coefficient(f, alpha));
  });
  return mass - captured;
}

CircleGrid convolve_circle(const CircleGrid& f, const CircleGrid& g) {
  if (f.dim() != g.dim() || f.samples_per_axis() != g.samples_per_axis())
    throw std::invalid_argument("convolve_circle: grid mismatch");
  const int m = f.samples_per_axis();
  std::vector<cx> out(f.values().size(), cx{0.0, 0.0});
  CircleGrid h(f.dim(), m, std::move(out));
  std::vector<int> diff(f.dim());
  for_each_index(f.dim(), m, [&](const std::vector<int>& k) {
    cx sum{0.0, 0.0};
    size_t pos = 0;
    for_each_index(f.dim(), m, [&](const std::vector<int>& j) {
      for (int t = 0; t < f.dim(); ++t) diff[t] = k[t] - j[t];
      sum += f.values()[pos++] * g.value(diff);
    });
    h.value(k) = sum / double(f.values().size());
  });
  return h;
}

MaxPrincipleReport max_principle_check(const CircleGrid& f, double r,
                                       int radial_steps, int angular_steps) {
  if (f.dim() != 1)
    throw std::invalid_argument("max_principle_check: defined for n = 1");
  if (!(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument("max_principle_check: needs 0 < r < 1");
  double scale = 0.0;
  for (const cx& v : f.values()) scale = std::max(scale, std::abs(v));
  for (const cx& v : f.values())
    if (std::fabs(v.imag()) > 1e-12 * std::max(1.0, scale))
      throw std::invalid_argument("max_principle_check: data must be real-valued");

  const int m = f.samples_per_axis();
  const int N = m / 2 - 1;
  std::vector<cx> coef(2 * N + 1);
  for (int l = -N; l <= N; ++l) coef[size_t(l + N)] = fourier_coefficient(f, {l});

  const auto interior = [&](double rho, double theta) {
    cx s{0.0, 0.0};
    for (int l = -N; l <= N; ++l)
      s += coef[size_t(l + N)] * std::pow(rho, std::abs(l)) *
           std::polar(1.0, l * theta);
    return s.real();
  };

  MaxPrincipleReport rep;
  rep.interior_max = interior(0.0, 0.0);
  for (int i = 1; i <= radial_steps; ++i) {
    const double rho = r * double(i) / double(radial_steps);
    for (int j = 0; j < angular_steps; ++j) {
      const double theta = kTwoPi * double(j) / double(angular_steps);
      rep.interior_max = std::max(rep.interior_max, interior(rho, theta));
    }
  }

  // Boundary supremum of the band-limited interpolant: dense scan plus a
  // ternary polish around the best sample.
  const auto boundary = [&](double theta) {
    cx s{0.0, 0.0};
    for (int l = -N; l <= N; ++l)
      s += coef[size_t(l + N)] * std::polar(1.0, l * theta);
    return s.real();
  };
  const int dense = std::max(8 * m, 1024);
  double best_theta = 0.0;
  rep.boundary_max = boundary(0.0);
  for (int j = 1; j < dense; ++j) {
    const double theta = kTwoPi * double(j) / double(dense);
    const double v = boundary(theta);
    if (v > rep.boundary_max) {
      rep.boundary_max = v;
      best_theta = theta;
    }
  }
  double lo = best_theta - kTwoPi / double(dense);
  double hi = best_theta + kTwoPi / double(dense);
  for (int it = 0; it < 100; ++it) {
    const double t1 = lo + (hi - lo) / 3.0;
    const double t2 = hi - (hi - lo) / 3.0;
    if (boundary(t1) < boundary(t2))
      lo = t1;
    else
      hi = t2;
  }
  rep.boundary_max = std::max(rep.boundary_max, boundary(0.5 * (lo + hi)));
  return rep;
}

}  // namespace harmonics
