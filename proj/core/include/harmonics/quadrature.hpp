#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace harmonics {

using cx = std::complex<double>;

/// Declared decay |f(x)| <= C / (1 + |x|^l).
struct Envelope {
  double bound = 1.0;  // C
  double order = 0.0;  // l

  double at(double x) const;
  /// Upper bound on the mass of the envelope outside [-R, R]; requires order > 1.
  double tail_mass(double radius) const;
};

/// Resolution and absolute error budget for integrals over the real line.
struct QuadSpec {
  double panel = 0.125;  // base panel width near the origin
  double cutoff = 16.0;  // nominal core radius
  double tol = 1e-9;     // absolute tolerance

  void validate() const;
  static QuadSpec with_tol(double tau);
};

/// A point where the integrand concentrates at a known scale (kernel peak).
struct Feature {
  double center = 0.0;
  double scale = 1.0;
};

/// Everything the line integrator needs to know about an integrand.
struct IntegrandSpec {
  Envelope envelope;
  double osc_freq = 0.0;                 // dominant phase speed, seeds panel width
  std::vector<Feature> features;
  std::optional<double> support_radius;  // integrand is exactly 0 beyond this
  // optional extra decay factor: |f| also <= exp_scale * exp(-exp_rate*|x|)
  std::optional<double> exp_rate;
  double exp_scale = 1.0;
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive Simpson over a bounded interval, seeded with panels of width
/// at most seed_panel.
cx integrate_interval(const std::function<cx(double)>& f, double a, double b,
                      double tol, double seed_panel, int max_depth = 30);

/// Integral of f over the whole line.  The tail beyond a radius derived from
/// the declared decay is dropped (its mass is below tol/2); the rest is covered
/// by dyadic blocks, each integrated by adaptive Simpson.
cx integrate_line(const std::function<cx(double)>& f, const QuadSpec& q,
                  const IntegrandSpec& spec);

/// Radius R such that the declared decay contributes at most budget beyond R.
double tail_radius(const IntegrandSpec& spec, double budget);

}  // namespace harmonics
