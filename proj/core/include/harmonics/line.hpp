#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "harmonics/quadrature.hpp"

namespace harmonics {

enum class Smoothness { continuous, piecewise, schwartz_like };

struct EnvelopeViolation : std::runtime_error {
  EnvelopeViolation(double x, double value, double allowed);
  double witness;
  double value;
  double allowed;
};

/// Evaluation handle on R with a declared integrability envelope
/// |f(x)| <= C/(1+|x|^l).  Every sample is checked against the envelope.
class LineFunction {
 public:
  LineFunction(std::function<cx(double)> eval, Envelope envelope,
               Smoothness tag = Smoothness::continuous);

  cx operator()(double x) const;

  const Envelope& envelope() const { return env_; }
  Smoothness tag() const { return tag_; }

  /// Exact support radius, when the function vanishes beyond it.
  std::optional<double> support_radius;
  /// Optional sharper decay: |f(x)| <= exp_scale * exp(-exp_rate |x|).
  std::optional<double> exp_rate;
  double exp_scale = 1.0;

  /// Registered closed forms (built-in catalog); null when absent.
  std::function<cx(double)> transform_closed;
  std::optional<Envelope> transform_envelope;
  std::optional<double> transform_exp_rate;
  double transform_exp_scale = 1.0;
  std::function<cx(double)> derivative1;
  std::function<cx(double)> derivative2;

  IntegrandSpec integrand_spec(double osc_freq = 0.0) const;

 private:
  std::function<cx(double)> eval_;
  Envelope env_;
  Smoothness tag_;
};

/// Built-in catalog.
LineFunction gaussian_line(double a);          // exp(-a x^2)
LineFunction abel_line(double eta);            // exp(-eta |x|)
LineFunction poisson_line(double t);           // (1/pi) t/(x^2+t^2)
LineFunction indicator_line(double a, double b);
LineFunction sign_line();                      // bounded, not integrable

/// Bounded intervals with complex values; zero outside [first, last].
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<cx> values);
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<cx>& values() const { return values_; }
  cx eval(double x) const;
  double l1_norm() const;
  cx transform(double xi) const;  // closed form via indicator transforms
  LineFunction as_line_function() const;

 private:
  std::vector<double> breaks_;
  std::vector<cx> values_;
};

/// Forward transform Int f(x) e^{-i xi x} dx.
cx fourier_transform(const LineFunction& f, double xi, const QuadSpec& q);

/// Int f over R with the declared decay controlling the tail.
cx integrate_line_function(const LineFunction& f, const QuadSpec& q);

double abel_kernel(double eta, double x);       // exp(-eta |x|)
double abel_kernel_hat(double eta, double xi);  // 2 eta / (xi^2 + eta^2)
double poisson_kernel_line(double t, double y); // (1/pi) t / (y^2 + t^2)

/// Poisson-side Abel inversion Int f(y) P_eta(x - y) dy.
cx abel_invert(const LineFunction& f, double x, double eta, const QuadSpec& q);
/// Frequency-side route (1/2pi) Int fhat(xi) A_eta(xi) e^{i xi x} dxi.
cx abel_invert_freq(const LineFunction& f, double x, double eta, const QuadSpec& q);

cx gaussian_hat(double a, double xi);           // sqrt(pi/a) exp(-xi^2/(4a))
cx indicator_hat(double a, double b, double xi);

/// Integrable step function f1 with ||f - f1||_1 < eps.
StepFunction step_approximate(const LineFunction& f, double eps, const QuadSpec& q);

/// | Int |fhat|^2 - 2 pi Int |f|^2 |.
double plancherel_defect(const LineFunction& phi, const QuadSpec& q);
/// Polarized form: Int fhat1 conj(fhat2) - 2 pi Int f1 conj(f2).
cx plancherel_pairing_defect(const LineFunction& phi1, const LineFunction& phi2,
                             const QuadSpec& q);

/// Worst defect of the two derivative/transform exchange identities at xi.
double schwartz_relation_defect(const LineFunction& f, int order, double xi,
                                const QuadSpec& q);

/// General summability kernel: Int f(y) phi_eta(y - x) dy with
/// phi = transform of Phi, phi_eta(w) = phi(w/eta)/(2 pi eta); Phi(0) must be 1.
cx summability_invert(const LineFunction& f, const LineFunction& Phi, double eta,
                      double x, const QuadSpec& q);
cx summability_invert_freq(const LineFunction& f, const LineFunction& Phi,
                           double eta, double x, const QuadSpec& q);

/// L_f(phi) = Int f(x) phihat(x) dx for bounded continuous f; phi must carry
/// a usable transform (closed form, or numerically via its envelope).
cx generalized_transform(const LineFunction& f, const LineFunction& phi,
                         const QuadSpec& q);

/// Principal-value transform of the sign function applied to phi, in the
/// subtracted form 2i[ Int_{|xi|<=1} (phi-phi(0))/xi + Int_{|xi|>1} phi/xi ].
cx sign_pv_transform(const LineFunction& phi, const QuadSpec& q);
/// Cutoff form 2i Int_{|xi|>eps} phi/xi.
cx sign_pv_cutoff(const LineFunction& phi, double eps, const QuadSpec& q);
/// Regularized route Int Bhat_eta(xi) phi(xi) dxi, Bhat_eta = 2 i xi/(eta^2+xi^2).
cx sign_pv_eta(const LineFunction& phi, double eta, const QuadSpec& q);

/// (f * g)(x); at least one factor must be integrable (envelope order >= 2).
cx convolve_line(const LineFunction& f, const LineFunction& g, double x,
                 const QuadSpec& q);

/// Int |x| |f(x)| dx, the Lipschitz constant proxy for fhat.
double first_moment(const LineFunction& f, const QuadSpec& q);

}  // namespace harmonics
