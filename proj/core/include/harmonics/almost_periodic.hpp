#pragma once

#include <complex>
#include <span>
#include <vector>

#include "harmonics/circle.hpp"

namespace harmonics {

/// Finite trigonometric sum  sum_j a_j e^{i xi_j x}  with pairwise distinct
/// frequencies (matching tolerance 1e-12; colliding terms merge on insert).
class TrigSum {
 public:
  struct Term {
    double freq = 0.0;
    cx amp;
  };

  TrigSum() = default;
  explicit TrigSum(std::vector<Term> terms);

  void add_term(double freq, cx amp);
  const std::vector<Term>& terms() const { return terms_; }
  double amplitude_l1() const;

 private:
  std::vector<Term> terms_;  // kept sorted by frequency
};

cx evaluate(const TrigSum& f, double x);

/// Exact mode: the amplitude at frequency zero.
cx invariant_mean(const TrigSum& f);
/// Averaged mode: (1/2L) Int_{-L}^{L} f, by the closed-form antiderivative.
cx invariant_mean_averaged(const TrigSum& f, double interval_half_length);
/// Closed-form bound on |averaged - exact|: sum_{xi != 0} |a_j|/(|xi_j| L).
double invariant_mean_error_bound(const TrigSum& f, double interval_half_length);

/// <f, g> = mu(f conj(g)): sum of a_j conj(b_k) over matched frequencies.
cx ap_inner_product(const TrigSum& f, const TrigSum& g);

/// <f, e_xi>: the amplitude at xi (exact mode).
cx bohr_coefficient(const TrigSum& f, double xi);
/// Averaged mode, inheriting the invariant-mean error bound for f e_{-xi}.
cx bohr_coefficient_averaged(const TrigSum& f, double xi,
                             double interval_half_length);

/// Terms with |a_j| >= eps; cardinality obeys <f,f>/eps^2.
std::vector<TrigSum::Term> spectrum(const TrigSum& f, double eps);

/// f(t) = phi(z ∘ e^{i a t}): one term per coefficient at frequency <alpha, a>.
TrigSum torus_trajectory(const TrigPoly& phi, std::span<const double> a,
                         std::span<const double> z_theta);

TrigSum translate(const TrigSum& f, double y);  // f(x - y)

}  // namespace harmonics
