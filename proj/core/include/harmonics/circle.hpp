#pragma once

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace harmonics {

using cx = std::complex<double>;

/// Trigonometric polynomial on T^n: finitely many coefficients a_alpha,
/// alpha in Z^n, evaluated as sum a_alpha e^{i<alpha, theta>}.
class TrigPoly {
 public:
  explicit TrigPoly(int dim);

  int dim() const { return dim_; }
  cx coeff(const std::vector<int>& alpha) const;
  void set(const std::vector<int>& alpha, cx value);
  const std::map<std::vector<int>, cx>& coeffs() const { return coeffs_; }

  cx eval(std::span<const double> theta) const;
  int max_degree() const;  // largest |alpha_j| over the support
  double l1_norm() const;

 private:
  int dim_;
  std::map<std::vector<int>, cx> coeffs_;
};

TrigPoly add(const TrigPoly& a, const TrigPoly& b);
TrigPoly scale(cx c, const TrigPoly& a);
/// Coefficients of f(z ∘ e^{-i theta0}), i.e. a_alpha e^{-i<alpha,theta0>}.
TrigPoly translate(const TrigPoly& a, std::span<const double> theta0);

/// Uniform samples of a function on T^n: m points per axis at angles
/// 2*pi*k/m, stored row-major in axis order.
class CircleGrid {
 public:
  CircleGrid(int dim, int m, std::vector<cx> values);

  int dim() const { return dim_; }
  int samples_per_axis() const { return m_; }
  const std::vector<cx>& values() const { return values_; }
  cx& value(std::span<const int> k);
  cx value(std::span<const int> k) const;
  size_t size() const { return values_.size(); }

  static CircleGrid sample(int dim, int m,
                           const std::function<cx(std::span<const double>)>& f);
  static CircleGrid sample(const TrigPoly& p, int m);

 private:
  int dim_;
  int m_;
  std::vector<cx> values_;
};

/// Interior point of the unit polydisk, |z_j| < 1 for all j.
class DiskPoint {
 public:
  explicit DiskPoint(std::vector<cx> z);
  const std::vector<cx>& coords() const { return z_; }
  int dim() const { return int(z_.size()); }

 private:
  std::vector<cx> z_;
};

/// Trapezoid-rule Fourier coefficient; rejects aliased indices |alpha_j| >= m/2.
cx fourier_coefficient(const CircleGrid& f, const std::vector<int>& alpha);

/// Box partial sum: coefficients for |alpha_j| <= N on every axis.
TrigPoly partial_sum(const CircleGrid& f, int degree);

/// (1/2pi) (1-|z|^2)/|z-w|^2 on the unit disk; |z| < 1, |w| = 1.
double poisson_kernel_disk(cx z, cx w);

/// Product of one-dimensional Poisson kernels.
double poisson_kernel_polydisk(const DiskPoint& z, std::span<const cx> w);

/// Harmonic (polyharmonic) extension of grid data to an interior point.
cx abel_extend(const CircleGrid& f, const DiskPoint& z);

/// (1/2pi)^n Int |f|^2 - sum_{|alpha_j|<=N} |a_alpha|^2; >= -1e-10 by Bessel.
double parseval_defect(const CircleGrid& f, int degree);

/// (f*g)(z) = (2pi)^{-n} Int f(w) g(z∘conj(w)) |dw| on matching grids.
CircleGrid convolve_circle(const CircleGrid& f, const CircleGrid& g);

struct MaxPrincipleReport {
  double interior_max = 0.0;
  double boundary_max = 0.0;
};

/// Compares the maximum of the harmonic extension over |z| <= r with the
/// boundary maximum (n = 1, real-valued data).
MaxPrincipleReport max_principle_check(const CircleGrid& f, double r,
                                       int radial_steps, int angular_steps);

}  // namespace harmonics
