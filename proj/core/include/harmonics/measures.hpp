#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "harmonics/circle.hpp"
#include "harmonics/line.hpp"

namespace harmonics {

/// Finite measure on T^n: Dirac atoms (angle coordinates) plus an optional
/// band-limited density, applied with the (2pi)^{-n} normalized integral.
struct MeasureT {
  struct Atom {
    std::vector<double> theta;
    cx weight;
  };

  explicit MeasureT(int dim) : dim(dim) {}
  int dim = 1;
  std::vector<Atom> atoms;
  std::optional<TrigPoly> density;

  static MeasureT dirac(std::vector<double> theta, cx weight = cx{1.0, 0.0});
  static MeasureT with_density(TrigPoly f);
};

/// Finite measure on R: Dirac atoms plus an optional integrable density.
struct MeasureR {
  struct Atom {
    double x = 0.0;
    cx weight;
  };

  std::vector<Atom> atoms;
  std::optional<LineFunction> density;

  static MeasureR dirac(double x, cx weight = cx{1.0, 0.0});
  static MeasureR with_density(LineFunction f);
};

/// mu(phi): atoms evaluate, the density pairs through the normalized integral
/// on an m-point-per-axis grid (spectrally accurate for smooth phi).
cx apply(const MeasureT& mu, const std::function<cx(std::span<const double>)>& phi,
         int grid_m = 64);
cx apply(const MeasureR& mu, const std::function<cx(double)>& phi,
         const QuadSpec& q);

/// Sum of |weights| plus the integral of |density|.
double measure_norm(const MeasureT& mu, int grid_m = 64);
double measure_norm(const MeasureR& mu, const QuadSpec& q);

/// a_alpha = mu(w^-alpha).
cx fourier_coefficient_measure(const MeasureT& mu, const std::vector<int>& alpha);
/// muhat(xi) = mu(e_{-xi}).
cx fourier_transform_measure(const MeasureR& mu, double xi, const QuadSpec& q);

/// mu x nu as a functional on the doubled domain (iterated application).
class ProductMeasureT {
 public:
  ProductMeasureT(MeasureT mu, MeasureT nu);
  int dim() const { return mu_.dim + nu_.dim; }
  /// Applies to f(z, w); integration grids follow apply().
  cx operator()(const std::function<cx(std::span<const double>,
                                       std::span<const double>)>& f,
                int grid_m = 64) const;
  double norm(int grid_m = 64) const;  // ||mu|| ||nu||

 private:
  MeasureT mu_, nu_;
};

class ProductMeasureR {
 public:
  ProductMeasureR(MeasureR mu, MeasureR nu);
  cx operator()(const std::function<cx(double, double)>& f, const QuadSpec& q) const;
  double norm(const QuadSpec& q) const;

 private:
  MeasureR mu_, nu_;
};

ProductMeasureT product_measure(const MeasureT& mu, const MeasureT& nu);
ProductMeasureR product_measure(const MeasureR& mu, const MeasureR& nu);

/// Convolution: atoms combine by the group law, densities in closed form
/// (coefficient products on T^n, translated copies for atom-density terms).
MeasureT convolve_measures(const MeasureT& mu, const MeasureT& nu,
                           const QuadSpec& q = {});
MeasureR convolve_measures(const MeasureR& mu, const MeasureR& nu,
                           const QuadSpec& q = {});

/// (mu * h)(z) = mu(h_z) with h_z(w) = h(z - w) (anglewise on the torus).
std::function<cx(std::span<const double>)> convolve_measure_function(
    const MeasureT& mu, const std::function<cx(std::span<const double>)>& h,
    int grid_m = 64);
LineFunction convolve_measure_function(const MeasureR& mu, const LineFunction& h,
                                       const QuadSpec& q);

/// Abel-summability recovery of mu(f) from smoothed pairings.
cx abel_recover(const MeasureT& mu,
                const std::function<cx(std::span<const double>)>& f,
                std::span<const double> r, int grid_m = 64);
cx abel_recover(const MeasureR& mu, const LineFunction& phi, double eta,
                const QuadSpec& q);

}  // namespace harmonics
