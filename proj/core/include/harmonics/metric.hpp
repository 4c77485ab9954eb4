#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace harmonics {

/// Finite metric space: point labels plus a symmetric distance matrix,
/// validated (zero diagonal, symmetry, triangle inequality) on construction.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist);

  size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  double distance(size_t i, size_t j) const { return dist_[i * size() + j]; }
  const std::vector<double>& matrix() const { return dist_; }

  static FiniteMetricSpace from_points(const std::vector<std::vector<double>>& pts);

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
};

/// Inf-convolution f_j(x) = inf { f(y) + j d(x,y) : y in M }.
std::vector<double> lipschitz_regularize(const std::vector<double>& f,
                                         const FiniteMetricSpace& space, double j);

struct LipschitzReport {
  bool holds = true;
  size_t worst_i = 0;
  size_t worst_j = 0;
  double gap = 0.0;  // |f(i)-f(j)| - C d(i,j)^a at the worst pair
};

/// Checks |f(x)-f(y)| <= C d(x,y)^a on all pairs (small numeric slack).
LipschitzReport check_lipschitz(const std::vector<double>& f,
                                const FiniteMetricSpace& space, double constant,
                                double order);

/// (r + t)^a <= r^a + t^a for 0 < a <= 1.
bool snowflake_check(double r, double t, double order);

/// First m coordinates of a sequence; coordinates beyond the prefix repeat
/// the last prefix symbol (eventually-constant padding).
class SymbolSequence {
 public:
  explicit SymbolSequence(std::vector<int> prefix);
  int at(size_t k) const;  // 0-based
  size_t prefix_length() const { return prefix_.size(); }
  const std::vector<int>& prefix() const { return prefix_; }

 private:
  std::vector<int> prefix_;
};

/// d_rho(x, y) = rho^l with l the length of the common prefix.
double ultrametric_distance(const SymbolSequence& x, const SymbolSequence& y,
                            double rho);

/// x -> sum x_j 2^{-j}; binary alphabet required.
double binary_to_unit(const SymbolSequence& x);
/// x -> sum 2 x_j 3^{-j}, landing in the Cantor middle-thirds set.
double binary_to_cantor(const SymbolSequence& x);

}  // namespace harmonics
