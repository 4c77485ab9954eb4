#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace harmonics {

using cx = std::complex<double>;

/// One-sided power series coefficients a_0..a_N.  The truncation degree N is
/// part of the value: coefficients beyond N are *unknown*, not zero, which is
/// why products shrink the window instead of emitting incomplete terms.
class CoeffSeq {
 public:
  explicit CoeffSeq(int degree);

  int degree() const { return degree_; }
  cx coeff(int n) const;
  void set(int n, cx value);
  const std::map<int, cx>& entries() const { return coeffs_; }

  /// Declared geometric tail model: |a_n| <= bound * ratio^n for n > degree.
  struct TailModel {
    double bound = 0.0;
    double ratio = 0.0;  // must be < 1
  };
  std::optional<TailModel> tail;

  double l1_norm() const;

  static CoeffSeq geometric(int degree);    // a_n = 1
  static CoeffSeq exponential(int degree);  // a_n = 1/n!

 private:
  int degree_;
  std::map<int, cx> coeffs_;
};

/// Finitely supported doubly infinite coefficients, support in [-window, window].
class LaurentSeq {
 public:
  explicit LaurentSeq(int window);

  int window() const { return window_; }
  cx coeff(int n) const;
  void set(int n, cx value);
  const std::map<int, cx>& entries() const { return coeffs_; }
  double l1_norm() const;

  static LaurentSeq delta(int n);  // single unit coefficient

 private:
  int window_;
  std::map<int, cx> coeffs_;
};

/// Finitely supported multi-index coefficients (N^n, or Z^n for the
/// polyharmonic case).
class MultiSeq {
 public:
  explicit MultiSeq(int dim);

  int dim() const { return dim_; }
  cx coeff(const std::vector<int>& alpha) const;
  void set(const std::vector<int>& alpha, cx value);
  const std::map<std::vector<int>, cx>& entries() const { return coeffs_; }
  double l1_norm() const;

 private:
  int dim_;
  std::map<std::vector<int>, cx> coeffs_;
};

/// c_n = sum_{j=0}^n a_j b_{n-j}, truncated at min(deg a, deg b).
CoeffSeq cauchy_product(const CoeffSeq& a, const CoeffSeq& b);

/// Full convolution of finitely supported two-sided coefficients.
LaurentSeq laurent_cauchy_product(const LaurentSeq& a, const LaurentSeq& b);

/// c_gamma = sum_{alpha+beta=gamma} a_alpha b_beta; dimension mismatch throws.
MultiSeq multi_cauchy_product(const MultiSeq& a, const MultiSeq& b);

/// Coefficients of the derivative: result_n = (n+1) a_{n+1}.
CoeffSeq differentiate(const CoeffSeq& a);

/// 1/max |a_n|^{1/n} over the trailing half window; +inf when the tail is
/// numerically zero.  Requires degree >= 8.
double radius_estimate(const CoeffSeq& a);

/// Truncated sum; with a declared tail model the result is within tol of the
/// infinite sum or an exception reports that the tail bound exceeds tol.
cx eval_series(const CoeffSeq& a, cx z, double tol);
cx eval_series(const LaurentSeq& a, cx z, double tol);
cx eval_series(const MultiSeq& a, std::span<const cx> z, double tol);

/// Closed form 1/(1-z) for comparisons; z = 1 is rejected as a pole.
cx geometric_sum_value(cx z);

/// Series-summed exponential, term count from the factorial tail bound.
cx exp_value(cx z);

}  // namespace harmonics
