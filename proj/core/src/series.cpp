#include "harmonics/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace harmonics {

namespace {

void kahan_add(cx& sum, cx& comp, cx term) {
  const cx y = term - comp;
  const cx t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

}  // namespace

CoeffSeq::CoeffSeq(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("CoeffSeq: degree must be >= 0");
}

cx CoeffSeq::coeff(int n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? cx{0.0, 0.0} : it->second;
}

void CoeffSeq::set(int n, cx value) {
  if (n < 0 || n > degree_)
    throw std::out_of_range("CoeffSeq::set: index outside [0, degree]");
  if (value == cx{0.0, 0.0})
    coeffs_.erase(n);
  else
    coeffs_[n] = value;
}

double CoeffSeq::l1_norm() const {
  double s = 0.0;
  for (const auto& [n, v] : coeffs_) s += std::abs(v);
  return s;
}

CoeffSeq CoeffSeq::geometric(int degree) {
  CoeffSeq a(degree);
  for (int n = 0; n <= degree; ++n) a.set(n, cx{1.0, 0.0});
  a.tail = TailModel{1.0, 1.0};  // |a_n| = 1; usable only for |z| < 1 bounds
  return a;
}

CoeffSeq CoeffSeq::exponential(int degree) {
  CoeffSeq a(degree);
  double f = 1.0;
  for (int n = 0; n <= degree; ++n) {
    if (n > 0) f /= double(n);
    a.set(n, cx{f, 0.0});
  }
  return a;
}

LaurentSeq::LaurentSeq(int window) : window_(window) {
  if (window < 0) throw std::invalid_argument("LaurentSeq: window must be >= 0");
}

cx LaurentSeq::coeff(int n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? cx{0.0, 0.0} : it->second;
}

void LaurentSeq::set(int n, cx value) {
  if (n < -window_ || n > window_)
    throw std::out_of_range("LaurentSeq::set: index outside [-window, window]");
  if (value == cx{0.0, 0.0})
    coeffs_.erase(n);
  else
    coeffs_[n] = value;
}

double LaurentSeq::l1_norm() const {
  double s = 0.0;
  for (const auto& [n, v] : coeffs_) s += std::abs(v);
  return s;
}

LaurentSeq LaurentSeq::delta(int n) {
  LaurentSeq a(std::abs(n));
  a.set(n, cx{1.0, 0.0});
  return a;
}

MultiSeq::MultiSeq(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("MultiSeq: dimension must be >= 1");
}

cx MultiSeq::coeff(const std::vector<int>& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? cx{0.0, 0.0} : it->second;
}

void MultiSeq::set(const std::vector<int>& alpha, cx value) {
  if (int(alpha.size()) != dim_)
    throw std::invalid_argument("MultiSeq::set: index dimension mismatch");
  if (value == cx{0.0, 0.0})
    coeffs_.erase(alpha);
  else
    coeffs_[alpha] = value;
}

double MultiSeq::l1_norm() const {
  double s = 0.0;
  for (const auto& [a, v] : coeffs_) s += std::abs(v);
  return s;
}

CoeffSeq cauchy_product(const CoeffSeq& a, const CoeffSeq& b) {
  const int deg = std::min(a.degree(), b.degree());
  CoeffSeq c(deg);
  for (const auto& [j, aj] : a.entries()) {
    if (j > deg) continue;
    for (const auto& [l, bl] : b.entries()) {
      const int n = j + l;
      if (n > deg) break;  // entries() is ordered by index
      c.set(n, c.coeff(n) + aj * bl);
    }
  }
  return c;
}

LaurentSeq laurent_cauchy_product(const LaurentSeq& a, const LaurentSeq& b) {
  LaurentSeq c(a.window() + b.window());
  for (const auto& [j, aj] : a.entries())
    for (const auto& [l, bl] : b.entries()) c.set(j + l, c.coeff(j + l) + aj * bl);
  return c;
}

MultiSeq multi_cauchy_product(const MultiSeq& a, const MultiSeq& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("multi_cauchy_product: dimension mismatch");
  MultiSeq c(a.dim());
  std::vector<int> gamma(a.dim());
  for (const auto& [alpha, av] : a.entries())
    for (const auto& [beta, bv] : b.entries()) {
      for (int k = 0; k < a.dim(); ++k) gamma[k] = alpha[k] + beta[k];
      c.set(gamma, c.coeff(gamma) + av * bv);
    }
  return c;
}

CoeffSeq differentiate(const CoeffSeq& a) {
  CoeffSeq d(std::max(a.degree() - 1, 0));
  for (const auto& [n, v] : a.entries())
    if (n >= 1 && n - 1 <= d.degree()) d.set(n - 1, double(n) * v);
  return d;
}

double radius_estimate(const CoeffSeq& a) {
  if (a.degree() < 8)
    throw std::invalid_argument("radius_estimate: needs truncation degree >= 8");
  double scale = 0.0;
  for (const auto& [n, v] : a.entries()) scale = std::max(scale, std::abs(v));
  const double floor = 1e-14 * std::max(scale, 1.0);
  const int lo = a.degree() - (a.degree() + 1) / 2 + 1;
  double worst = 0.0;
  for (int n = std::max(lo, 1); n <= a.degree(); ++n) {
    const double m = std::abs(a.coeff(n));
    if (m <= floor) continue;
    worst = std::max(worst, std::pow(m, 1.0 / double(n)));
  }
  if (worst == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / worst;
}

cx eval_series(const CoeffSeq& a, cx z, double tol) {
  cx sum{0.0, 0.0}, comp{0.0, 0.0};
  cx zn{1.0, 0.0};
  int last = 0;
  for (const auto& [n, v] : a.entries()) {
    while (last < n) {
      zn *= z;
      ++last;
    }
    kahan_add(sum, comp, v * zn);
  }
  if (a.tail) {
    const double r = a.tail->ratio * std::abs(z);
    if (r >= 1.0)
      throw std::domain_error("eval_series: tail model diverges at |z|*ratio >= 1");
    const double bound =
        a.tail->bound * std::pow(r, double(a.degree() + 1)) / (1.0 - r);
    if (bound > tol)
      throw std::domain_error("eval_series: declared tail exceeds tolerance");
  }
  return sum;
}

cx eval_series(const LaurentSeq& a, cx z, double tol) {
  (void)tol;
  bool negative = false;
  for (const auto& [n, v] : a.entries())
    if (n < 0) negative = true;
  if (negative && z == cx{0.0, 0.0})
    throw std::domain_error("eval_series: negative powers need z != 0");
  cx sum{0.0, 0.0}, comp{0.0, 0.0};
  for (const auto& [n, v] : a.entries()) kahan_add(sum, comp, v * std::pow(z, n));
  return sum;
}

cx eval_series(const MultiSeq& a, std::span<const cx> z, double tol) {
  (void)tol;
  if (int(z.size()) != a.dim())
    throw std::invalid_argument("eval_series: point dimension mismatch");
  cx sum{0.0, 0.0}, comp{0.0, 0.0};
  for (const auto& [alpha, v] : a.entries()) {
    cx term = v;
    for (int k = 0; k < a.dim(); ++k) {
      if (alpha[k] < 0 && z[k] == cx{0.0, 0.0})
        throw std::domain_error("eval_series: negative powers need z_k != 0");
      term *= std::pow(z[k], alpha[k]);
    }
    kahan_add(sum, comp, term);
  }
  return sum;
}

cx geometric_sum_value(cx z) {
  if (z == cx{1.0, 0.0})
    throw std::domain_error("geometric_sum_value: pole at z = 1");
  return 1.0 / (cx{1.0, 0.0} - z);
}

cx exp_value(cx z) {
  const double r = std::abs(z);
  const double tol = 1e-14;
  // Smallest m with 10^r * r^m / m! < tol, i.e. the factorial tail bound.
  int m = 1;
  double term = r;  // r^m / m!
  const double lead = std::pow(10.0, std::min(r, 300.0));
  while (lead * term >= tol && m < 400) {
    ++m;
    term *= r / double(m);
  }
  cx sum{1.0, 0.0}, comp{0.0, 0.0};
  cx t{1.0, 0.0};
  for (int n = 1; n <= m; ++n) {
    t *= z / double(n);
    kahan_add(sum, comp, t);
  }
  return sum;
}

}  // namespace harmonics
