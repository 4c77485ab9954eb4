#include "harmonics/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace harmonics {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<double> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  const size_t n = labels_.size();
  if (n == 0) throw std::invalid_argument("FiniteMetricSpace: needs at least one point");
  if (dist_.size() != n * n)
    throw std::invalid_argument("FiniteMetricSpace: distance matrix must be n x n");
  double scale = 0.0;
  for (double d : dist_) {
    if (!(d >= 0.0))
      throw std::invalid_argument("FiniteMetricSpace: distances must be nonnegative");
    scale = std::max(scale, d);
  }
  const double slack = 1e-12 * std::max(1.0, scale);
  for (size_t i = 0; i < n; ++i) {
    if (dist_[i * n + i] != 0.0)
      throw std::invalid_argument("FiniteMetricSpace: nonzero diagonal");
    for (size_t j = 0; j < n; ++j) {
      if (std::fabs(dist_[i * n + j] - dist_[j * n + i]) > slack)
        throw std::invalid_argument("FiniteMetricSpace: matrix not symmetric");
      for (size_t k = 0; k < n; ++k)
        if (dist_[i * n + j] > dist_[i * n + k] + dist_[k * n + j] + slack)
          throw std::invalid_argument("FiniteMetricSpace: triangle inequality violated");
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_points(
    const std::vector<std::vector<double>>& pts) {
  const size_t n = pts.size();
  std::vector<std::string> labels(n);
  std::vector<double> dist(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    labels[i] = "p" + std::to_string(i);
    for (size_t j = 0; j < n; ++j) {
      double s = 0.0;
      const size_t dim = std::min(pts[i].size(), pts[j].size());
      for (size_t k = 0; k < dim; ++k) {
        const double d = pts[i][k] - pts[j][k];
        s += d * d;
      }
      dist[i * n + j] = std::sqrt(s);
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

std::vector<double> lipschitz_regularize(const std::vector<double>& f,
                                         const FiniteMetricSpace& space, double j) {
  if (f.size() != space.size())
    throw std::invalid_argument("lipschitz_regularize: value count mismatch");
  if (!(j > 0.0))
    throw std::invalid_argument("lipschitz_regularize: j must be positive");
  for (double v : f)
    if (!std::isfinite(v))
      throw std::invalid_argument("lipschitz_regularize: values must be finite");
  const size_t n = space.size();
  std::vector<double> out(n);
  for (size_t x = 0; x < n; ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t y = 0; y < n; ++y)
      best = std::min(best, f[y] + j * space.distance(x, y));
    out[x] = best;
  }
  return out;
}

LipschitzReport check_lipschitz(const std::vector<double>& f,
                                const FiniteMetricSpace& space, double constant,
                                double order) {
  if (f.size() != space.size())
    throw std::invalid_argument("check_lipschitz: value count mismatch");
  if (!(constant >= 0.0) || !(order > 0.0) || !(order <= 1.0))
    throw std::invalid_argument("check_lipschitz: needs C >= 0 and 0 < a <= 1");
  double scale = 0.0;
  for (double v : f) scale = std::max(scale, std::fabs(v));
  const double slack = 1e-12 * std::max(1.0, scale + constant);
  LipschitzReport rep;
  rep.gap = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < space.size(); ++i)
    for (size_t j = i + 1; j < space.size(); ++j) {
      const double lhs = std::fabs(f[i] - f[j]);
      const double rhs = constant * std::pow(space.distance(i, j), order);
      const double gap = lhs - rhs;
      if (gap > rep.gap) {
        rep.gap = gap;
        rep.worst_i = i;
        rep.worst_j = j;
      }
    }
  rep.holds = rep.gap <= slack;
  return rep;
}

bool snowflake_check(double r, double t, double order) {
  if (!(r >= 0.0) || !(t >= 0.0) || !(order > 0.0) || !(order <= 1.0))
    throw std::invalid_argument("snowflake_check: needs r,t >= 0 and 0 < a <= 1");
  const double lhs = std::pow(r + t, order);
  const double rhs = std::pow(r, order) + std::pow(t, order);
  return lhs <= rhs + 1e-12 * std::max(1.0, rhs);
}

SymbolSequence::SymbolSequence(std::vector<int> prefix) : prefix_(std::move(prefix)) {
  if (prefix_.empty())
    throw std::invalid_argument("SymbolSequence: prefix length must be >= 1");
}

int SymbolSequence::at(size_t k) const {
  return k < prefix_.size() ? prefix_[k] : prefix_.back();
}

double ultrametric_distance(const SymbolSequence& x, const SymbolSequence& y,
                            double rho) {
  if (!(rho > 0.0) || !(rho <= 1.0))
    throw std::invalid_argument("ultrametric_distance: needs rho in (0, 1]");
  const size_t horizon = std::max(x.prefix_length(), y.prefix_length()) + 1;
  size_t agree = horizon;
  for (size_t k = 0; k < horizon; ++k)
    if (x.at(k) != y.at(k)) {
      agree = k;
      break;
    }
  if (agree == horizon) return 0.0;  // padded tails coincide from here on
  // rho^agree by repeated multiplication keeps powers monotone in the exponent.
  double d = 1.0;
  for (size_t k = 0; k < agree; ++k) d *= rho;
  return d;
}

namespace {

double binary_series(const SymbolSequence& x, double base, double scale) {
  double s = 0.0;
  double p = 1.0;
  for (size_t k = 0; k < x.prefix_length(); ++k) {
    const int sym = x.at(k);
    if (sym != 0 && sym != 1)
      throw std::invalid_argument("binary coding needs a {0,1} alphabet");
    p /= base;
    s += scale * double(sym) * p;
  }
  // eventually-constant padding sums to a geometric tail
  const int pad = x.at(x.prefix_length());
  if (pad != 0) s += scale * p / (base - 1.0);
  return s;
}

}  // namespace

double binary_to_unit(const SymbolSequence& x) { return binary_series(x, 2.0, 1.0); }

double binary_to_cantor(const SymbolSequence& x) { return binary_series(x, 3.0, 2.0); }

}  // namespace harmonics
