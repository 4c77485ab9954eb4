#include "harmonics/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace harmonics {

IndexedFamily::IndexedFamily(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("IndexedFamily: dimension must be >= 1");
}

cx IndexedFamily::at(const std::vector<int>& alpha) const {
  auto it = entries_.find(alpha);
  return it == entries_.end() ? cx{0.0, 0.0} : it->second;
}

void IndexedFamily::set(const std::vector<int>& alpha, cx value) {
  if (int(alpha.size()) != dim_)
    throw std::invalid_argument("IndexedFamily::set: index dimension mismatch");
  if (value == cx{0.0, 0.0})
    entries_.erase(alpha);
  else
    entries_[alpha] = value;
}

IndexedFamily IndexedFamily::unit(int dim, const std::vector<int>& alpha) {
  IndexedFamily a(dim);
  a.set(alpha, cx{1.0, 0.0});
  return a;
}

IndexedFamily add(const IndexedFamily& a, const IndexedFamily& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("add: dimension mismatch");
  IndexedFamily c = a;
  for (const auto& [alpha, v] : b.entries()) c.set(alpha, c.at(alpha) + v);
  return c;
}

IndexedFamily scale(cx alpha, const IndexedFamily& a) {
  IndexedFamily c(a.dim());
  for (const auto& [idx, v] : a.entries()) c.set(idx, alpha * v);
  return c;
}

IndexedFamily pointwise_product(const IndexedFamily& a, const IndexedFamily& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("pointwise_product: dimension mismatch");
  IndexedFamily c(a.dim());
  for (const auto& [idx, v] : a.entries()) {
    const cx w = b.at(idx);
    if (w != cx{0.0, 0.0}) c.set(idx, v * w);
  }
  return c;
}

double lp_norm(const IndexedFamily& a, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& [idx, v] : a.entries()) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (const auto& [idx, v] : a.entries()) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

HolderReport holder_check(const IndexedFamily& a, const IndexedFamily& b,
                          double p, double q, double r) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("holder_check: dimension mismatch");
  const auto inv = [](double e) { return std::isinf(e) ? 0.0 : 1.0 / e; };
  const double lhs = inv(p) + inv(q);
  if (std::fabs(lhs - inv(r)) > 1e-12 * std::max({1.0, lhs, inv(r)}))
    throw std::invalid_argument("holder_check: exponents must satisfy 1/r = 1/p + 1/q");
  HolderReport rep;
  rep.lhs = lp_norm(pointwise_product(a, b), r);
  rep.rhs = lp_norm(a, p) * lp_norm(b, q);
  return rep;
}

cx inner_product(const IndexedFamily& a, const IndexedFamily& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("inner_product: dimension mismatch");
  cx s{0.0, 0.0};
  for (const auto& [idx, v] : a.entries()) s += v * std::conj(b.at(idx));
  return s;
}

GramError::GramError(size_t i, size_t j, double dev)
    : std::runtime_error("orthonormality violated at Gram entry (" +
                         std::to_string(i) + ", " + std::to_string(j) +
                         "), deviation " + std::to_string(dev)),
      row(i),
      col(j),
      deviation(dev) {}

OrthonormalSet::OrthonormalSet(std::vector<IndexedFamily> members)
    : members_(std::move(members)) {
  for (size_t i = 0; i < members_.size(); ++i)
    for (size_t j = i; j < members_.size(); ++j) {
      const cx g = inner_product(members_[i], members_[j]);
      const double want = (i == j) ? 1.0 : 0.0;
      const double dev = std::abs(g - cx{want, 0.0});
      if (dev > 1e-10) throw GramError(i, j, dev);
    }
}

IndexedFamily project(const IndexedFamily& v, const OrthonormalSet& set) {
  if (set.size() == 0) return IndexedFamily(v.dim());
  IndexedFamily out(v.dim());
  for (const IndexedFamily& u : set.members())
    out = add(out, scale(inner_product(v, u), u));
  return out;
}

double bessel_defect(const IndexedFamily& v, const OrthonormalSet& set) {
  double s = 0.0;
  for (const IndexedFamily& u : set.members()) s += std::norm(inner_product(v, u));
  const double n = lp_norm(v, 2.0);
  return n * n - s;
}

}  // namespace harmonics
