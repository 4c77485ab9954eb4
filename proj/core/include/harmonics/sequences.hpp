#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace harmonics {

using cx = std::complex<double>;

/// Finitely supported family of complex numbers indexed by Z^n.
class IndexedFamily {
 public:
  explicit IndexedFamily(int dim);

  int dim() const { return dim_; }
  cx at(const std::vector<int>& alpha) const;
  void set(const std::vector<int>& alpha, cx value);
  const std::map<std::vector<int>, cx>& entries() const { return entries_; }

  static IndexedFamily unit(int dim, const std::vector<int>& alpha);

 private:
  int dim_;
  std::map<std::vector<int>, cx> entries_;
};

IndexedFamily add(const IndexedFamily& a, const IndexedFamily& b);
IndexedFamily scale(cx alpha, const IndexedFamily& a);
/// Pointwise product a_alpha * b_alpha over the common support.
IndexedFamily pointwise_product(const IndexedFamily& a, const IndexedFamily& b);

/// p-norm for p in (0, inf]; pass std::numeric_limits<double>::infinity()
/// for the supremum case.
double lp_norm(const IndexedFamily& a, double p);

struct HolderReport {
  double lhs = 0.0;  // ||a b||_r
  double rhs = 0.0;  // ||a||_p ||b||_q
};

/// Checks 1/r = 1/p + 1/q (relative 1e-12) and evaluates both sides.
HolderReport holder_check(const IndexedFamily& a, const IndexedFamily& b,
                          double p, double q, double r);

cx inner_product(const IndexedFamily& a, const IndexedFamily& b);

struct GramError : std::runtime_error {
  GramError(size_t i, size_t j, double deviation);
  size_t row;
  size_t col;
  double deviation;
};

/// A list of families expected to satisfy <u_i, u_j> = delta_ij within 1e-10.
class OrthonormalSet {
 public:
  explicit OrthonormalSet(std::vector<IndexedFamily> members);
  const std::vector<IndexedFamily>& members() const { return members_; }
  size_t size() const { return members_.size(); }

 private:
  std::vector<IndexedFamily> members_;
};

/// P(v) = sum <v, u_j> u_j.
IndexedFamily project(const IndexedFamily& v, const OrthonormalSet& set);

/// ||v||^2 - sum |<v, u_j>|^2 (equals ||v - P(v)||^2).
double bessel_defect(const IndexedFamily& v, const OrthonormalSet& set);

}  // namespace harmonics
