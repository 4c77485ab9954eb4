#include "harmonics/almost_periodic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace harmonics {

namespace {

constexpr double kFreqTol = 1e-12;

}  // namespace

TrigSum::TrigSum(std::vector<Term> terms) {
  for (const Term& t : terms) add_term(t.freq, t.amp);
}

void TrigSum::add_term(double freq, cx amp) {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), freq,
      [](const Term& t, double v) { return t.freq < v; });
  if (it != terms_.end() && std::fabs(it->freq - freq) <= kFreqTol) {
    it->amp += amp;
    if (it->amp == cx{0.0, 0.0}) terms_.erase(it);
    return;
  }
  if (it != terms_.begin()) {
    auto prev = std::prev(it);
    if (std::fabs(prev->freq - freq) <= kFreqTol) {
      prev->amp += amp;
      if (prev->amp == cx{0.0, 0.0}) terms_.erase(prev);
      return;
    }
  }
  if (amp != cx{0.0, 0.0}) terms_.insert(it, Term{freq, amp});
}

double TrigSum::amplitude_l1() const {
  double s = 0.0;
  for (const Term& t : terms_) s += std::abs(t.amp);
  return s;
}

cx evaluate(const TrigSum& f, double x) {
  cx s{0.0, 0.0};
  for (const auto& t : f.terms()) s += t.amp * std::polar(1.0, t.freq * x);
  return s;
}

cx invariant_mean(const TrigSum& f) {
  for (const auto& t : f.terms())
    if (std::fabs(t.freq) <= kFreqTol) return t.amp;
  return cx{0.0, 0.0};
}

cx invariant_mean_averaged(const TrigSum& f, double L) {
  if (!(L > 0.0))
    throw std::invalid_argument("invariant_mean_averaged: needs L > 0");
  cx s{0.0, 0.0};
  for (const auto& t : f.terms()) {
    if (std::fabs(t.freq) <= kFreqTol) {
      s += t.amp;
    } else {
      // (1/2L) Int_{-L}^{L} e^{i xi x} dx = sin(xi L)/(xi L)
      s += t.amp * (std::sin(t.freq * L) / (t.freq * L));
    }
  }
  return s;
}

double invariant_mean_error_bound(const TrigSum& f, double L) {
  if (!(L > 0.0))
    throw std::invalid_argument("invariant_mean_error_bound: needs L > 0");
  double b = 0.0;
  for (const auto& t : f.terms())
    if (std::fabs(t.freq) > kFreqTol) b += std::abs(t.amp) / (std::fabs(t.freq) * L);
  return b;
}

cx ap_inner_product(const TrigSum& f, const TrigSum& g) {
  // mu(f conj(g)); e_xi are orthonormal, so only matched frequencies survive.
  cx s{0.0, 0.0};
  auto it = g.terms().begin();
  for (const auto& t : f.terms()) {
    while (it != g.terms().end() && it->freq < t.freq - kFreqTol) ++it;
    if (it != g.terms().end() && std::fabs(it->freq - t.freq) <= kFreqTol)
      s += t.amp * std::conj(it->amp);
  }
  return s;
}

cx bohr_coefficient(const TrigSum& f, double xi) {
  for (const auto& t : f.terms())
    if (std::fabs(t.freq - xi) <= kFreqTol) return t.amp;
  return cx{0.0, 0.0};
}

cx bohr_coefficient_averaged(const TrigSum& f, double xi, double L) {
  TrigSum shifted;
  for (const auto& t : f.terms()) shifted.add_term(t.freq - xi, t.amp);
  return invariant_mean_averaged(shifted, L);
}

std::vector<TrigSum::Term> spectrum(const TrigSum& f, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("spectrum: eps must be positive");
  std::vector<TrigSum::Term> out;
  for (const auto& t : f.terms())
    if (std::abs(t.amp) >= eps) out.push_back(t);
  return out;
}

TrigSum torus_trajectory(const TrigPoly& phi, std::span<const double> a,
                         std::span<const double> z_theta) {
  if (int(a.size()) != phi.dim() || int(z_theta.size()) != phi.dim())
    throw std::invalid_argument("torus_trajectory: dimension mismatch");
  TrigSum f;
  for (const auto& [alpha, v] : phi.coeffs()) {
    double freq = 0.0;
    double phase = 0.0;
    for (int j = 0; j < phi.dim(); ++j) {
      freq += alpha[j] * a[j];
      phase += alpha[j] * z_theta[j];
    }
    f.add_term(freq, v * std::polar(1.0, phase));
  }
  return f;
}

TrigSum translate(const TrigSum& f, double y) {
  TrigSum g;
  for (const auto& t : f.terms())
    g.add_term(t.freq, t.amp * std::polar(1.0, -t.freq * y));
  return g;
}

}  // namespace harmonics
