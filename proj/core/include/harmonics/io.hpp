#pragma once

#include <string>

#include "harmonics/almost_periodic.hpp"
#include "harmonics/circle.hpp"
#include "harmonics/measures.hpp"
#include "harmonics/metric.hpp"
#include "harmonics/sequences.hpp"
#include "harmonics/series.hpp"

namespace harmonics::io {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Indexed coefficient maps share one format:
//   {"dim": n, "entries": [[[i1,...,in], re, im], ...]}
std::string to_json(const CoeffSeq& a);
std::string to_json(const LaurentSeq& a);
std::string to_json(const MultiSeq& a);
std::string to_json(const IndexedFamily& a);
std::string to_json(const TrigPoly& a);

CoeffSeq coeffseq_from_json(const std::string& text);
LaurentSeq laurentseq_from_json(const std::string& text);
MultiSeq multiseq_from_json(const std::string& text);
IndexedFamily family_from_json(const std::string& text);
TrigPoly trigpoly_from_json(const std::string& text);

// Samples: {"dim": n, "m": m, "values": [[re, im], ...]} (row-major)
std::string to_json(const CircleGrid& g);
CircleGrid grid_from_json(const std::string& text);

// Trig sums: [[xi, re, im], ...]
std::string to_json(const TrigSum& f);
TrigSum trigsum_from_json(const std::string& text);

// Step functions: {"breakpoints": [...], "values": [[re, im], ...]}
std::string to_json(const StepFunction& s);
StepFunction stepfunction_from_json(const std::string& text);

// Measures: {"atoms": [[[p...], re, im], ...], "density": <coefficients|expr|null>}
std::string to_json(const MeasureT& mu);
MeasureT measure_t_from_json(const std::string& text);
std::string to_json(const MeasureR& mu);  // density must be expression-backed
MeasureR measure_r_from_json(const std::string& text);

// Metric spaces: {"points": [...], "dist": [[...], ...]}
std::string to_json(const FiniteMetricSpace& m);
FiniteMetricSpace metric_from_json(const std::string& text);

}  // namespace harmonics::io
