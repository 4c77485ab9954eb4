#include <doctest.h>

#include <cmath>
#include <random>

#include "harmonics/io.hpp"

using namespace harmonics;

TEST_CASE("coefficient formats round-trip") {
  std::mt19937_64 rng(901);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int iter = 0; iter < 20; ++iter) {
    CoeffSeq a(8);
    for (int n = 0; n <= 8; n += 2) a.set(n, cx{u(rng), u(rng)});
    const CoeffSeq b = io::coeffseq_from_json(io::to_json(a));
    CHECK(b.degree() == a.degree());
    for (int n = 0; n <= 8; ++n) CHECK(b.coeff(n) == a.coeff(n));

    LaurentSeq l(4);
    for (int n = -4; n <= 4; ++n) l.set(n, cx{u(rng), u(rng)});
    const LaurentSeq l2 = io::laurentseq_from_json(io::to_json(l));
    for (int n = -4; n <= 4; ++n) CHECK(l2.coeff(n) == l.coeff(n));

    MultiSeq m(2);
    m.set({1, 2}, cx{u(rng), u(rng)});
    m.set({0, 0}, cx{u(rng), u(rng)});
    const MultiSeq m2 = io::multiseq_from_json(io::to_json(m));
    CHECK(m2.entries() == m.entries());

    TrigPoly p(2);
    p.set({1, -1}, cx{u(rng), u(rng)});
    const TrigPoly p2 = io::trigpoly_from_json(io::to_json(p));
    CHECK(p2.coeffs() == p.coeffs());

    IndexedFamily fam(1);
    fam.set({-3}, cx{u(rng), u(rng)});
    fam.set({5}, cx{u(rng), u(rng)});
    const IndexedFamily fam2 = io::family_from_json(io::to_json(fam));
    CHECK(fam2.entries() == fam.entries());
  }
}

TEST_CASE("grids, trig sums, steps and metric spaces round-trip") {
  const CircleGrid g = CircleGrid::sample(
      1, 16, [](std::span<const double> th) { return std::polar(1.0, th[0]); });
  const CircleGrid g2 = io::grid_from_json(io::to_json(g));
  CHECK(g2.values() == g.values());
  CHECK(g2.samples_per_axis() == 16);

  TrigSum f;
  f.add_term(0.0, cx{3.0, 0.0});
  f.add_term(std::sqrt(2.0), cx{1.0, -1.0});
  const TrigSum f2 = io::trigsum_from_json(io::to_json(f));
  REQUIRE(f2.terms().size() == f.terms().size());
  for (size_t i = 0; i < f2.terms().size(); ++i) {
    CHECK(f2.terms()[i].freq == f.terms()[i].freq);
    CHECK(f2.terms()[i].amp == f.terms()[i].amp);
  }

  const StepFunction s({-1.0, 0.5, 2.0}, {cx{1.0, 0.0}, cx{0.0, -2.0}});
  const StepFunction s2 = io::stepfunction_from_json(io::to_json(s));
  CHECK(s2.breakpoints() == s.breakpoints());
  CHECK(s2.values() == s.values());

  const FiniteMetricSpace m({"a", "b"}, {0.0, 2.0, 2.0, 0.0});
  const FiniteMetricSpace m2 = io::metric_from_json(io::to_json(m));
  CHECK(m2.labels() == m.labels());
  CHECK(m2.matrix() == m.matrix());
}

TEST_CASE("measures round-trip") {
  MeasureT mu(2);
  mu.atoms.push_back(MeasureT::Atom{{0.5, 1.5}, cx{1.0, -0.25}});
  TrigPoly d(2);
  d.set({1, 0}, cx{0.5, 0.0});
  mu.density = d;
  const MeasureT mu2 = io::measure_t_from_json(io::to_json(mu));
  REQUIRE(mu2.atoms.size() == 1);
  CHECK(mu2.atoms[0].theta == mu.atoms[0].theta);
  CHECK(mu2.atoms[0].weight == mu.atoms[0].weight);
  REQUIRE(mu2.density.has_value());
  CHECK(mu2.density->coeffs() == d.coeffs());

  MeasureR mr;
  mr.atoms.push_back(MeasureR::Atom{1.25, cx{0.5, 0.5}});
  const MeasureR mr2 = io::measure_r_from_json(io::to_json(mr));
  REQUIRE(mr2.atoms.size() == 1);
  CHECK(mr2.atoms[0].x == 1.25);

  // expression-backed line densities load from JSON
  const MeasureR md = io::measure_r_from_json(
      R"json({"atoms": [], "density": {"expr": "exp(-x^2)", "envelope": [1, 4]}})json");
  REQUIRE(md.density.has_value());
  CHECK(std::abs((*md.density)(1.0) - cx{std::exp(-1.0), 0.0}) < 1e-15);
}

TEST_CASE("malformed input is reported") {
  CHECK_THROWS_AS(io::coeffseq_from_json("not json"), io::FormatError);
  CHECK_THROWS_AS(io::coeffseq_from_json("{\"entries\": 3}"), io::FormatError);
  CHECK_THROWS_AS(io::trigsum_from_json("{\"nope\": 1}"), io::FormatError);
  CHECK_THROWS_AS(io::grid_from_json("{\"dim\": 1}"), io::FormatError);
  CHECK_THROWS_AS(io::measure_t_from_json("[]"), io::FormatError);
}

TEST_CASE("line measures with opaque densities refuse to serialize") {
  const MeasureR mu = MeasureR::with_density(gaussian_line(1.0));
  CHECK_THROWS_AS(io::to_json(mu), io::FormatError);
}
