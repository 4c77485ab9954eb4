#include "harmonics/io.hpp"

#include <json.hpp>

#include "harmonics/expr.hpp"

namespace harmonics::io {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FormatError("malformed JSON");
  return j;
}

json entries_json(int dim, const std::map<std::vector<int>, cx>& entries) {
  json out = json::array();
  for (const auto& [idx, v] : entries) {
    json e = json::array();
    e.push_back(json(idx));
    e.push_back(v.real());
    e.push_back(v.imag());
    out.push_back(std::move(e));
  }
  return json{{"dim", dim}, {"entries", std::move(out)}};
}

template <typename Setter>
int read_entries(const json& j, Setter&& set) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    throw FormatError("expected {\"dim\": n, \"entries\": [...]}");
  const int dim = j.at("dim").get<int>();
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_array())
      throw FormatError("entry must be [[index...], re, im]");
    std::vector<int> idx = e[0].get<std::vector<int>>();
    if (int(idx.size()) != dim) throw FormatError("entry index dimension mismatch");
    set(std::move(idx), cx{e[1].get<double>(), e[2].get<double>()});
  }
  return dim;
}

}  // namespace

std::string to_json(const CoeffSeq& a) {
  std::map<std::vector<int>, cx> entries;
  for (const auto& [n, v] : a.entries()) entries[{n}] = v;
  json j = entries_json(1, entries);
  j["degree"] = a.degree();
  return j.dump();
}

CoeffSeq coeffseq_from_json(const std::string& text) {
  const json j = parse_json(text);
  int degree = j.contains("degree") ? j.at("degree").get<int>() : 0;
  std::vector<std::pair<int, cx>> items;
  read_entries(j, [&](std::vector<int> idx, cx v) {
    if (idx[0] < 0) throw FormatError("CoeffSeq index must be >= 0");
    degree = std::max(degree, idx[0]);
    items.emplace_back(idx[0], v);
  });
  CoeffSeq a(degree);
  for (const auto& [n, v] : items) a.set(n, v);
  return a;
}

std::string to_json(const LaurentSeq& a) {
  std::map<std::vector<int>, cx> entries;
  for (const auto& [n, v] : a.entries()) entries[{n}] = v;
  json j = entries_json(1, entries);
  j["window"] = a.window();
  return j.dump();
}

LaurentSeq laurentseq_from_json(const std::string& text) {
  const json j = parse_json(text);
  int window = j.contains("window") ? j.at("window").get<int>() : 0;
  std::vector<std::pair<int, cx>> items;
  read_entries(j, [&](std::vector<int> idx, cx v) {
    window = std::max(window, std::abs(idx[0]));
    items.emplace_back(idx[0], v);
  });
  LaurentSeq a(window);
  for (const auto& [n, v] : items) a.set(n, v);
  return a;
}

std::string to_json(const MultiSeq& a) { return entries_json(a.dim(), a.entries()).dump(); }

MultiSeq multiseq_from_json(const std::string& text) {
  const json j = parse_json(text);
  std::vector<std::pair<std::vector<int>, cx>> items;
  const int dim = read_entries(j, [&](std::vector<int> idx, cx v) {
    items.emplace_back(std::move(idx), v);
  });
  MultiSeq a(dim);
  for (const auto& [idx, v] : items) a.set(idx, v);
  return a;
}

std::string to_json(const IndexedFamily& a) {
  return entries_json(a.dim(), a.entries()).dump();
}

IndexedFamily family_from_json(const std::string& text) {
  const json j = parse_json(text);
  std::vector<std::pair<std::vector<int>, cx>> items;
  const int dim = read_entries(j, [&](std::vector<int> idx, cx v) {
    items.emplace_back(std::move(idx), v);
  });
  IndexedFamily a(dim);
  for (const auto& [idx, v] : items) a.set(idx, v);
  return a;
}

std::string to_json(const TrigPoly& a) { return entries_json(a.dim(), a.coeffs()).dump(); }

TrigPoly trigpoly_from_json(const std::string& text) {
  const json j = parse_json(text);
  std::vector<std::pair<std::vector<int>, cx>> items;
  const int dim = read_entries(j, [&](std::vector<int> idx, cx v) {
    items.emplace_back(std::move(idx), v);
  });
  TrigPoly a(dim);
  for (const auto& [idx, v] : items) a.set(idx, v);
  return a;
}

std::string to_json(const CircleGrid& g) {
  json vals = json::array();
  for (const cx& v : g.values()) vals.push_back(json::array({v.real(), v.imag()}));
  return json{{"dim", g.dim()}, {"m", g.samples_per_axis()}, {"values", vals}}.dump();
}

CircleGrid grid_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("dim") || !j.contains("m") || !j.contains("values"))
    throw FormatError("expected {\"dim\", \"m\", \"values\"}");
  std::vector<cx> vals;
  for (const auto& e : j.at("values")) {
    if (!e.is_array() || e.size() != 2) throw FormatError("value must be [re, im]");
    vals.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return CircleGrid(j.at("dim").get<int>(), j.at("m").get<int>(), std::move(vals));
}

std::string to_json(const TrigSum& f) {
  json out = json::array();
  for (const auto& t : f.terms())
    out.push_back(json::array({t.freq, t.amp.real(), t.amp.imag()}));
  return out.dump();
}

TrigSum trigsum_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw FormatError("expected [[xi, re, im], ...]");
  TrigSum f;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) throw FormatError("term must be [xi, re, im]");
    f.add_term(e[0].get<double>(), cx{e[1].get<double>(), e[2].get<double>()});
  }
  return f;
}

std::string to_json(const StepFunction& s) {
  json vals = json::array();
  for (const cx& v : s.values()) vals.push_back(json::array({v.real(), v.imag()}));
  return json{{"breakpoints", s.breakpoints()}, {"values", vals}}.dump();
}

StepFunction stepfunction_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("breakpoints") || !j.contains("values"))
    throw FormatError("expected {\"breakpoints\", \"values\"}");
  std::vector<cx> vals;
  for (const auto& e : j.at("values")) {
    if (!e.is_array() || e.size() != 2) throw FormatError("value must be [re, im]");
    vals.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return StepFunction(j.at("breakpoints").get<std::vector<double>>(), std::move(vals));
}

std::string to_json(const MeasureT& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms) {
    json e = json::array();
    e.push_back(json(a.theta));
    e.push_back(a.weight.real());
    e.push_back(a.weight.imag());
    atoms.push_back(std::move(e));
  }
  json j{{"dim", mu.dim}, {"atoms", std::move(atoms)}};
  if (mu.density)
    j["density"] = json::parse(to_json(*mu.density));
  else
    j["density"] = nullptr;
  return j.dump();
}

MeasureT measure_t_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("dim") || !j.contains("atoms"))
    throw FormatError("expected {\"dim\", \"atoms\", \"density\"}");
  MeasureT mu(j.at("dim").get<int>());
  for (const auto& e : j.at("atoms")) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_array())
      throw FormatError("atom must be [[point...], re, im]");
    MeasureT::Atom a;
    a.theta = e[0].get<std::vector<double>>();
    if (int(a.theta.size()) != mu.dim) throw FormatError("atom dimension mismatch");
    a.weight = cx{e[1].get<double>(), e[2].get<double>()};
    mu.atoms.push_back(std::move(a));
  }
  if (j.contains("density") && !j.at("density").is_null())
    mu.density = trigpoly_from_json(j.at("density").dump());
  return mu;
}

std::string to_json(const MeasureR& mu) {
  if (mu.density)
    throw FormatError(
        "MeasureR with a density serializes only when expression-backed; "
        "write the atoms and the defining expression separately");
  json atoms = json::array();
  for (const auto& a : mu.atoms)
    atoms.push_back(json::array({json::array({a.x}), a.weight.real(), a.weight.imag()}));
  return json{{"atoms", std::move(atoms)}, {"density", nullptr}}.dump();
}

MeasureR measure_r_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("atoms")) throw FormatError("expected {\"atoms\", \"density\"}");
  MeasureR mu;
  for (const auto& e : j.at("atoms")) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_array() || e[0].size() != 1)
      throw FormatError("atom must be [[x], re, im]");
    mu.atoms.push_back(
        MeasureR::Atom{e[0][0].get<double>(), cx{e[1].get<double>(), e[2].get<double>()}});
  }
  if (j.contains("density") && !j.at("density").is_null()) {
    const json& d = j.at("density");
    if (!d.contains("expr") || !d.contains("envelope"))
      throw FormatError("line density must be {\"expr\": ..., \"envelope\": [C, l]}");
    const auto env = d.at("envelope").get<std::vector<double>>();
    if (env.size() != 2) throw FormatError("envelope must be [C, l]");
    mu.density = to_line_function(parse(d.at("expr").get<std::string>()),
                                  Envelope{env[0], env[1]});
  }
  return mu;
}

std::string to_json(const FiniteMetricSpace& m) {
  json rows = json::array();
  const size_t n = m.size();
  for (size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (size_t j2 = 0; j2 < n; ++j2) row.push_back(m.distance(i, j2));
    rows.push_back(std::move(row));
  }
  return json{{"points", m.labels()}, {"dist", std::move(rows)}}.dump();
}

FiniteMetricSpace metric_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("points") || !j.contains("dist"))
    throw FormatError("expected {\"points\", \"dist\"}");
  const auto labels = j.at("points").get<std::vector<std::string>>();
  std::vector<double> dist;
  for (const auto& row : j.at("dist"))
    for (const auto& v : row) dist.push_back(v.get<double>());
  return FiniteMetricSpace(labels, std::move(dist));
}

}  // namespace harmonics::io
