#include "intertwine/report.hpp"

#include <algorithm>
#include <set>

#include "intertwine/error.hpp"

namespace intertwine {

using nlohmann::json;

json export_json(const Scalar& s) { return s.str(); }

json export_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

json export_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(export_json(m.row(r)));
  return out;
}

json export_json(const GradedVector& v, const SimpleLieAlgebra& alg) {
  json out = json::array();
  for (const auto& [key, c] : v.terms()) {
    json mono = json::array();
    for (const auto& mode : key.mono) mono.push_back(json::array({alg.basis_names().at(mode.a), -mode.depth}));
    out.push_back({{"monomial", mono}, {"base", "v" + std::to_string(key.base)}, {"coeff", c.str()}});
  }
  return out;
}

GradedVector import_graded_vector(const json& doc, const SimpleLieAlgebra& alg) {
  const auto& names = alg.basis_names();
  GradedVector v;
  for (const auto& term : doc) {
    BasisKey key;
    for (const auto& mode : term.at("monomial")) {
      const auto name = mode.at(0).get<std::string>();
      const auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) throw DomainError("unknown basis element " + name);
      const int n = mode.at(1).get<int>();
      if (n >= 0) throw DomainError("monomial modes must be negative");
      key.mono.push_back(Mode{static_cast<std::size_t>(it - names.begin()), -n});
    }
    if (!is_canonical(key.mono)) throw DomainError("monomial is not in canonical order");
    const auto base = term.at("base").get<std::string>();
    if (base.size() < 2 || base[0] != 'v') throw DomainError("bad base label " + base);
    key.base = std::stoul(base.substr(1));
    v.add(key, Scalar::parse(term.at("coeff").get<std::string>()));
  }
  return v;
}

json export_json(const ObstructionReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json vecs = json::array();
    for (const auto& v : e.eigenvectors) vecs.push_back(export_json(v));
    entries.push_back({{"N", e.N}, {"eigenvalue", e.eigenvalue.str()}, {"eigenvectors", vecs}});
  }
  return {{"generic_level", r.generic_level}, {"entries", entries}};
}

json export_json(const CheckReport& r) {
  json out = {{"ok", r.ok()}, {"checked", r.checked}, {"skipped", r.skipped}};
  out["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
  return out;
}

json export_json(const CandidateDiagnostics& d) {
  return {{"is_zero", d.is_zero}, {"in_radical", d.in_radical}, {"annihilated", d.annihilated}};
}

json export_json(const FusionResult& r) {
  json ws = json::array();
  for (const auto& w : r.witnesses) ws.push_back({{"m", w.m.str()}, {"value", w.value.str()}, {"N", w.N.str()}});
  json out = {{"verdict", to_string(r.verdict)}, {"witnesses", ws}, {"note", r.note}};
  out["n"] = r.n ? json(r.n->str()) : json(nullptr);
  return out;
}

json export_json(const IntertwinerPrefix& p) {
  const auto& t = p.tensor();
  const auto& names = t.algebra()->basis_names();
  json out;
  out["tensor"] = t.label();
  out["target"] = {{"kind", p.target().kind()}, {"base", p.target().base()->label()}, {"cutoff", p.target().cutoff()}};
  out["level"] = p.level().str();
  out["h"] = p.h().str();
  out["seed"] = export_json(p.seed().map);
  out["requested"] = p.requested();
  out["prefix_degrees"] = p.built() + 1;
  out["obstructed_at"] = p.obstructed_at() ? json(*p.obstructed_at()) : json(nullptr);
  out["scan_supported"] = p.scan_supported();
  out["obstructions"] = export_json(p.report());

  json degrees = json::array();
  for (int m = 0; m <= p.built(); ++m) {
    json blocks = json::array();
    for (const auto& block : t.blocks()) {
      std::set<BasisKey> rows;
      json columns = json::array();
      json unavailable = json::array();
      for (std::size_t pos = 0; pos < block.basis.size(); ++pos) {
        const std::size_t idx = block.basis[pos];
        const auto [i, j] = t.factors(idx);
        columns.push_back(json::array({i, j}));
        const auto& y = p.Y(m, idx);
        if (!y) {
          unavailable.push_back(pos);
          continue;
        }
        for (const auto& [key, c] : y->vec.terms()) rows.insert(key);
      }
      json row_labels = json::array();
      json matrix = json::array();
      for (const auto& key : rows) {
        row_labels.push_back(to_string(key, names));
        json row = json::array();
        for (const std::size_t idx : block.basis) {
          const auto& y = p.Y(m, idx);
          row.push_back(y ? y->vec.coeff(key).str() : "0");
        }
        matrix.push_back(row);
      }
      blocks.push_back({{"weight", block.weight.str()},
                        {"columns", columns},
                        {"rows", row_labels},
                        {"matrix", matrix},
                        {"unavailable", unavailable}});
    }
    degrees.push_back({{"m", m}, {"blocks", blocks}});
  }
  out["degrees"] = degrees;
  return out;
}

}  // namespace intertwine
