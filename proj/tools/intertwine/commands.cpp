#include "commands.hpp"

#include <atomic>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "intertwine/error.hpp"
#include "intertwine/fusion.hpp"
#include "intertwine/kz.hpp"
#include "intertwine/level.hpp"
#include "intertwine/lie_algebra.hpp"
#include "intertwine/report.hpp"
#include "intertwine/weight_module.hpp"

namespace intertwine::cli {

using nlohmann::json;

namespace {

constexpr int kDefaultWindow = 8;
constexpr const char* kBuiltin = "builtin:sl2";

/// Accepts "3/2" as well as a bare JSON integer.
std::string text(const json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw DomainError(std::string("field '") + key + "' must be a string or an integer");
}

int integer(const json& j, const char* key, std::optional<int> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw DomainError(std::string("missing field '") + key + "'");
  }
  const json& v = j.at(key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    const Scalar s = Scalar::parse(v.get<std::string>());
    if (s.is_integer()) return static_cast<int>(s.rational().get_num().get_si());
  }
  throw DomainError(std::string("field '") + key + "' must be an integer");
}

std::string scalar_text(const json& j, const char* key) { return Scalar::parse(text(j, key)).str(); }

std::string module_text(const std::string& s, int window) { return ModuleSpec::parse(s, window).str(); }

/// "verma:0", "contragredient:hw:-1/2:7". A bare weight means L_p for p ∈ ℕ and
/// the highest-weight module otherwise.
json parse_target(const std::string& s, int window) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw DomainError("target must look like verma:X or contragredient:X");
  const std::string kind = s.substr(0, colon);
  if (kind != "verma" && kind != "contragredient") throw DomainError("unknown target kind '" + kind + "'");
  const std::string rest = s.substr(colon + 1);
  std::string module;
  if (rest.find(':') != std::string::npos) {
    module = module_text(rest, window);
  } else {
    const Scalar w = Scalar::parse(rest);
    module = (w.is_integer() && w.sign() >= 0) ? ModuleSpec::finite(static_cast<int>(w.rational().get_num().get_si())).str()
                                               : ModuleSpec::highest_weight(w, window).str();
  }
  return {{"kind", kind}, {"module", module}};
}

AlgebraPtr load_source(const std::string& source) {
  if (source == kBuiltin) return sl2();
  std::ifstream in(source);
  if (!in) throw DomainError("cannot open algebra file '" + source + "'");
  return load_algebra(json::parse(in));
}

void require_builtin(const json& config) {
  if (config.at("algebra") != kBuiltin) {
    throw UnsupportedShape("weight modules and affine computations are implemented for builtin:sl2 only");
  }
}

ModulePtr module(const json& config, const char* key) {
  return std::make_shared<const WeightModule>(WeightModule::from_spec(ModuleSpec::parse(config.at(key))));
}

json base_report(const json& config) {
  return {{"schema", kReportSchema}, {"config", config}};
}

std::string join_witnesses(const FusionResult& r) {
  std::string s;
  for (const auto& w : r.witnesses)
    s += "\n  witness m=" + w.m.str() + ": value " + w.value.str() + " = (l+2)*" + w.N.str();
  return s;
}

Outcome run_validate(const json& config) {
  const AlgebraPtr alg = load_source(config.at("algebra"));
  const ValidationReport v = validate(*alg);
  Outcome out;
  out.report = base_report(config);
  out.report["algebra"] = algebra_to_json(*alg);
  out.report["result"] = {{"antisymmetric", v.antisymmetric},   {"jacobi", v.jacobi},
                          {"form_symmetric", v.form_symmetric}, {"form_nondegenerate", v.form_nondegenerate},
                          {"form_invariant", v.form_invariant}, {"failures", v.failures},
                          {"ok", v.ok()}};
  out.exit_code = v.ok() ? kOk : kMalformed;
  out.summary = alg->name() + ": " + (v.ok() ? "valid" : "invalid");
  for (const auto& f : v.failures) out.summary += "\n  " + f;
  return out;
}

Outcome run_fusion(const json& config) {
  require_builtin(config);
  const Level level = Level::parse(config.at("level"));
  const json& q = config.at("query");
  const std::string kind = q.at("kind");
  FusionResult r;
  if (kind == "finite") {
    r = check_finite(level, q.at("p"), q.at("q"), q.at("r"));
  } else if (kind == "mixed") {
    r = check_mixed(level, q.at("p"), Scalar::parse(q.at("lambda").get<std::string>()),
                    Scalar::parse(q.at("mu").get<std::string>()));
  } else if (kind == "doubly") {
    r = check_doubly_infinite(level, Scalar::parse(q.at("lambda1").get<std::string>()),
                              Scalar::parse(q.at("lambda2").get<std::string>()),
                              Scalar::parse(q.at("lambda3").get<std::string>()));
  } else {
    r = dense_fusion_check(level, Scalar::parse(q.at("lambda").get<std::string>()),
                           Scalar::parse(q.at("delta").get<std::string>()), q.at("radius"));
  }
  Outcome out;
  out.report = base_report(config);
  out.report["algebra"] = algebra_to_json(*sl2());
  out.report["result"] = export_json(r);
  out.exit_code = r.verdict == Verdict::Unknown ? kUnknown : kOk;
  out.summary = "verdict: " + to_string(r.verdict);
  if (r.n) out.summary += " (n=" + r.n->str() + ")";
  out.summary += join_witnesses(r);
  if (!r.note.empty()) out.summary += "\n  note: " + r.note;
  return out;
}

struct Seeded {
  std::shared_ptr<const TensorModule> tensor;
  ModulePtr u3;
  GHom seed;
};

Seeded seed(const json& config, const ModulePtr& u3) {
  Seeded s;
  s.tensor = std::make_shared<const TensorModule>(module(config, "u1"), module(config, "u2"));
  s.u3 = u3;
  const auto homs = hom_space(s.tensor, u3);
  const int index = config.at("hom");
  if (index < 0 || static_cast<std::size_t>(index) >= homs.size()) {
    throw DomainError("hom index " + std::to_string(index) + " out of range; Hom_g(" + s.tensor->label() + ", " +
                      u3->label() + ") has dimension " + std::to_string(homs.size()));
  }
  s.seed = homs[index];
  return s;
}

Outcome run_kz(const json& config) {
  require_builtin(config);
  const Level level = Level::parse(config.at("level"));
  if (level.is_generic()) throw DomainError("kz needs a concrete level");
  const json& target = config.at("target");
  const auto u3 = std::make_shared<const WeightModule>(WeightModule::from_spec(ModuleSpec::parse(target.at("module"))));
  const Seeded s = seed(config, u3);
  const int N = config.at("N");
  const int cutoff = config.at("cutoff");

  std::optional<IntertwinerPrefix> p;
  if (target.at("kind") == "verma") {
    p = build_prefix(s.seed, std::make_shared<const VermaTarget>(u3, level.value(), cutoff), N);
  } else {
    p = build_prefix_contragredient(s.seed, std::make_shared<const ContragredientTarget>(u3, level.value(), cutoff), N);
  }
  const CheckReport comm = verify_commcomp(*p);
  const CheckReport kz = kz_residual(*p);

  Outcome out;
  out.report = base_report(config);
  out.report["algebra"] = algebra_to_json(*sl2());
  json result = export_json(*p);
  result["checks"] = {{"commcomp", export_json(comm)}, {"kz_residual", export_json(kz)}};
  out.report["result"] = result;

  const bool obstructed = p->obstructed_at() && *p->obstructed_at() <= N;
  out.exit_code = obstructed ? kObstructed : (comm.ok() && kz.ok() ? kOk : kCheckFailed);
  std::ostringstream os;
  os << "prefix " << s.tensor->label() << " -> " << target.at("kind").get<std::string>() << "(" << u3->label()
     << ") at level " << level.str() << ": built degrees 0.." << p->built() << " of " << N;
  if (obstructed) os << "\n  obstructed at N=" << *p->obstructed_at();
  os << "\n  commutation check: " << (comm.ok() ? "pass" : "FAIL") << " (" << comm.checked << " checked, "
     << comm.skipped << " skipped)";
  if (comm.counterexample) os << "\n    " << *comm.counterexample;
  os << "\n  KZ residual: " << (kz.ok() ? "pass" : "FAIL") << " (" << kz.checked << " checked, " << kz.skipped
     << " skipped)";
  if (kz.counterexample) os << "\n    " << *kz.counterexample;
  out.summary = os.str();
  return out;
}

Outcome run_candidate(const json& config) {
  require_builtin(config);
  const Level level = Level::parse(config.at("level"));
  const auto u3 = module(config, "u3");
  const Seeded s = seed(config, u3);
  Outcome out;
  out.report = base_report(config);
  out.report["algebra"] = algebra_to_json(*sl2());

  const Scalar h3 = level.is_generic() ? Scalar() : VermaTarget(u3, level.value(), 0).conformal_weight();
  const ObstructionReport scan = obstruction_scan(*s.tensor, level, h3);
  const auto first = scan.first();
  if (!first) {
    out.exit_code = kMalformed;
    out.report["error"] = level.is_generic() ? "no obstruction at generic level" : "no obstruction found";
    out.summary = out.report["error"].get<std::string>();
    return out;
  }
  const int N = *first;
  const auto target = std::make_shared<const VermaTarget>(u3, level.value(), N);
  const IntertwinerPrefix p = build_prefix(s.seed, target, N);
  const GeneralizedVermaModule& verma = target->verma();
  const auto& alg = *sl2();
  const Scalar weight = h3 + Scalar(N);

  json candidates = json::array();
  std::ostringstream os;
  os << "first obstruction N=" << N << ", candidate conformal weight " << weight.str();
  const auto& vecs = scan.entries.front().eigenvectors;
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    const GradedVector cand = singular_candidate(p, N, vecs[k]);
    const CandidateDiagnostics d = candidate_diagnostics(verma, cand);
    json c = {{"eigenvector", export_json(vecs[k])},
              {"degree", N},
              {"conformal_weight", weight.str()},
              {"terms", cand.size()},
              {"vector", export_json(cand, alg)}};
    c.update(export_json(d));
    c["l0_eigenvector"] = verma.sugawara_L0(cand) == weight * cand;
    candidates.push_back(c);
    os << "\n  eigenvector " << k << ": " << (d.is_zero ? "zero" : "nonzero (" + std::to_string(cand.size()) + " terms)")
       << ", in radical: " << (d.in_radical ? "yes" : "no") << ", annihilated: " << (d.annihilated ? "yes" : "no");
  }
  out.report["result"] = {{"obstructions", export_json(scan)},
                          {"N", N},
                          {"h3", h3.str()},
                          {"prefix", export_json(p)},
                          {"candidates", candidates}};
  out.summary = os.str();
  return out;
}

json normalize_query(const json& q) {
  const std::string kind = q.at("kind");
  if (kind == "finite") return {{"kind", kind}, {"p", integer(q, "p")}, {"q", integer(q, "q")}, {"r", integer(q, "r")}};
  if (kind == "mixed") {
    return {{"kind", kind}, {"p", integer(q, "p")}, {"lambda", scalar_text(q, "lambda")}, {"mu", scalar_text(q, "mu")}};
  }
  if (kind == "doubly") {
    return {{"kind", kind},
            {"lambda1", scalar_text(q, "lambda1")},
            {"lambda2", scalar_text(q, "lambda2")},
            {"lambda3", scalar_text(q, "lambda3")}};
  }
  if (kind == "dense") {
    return {{"kind", kind},
            {"lambda", scalar_text(q, "lambda")},
            {"delta", scalar_text(q, "delta")},
            {"radius", integer(q, "radius", 6)}};
  }
  throw DomainError("unknown fusion query kind '" + kind + "'");
}

}  // namespace

json normalize(const json& in) {
  if (!in.is_object()) throw DomainError("config must be a JSON object");
  const std::string command = in.at("command");
  json out = {{"command", command}, {"algebra", in.value("algebra", std::string(kBuiltin))}};
  if (command == "algebra-validate") return out;
  out["level"] = Level::parse(text(in, "level")).str();
  const int window = integer(in, "window", kDefaultWindow);
  if (command == "fusion") {
    out["query"] = normalize_query(in.at("query"));
    return out;
  }
  out["u1"] = module_text(text(in, "u1"), window);
  out["u2"] = module_text(text(in, "u2"), window);
  out["hom"] = integer(in, "hom", 0);
  if (command == "kz") {
    const json& t = in.at("target");
    out["target"] = t.is_string() ? parse_target(t.get<std::string>(), window)
                                  : parse_target(t.at("kind").get<std::string>() + ":" + text(t, "module"), window);
    out["N"] = integer(in, "N");
    if (out["N"].get<int>() < 0) throw DomainError("N must be non-negative");
    out["cutoff"] = integer(in, "cutoff", out["N"].get<int>());
    return out;
  }
  if (command == "candidate") {
    out["u3"] = module_text(text(in, "u3"), window);
    return out;
  }
  throw DomainError("unknown command '" + command + "'");
}

namespace {

Outcome dispatch(const json& raw) {
  json config;
  try {
    config = normalize(raw);
    const std::string command = config.at("command");
    if (command == "algebra-validate") return run_validate(config);
    if (command == "fusion") return run_fusion(config);
    if (command == "kz") return run_kz(config);
    return run_candidate(config);
  } catch (const std::exception& e) {
    Outcome out;
    out.exit_code = kMalformed;
    out.report = base_report(config.is_null() ? raw : config);
    out.report["error"] = e.what();
    out.summary = std::string("error: ") + e.what();
    return out;
  }
}

}  // namespace

Outcome run(const json& raw) {
  Outcome out = dispatch(raw);
  out.report["exit_code"] = out.exit_code;
  return out;
}

std::string serialize(const json& report) { return report.dump(2) + "\n"; }

Outcome replay(const json& report) {
  Outcome out;
  if (!report.is_object() || report.value("schema", "") != kReportSchema || !report.contains("config")) {
    out.exit_code = kMalformed;
    out.summary = std::string("error: not a ") + kReportSchema + " report";
    return out;
  }
  Outcome again = run(report.at("config"));
  const bool same = serialize(again.report) == serialize(report);
  out.exit_code = same ? kOk : kMalformed;
  out.report = again.report;
  out.summary = same ? "replay: identical" : "replay: output differs";
  return out;
}

int run_batch(std::istream& in, std::ostream& out, unsigned jobs) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);

  std::vector<std::promise<std::string>> results(lines.size());
  std::vector<std::future<std::string>> futures;
  for (auto& r : results) futures.push_back(r.get_future());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> malformed{false};
  const auto worker = [&] {
    for (std::size_t i = next++; i < lines.size(); i = next++) {
      Outcome o;
      try {
        o = run(json::parse(lines[i]));
      } catch (const json::exception& e) {
        o.exit_code = kMalformed;
        o.report = {{"schema", kReportSchema}, {"config", nullptr}, {"error", e.what()}, {"exit_code", kMalformed}};
      }
      if (o.exit_code == kMalformed) malformed = true;
      results[i].set_value(o.report.dump());
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned k = 0; k < std::max(1u, jobs); ++k) pool.emplace_back(worker);
  // Stream in input order as results complete.
  for (auto& f : futures) out << f.get() << '\n' << std::flush;
  return malformed ? kMalformed : kOk;
}

}  // namespace intertwine::cli
