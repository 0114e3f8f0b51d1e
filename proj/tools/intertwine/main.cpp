#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "commands.hpp"

namespace {

using nlohmann::json;
using namespace intertwine::cli;

struct Common {
  bool json_out = false;
  std::string out_file;
  std::string algebra = "builtin:sl2";
  int window = 8;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--json", c.json_out, "Print the JSON report instead of a summary");
  sub->add_option("-o,--output", c.out_file, "Write the JSON report to this file");
  sub->add_option("--algebra", c.algebra, "builtin:sl2 or a JSON algebra definition");
  sub->add_option("--window", c.window, "Default window for infinite-dimensional modules");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

/// Writes to --output, and to $INTERTWINE_OUTPUT_DIR/<command>-<hash>.json.
void write_report(const Outcome& o, const Common& c) {
  const std::string text = serialize(o.report);
  if (!c.out_file.empty()) std::ofstream(c.out_file) << text;
  if (const char* dir = std::getenv("INTERTWINE_OUTPUT_DIR"); dir && *dir) {
    std::filesystem::create_directories(dir);
    const std::string command = o.report["config"].value("command", std::string("report"));
    char name[32];
    std::snprintf(name, sizeof name, "%016llx", static_cast<unsigned long long>(fnv1a(o.report["config"].dump())));
    std::ofstream(std::filesystem::path(dir) / (command + "-" + name + ".json")) << text;
  }
}

int finish(const Outcome& o, const Common& c) {
  write_report(o, c);
  if (c.json_out) {
    std::cout << serialize(o.report);
  } else if (o.exit_code == kMalformed && o.report.contains("error")) {
    std::cerr << o.summary << '\n';
  } else {
    std::cout << o.summary << '\n';
  }
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intertwining operators and fusion rules for affine sl2"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;

  auto* algebra = app.add_subcommand("algebra", "Algebra definitions");
  algebra->require_subcommand(1);
  auto* validate = algebra->add_subcommand("validate", "Check antisymmetry, Jacobi and invariance of the form");
  std::string source = "builtin:sl2";
  validate->add_option("source", source, "builtin:sl2 or a JSON file");
  validate->add_flag("--json", common.json_out);
  validate->add_option("-o,--output", common.out_file);

  auto* fusion = app.add_subcommand("fusion", "Decide a fusion-rule criterion");
  add_common(fusion, common);
  std::string level;
  fusion->add_option("--level", level, "Level: p/q, a+b*sqrt(d) or generic")->required();
  std::vector<int> finite;
  std::vector<std::string> mixed, doubly, dense;
  int radius = 6;
  auto* o_finite = fusion->add_option("--finite", finite, "p q r")->expected(3);
  auto* o_mixed = fusion->add_option("--mixed", mixed, "p lambda mu")->expected(3);
  auto* o_doubly = fusion->add_option("--doubly", doubly, "lambda1 lambda2 lambda3")->expected(3);
  auto* o_dense = fusion->add_option("--dense", dense, "lambda delta")->expected(2);
  fusion->add_option("--radius", radius, "Window radius for dense modules");
  o_finite->excludes(o_mixed, o_doubly, o_dense);
  o_mixed->excludes(o_doubly, o_dense);
  o_doubly->excludes(o_dense);

  auto* kz = app.add_subcommand("kz", "Build an intertwiner prefix Y_0..Y_N");
  add_common(kz, common);
  std::string u1, u2, target;
  int N = 0, hom = 0;
  std::optional<int> cutoff;
  kz->add_option("--level", level)->required();
  kz->add_option("--u1", u1, "finite:p, hw:l[:depth] or dense:l:delta[:radius]")->required();
  kz->add_option("--u2", u2)->required();
  kz->add_option("--target", target, "verma:X or contragredient:X")->required();
  kz->add_option("-N", N, "Highest degree to build")->required();
  kz->add_option("--hom", hom, "Index into the basis of Hom_g(U1 (x) U2, U3)");
  kz->add_option("--cutoff", cutoff, "Degree cutoff of the target (default N)");

  auto* candidate = app.add_subcommand("candidate", "Singular-vector candidates at the first obstruction");
  add_common(candidate, common);
  std::optional<int> p, q, r;
  std::string u3;
  candidate->add_option("--level", level)->required();
  candidate->add_option("--p", p);
  candidate->add_option("--q", q);
  candidate->add_option("--r", r);
  candidate->add_option("--u1", u1);
  candidate->add_option("--u2", u2);
  candidate->add_option("--u3", u3);
  candidate->add_option("--hom", hom);

  auto* batch = app.add_subcommand("batch", "Run JSON-lines configs, one report per line");
  std::string batch_file = "-";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  batch->add_option("file", batch_file, "Input file, - for stdin");
  batch->add_option("-j,--jobs", jobs, "Worker threads");

  auto* replay_cmd = app.add_subcommand("replay", "Rerun the config embedded in a report and compare");
  std::string report_file;
  replay_cmd->add_option("report", report_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kMalformed;
  }

  json config;
  if (validate->parsed()) {
    config = {{"command", "algebra-validate"}, {"algebra", source}};
  } else if (fusion->parsed()) {
    config = {{"command", "fusion"}, {"level", level}, {"algebra", common.algebra}};
    if (!finite.empty()) {
      config["query"] = {{"kind", "finite"}, {"p", finite[0]}, {"q", finite[1]}, {"r", finite[2]}};
    } else if (!mixed.empty()) {
      config["query"] = {{"kind", "mixed"}, {"p", mixed[0]}, {"lambda", mixed[1]}, {"mu", mixed[2]}};
    } else if (!doubly.empty()) {
      config["query"] = {{"kind", "doubly"}, {"lambda1", doubly[0]}, {"lambda2", doubly[1]}, {"lambda3", doubly[2]}};
    } else if (!dense.empty()) {
      config["query"] = {{"kind", "dense"}, {"lambda", dense[0]}, {"delta", dense[1]}, {"radius", radius}};
    } else {
      std::cerr << "fusion: one of --finite, --mixed, --doubly, --dense is required\n";
      return kMalformed;
    }
  } else if (kz->parsed()) {
    config = {{"command", "kz"}, {"level", level},   {"algebra", common.algebra}, {"window", common.window},
              {"u1", u1},        {"u2", u2},         {"target", target},          {"N", N},
              {"hom", hom}};
    if (cutoff) config["cutoff"] = *cutoff;
  } else if (candidate->parsed()) {
    config = {{"command", "candidate"}, {"level", level}, {"algebra", common.algebra}, {"window", common.window},
              {"hom", hom}};
    if (p && q && r) {
      config["u1"] = "finite:" + std::to_string(*p);
      config["u2"] = "finite:" + std::to_string(*q);
      config["u3"] = "finite:" + std::to_string(*r);
    } else if (!u1.empty() && !u2.empty() && !u3.empty()) {
      config["u1"] = u1;
      config["u2"] = u2;
      config["u3"] = u3;
    } else {
      std::cerr << "candidate: give --p --q --r or --u1 --u2 --u3\n";
      return kMalformed;
    }
  } else if (batch->parsed()) {
    if (batch_file == "-") return run_batch(std::cin, std::cout, jobs);
    std::ifstream in(batch_file);
    if (!in) {
      std::cerr << "batch: cannot open " << batch_file << '\n';
      return kMalformed;
    }
    return run_batch(in, std::cout, jobs);
  } else if (replay_cmd->parsed()) {
    std::ifstream in(report_file);
    if (!in) {
      std::cerr << "replay: cannot open " << report_file << '\n';
      return kMalformed;
    }
    json report;
    try {
      report = json::parse(in);
    } catch (const json::exception& e) {
      std::cerr << "replay: " << e.what() << '\n';
      return kMalformed;
    }
    const Outcome o = replay(report);
    std::cout << o.summary << '\n';
    return o.exit_code;
  }
  return finish(run(config), common);
}
