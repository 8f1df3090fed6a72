#include "shadowlab/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "shadowlab/bounds.hpp"
#include "shadowlab/constructions.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/extremal.hpp"
#include "shadowlab/forbidden.hpp"
#include "shadowlab/io.hpp"
#include "shadowlab/report.hpp"
#include "shadowlab/stability.hpp"

namespace shadowlab::cli {

namespace {

struct Options {
  std::string input;
  std::string family;
  int l = 0;
  int r = 3;
  int n = 0;
  int m = 0;
  double eps = 0.05;
  double delta = 0.05;
  int cap = -1;
  std::string mode = "auto";
  std::string out;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  std::string engine = "auto";
  bool verify_bound = false;
  std::string csv;
  std::string cache;
  std::string revalidate;
  std::size_t remove = 0;
  std::size_t add = 0;
};

// Failure raised after part of the report is known.
struct CommandResult {
  int exit_code = kOk;
  Json results = Json::array();
  std::optional<std::string> digest;
};

Family analysis_family(const Options& o, bool allow_none) {
  if (o.family == "cancellative") return Family::cancellative();
  if (o.family == "expansion") {
    if (o.l < 2) throw ParameterError("--family expansion needs --l >= r");
    return Family::expansion(o.l);
  }
  if (allow_none && (o.family.empty() || o.family == "none")) return Family::none();
  throw ParameterError("--family must be " + std::string(allow_none ? "none, " : "") +
                       "cancellative or expansion; got '" + o.family + "'");
}

Engine parse_engine(const std::string& s) {
  if (s == "auto") return Engine::automatic;
  if (s == "naive") return Engine::naive;
  if (s == "orderly") return Engine::orderly;
  throw ParameterError("--engine must be auto, naive or orderly");
}

FitMode parse_mode(const std::string& s) {
  if (s == "auto") return FitMode::automatic;
  if (s == "exact") return FitMode::exact;
  if (s == "heuristic") return FitMode::heuristic;
  throw ParameterError("--mode must be auto, exact or heuristic");
}

struct Input {
  Hypergraph graph;
  std::string digest;
};

Input load_input(const Options& o) {
  if (o.input.empty()) throw ParameterError("--input FILE is required");
  const auto text = read_file(o.input);
  return {parse_edge_list(text), sha256_hex(text)};
}

EnumOptions enum_options(const Options& o) {
  EnumOptions e;
  e.engine = parse_engine(o.engine);
  e.node_budget = o.budget;
  return e;
}

CommandResult cmd_shadow(const Options& o) {
  auto in = load_input(o);
  const auto& h = in.graph;
  if (h.r() < 2) throw ParameterError("shadow needs r >= 2");
  Json j{{"type", "shadow"}, {"graph", to_json(h)}};
  const auto sh = shadow(h);
  j["shadow_size"] = sh.size();
  j["shadow"] = to_json(sh)["edges"];
  j["degrees"] = degrees(h);
  if (!h.empty()) {
    const auto st = sigma_hat(h);
    j["sigma_hat"] = st.sigma_hat;
    j["sigma_hat_edge"] = to_json(st.argmax_edge);
  }
  if (o.l > 0) j["z"] = to_json(z_value(h, o.l));
  CommandResult res;
  res.results.push_back(j);
  res.digest = in.digest;
  return res;
}

CommandResult cmd_check(const Options& o) {
  auto in = load_input(o);
  const auto fam = analysis_family(o, false);
  const auto w = find_violation(in.graph, fam);
  CommandResult res;
  res.digest = in.digest;
  res.results.push_back(Json{{"type", "check"},
                             {"family", fam.name()},
                             {"free", !w.has_value()},
                             {"witness", w ? to_json(*w) : Json(nullptr)}});
  res.exit_code = w ? kCheckFailed : kOk;
  return res;
}

CommandResult cmd_bound(const Options& o) {
  auto in = load_input(o);
  const auto& h = in.graph;
  const auto fam = analysis_family(o, true);
  BoundReport rep;
  switch (fam.kind) {
    case Family::Kind::none:
      rep = kk_bound(h);
      break;
    case Family::Kind::cancellative:
      require_free(h, fam, "bound");
      rep = cancellative_report(h);
      break;
    case Family::Kind::expansion:
      require_free(h, fam, "bound");
      rep = expansion_report(h, fam.ell);
      break;
  }
  const bool holds = rep.slack >= -kBoundTolerance * std::max(1.0, std::abs(rep.bound));
  CommandResult res;
  res.digest = in.digest;
  res.results.push_back(Json{{"type", "bound"}, {"family", fam.name()}, {"report", to_json(rep)}, {"holds", holds}});
  res.exit_code = holds ? kOk : kCheckFailed;
  return res;
}

CommandResult cmd_lemmas(const Options& o) {
  auto in = load_input(o);
  const auto& h = in.graph;
  const auto fam = analysis_family(o, false);
  Json reports;
  bool ok = true;
  auto add = [&](const std::string& key, const InequalityReport& rep) {
    reports[key] = to_json(rep);
    ok = ok && rep.all_hold();
  };
  if (fam.kind == Family::Kind::cancellative) {
    add("lemma8", lemma8_check(h));
    if (!h.empty()) add("lemma9", lemma9_check(h));
    add("lemma10", lemma10_check(h));
  } else {
    add("clique_sigma", clique_sigma_check(h, fam.ell));
    if (!h.empty()) {
      const auto l14 = lemma14_check(h, fam.ell);
      add("lemma14", l14.report);
      reports["z"] = to_json(l14.z);
    }
  }
  CommandResult res;
  res.digest = in.digest;
  res.results.push_back(Json{{"type", "lemmas"}, {"family", fam.name()}, {"all_hold", ok}, {"reports", reports}});
  res.exit_code = ok ? kOk : kCheckFailed;
  return res;
}

BoundKind bound_kind_for(const Family& f) {
  switch (f.kind) {
    case Family::Kind::cancellative:
      return BoundKind::cancellative;
    case Family::Kind::expansion:
      return BoundKind::expansion;
    case Family::Kind::none:
      break;
  }
  return BoundKind::kruskal_katona;
}

void write_csv(const std::string& path, const Json& row) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParameterError("cannot write " + path);
  bool first = true;
  for (auto it = row.begin(); it != row.end(); ++it) {
    out << (first ? "" : ",") << it.key();
    first = false;
  }
  out << '\n';
  first = true;
  for (auto it = row.begin(); it != row.end(); ++it) {
    out << (first ? "" : ",");
    first = false;
    if (it.value().is_string())
      out << it.value().get<std::string>();
    else
      out << dump_json(it.value(), -1);
  }
  out << '\n';
}

CommandResult cmd_enumerate(const Options& o) {
  if (o.n < 0 || o.r < 1) throw ParameterError("enumerate needs --n >= 0 and --r >= 1");
  const auto fam = analysis_family(o, true);
  const auto eo = enum_options(o);
  EnumStats stats;
  std::vector<CanonicalForm> classes;
  bool cached = false;
  if (!o.cache.empty()) {
    const auto file = class_cache_path(o.cache, o.n, o.r, fam, resolve_engine(o.n, o.r, eo));
    cached = std::filesystem::exists(file);
    classes = cached_free_classes(o.cache, o.n, o.r, fam, eo);
    stats.n = o.n;
    stats.r = o.r;
    stats.family = fam;
    stats.engine = resolve_engine(o.n, o.r, eo);
    stats.classes = classes.size();
    for (const auto& c : classes) stats.max_edges = std::max(stats.max_edges, c.masks.size());
  } else {
    classes = free_classes(o.n, o.r, fam, eo, &stats);
  }
  Json summary{{"type", "enumerate"}, {"stats", to_json(stats)}, {"classes", classes.size()}};
  std::size_t max_edges = 0;
  for (const auto& c : classes) max_edges = std::max(max_edges, c.masks.size());
  summary["max_edges"] = max_edges;
  if (!o.cache.empty()) summary["cache_hit"] = cached;

  CommandResult res;
  Json csv_row{{"n", o.n}, {"r", o.r}, {"family", fam.name()}, {"engine", engine_name(stats.engine)},
               {"classes", classes.size()}, {"max_edges", max_edges}};
  if (o.verify_bound) {
    if (o.r < 2) throw ParameterError("--verify-bound needs r >= 2");
    const auto kind = bound_kind_for(fam);
    const auto sweep = verify_bound_over_enumeration(o.n, o.r, fam, kind, fam.ell, eo);
    summary["verify_bound"] = to_json(sweep);
    csv_row["bound_kind"] = bound_kind_name(kind);
    csv_row["checked"] = sweep.checked;
    csv_row["violations"] = sweep.violations;
    csv_row["tight"] = sweep.tight;
    csv_row["min_slack"] = sweep.min_slack;
    if (sweep.violations > 0) res.exit_code = kCheckFailed;
  }
  if (!o.csv.empty()) write_csv(o.csv, csv_row);
  res.results.push_back(summary);
  return res;
}

CommandResult cmd_extremal(const Options& o) {
  if (o.n < 0 || o.r < 1) throw ParameterError("extremal needs --n >= 0 and --r >= 1");
  const auto fam = analysis_family(o, true);
  const auto eo = enum_options(o);
  const auto ext = extremal_search(o.n, o.r, fam, eo);
  auto j = to_json(ext);
  j["engine"] = engine_name(resolve_engine(o.n, o.r, eo));
  CommandResult res;
  res.results.push_back(Json{{"type", "extremal"}, {"result", j}});
  return res;
}

CommandResult cmd_stability(const Options& o) {
  auto in = load_input(o);
  const auto fam = analysis_family(o, false);
  FitOptions fo;
  fo.mode = parse_mode(o.mode);
  fo.seed = o.seed;
  const auto cert = stability_certificate(in.graph, fam, o.eps, o.delta, fo);
  CommandResult res;
  res.digest = in.digest;
  res.results.push_back(Json{{"type", "stability"}, {"certificate", to_json(cert)}});
  if (o.cap >= 0) {
    const auto fit = partition_fit(in.graph, cert.ell, o.cap, fo);
    res.results.push_back(Json{{"type", "partition_fit"}, {"fit", to_json(fit)}});
  }
  res.exit_code = cert.status == "not-certified" ? kCheckFailed : kOk;
  return res;
}

CommandResult cmd_construct(const Options& o) {
  Hypergraph h;
  Json params{{"family", o.family}};
  if (o.family == "turan") {
    h = turan(o.n, o.l, o.r).graph;
    params["n"] = o.n;
    params["l"] = o.l;
    params["r"] = o.r;
  } else if (o.family == "padded") {
    h = turan_padded(o.n, o.m, o.l, o.r);
    params["n"] = o.n;
    params["m"] = o.m;
    params["l"] = o.l;
    params["r"] = o.r;
  } else if (o.family == "complete") {
    h = complete(o.n, o.r);
    params["n"] = o.n;
    params["r"] = o.r;
  } else if (o.family == "fano") {
    h = fano();
  } else {
    throw ParameterError("construct --family must be turan, padded, complete or fano");
  }
  Json j{{"type", "construct"}, {"params", params}};
  if (o.remove > 0 || o.add > 0) {
    const auto p = perturb(h, o.seed, o.remove, o.add);
    h = p.graph;
    Json removed = Json::array();
    for (const auto& e : p.removed) removed.push_back(to_json(e));
    Json added = Json::array();
    for (const auto& e : p.added) added.push_back(to_json(e));
    j["perturbation"] = Json{{"seed", o.seed}, {"removed", removed}, {"added", added}};
  }
  const auto text = serialize_edge_list(h);
  j["graph"] = to_json(h);
  j["shadow_size"] = shadow_size(h);
  CommandResult res;
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot write " + o.out);
    out << text;
    j["file"] = o.out;
  }
  res.digest = sha256_hex(text);
  res.results.push_back(j);
  return res;
}

Json make_report(const std::string& command, const std::vector<std::string>& args, const CommandResult& res,
                 double runtime_ms) {
  return Json{{"schema_version", kReportSchemaVersion},
              {"tool_version", kToolVersion},
              {"command", command},
              {"argv", args},
              {"input_digest", res.digest ? Json(*res.digest) : Json(nullptr)},
              {"results", res.results},
              {"runtime_ms", runtime_ms}};
}

// Compares the recomputed payload with a stored report.
Json revalidate(const std::string& path, const Json& fresh) {
  const auto old = Json::parse(read_file(path));
  const bool digest_ok = old.value("input_digest", Json(nullptr)) == fresh["input_digest"];
  const bool command_ok = old.value("command", std::string()) == fresh["command"].get<std::string>();
  const bool results_ok =
      old.contains("results") && dump_json(old["results"], -1) == dump_json(Json::parse(dump_json(fresh["results"], -1)), -1);
  return Json{{"file", path},
              {"command_matches", command_ok},
              {"digest_matches", digest_ok},
              {"results_match", results_ok},
              {"match", digest_ok && command_ok && results_ok}};
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Edge-list file");
  sub->add_option("--family", o.family, "none | cancellative | expansion (construct: turan | padded | complete | fano)");
  sub->add_option("--l", o.l, "Clique or part parameter ell");
  sub->add_option("--r", o.r, "Uniformity");
  sub->add_option("--n", o.n, "Vertex count");
  sub->add_option("--m", o.m, "Populated vertices for padded constructions");
  sub->add_option("--eps", o.eps, "Stability epsilon");
  sub->add_option("--delta", o.delta, "Stability delta");
  sub->add_option("--cap", o.cap, "Extra partition_fit run with this cap");
  sub->add_option("--mode", o.mode, "partition_fit mode: auto | exact | heuristic");
  sub->add_option("--out", o.out, "Output file");
  sub->add_option("--seed", o.seed, "Seed for randomized steps");
  sub->add_option("--budget", o.budget, "Enumeration node budget (0 = none)");
  sub->add_option("--engine", o.engine, "Enumeration engine: auto | naive | orderly");
  sub->add_flag("--verify-bound", o.verify_bound, "Check the family's bound on every enumerated class");
  sub->add_option("--csv", o.csv, "Write an enumeration summary row as CSV");
  sub->add_option("--cache", o.cache, "Class cache directory");
  sub->add_option("--revalidate", o.revalidate, "Recompute and diff against a stored report");
  sub->add_option("--delete", o.remove, "construct: delete this many random edges");
  sub->add_option("--add", o.add, "construct: add this many random non-edges");
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  Outcome outcome;
  Options o;
  CLI::App app{"Shadow bounds and stability checks for uniform hypergraphs", "shadowlab"};
  app.require_subcommand(1, 1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"shadow", "Shadow, degrees and sigma-hat of an input"},
      {"check", "Freeness test with witness"},
      {"bound", "Shadow bound for the family"},
      {"lemmas", "Degree-sum inequalities of the family"},
      {"enumerate", "Isomorph-free enumeration of free graphs"},
      {"extremal", "Exact extremal number and extremal classes"},
      {"stability", "Stability certificate"},
      {"construct", "Build a standard hypergraph"}};
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    outcome.diagnostics = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = kUsage;
    outcome.diagnostics = std::string(e.what()) + "\n";
    return outcome;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  CommandResult res;
  try {
    if (command == "shadow") res = cmd_shadow(o);
    else if (command == "check") res = cmd_check(o);
    else if (command == "bound") res = cmd_bound(o);
    else if (command == "lemmas") res = cmd_lemmas(o);
    else if (command == "enumerate") res = cmd_enumerate(o);
    else if (command == "extremal") res = cmd_extremal(o);
    else if (command == "stability") res = cmd_stability(o);
    else res = cmd_construct(o);
  } catch (const PreconditionError& e) {
    res.exit_code = kCheckFailed;
    res.results = Json::array({Json{{"type", "error"}, {"kind", "precondition"}, {"message", e.what()}}});
    if (!o.input.empty()) res.digest = sha256_hex(read_file(o.input));
    outcome.diagnostics = std::string(e.what()) + "\n";
  } catch (const BudgetExceeded& e) {
    res.exit_code = kBudget;
    res.results = Json::array(
        {Json{{"type", "error"}, {"kind", "budget"}, {"message", e.what()}, {"partial", to_json(e.partial())}}});
    outcome.diagnostics = std::string(e.what()) + "\n";
  } catch (const ResourceError& e) {
    outcome.exit_code = kBudget;
    outcome.diagnostics = std::string(e.what()) + "\n";
    return outcome;
  } catch (const Error& e) {
    outcome.exit_code = kUsage;
    outcome.diagnostics = std::string(e.what()) + "\n";
    return outcome;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  auto report = make_report(command, args, res, ms);
  outcome.exit_code = res.exit_code;
  if (!o.revalidate.empty()) {
    try {
      report["revalidation"] = revalidate(o.revalidate, report);
    } catch (const std::exception& e) {
      outcome.exit_code = kUsage;
      outcome.diagnostics += std::string("revalidate: ") + e.what() + "\n";
      return outcome;
    }
    if (!report["revalidation"]["match"].get<bool>()) outcome.exit_code = kCheckFailed;
  }
  outcome.report = dump_json(report) + "\n";
  if (command != "construct" && !o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
    if (!out) {
      outcome.exit_code = kUsage;
      outcome.diagnostics += "cannot write " + o.out + "\n";
      return outcome;
    }
    out << outcome.report;
    outcome.report_file = o.out;
  }
  return outcome;
}

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const auto outcome = run(args);
  if (!outcome.report.empty() && outcome.report_file.empty()) std::cout << outcome.report;
  if (!outcome.diagnostics.empty()) std::cerr << outcome.diagnostics;
  return outcome.exit_code;
}

}  // namespace shadowlab::cli
